//! Computational spectral geometry.
//!
//! Three loosely coupled toolkits live here:
//!
//! * [`lattice`]: exact rational lattice algebra. Gram and dual bases, levels,
//!   representation numbers, flat-torus spectra, a finite isospectrality
//!   certificate for even forms, orthogonal (Kneser) decomposition and the
//!   `E_{4m}` bases behind Milnor's isospectral pair of 16-dimensional tori.
//! * [`heat`]: heat kernels on the plane, half-plane and infinite sectors,
//!   the corner integral and corner coefficients of polygonal heat traces,
//!   box spectra with Weyl counting, Dirichlet/Neumann bracketing and
//!   truncated heat traces with certified tails.
//! * [`polygeom`]: planar polygons, Euler characteristic, Hausdorff distance
//!   and the inscribed-polygon and staircase constructions.
//!
//! The crate is `no_std` and only needs `alloc`. Floating-point special
//! functions come from `libm`.

#![no_std]
#![deny(missing_debug_implementations)]
#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod heat;
pub mod lattice;
pub mod matrix;
pub mod polygeom;
pub mod quadrature;
pub mod rational;

pub use rational::Rational;
