//! Heat kernels, corner asymptotics, box spectra and heat traces.
//!
//! Conventions: the Laplacian is `-Δ` with Dirichlet data unless stated,
//! heat kernels solve `∂ₜh = Δh`, and the heat trace of a planar domain `Ω`
//! has the small-`t` expansion
//!
//! ```text
//! Σ e^{-λₙt} ~ |Ω|/(4πt) - |∂Ω|/(8√(πt)) + a₀(Ω)
//! ```
//!
//! where, for a polygon, `a₀` is the sum of the corner coefficients.

use core::fmt;

use crate::quadrature::QuadratureError;

mod boxes;
mod corner;
mod expansion;
mod kernels;

pub use boxes::{
    box_eigenvalues, bracketing_check, counting_function, heat_trace_eigensum, lowest_eigenvalues,
    weyl_constant, weyl_ratio, BoundaryCondition, BoxSpec, BracketViolation, BracketingReport,
    EigenLine, HeatTrace, SubBox, TIE_TOLERANCE,
};
pub use corner::{
    carslaw_integral, carslaw_integral_with, carslaw_integrand, corner_coefficient,
    dominating_integral, dominating_integrand,
};
pub use expansion::{a0_predictor, corner_sum_regular_ngon, polygon_heat_expansion, HeatExpansion};
pub use kernels::{free_kernel, halfspace_kernel, sector_kernel_diag};

#[derive(Debug, Clone, PartialEq)]
pub enum HeatError {
    NonPositiveTime(f64),
    /// An opening angle outside the open/half-open interval `(lo, hi]` or `(lo, hi)`.
    AngleOutOfDomain {
        theta: f64,
        lo: f64,
        hi: f64,
    },
    /// Polar angle outside `(0, θ)`.
    PolarAngleOutOfRange {
        phi: f64,
        theta: f64,
    },
    NonPositiveRadius(f64),
    DimensionMismatch {
        left: usize,
        right: usize,
    },
    InvalidBox(&'static str),
    /// Exact arithmetic was requested for a box with floating-point sides.
    InexactBox,
    NotTiling(&'static str),
    NonConvex,
    TooFewSides {
        sides: usize,
        min: usize,
    },
    NegativeLambda(f64),
    InvalidTolerance(f64),
    /// The imaginary part of the shifted corner integral did not cancel.
    ImaginaryResidual(f64),
    Geometry(crate::polygeom::GeomError),
    Quadrature(QuadratureError),
}

impl fmt::Display for HeatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NonPositiveTime(t) => write!(f, "time must be positive, got {t}"),
            Self::AngleOutOfDomain { theta, lo, hi } => write!(
                f,
                "opening angle {theta} outside the supported interval ({lo}, {hi}]"
            ),
            Self::PolarAngleOutOfRange { phi, theta } => {
                write!(f, "polar angle {phi} outside (0, {theta})")
            }
            Self::NonPositiveRadius(r) => write!(f, "radius must be positive, got {r}"),
            Self::DimensionMismatch { left, right } => {
                write!(f, "dimension mismatch: {left} vs {right}")
            }
            Self::InvalidBox(why) => write!(f, "invalid box: {why}"),
            Self::InexactBox => write!(f, "operation needs rational side lengths"),
            Self::NotTiling(why) => write!(f, "partition does not tile the box: {why}"),
            Self::NonConvex => write!(f, "polygon is not convex"),
            Self::TooFewSides { sides, min } => {
                write!(f, "need at least {min} sides, got {sides}")
            }
            Self::NegativeLambda(l) => write!(f, "eigenvalue bound must be >= 0, got {l}"),
            Self::InvalidTolerance(t) => write!(f, "tolerance must be positive, got {t}"),
            Self::ImaginaryResidual(v) => {
                write!(
                    f,
                    "imaginary part of the shifted integral is {v}, expected 0"
                )
            }
            Self::Geometry(e) => write!(f, "{e}"),
            Self::Quadrature(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for HeatError {}

impl From<QuadratureError> for HeatError {
    fn from(e: QuadratureError) -> Self {
        Self::Quadrature(e)
    }
}

impl From<crate::polygeom::GeomError> for HeatError {
    fn from(e: crate::polygeom::GeomError) -> Self {
        Self::Geometry(e)
    }
}

pub(crate) fn check_time(t: f64) -> Result<(), HeatError> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(HeatError::NonPositiveTime(t))
    }
}
