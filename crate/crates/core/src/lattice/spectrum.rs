//! Flat-torus spectra.

use alloc::vec::Vec;

use num_traits::Signed;

use super::enumerate::norm_counts;
use super::{dual_basis, gram_of_basis, LatticeBasis, LatticeError};
use crate::rational::{self, Rational};

/// Eigenvalue `4π²·norm_sq` of `Rⁿ/Γ` with the number of dual vectors of
/// that squared length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumLine {
    pub norm_sq: Rational,
    pub multiplicity: u64,
}

impl SpectrumLine {
    /// `4π²·norm_sq` rounded to `f64`.
    pub fn eigenvalue(&self) -> f64 {
        4.0 * core::f64::consts::PI * core::f64::consts::PI * rational::to_f64(&self.norm_sq)
    }
}

/// Laplace spectrum of a flat torus truncated at `‖γ‖² <= cutoff`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusSpectrum {
    pub cutoff: Rational,
    /// Strictly increasing in `norm_sq`, starting with `(0, 1)`.
    pub lines: Vec<SpectrumLine>,
}

impl TorusSpectrum {
    /// Total number of eigenvalues counted with multiplicity.
    pub fn len(&self) -> u64 {
        self.lines.iter().map(|l| l.multiplicity).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }
}

/// All dual-lattice vectors with `‖γ‖² <= cutoff`, grouped by exact norm.
pub fn torus_spectrum(
    basis: &LatticeBasis,
    cutoff: &Rational,
) -> Result<TorusSpectrum, LatticeError> {
    if cutoff.is_negative() {
        return Err(LatticeError::NegativeBound);
    }
    let dual_gram = gram_of_basis(&dual_basis(basis));
    let lines = norm_counts(&dual_gram, cutoff)?
        .into_iter()
        .map(|(norm_sq, multiplicity)| SpectrumLine {
            norm_sq,
            multiplicity,
        })
        .collect();
    Ok(TorusSpectrum {
        cutoff: cutoff.clone(),
        lines,
    })
}
