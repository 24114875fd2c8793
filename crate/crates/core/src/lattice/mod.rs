//! Exact lattice and quadratic-form engine.
//!
//! A lattice `Γ = B·Zⁿ` is given by a full-rank rational basis whose columns
//! are the basis vectors. Its Gram matrix `BᵀB` is the matrix of the
//! quadratic form `q(x) = xᵀ(BᵀB)x`, and the dual lattice `Γ*` has basis
//! `B⁻ᵀ` and Gram matrix `(BᵀB)⁻¹`. The spectrum of the flat torus `Rⁿ/Γ` is
//! `{4π²‖γ‖² : γ ∈ Γ*}`, so everything spectral reduces to counting
//! representations of rationals by the dual form.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::matrix::RatMatrix;
use crate::rational::{self, Rational};

mod certificate;
mod decompose;
mod enumerate;
mod milnor;
mod reduce;
mod spectrum;

pub use certificate::{certificate_isospectral, CertificateReport, Discrepancy, Verdict};
pub use decompose::{orthogonal_decompose, size_reduce, Decomposition, Summand};
pub use enumerate::{
    representation_number, representation_table, RepresentationTable, ShortVectors,
};
pub use milnor::{e16_basis, e8_basis, e8xe8_basis, in_e_lattice, milnor_basis};
pub use reduce::lll_reduce;
pub use spectrum::{torus_spectrum, SpectrumLine, TorusSpectrum};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeError {
    /// Zero-dimensional input.
    EmptyDimension,
    NotSquare {
        rows: usize,
        cols: usize,
    },
    Singular,
    NotSymmetric,
    /// The leading principal minor of the given order is not positive.
    NotPositiveDefinite {
        order: usize,
        minor: Rational,
    },
    NotInteger,
    NotEven,
    DimensionMismatch {
        left: usize,
        right: usize,
    },
    OddDimension(usize),
    NegativeBound,
    ZeroArgument(&'static str),
    /// An intermediate quantity does not fit the fixed-width fast path.
    Overflow(&'static str),
    /// Short vectors up to `bound` do not generate the lattice.
    GeneratingSetFailure {
        bound: Rational,
    },
}

impl fmt::Display for LatticeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::EmptyDimension => write!(f, "dimension must be at least 1"),
            Self::NotSquare { rows, cols } => {
                write!(f, "basis must be square, got {rows}x{cols}")
            }
            Self::Singular => write!(f, "basis is singular (rank deficient)"),
            Self::NotSymmetric => write!(f, "Gram matrix is not symmetric"),
            Self::NotPositiveDefinite { order, minor } => write!(
                f,
                "Gram matrix is not positive definite: leading principal minor of order {order} is {minor}"
            ),
            Self::NotInteger => write!(f, "form is not integral"),
            Self::NotEven => write!(f, "form is not even"),
            Self::DimensionMismatch { left, right } => {
                write!(f, "dimension mismatch: {left} vs {right}")
            }
            Self::OddDimension(n) => write!(f, "dimension {n} is odd, expected 2k"),
            Self::NegativeBound => write!(f, "norm bound must be non-negative"),
            Self::ZeroArgument(what) => write!(f, "{what} must be positive"),
            Self::Overflow(what) => write!(f, "{what} exceeds the supported range"),
            Self::GeneratingSetFailure { bound } => write!(
                f,
                "vectors of norm <= {bound} do not generate the lattice; retry with a larger norm bound"
            ),
        }
    }
}

impl core::error::Error for LatticeError {}

/// Full-rank basis of a lattice in `Rⁿ`; column `j` is the `j`-th basis vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeBasis {
    matrix: RatMatrix,
}

impl LatticeBasis {
    pub fn new(matrix: RatMatrix) -> Result<Self, LatticeError> {
        if !matrix.is_square() {
            return Err(LatticeError::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        if matrix.rows() == 0 {
            return Err(LatticeError::EmptyDimension);
        }
        if matrix.det().is_zero() {
            return Err(LatticeError::Singular);
        }
        Ok(Self { matrix })
    }

    pub fn from_columns(columns: Vec<Vec<Rational>>) -> Result<Self, LatticeError> {
        let n = columns.len();
        if n == 0 {
            return Err(LatticeError::EmptyDimension);
        }
        let rows = columns.iter().map(Vec::len).max().unwrap_or(0);
        let matrix =
            RatMatrix::from_columns(columns).ok_or(LatticeError::NotSquare { rows, cols: n })?;
        Self::new(matrix)
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        self.matrix.column(j)
    }

    pub fn columns(&self) -> Vec<Vec<Rational>> {
        (0..self.dim()).map(|j| self.column(j)).collect()
    }

    /// Covolume `|det B|`.
    pub fn covolume(&self) -> Rational {
        num_traits::Signed::abs(&self.matrix.det())
    }

    /// `B·U`: the same lattice when `U` is unimodular.
    pub fn change_basis(&self, u: &RatMatrix) -> Result<Self, LatticeError> {
        Self::new(&self.matrix * u)
    }

    /// `O·B`: an isometric copy when `O` is orthogonal.
    pub fn transform(&self, o: &RatMatrix) -> Result<Self, LatticeError> {
        Self::new(o * &self.matrix)
    }

    /// Block-diagonal basis of the orthogonal product `Γ₁ × Γ₂`.
    pub fn product(&self, other: &Self) -> Self {
        Self {
            matrix: self.matrix.block_diag(&other.matrix),
        }
    }
}

/// Symmetric positive definite matrix of a quadratic form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramMatrix {
    entries: RatMatrix,
}

impl GramMatrix {
    /// Validates symmetry and positive definiteness exactly.
    pub fn new(entries: RatMatrix) -> Result<Self, LatticeError> {
        if !entries.is_square() {
            return Err(LatticeError::NotSquare {
                rows: entries.rows(),
                cols: entries.cols(),
            });
        }
        if entries.rows() == 0 {
            return Err(LatticeError::EmptyDimension);
        }
        if !entries.is_symmetric() {
            return Err(LatticeError::NotSymmetric);
        }
        entries
            .ldl()
            .map_err(|e| LatticeError::NotPositiveDefinite {
                order: e.order,
                minor: e.value,
            })?;
        Ok(Self { entries })
    }

    /// Convenience constructor from integer rows.
    pub fn from_integer_rows(rows: &[&[i64]]) -> Result<Self, LatticeError> {
        let m = RatMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| rational::int(v)).collect())
                .collect(),
        )
        .ok_or(LatticeError::NotSquare {
            rows: rows.len(),
            cols: rows.first().map_or(0, |r| r.len()),
        })?;
        Self::new(m)
    }

    pub(crate) fn new_unchecked(entries: RatMatrix) -> Self {
        Self { entries }
    }

    pub fn dim(&self) -> usize {
        self.entries.rows()
    }

    pub fn entries(&self) -> &RatMatrix {
        &self.entries
    }

    pub fn det(&self) -> Rational {
        self.entries.det()
    }

    /// Gram matrix of the dual lattice.
    pub fn inverse(&self) -> Self {
        Self {
            entries: self
                .entries
                .inverse()
                .expect("positive definite matrices are invertible"),
        }
    }

    pub fn is_integer(&self) -> bool {
        self.entries.entries().all(rational::is_integer)
    }

    /// `q(x) = xᵀ G x`.
    pub fn value(&self, x: &[i64]) -> Rational {
        self.entries.bilinear(x, x)
    }

    /// `xᵀ G y`.
    pub fn inner(&self, x: &[i64], y: &[i64]) -> Rational {
        self.entries.bilinear(x, y)
    }

    /// `UᵀGU`, the Gram matrix of the basis `B·U`.
    pub fn conjugate(&self, u: &RatMatrix) -> Result<Self, LatticeError> {
        Self::new(&(&u.transpose() * &self.entries) * u)
    }

    /// Orthogonal sum `G₁ ⊕ G₂`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        Self {
            entries: self.entries.block_diag(&other.entries),
        }
    }

    /// Integer entries as `i64`, when they are all integral and fit.
    pub fn integer_entries(&self) -> Option<Vec<Vec<i64>>> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let v = &self.entries[(i, j)];
                        if rational::is_integer(v) {
                            v.numer().to_i64()
                        } else {
                            None
                        }
                    })
                    .collect()
            })
            .collect()
    }
}

/// Exact `BᵀB`.
pub fn gram_of_basis(basis: &LatticeBasis) -> GramMatrix {
    let m = basis.matrix();
    GramMatrix::new_unchecked(&m.transpose() * m)
}

/// Basis of `Γ* = {γ : γ·δ ∈ Z for all δ ∈ Γ}`, the inverse transpose.
pub fn dual_basis(basis: &LatticeBasis) -> LatticeBasis {
    let inv = basis
        .matrix()
        .inverse()
        .expect("lattice bases are non-singular");
    LatticeBasis {
        matrix: inv.transpose(),
    }
}

/// Integral with even diagonal, i.e. every lattice vector has even norm.
pub fn is_even(gram: &GramMatrix) -> bool {
    let n = gram.dim();
    gram.is_integer() && (0..n).all(|i| gram.entries()[(i, i)].numer().is_even())
}

/// Smallest `N >= 1` such that `N·G⁻¹` is an even integral matrix.
pub fn level(gram: &GramMatrix) -> Result<u64, LatticeError> {
    if !is_even(gram) {
        return Err(if gram.is_integer() {
            LatticeError::NotEven
        } else {
            LatticeError::NotInteger
        });
    }
    let inv = gram.inverse();
    let base = rational::lcm_of_denominators(inv.entries().entries());
    let n = inv.dim();
    let base_r = Rational::from_integer(base.clone());
    let diag_even = (0..n).all(|i| (&inv.entries()[(i, i)] * &base_r).numer().is_even());
    let level = if diag_even {
        base
    } else {
        base * BigInt::from(2)
    };
    level.to_u64().ok_or(LatticeError::Overflow("level"))
}

/// `μ₀(N) = N ∏_{p | N} (1 + 1/p)`.
pub fn mu0(n: u64) -> Result<Rational, LatticeError> {
    if n == 0 {
        return Err(LatticeError::ZeroArgument("N"));
    }
    let mut acc = Rational::from_integer(BigInt::from(n));
    for p in prime_divisors(n) {
        acc *= Rational::new(BigInt::from(p + 1), BigInt::from(p));
    }
    Ok(acc)
}

/// Distinct prime divisors by trial division, ascending.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut primes = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            primes.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        primes.push(n);
    }
    primes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use alloc::vec;

    fn diag(values: &[i64]) -> LatticeBasis {
        let n = values.len();
        LatticeBasis::new(RatMatrix::from_fn(n, n, |i, j| {
            if i == j {
                int(values[i])
            } else {
                Rational::zero()
            }
        }))
        .unwrap()
    }

    #[test]
    fn gram_of_identity_and_diagonal() {
        let g = gram_of_basis(&diag(&[1, 1]));
        assert_eq!(g.entries(), &RatMatrix::identity(2));
        let g = gram_of_basis(&diag(&[2, 3]));
        assert_eq!(
            g,
            GramMatrix::from_integer_rows(&[&[4, 0], &[0, 9]]).unwrap()
        );
    }

    #[test]
    fn milnor_grams_are_even_unimodular() {
        for b in [e16_basis(), e8xe8_basis(), e8_basis()] {
            let g = gram_of_basis(&b);
            assert!(is_even(&g));
            assert_eq!(g.det(), int(1));
            assert_eq!(level(&g).unwrap(), 1);
        }
    }

    #[test]
    fn singular_basis_rejected() {
        let m = RatMatrix::from_rows(vec![vec![int(1), int(2)], vec![int(2), int(4)]]).unwrap();
        assert_eq!(LatticeBasis::new(m), Err(LatticeError::Singular));
        assert_eq!(
            LatticeBasis::from_columns(vec![]),
            Err(LatticeError::EmptyDimension)
        );
    }

    #[test]
    fn dual_examples() {
        assert_eq!(
            dual_basis(&diag(&[1, 1, 1])).matrix(),
            &RatMatrix::identity(3)
        );
        let one_dim = dual_basis(&diag(&[2]));
        assert_eq!(one_dim.matrix()[(0, 0)], ratio(1, 2));
        let b = LatticeBasis::from_columns(vec![vec![int(2), int(1)], vec![ratio(1, 3), int(5)]])
            .unwrap();
        assert_eq!(
            gram_of_basis(&dual_basis(&dual_basis(&b))),
            gram_of_basis(&b)
        );
        assert_eq!(gram_of_basis(&dual_basis(&b)), gram_of_basis(&b).inverse());
    }

    #[test]
    fn evenness() {
        assert!(!is_even(
            &GramMatrix::from_integer_rows(&[&[1, 0], &[0, 1]]).unwrap()
        ));
        assert!(is_even(
            &GramMatrix::from_integer_rows(&[&[2, 0], &[0, 2]]).unwrap()
        ));
        let half = GramMatrix::new(
            RatMatrix::from_rows(vec![vec![int(2), ratio(1, 2)], vec![ratio(1, 2), int(2)]])
                .unwrap(),
        )
        .unwrap();
        assert!(!is_even(&half));
    }

    #[test]
    fn level_examples() {
        // Brute force: smallest N in 1..=12 with N·G⁻¹ even integral.
        fn brute(g: &GramMatrix) -> u64 {
            let inv = g.inverse();
            (1..=12u64)
                .find(|&n| {
                    let m = inv.entries().scale(&int(n as i64));
                    m.entries().all(rational::is_integer)
                        && (0..m.rows()).all(|i| m[(i, i)].numer().is_even())
                })
                .unwrap()
        }
        let a = GramMatrix::from_integer_rows(&[&[2, 0], &[0, 2]]).unwrap();
        let b = GramMatrix::from_integer_rows(&[&[2, 1], &[1, 2]]).unwrap();
        assert_eq!(level(&a).unwrap(), 4);
        assert_eq!(level(&a).unwrap(), brute(&a));
        assert_eq!(level(&b).unwrap(), 3);
        assert_eq!(level(&b).unwrap(), brute(&b));
        let odd = GramMatrix::from_integer_rows(&[&[1, 0], &[0, 1]]).unwrap();
        assert_eq!(level(&odd), Err(LatticeError::NotEven));
    }

    #[test]
    fn mu0_examples() {
        assert_eq!(mu0(1).unwrap(), int(1));
        assert_eq!(mu0(2).unwrap(), int(3));
        assert_eq!(mu0(12).unwrap(), int(24));
        assert_eq!(mu0(0), Err(LatticeError::ZeroArgument("N")));
        assert_eq!(prime_divisors(360), vec![2, 3, 5]);
        assert_eq!(prime_divisors(97), vec![97]);
    }

    #[test]
    fn non_pd_reports_minor() {
        let err = GramMatrix::from_integer_rows(&[&[1, 2], &[2, 1]]).unwrap_err();
        assert_eq!(
            err,
            LatticeError::NotPositiveDefinite {
                order: 2,
                minor: int(-3)
            }
        );
        assert_eq!(
            GramMatrix::from_integer_rows(&[&[1, 2], &[0, 1]]).unwrap_err(),
            LatticeError::NotSymmetric
        );
    }
}
