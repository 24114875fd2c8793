//! Finite isospectrality certificate for even positive definite forms.
//!
//! Two even forms `P`, `Q` in `2k` variables are isospectral exactly when
//! `det P = det Q`, their levels agree, and `R(p, t) = R(q, t)` for every
//! `t` in `[0, μ₀(N)·k/12 + 1]`.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::enumerate::representation_table;
use super::{is_even, level, mu0, GramMatrix, LatticeError};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Isospectral,
    NotIsospectral,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Isospectral => "isospectral",
            Self::NotIsospectral => "not-isospectral",
        }
    }
}

/// The first check that failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Discrepancy {
    Determinant,
    Level,
    /// Representation numbers differ at this `t`.
    RepresentationNumber(u64),
}

impl fmt::Display for Discrepancy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Determinant => f.write_str("determinant"),
            Self::Level => f.write_str("level"),
            Self::RepresentationNumber(t) => write!(f, "t={t}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateReport {
    /// Number of variables `2k`.
    pub dim: usize,
    pub det_p: Rational,
    pub det_q: Rational,
    pub level_p: u64,
    pub level_q: u64,
    /// `μ₀(N_P)`.
    pub mu0: Rational,
    /// `μ₀(N_P)·k/12 + 1`.
    pub t_bound: Rational,
    /// Every integer `t` in `[0, t_bound]`.
    pub checked_ts: Vec<u64>,
    pub counts_p: Vec<u64>,
    pub counts_q: Vec<u64>,
    pub verdict: Verdict,
    pub first_discrepancy: Option<Discrepancy>,
}

impl CertificateReport {
    pub fn is_isospectral(&self) -> bool {
        self.verdict == Verdict::Isospectral
    }
}

pub fn certificate_isospectral(
    p: &GramMatrix,
    q: &GramMatrix,
) -> Result<CertificateReport, LatticeError> {
    let dim = p.dim();
    if dim != q.dim() {
        return Err(LatticeError::DimensionMismatch {
            left: dim,
            right: q.dim(),
        });
    }
    if !dim.is_multiple_of(2) {
        return Err(LatticeError::OddDimension(dim));
    }
    if !is_even(p) || !is_even(q) {
        return Err(LatticeError::NotEven);
    }
    let k = dim / 2;
    let det_p = p.det();
    let det_q = q.det();
    let level_p = level(p)?;
    let level_q = level(q)?;
    let mu0 = mu0(level_p)?;
    let t_bound = &mu0 * Rational::new(BigInt::from(k), BigInt::from(12)) + rational::int(1);
    let max_t = rational::floor(&t_bound)
        .to_u64()
        .ok_or(LatticeError::Overflow("certificate bound"))?;

    let table_p = representation_table(p, max_t)?;
    let table_q = representation_table(q, max_t)?;
    let checked_ts: Vec<u64> = (0..=max_t).collect();

    let first_discrepancy = if det_p != det_q {
        Some(Discrepancy::Determinant)
    } else if level_p != level_q {
        Some(Discrepancy::Level)
    } else {
        checked_ts
            .iter()
            .copied()
            .find(|&t| table_p.count(t) != table_q.count(t))
            .map(Discrepancy::RepresentationNumber)
    };
    let verdict = if first_discrepancy.is_none() {
        Verdict::Isospectral
    } else {
        Verdict::NotIsospectral
    };
    Ok(CertificateReport {
        dim,
        det_p,
        det_q,
        level_p,
        level_q,
        mu0,
        t_bound,
        checked_ts,
        counts_p: table_p.counts().to_vec(),
        counts_q: table_q.counts().to_vec(),
        verdict,
        first_discrepancy,
    })
}
