use alloc::vec::Vec;
use core::cmp::Ordering;
use core::f64::consts::PI;

use num_bigint::BigInt;
#[allow(unused_imports)] // shadowed by std when it is linked
use num_traits::{Float, Signed, Zero};

use super::{check_time, HeatError};
use crate::rational::{self, Rational};

/// Relative slack in the eigenvalue inclusion test `λ ≤ λ_max`, shared by
/// every enumeration path so that counts and listings agree on ties.
pub const TIE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundaryCondition {
    Dirichlet,
    Neumann,
}

impl BoundaryCondition {
    fn lowest_index(self) -> u64 {
        match self {
            Self::Dirichlet => 1,
            Self::Neumann => 0,
        }
    }
}

/// The box `(0, l₁) × … × (0, lₙ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxSpec {
    sides: Vec<f64>,
    exact: Option<Vec<Rational>>,
}

impl BoxSpec {
    pub fn new(sides: Vec<f64>) -> Result<Self, HeatError> {
        if sides.is_empty() {
            return Err(HeatError::InvalidBox("no sides"));
        }
        if sides.iter().any(|l| !(*l > 0.0 && l.is_finite())) {
            return Err(HeatError::InvalidBox(
                "side lengths must be positive and finite",
            ));
        }
        Ok(Self { sides, exact: None })
    }

    /// A box with rational sides. Eigenvalue ties are then detected exactly.
    pub fn rational(sides: Vec<Rational>) -> Result<Self, HeatError> {
        if sides.is_empty() {
            return Err(HeatError::InvalidBox("no sides"));
        }
        if !sides.iter().all(rational::is_positive) {
            return Err(HeatError::InvalidBox("side lengths must be positive"));
        }
        Ok(Self {
            sides: sides.iter().map(rational::to_f64).collect(),
            exact: Some(sides),
        })
    }

    pub fn unit(n: usize) -> Result<Self, HeatError> {
        Self::rational(alloc::vec![rational::int(1); n])
    }

    pub fn dim(&self) -> usize {
        self.sides.len()
    }

    pub fn sides(&self) -> &[f64] {
        &self.sides
    }

    pub fn exact_sides(&self) -> Option<&[Rational]> {
        self.exact.as_deref()
    }

    pub fn volume(&self) -> f64 {
        self.sides.iter().product()
    }

    /// Total measure of the boundary faces. For a rectangle, the perimeter.
    pub fn boundary_measure(&self) -> f64 {
        (0..self.dim())
            .map(|i| {
                2.0 * self
                    .sides
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .map(|(_, l)| l)
                    .product::<f64>()
            })
            .sum()
    }

    fn inverse_squares(&self) -> Vec<f64> {
        self.sides.iter().map(|l| 1.0 / (l * l)).collect()
    }

    /// `Σ mᵢ²/lᵢ²` exactly, so that `λ = π²` times this.
    fn exact_scaled(&self, m: &[u64]) -> Option<Rational> {
        let sides = self.exact.as_ref()?;
        let mut sum = Rational::zero();
        for (mi, l) in m.iter().zip(sides) {
            let mi = Rational::from_integer(BigInt::from(*mi));
            sum += &mi * &mi / (l * l);
        }
        Some(sum)
    }
}

/// One distinct eigenvalue with all index tuples that produce it.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenLine {
    pub value: f64,
    /// `λ/π²` as an exact rational, when the box has rational sides.
    pub scaled: Option<Rational>,
    pub multiplicity: usize,
    pub witnesses: Vec<Vec<u64>>,
}

fn admits(partial: f64, limit: f64) -> bool {
    partial <= limit * (1.0 + TIE_TOLERANCE)
}

fn scaled_limit(lambda: f64) -> Result<f64, HeatError> {
    if lambda >= 0.0 && lambda.is_finite() {
        Ok(lambda / (PI * PI))
    } else {
        Err(HeatError::NegativeLambda(lambda))
    }
}

/// Visits every index tuple with `Σ mᵢ²/lᵢ² ≤ limit`.
fn visit(
    inv: &[f64],
    lo: u64,
    limit: f64,
    index: &mut Vec<u64>,
    partial: f64,
    f: &mut impl FnMut(&[u64], f64),
) {
    let d = index.len();
    if d == inv.len() {
        f(index, partial);
        return;
    }
    let mut m = lo;
    loop {
        let next = partial + (m * m) as f64 * inv[d];
        if !admits(next, limit) {
            break;
        }
        index.push(m);
        visit(inv, lo, limit, index, next, f);
        index.pop();
        m += 1;
    }
}

fn count(inv: &[f64], lo: u64, limit: f64, d: usize, partial: f64) -> u64 {
    let last = inv.len() - 1;
    if d == last {
        let room = (limit * (1.0 + TIE_TOLERANCE) - partial).max(0.0);
        let mut m = (room / inv[d]).sqrt().floor() as u64;
        while admits(partial + ((m + 1) * (m + 1)) as f64 * inv[d], limit) {
            m += 1;
        }
        while m > 0 && !admits(partial + (m * m) as f64 * inv[d], limit) {
            m -= 1;
        }
        if m < lo || !admits(partial + (m * m) as f64 * inv[d], limit) {
            return 0;
        }
        return m - lo + 1;
    }
    let mut total = 0;
    let mut m = lo;
    loop {
        let next = partial + (m * m) as f64 * inv[d];
        if !admits(next, limit) {
            return total;
        }
        total += count(inv, lo, limit, d + 1, next);
        m += 1;
    }
}

/// All eigenvalues `λ ≤ λ_max` of the box Laplacian, ascending and grouped by
/// value.
pub fn box_eigenvalues(
    b: &BoxSpec,
    bc: BoundaryCondition,
    lambda_max: f64,
) -> Result<Vec<EigenLine>, HeatError> {
    let limit = scaled_limit(lambda_max)?;
    let inv = b.inverse_squares();
    let mut raw: Vec<(f64, Option<Rational>, Vec<u64>)> = Vec::new();
    visit(
        &inv,
        bc.lowest_index(),
        limit,
        &mut Vec::new(),
        0.0,
        &mut |m, s| {
            raw.push((s, b.exact_scaled(m), m.to_vec()));
        },
    );
    raw.sort_by(|x, y| match (&x.1, &y.1) {
        (Some(a), Some(b)) => a.cmp(b).then_with(|| x.2.cmp(&y.2)),
        _ => x.0.total_cmp(&y.0).then_with(|| x.2.cmp(&y.2)),
    });

    let mut lines: Vec<EigenLine> = Vec::new();
    let mut group_start = f64::NAN;
    for (s, exact, m) in raw {
        let same = match lines.last() {
            None => false,
            Some(line) => match (&line.scaled, &exact) {
                (Some(a), Some(b)) => a == b,
                _ => (s - group_start).abs() <= TIE_TOLERANCE * group_start.abs(),
            },
        };
        if same {
            let line = lines.last_mut().expect("checked above");
            line.multiplicity += 1;
            line.witnesses.push(m);
        } else {
            group_start = s;
            let value = match &exact {
                Some(q) => PI * PI * rational::to_f64(q),
                None => PI * PI * s,
            };
            lines.push(EigenLine {
                value,
                scaled: exact,
                multiplicity: 1,
                witnesses: alloc::vec![m],
            });
        }
    }
    Ok(lines)
}

/// `N(λ)`: the number of eigenvalues `≤ λ`, with multiplicity.
pub fn counting_function(
    b: &BoxSpec,
    bc: BoundaryCondition,
    lambda: f64,
) -> Result<u64, HeatError> {
    let limit = scaled_limit(lambda)?;
    Ok(count(
        &b.inverse_squares(),
        bc.lowest_index(),
        limit,
        0,
        0.0,
    ))
}

/// Volume of the unit ball in `ℝⁿ`.
fn unit_ball_volume(n: usize) -> f64 {
    let (mut w, start) = if n.is_multiple_of(2) {
        (1.0, 2)
    } else {
        (2.0, 3)
    };
    let mut k = start;
    while k <= n {
        w *= 2.0 * PI / k as f64;
        k += 2;
    }
    w
}

/// `ωₙ·volume/(2π)ⁿ`, the leading coefficient in `N(λ) ~ C·λ^{n/2}`.
pub fn weyl_constant(n: usize, volume: f64) -> f64 {
    unit_ball_volume(n) * volume / (2.0 * PI).powi(n as i32)
}

/// `N(λ) / (C·λ^{n/2})`; tends to 1 as `λ → ∞`.
pub fn weyl_ratio(b: &BoxSpec, bc: BoundaryCondition, lambda: f64) -> Result<f64, HeatError> {
    let n = counting_function(b, bc, lambda)?;
    let expected = weyl_constant(b.dim(), b.volume()) * lambda.powf(0.5 * b.dim() as f64);
    Ok(n as f64 / expected)
}

fn exact_sides(b: &BoxSpec) -> Result<&[Rational], HeatError> {
    b.exact_sides().ok_or(HeatError::InexactBox)
}

/// The `k` smallest values of `λ/π²` over the disjoint union of the boxes,
/// with multiplicity, as exact rationals.
pub fn lowest_eigenvalues(
    boxes: &[&BoxSpec],
    bc: BoundaryCondition,
    k: usize,
) -> Result<Vec<Rational>, HeatError> {
    for b in boxes {
        exact_sides(b)?;
    }
    if k == 0 || boxes.is_empty() {
        return Ok(Vec::new());
    }
    let mut limit = 1.0;
    loop {
        let total: u64 = boxes
            .iter()
            .map(|b| count(&b.inverse_squares(), bc.lowest_index(), limit, 0, 0.0))
            .sum();
        if total >= k as u64 {
            break;
        }
        limit *= 2.0;
    }
    // Margin so that rounding in the float filter cannot drop a value that
    // belongs among the k smallest.
    let limit = limit * 1.01;
    let mut values = Vec::new();
    for b in boxes {
        visit(
            &b.inverse_squares(),
            bc.lowest_index(),
            limit,
            &mut Vec::new(),
            0.0,
            &mut |m, _| {
                values.push(b.exact_scaled(m).expect("checked rational"));
            },
        );
    }
    values.sort();
    values.truncate(k);
    Ok(values)
}

/// An axis-aligned piece `origin + [0, sides]` of a box partition.
#[derive(Debug, Clone, PartialEq)]
pub struct SubBox {
    pub origin: Vec<Rational>,
    pub sides: Vec<Rational>,
}

impl SubBox {
    pub fn spec(&self) -> Result<BoxSpec, HeatError> {
        BoxSpec::rational(self.sides.clone())
    }

    fn end(&self, axis: usize) -> Rational {
        &self.origin[axis] + &self.sides[axis]
    }

    fn volume(&self) -> Rational {
        self.sides.iter().fold(rational::int(1), |acc, s| acc * s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BracketViolation {
    /// `μ̃ₖ > λₖ`.
    Lower(usize),
    /// `λₖ > λ̃ₖ`.
    Upper(usize),
}

/// Outcome of comparing a box's Dirichlet spectrum with the Neumann and
/// Dirichlet spectra of the pieces of a partition. All values are `λ/π²`.
#[derive(Debug, Clone, PartialEq)]
pub struct BracketingReport {
    pub k: usize,
    pub neumann_union: Vec<Rational>,
    pub dirichlet: Vec<Rational>,
    pub dirichlet_union: Vec<Rational>,
    pub violations: Vec<BracketViolation>,
}

impl BracketingReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

fn check_tiling(b: &BoxSpec, parts: &[SubBox]) -> Result<(), HeatError> {
    let sides = exact_sides(b)?;
    let n = sides.len();
    if parts.is_empty() {
        return Err(HeatError::NotTiling("empty partition"));
    }
    for p in parts {
        if p.origin.len() != n || p.sides.len() != n {
            return Err(HeatError::DimensionMismatch {
                left: n,
                right: p.sides.len().max(p.origin.len()),
            });
        }
        for axis in 0..n {
            if !p.sides[axis].is_positive() {
                return Err(HeatError::NotTiling("piece with non-positive side"));
            }
            if p.origin[axis].is_negative() || p.end(axis) > sides[axis] {
                return Err(HeatError::NotTiling("piece leaves the box"));
            }
        }
    }
    for (i, p) in parts.iter().enumerate() {
        for q in &parts[i + 1..] {
            let separated = (0..n).any(|a| p.end(a) <= q.origin[a] || q.end(a) <= p.origin[a]);
            if !separated {
                return Err(HeatError::NotTiling("pieces overlap"));
            }
        }
    }
    let total: Rational = parts.iter().map(SubBox::volume).sum();
    let whole = sides.iter().fold(rational::int(1), |acc, s| acc * s);
    if total != whole {
        return Err(HeatError::NotTiling("pieces do not cover the box"));
    }
    Ok(())
}

/// Checks `μ̃ₖ ≤ λₖ ≤ λ̃ₖ` for `k = 1..=K`, where `λₖ` is the box's Dirichlet
/// spectrum and `μ̃`, `λ̃` are the merged Neumann and Dirichlet spectra of the
/// pieces. Comparisons are exact.
pub fn bracketing_check(
    b: &BoxSpec,
    parts: &[SubBox],
    k: usize,
) -> Result<BracketingReport, HeatError> {
    check_tiling(b, parts)?;
    let specs: Vec<BoxSpec> = parts.iter().map(SubBox::spec).collect::<Result<_, _>>()?;
    let refs: Vec<&BoxSpec> = specs.iter().collect();
    let neumann_union = lowest_eigenvalues(&refs, BoundaryCondition::Neumann, k)?;
    let dirichlet_union = lowest_eigenvalues(&refs, BoundaryCondition::Dirichlet, k)?;
    let dirichlet = lowest_eigenvalues(&[b], BoundaryCondition::Dirichlet, k)?;
    let mut violations = Vec::new();
    for i in 0..k {
        if neumann_union[i].cmp(&dirichlet[i]) == Ordering::Greater {
            violations.push(BracketViolation::Lower(i + 1));
        }
        if dirichlet[i].cmp(&dirichlet_union[i]) == Ordering::Greater {
            violations.push(BracketViolation::Upper(i + 1));
        }
    }
    Ok(BracketingReport {
        k,
        neumann_union,
        dirichlet,
        dirichlet_union,
        violations,
    })
}

/// A truncated heat trace with a rigorous bound on the omitted terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeatTrace {
    pub value: f64,
    /// Upper bound on `Σ_{λ > cutoff} e^{-λt}`.
    pub tail_bound: f64,
    pub cutoff: f64,
    pub terms: u64,
}

/// `Γ(k/2 + 1, x)` for `k ≥ 0`, by upward recurrence from
/// `Γ(1/2, x) = √π·erfc(√x)` or `Γ(1, x) = e^{-x}`.
fn upper_gamma_half(k: usize, x: f64) -> f64 {
    let (mut s, mut g) = if k.is_multiple_of(2) {
        (1.0, (-x).exp())
    } else {
        (0.5, PI.sqrt() * libm::erfc(x.sqrt()))
    };
    let target = 0.5 * k as f64 + 1.0;
    while s < target {
        g = s * g + x.powf(s) * (-x).exp();
        s += 1.0;
    }
    g
}

/// Bound on `Σ_{λ > Λ} e^{-λt}` from `N(λ) ≤ ∏(lᵢ√λ/π + 1)`:
/// integrating by parts, the tail is at most `t ∫_Λ^∞ e^{-λt} ∏(…) dλ`.
fn tail_bound(b: &BoxSpec, t: f64, cutoff: f64) -> f64 {
    // Elementary symmetric polynomials of aᵢ = lᵢ/π.
    let mut e = alloc::vec![0.0; b.dim() + 1];
    e[0] = 1.0;
    for l in b.sides() {
        let a = l / PI;
        for j in (1..e.len()).rev() {
            e[j] += a * e[j - 1];
        }
    }
    let x = cutoff * t;
    e.iter()
        .enumerate()
        .map(|(k, ek)| ek * t.powf(-0.5 * k as f64) * upper_gamma_half(k, x))
        .sum()
}

/// `Σ e^{-λt}` over the box spectrum. The cutoff is doubled until the tail
/// bound is at most `tail_tol`.
pub fn heat_trace_eigensum(
    b: &BoxSpec,
    bc: BoundaryCondition,
    t: f64,
    tail_tol: f64,
) -> Result<HeatTrace, HeatError> {
    check_time(t)?;
    if !(tail_tol > 0.0) {
        return Err(HeatError::InvalidTolerance(tail_tol));
    }
    let mut cutoff = (1.0 / t).max(1.0);
    let mut bound = tail_bound(b, t, cutoff);
    while bound > tail_tol {
        cutoff *= 2.0;
        bound = tail_bound(b, t, cutoff);
    }
    let mut value = 0.0;
    let mut terms = 0;
    let scale = PI * PI * t;
    visit(
        &b.inverse_squares(),
        bc.lowest_index(),
        cutoff / (PI * PI),
        &mut Vec::new(),
        0.0,
        &mut |_, s| {
            value += (-scale * s).exp();
            terms += 1;
        },
    );
    Ok(HeatTrace {
        value,
        tail_bound: bound,
        cutoff,
        terms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn square() -> BoxSpec {
        BoxSpec::unit(2).unwrap()
    }

    #[test]
    fn first_lines() {
        let d = box_eigenvalues(&square(), BoundaryCondition::Dirichlet, 60.0).unwrap();
        assert_eq!(d[0].multiplicity, 1);
        assert!((d[0].value - 2.0 * PI * PI).abs() < 1e-12);
        assert_eq!(d[1].scaled, Some(rational::int(5)));
        assert_eq!(
            d[1].witnesses,
            alloc::vec![alloc::vec![1, 2], alloc::vec![2, 1]]
        );
        let n = box_eigenvalues(&square(), BoundaryCondition::Neumann, 1.0).unwrap();
        assert_eq!(n[0].value, 0.0);
        assert_eq!(n[0].multiplicity, 1);
    }

    #[test]
    fn float_sides_group_within_tolerance() {
        let b = BoxSpec::new(alloc::vec![1.0, 1.0]).unwrap();
        let d = box_eigenvalues(&b, BoundaryCondition::Dirichlet, 60.0).unwrap();
        assert_eq!(d[1].multiplicity, 2);
        assert!(d[1].scaled.is_none());
    }

    #[test]
    fn counting_small() {
        let s = square();
        let dir = BoundaryCondition::Dirichlet;
        assert_eq!(counting_function(&s, dir, 2.0 * PI * PI).unwrap(), 1);
        assert_eq!(counting_function(&s, dir, PI * PI).unwrap(), 0);
        assert!(counting_function(&s, dir, -1.0).is_err());
        for lambda in [0.0, 50.0, 100.0, 493.48, 1000.0] {
            let total: usize = box_eigenvalues(&s, dir, lambda)
                .unwrap()
                .iter()
                .map(|l| l.multiplicity)
                .sum();
            assert_eq!(counting_function(&s, dir, lambda).unwrap(), total as u64);
        }
    }

    #[test]
    fn weyl_constants() {
        assert!((weyl_constant(2, 3.0) - 3.0 / (4.0 * PI)).abs() < 1e-15);
        assert!((weyl_constant(3, 1.0) - 1.0 / (6.0 * PI * PI)).abs() < 1e-15);
        assert!((weyl_constant(1, 2.0) - 2.0 / PI).abs() < 1e-15);
        assert!((unit_ball_volume(4) - PI * PI / 2.0).abs() < 1e-14);
    }

    #[test]
    fn upper_gamma_recurrence() {
        // Γ(2, x) = (1 + x)e^{-x}, Γ(3/2, x) = √x e^{-x} + (√π/2) erfc(√x).
        let x: f64 = 1.7;
        assert!((upper_gamma_half(2, x) - (1.0 + x) * (-x).exp()).abs() < 1e-15);
        let g32 = x.sqrt() * (-x).exp() + 0.5 * PI.sqrt() * libm::erfc(x.sqrt());
        assert!((upper_gamma_half(1, x) - g32).abs() < 1e-15);
    }

    #[test]
    fn heat_trace_small_values() {
        let s = square();
        let h = heat_trace_eigensum(&s, BoundaryCondition::Dirichlet, 1.0, 1e-15).unwrap();
        assert!((h.value - (-2.0 * PI * PI).exp()).abs() < 1e-15);
        assert!(h.tail_bound <= 1e-15);
        let h = heat_trace_eigensum(&s, BoundaryCondition::Dirichlet, 0.01, 1e-12).unwrap();
        let two_term = 1.0 / (4.0 * PI * 0.01) - 1.0 / (2.0 * (PI * 0.01).sqrt());
        assert!((h.value - two_term - 0.25).abs() < 1e-6, "{}", h.value);
        assert!(heat_trace_eigensum(&s, BoundaryCondition::Dirichlet, 0.0, 1e-9).is_err());
    }

    #[test]
    fn half_square_bracketing() {
        let half = ratio(1, 2);
        let parts = alloc::vec![
            SubBox {
                origin: alloc::vec![rational::int(0), rational::int(0)],
                sides: alloc::vec![rational::int(1), half.clone()],
            },
            SubBox {
                origin: alloc::vec![rational::int(0), half.clone()],
                sides: alloc::vec![rational::int(1), half],
            },
        ];
        let r = bracketing_check(&square(), &parts, 50).unwrap();
        assert!(r.holds(), "{:?}", r.violations);
        assert!(r.neumann_union[0].is_zero() && r.neumann_union[1].is_zero());
        assert!(!r.neumann_union[2].is_zero());
    }

    #[test]
    fn identity_partition() {
        let parts = alloc::vec![SubBox {
            origin: alloc::vec![rational::int(0), rational::int(0)],
            sides: alloc::vec![rational::int(1), rational::int(1)],
        }];
        let r = bracketing_check(&square(), &parts, 30).unwrap();
        assert_eq!(r.dirichlet, r.dirichlet_union);
        assert!(r.holds());
    }

    #[test]
    fn tiling_errors() {
        let piece = |x: i64, w: i64| SubBox {
            origin: alloc::vec![ratio(x, 2), rational::int(0)],
            sides: alloc::vec![ratio(w, 2), rational::int(1)],
        };
        let s = square();
        assert!(matches!(
            bracketing_check(&s, &[piece(0, 1)], 5),
            Err(HeatError::NotTiling(_))
        ));
        assert!(matches!(
            bracketing_check(&s, &[piece(0, 2), piece(1, 1)], 5),
            Err(HeatError::NotTiling(_))
        ));
        assert!(matches!(
            bracketing_check(&s, &[piece(1, 2)], 5),
            Err(HeatError::NotTiling(_))
        ));
        let float = BoxSpec::new(alloc::vec![1.0, 1.0]).unwrap();
        assert_eq!(
            bracketing_check(&float, &[piece(0, 2)], 5),
            Err(HeatError::InexactBox)
        );
    }
}
