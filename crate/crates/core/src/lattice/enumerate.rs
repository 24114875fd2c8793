//! Exact short-vector enumeration (Fincke-Pohst style).
//!
//! With `G = L·D·Lᵀ` (exact, `L` unit lower triangular) the form splits as
//! `q(x) = Σᵢ dᵢ yᵢ²` with `yᵢ = xᵢ + Σ_{j>i} L_{ji} x_j`. Scaling each `yᵢ`
//! by the common denominator `Mᵢ` of its coefficients and the whole form by
//! a global `S` gives the integral identity `S·q(x) = Σᵢ eᵢ zᵢ²`, `zᵢ = Mᵢyᵢ`,
//! so the recursive coordinate bounds are computed with integer square roots
//! and no rounding anywhere.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{lll_reduce, GramMatrix, LatticeError};
use crate::matrix::{Ldl, RatMatrix};
use crate::rational::{self, Rational};

/// Scaled bounds above this are refused so every partial sum fits in `i128`.
const MAX_SCALED_BOUND: i128 = 1 << 100;
/// Largest histogram kept as a dense array.
const DENSE_HISTOGRAM: i128 = 1 << 20;

/// Enumerator for `{x ∈ Zⁿ : q(x) <= bound}` of a positive definite form.
#[derive(Debug, Clone)]
pub struct ShortVectors {
    n: usize,
    scale: i128,
    weight: Vec<i128>,
    lead: Vec<i128>,
    /// `coupling[i][j] = Mᵢ·L_{ji}` for `j > i`.
    coupling: Vec<Vec<i128>>,
}

impl ShortVectors {
    pub fn new(gram: &GramMatrix) -> Result<Self, LatticeError> {
        let n = gram.dim();
        let Ldl { l, d } = gram
            .entries()
            .ldl()
            .expect("GramMatrix is positive definite by construction");

        let lead: Vec<BigInt> = (0..n)
            .map(|i| rational::lcm_of_denominators((i + 1..n).map(|j| &l[(j, i)])))
            .collect();
        let coeff: Vec<Rational> = (0..n)
            .map(|i| &d[i] / Rational::from_integer(&lead[i] * &lead[i]))
            .collect();
        let scale = rational::lcm_of_denominators(coeff.iter());
        let scale_r = Rational::from_integer(scale.clone());

        let to_i128 = |v: &BigInt| {
            v.to_i128()
                .ok_or(LatticeError::Overflow("enumeration scale"))
        };
        let weight = coeff
            .iter()
            .map(|c| to_i128(&(c * &scale_r).to_integer()))
            .collect::<Result<Vec<_>, _>>()?;
        let mut coupling = vec![vec![0i128; n]; n];
        for i in 0..n {
            let m = Rational::from_integer(lead[i].clone());
            for j in i + 1..n {
                coupling[i][j] = to_i128(&(&l[(j, i)] * &m).to_integer())?;
            }
        }
        Ok(Self {
            n,
            scale: to_i128(&scale)?,
            weight,
            lead: lead.iter().map(to_i128).collect::<Result<_, _>>()?,
            coupling,
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// `S` such that `S·q(x)` is an integer for every integer `x`.
    pub fn scale(&self) -> i128 {
        self.scale
    }

    /// Converts a scaled value `S·q(x)` back to `q(x)`.
    pub fn unscale(&self, scaled: i128) -> Rational {
        Rational::new(BigInt::from(scaled), BigInt::from(self.scale))
    }

    /// `floor(S·bound)`.
    pub fn scaled_bound(&self, bound: &Rational) -> Result<i128, LatticeError> {
        if bound.is_negative() {
            return Err(LatticeError::NegativeBound);
        }
        let scaled = rational::floor(&(bound * Rational::from_integer(BigInt::from(self.scale))));
        scaled
            .to_i128()
            .filter(|v| *v <= MAX_SCALED_BOUND)
            .ok_or(LatticeError::Overflow("norm bound"))
    }

    /// Calls `visit(x, S·q(x))` for every `x` with `q(x) <= bound`.
    pub fn for_each(
        &self,
        bound: &Rational,
        mut visit: impl FnMut(&[i64], i128),
    ) -> Result<(), LatticeError> {
        let total = self.scaled_bound(bound)?;
        let mut x = vec![0i64; self.n];
        self.descend(
            self.n - 1,
            total,
            0,
            false,
            &mut x,
            &mut vec![0; self.n],
            &mut visit,
        )
    }

    /// Number of vectors at each scaled norm `S·q(x) <= S·bound`.
    ///
    /// Only one of each pair `±x` is enumerated.
    pub fn histogram(&self, bound: &Rational) -> Result<BTreeMap<i128, u64>, LatticeError> {
        let total = self.scaled_bound(bound)?;
        let mut x = vec![0i64; self.n];
        let weight = |v: i128| if v == 0 { 1 } else { 2 };
        if total <= DENSE_HISTOGRAM {
            let mut dense = vec![0u64; total as usize + 1];
            self.descend(
                self.n - 1,
                total,
                0,
                true,
                &mut x,
                &mut vec![0; self.n],
                &mut |_, v| dense[v as usize] += weight(v),
            )?;
            Ok(dense
                .into_iter()
                .enumerate()
                .filter(|(_, c)| *c > 0)
                .map(|(v, c)| (v as i128, c))
                .collect())
        } else {
            let mut sparse = BTreeMap::new();
            self.descend(
                self.n - 1,
                total,
                0,
                true,
                &mut x,
                &mut vec![0; self.n],
                &mut |_, v| *sparse.entry(v).or_insert(0) += weight(v),
            )?;
            Ok(sparse)
        }
    }

    /// Adds `coupling[i][level]·delta` to `shifts[i]` for every `i < level`.
    fn shift_below(
        &self,
        level: usize,
        delta: i64,
        shifts: &mut [i128],
    ) -> Result<(), LatticeError> {
        if delta == 0 {
            return Ok(());
        }
        let overflow = || LatticeError::Overflow("enumeration");
        for (i, s) in shifts[..level].iter_mut().enumerate() {
            let term = self.coupling[i][level]
                .checked_mul(delta as i128)
                .ok_or_else(overflow)?;
            *s = s.checked_add(term).ok_or_else(overflow)?;
        }
        Ok(())
    }

    /// `shifts[i]` holds `Σ_{j>i} coupling[i][j]·x[j]` for every `i <= level`,
    /// updated incrementally as coordinates are assigned.
    #[allow(clippy::too_many_arguments)]
    fn descend(
        &self,
        level: usize,
        remaining: i128,
        used: i128,
        // Every coordinate above `level` is zero and only the representative
        // of `±x` whose last nonzero coordinate is positive is wanted.
        half: bool,
        x: &mut [i64],
        shifts: &mut [i128],
        visit: &mut impl FnMut(&[i64], i128),
    ) -> Result<(), LatticeError> {
        let overflow = || LatticeError::Overflow("enumeration");
        let shift = shifts[level];
        let e = self.weight[level];
        let m = self.lead[level];
        // e·z² <= remaining  <=>  |z| <= isqrt(floor(remaining / e)).
        let radius = (remaining / e).isqrt();
        let lo = Integer::div_ceil(&(-radius - shift), &m);
        let hi = Integer::div_floor(&(radius - shift), &m);
        if lo > hi {
            return Ok(());
        }
        let lo = if half { lo.max(0) } else { lo };
        let lo = i64::try_from(lo).map_err(|_| overflow())?;
        let hi = i64::try_from(hi).map_err(|_| overflow())?;
        let mut applied = 0i64;
        for xi in lo..=hi {
            let z = m * xi as i128 + shift;
            let cost = e * z * z;
            if cost > remaining {
                continue;
            }
            x[level] = xi;
            if level == 0 {
                visit(x, used + cost);
            } else {
                self.shift_below(level, xi - applied, shifts)?;
                applied = xi;
                let half = half && xi == 0;
                self.descend(
                    level - 1,
                    remaining - cost,
                    used + cost,
                    half,
                    x,
                    shifts,
                    visit,
                )?;
            }
        }
        self.shift_below(level, -applied, shifts)?;
        x[level] = 0;
        Ok(())
    }
}

/// `R(q, t)` for `t = 0..=max_t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepresentationTable {
    form: GramMatrix,
    counts: Vec<u64>,
}

impl RepresentationTable {
    pub fn form(&self) -> &GramMatrix {
        &self.form
    }

    pub fn max_t(&self) -> u64 {
        self.counts.len() as u64 - 1
    }

    /// `R(q, t)`, or `None` beyond the table.
    pub fn count(&self, t: u64) -> Option<u64> {
        self.counts.get(t as usize).copied()
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// `(t, R(q, t))` pairs, including zero counts.
    pub fn entries(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.counts.iter().enumerate().map(|(t, &c)| (t as u64, c))
    }

    /// Same counts up to the shorter of the two tables.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let len = self.counts.len().min(other.counts.len());
        self.counts[..len] == other.counts[..len]
    }
}

/// Orthogonal blocks of `g`: connected components of its nonzero
/// off-diagonal pattern, each as a sorted index list.
fn blocks(g: &GramMatrix) -> Vec<Vec<usize>> {
    let n = g.dim();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut block = vec![start];
        let mut next = 0;
        while next < block.len() {
            let i = block[next];
            next += 1;
            for j in 0..n {
                if !seen[j] && !g.entries()[(i, j)].is_zero() {
                    seen[j] = true;
                    block.push(j);
                }
            }
        }
        block.sort_unstable();
        out.push(block);
    }
    out
}

/// `#{x : q(x) = v}` for every value `v <= bound`, keyed by exact value.
///
/// The form is LLL-reduced first and split into orthogonal blocks whose
/// counts are convolved; neither step changes the counts.
pub(crate) fn norm_counts(
    gram: &GramMatrix,
    bound: &Rational,
) -> Result<BTreeMap<Rational, u64>, LatticeError> {
    let (reduced, _) = lll_reduce(gram);
    let mut total: BTreeMap<Rational, u64> = BTreeMap::new();
    total.insert(Rational::zero(), 1);
    for block in blocks(&reduced) {
        let sub =
            GramMatrix::new_unchecked(RatMatrix::from_fn(block.len(), block.len(), |i, j| {
                reduced.entries()[(block[i], block[j])].clone()
            }));
        let enumerator = ShortVectors::new(&sub)?;
        let scale = BigInt::from(enumerator.scale());
        let part: Vec<(Rational, u64)> = enumerator
            .histogram(bound)?
            .into_iter()
            .map(|(v, c)| (Rational::new(BigInt::from(v), scale.clone()), c))
            .collect();
        let mut next = BTreeMap::new();
        for (a, ca) in &total {
            for (b, cb) in &part {
                let v = a + b;
                if &v > bound {
                    break;
                }
                let c = ca
                    .checked_mul(*cb)
                    .ok_or(LatticeError::Overflow("counts"))?;
                let slot = next.entry(v).or_insert(0u64);
                *slot = slot
                    .checked_add(c)
                    .ok_or(LatticeError::Overflow("counts"))?;
            }
        }
        total = next;
    }
    Ok(total)
}

/// Table of `R(q, t) = #{x ∈ Zⁿ : q(x) = t}` for every integer `t <= max_t`.
pub fn representation_table(
    gram: &GramMatrix,
    max_t: u64,
) -> Result<RepresentationTable, LatticeError> {
    if !gram.is_integer() {
        return Err(LatticeError::NotInteger);
    }
    let mut counts = vec![0u64; max_t as usize + 1];
    for (value, count) in norm_counts(gram, &Rational::from_integer(BigInt::from(max_t)))? {
        // Integral forms only take integer values.
        debug_assert!(rational::is_integer(&value));
        let t = value
            .to_integer()
            .to_usize()
            .ok_or(LatticeError::Overflow("norm"))?;
        counts[t] += count;
    }
    Ok(RepresentationTable {
        form: gram.clone(),
        counts,
    })
}

/// `R(q, t)` for a single `t`.
pub fn representation_number(gram: &GramMatrix, t: u64) -> Result<u64, LatticeError> {
    if t == 0 {
        return if gram.is_integer() {
            Ok(1)
        } else {
            Err(LatticeError::NotInteger)
        };
    }
    Ok(representation_table(gram, t)?.counts[t as usize])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{e16_basis, gram_of_basis};
    use crate::matrix::RatMatrix;
    use crate::rational::{int, ratio};

    #[test]
    fn two_identity_at_two() {
        // Box |x|, |y| <= 2 by hand: (±1, 0), (0, ±1).
        let g = GramMatrix::from_integer_rows(&[&[2, 0], &[0, 2]]).unwrap();
        assert_eq!(representation_number(&g, 2).unwrap(), 4);
        assert_eq!(representation_number(&g, 0).unwrap(), 1);
        assert_eq!(representation_number(&g, 1).unwrap(), 0);
    }

    #[test]
    fn sums_of_two_squares() {
        let g = GramMatrix::from_integer_rows(&[&[1, 0], &[0, 1]]).unwrap();
        let table = representation_table(&g, 10).unwrap();
        assert_eq!(table.counts(), &[1, 4, 4, 0, 4, 8, 0, 0, 4, 4, 8]);
    }

    #[test]
    fn hexagonal_form() {
        // x² + xy + y² scaled by 2: the A2 root lattice, 6 roots.
        let g = GramMatrix::from_integer_rows(&[&[2, 1], &[1, 2]]).unwrap();
        let table = representation_table(&g, 8).unwrap();
        assert_eq!(table.counts(), &[1, 0, 6, 0, 0, 0, 6, 0, 6]);
    }

    #[test]
    fn e16_has_no_vectors_of_norm_one() {
        let g = gram_of_basis(&e16_basis());
        assert_eq!(representation_number(&g, 1).unwrap(), 0);
        let table = representation_table(&g, 2).unwrap();
        assert_eq!(table.counts(), &[1, 0, 480]);
    }

    #[test]
    fn rational_forms_enumerate_exactly() {
        let g = GramMatrix::new(
            RatMatrix::from_rows(alloc::vec![
                alloc::vec![ratio(1, 2), ratio(1, 3)],
                alloc::vec![ratio(1, 3), int(1)],
            ])
            .unwrap(),
        )
        .unwrap();
        let sv = ShortVectors::new(&g).unwrap();
        let mut seen = Vec::new();
        sv.for_each(&int(1), |x, v| {
            assert_eq!(sv.unscale(v), g.value(x));
            seen.push((x[0], x[1]));
        })
        .unwrap();
        // Brute force over a generous box.
        let mut expected = Vec::new();
        for b in -5..=5i64 {
            for a in -5..=5i64 {
                if g.value(&[a, b]) <= int(1) {
                    expected.push((a, b));
                }
            }
        }
        seen.sort();
        expected.sort();
        assert_eq!(seen, expected);
        assert!(representation_number(&g, 1).is_err());
    }

    #[test]
    fn negative_bound_rejected() {
        let g = GramMatrix::from_integer_rows(&[&[1]]).unwrap();
        let sv = ShortVectors::new(&g).unwrap();
        assert_eq!(
            sv.for_each(&int(-1), |_, _| {}),
            Err(LatticeError::NegativeBound)
        );
    }

    #[test]
    fn one_dimensional() {
        let g = GramMatrix::from_integer_rows(&[&[3]]).unwrap();
        let table = representation_table(&g, 12).unwrap();
        assert_eq!(table.count(3), Some(2));
        assert_eq!(table.count(12), Some(2));
        assert_eq!(table.count(6), Some(0));
        assert_eq!(table.count(13), None);
    }
}
