//! Orthogonal (Kneser) decomposition of integral lattices.
//!
//! A nonzero vector is *decomposable* when it is the sum of two nonzero
//! orthogonal lattice vectors. The irreducible orthogonal summands of a
//! lattice are spanned by the connected components of the graph on its
//! indecomposable vectors, with an edge wherever the inner product is
//! nonzero. Any generating set of indecomposables suffices, so only vectors
//! up to the largest norm of a size-reduced basis are enumerated.

use alloc::vec::Vec;

use num_traits::Signed;

use super::enumerate::ShortVectors;
use super::{GramMatrix, LatticeError};
use crate::matrix::RatMatrix;
use crate::rational::{self, Rational};

/// Retries with a doubled norm bound before giving up.
const MAX_RETRIES: usize = 3;

/// One orthogonal summand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Summand {
    /// Basis of the summand as integer coordinate vectors in the input basis.
    pub basis: Vec<Vec<i64>>,
    /// Gram matrix of `basis`.
    pub gram: GramMatrix,
}

impl Summand {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub summands: Vec<Summand>,
    /// Norm bound of the generating set that was used.
    pub norm_bound: Rational,
}

impl Decomposition {
    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn is_irreducible(&self) -> bool {
        self.summands.len() == 1
    }
}

/// Greedy pairwise (Lagrange) size reduction.
///
/// Returns the reduced Gram matrix and the integer change of basis, as
/// columns: `reduced = UᵀGU`.
pub fn size_reduce(gram: &GramMatrix) -> Result<(GramMatrix, Vec<Vec<i64>>), LatticeError> {
    let g = integer_gram(gram)?;
    let n = g.len();
    let mut g: Vec<Vec<i128>> = g
        .iter()
        .map(|r| r.iter().map(|&v| v as i128).collect())
        .collect();
    let mut basis: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|k| i64::from(i == k)).collect())
        .collect();
    let overflow = || LatticeError::Overflow("size reduction");
    loop {
        let mut changed = false;
        for i in 0..n {
            for j in 0..n {
                if i == j || 2 * g[i][j].abs() <= g[j][j] {
                    continue;
                }
                // Nearest integer to g_ij / g_jj.
                let c = (2 * g[i][j] + g[j][j]).div_euclid(2 * g[j][j]);
                let c64 = i64::try_from(c).map_err(|_| overflow())?;
                for k in 0..n {
                    basis[i][k] = basis[i][k]
                        .checked_sub(c64.checked_mul(basis[j][k]).ok_or_else(overflow)?)
                        .ok_or_else(overflow)?;
                }
                let gii = g[i][i] - 2 * c * g[i][j] + c * c * g[j][j];
                for k in 0..n {
                    if k != i {
                        g[i][k] -= c * g[j][k];
                        g[k][i] = g[i][k];
                    }
                }
                g[i][i] = gii;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let reduced = GramMatrix::new_unchecked(RatMatrix::from_fn(n, n, |i, j| {
        Rational::from_integer(g[i][j].into())
    }));
    Ok((reduced, basis))
}

/// Splits an integral positive definite lattice into irreducible orthogonal
/// summands.
pub fn orthogonal_decompose(gram: &GramMatrix) -> Result<Decomposition, LatticeError> {
    let g = integer_gram(gram)?;
    let (reduced, _) = size_reduce(gram)?;
    let n = gram.dim();
    let mut bound = (0..n)
        .map(|i| reduced.entries()[(i, i)].clone())
        .max()
        .expect("dimension >= 1");
    for _ in 0..=MAX_RETRIES {
        if let Some(summands) = decompose_with_bound(gram, &g, &bound)? {
            return Ok(Decomposition {
                summands,
                norm_bound: bound,
            });
        }
        bound *= rational::int(2);
    }
    Err(LatticeError::GeneratingSetFailure { bound })
}

fn integer_gram(gram: &GramMatrix) -> Result<Vec<Vec<i64>>, LatticeError> {
    if !gram.is_integer() {
        return Err(LatticeError::NotInteger);
    }
    gram.integer_entries()
        .ok_or(LatticeError::Overflow("Gram entries"))
}

struct Short {
    x: Vec<i64>,
    gx: Vec<i128>,
    norm: i128,
}

fn apply(g: &[Vec<i64>], x: &[i64]) -> Vec<i128> {
    g.iter()
        .map(|row| {
            row.iter()
                .zip(x)
                .map(|(&a, &b)| a as i128 * b as i128)
                .sum()
        })
        .collect()
}

fn dot(a: &[i64], b: &[i128]) -> i128 {
    a.iter().zip(b).map(|(&x, &y)| x as i128 * y).sum()
}

/// `None` when the indecomposables up to `bound` fail to generate.
fn decompose_with_bound(
    gram: &GramMatrix,
    g: &[Vec<i64>],
    bound: &Rational,
) -> Result<Option<Vec<Summand>>, LatticeError> {
    let n = g.len();
    let enumerator = ShortVectors::new(gram)?;
    let scale = enumerator.scale();
    let mut short = Vec::new();
    enumerator.for_each(bound, |x, scaled| {
        // One representative per ± pair.
        if x.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0) {
            short.push(Short {
                x: x.to_vec(),
                gx: apply(g, x),
                norm: scaled / scale,
            });
        }
    })?;
    short.sort_by_key(|s| s.norm);

    let indecomposable: Vec<&Short> = short
        .iter()
        .filter(|v| {
            let half = v.norm / 2;
            !short
                .iter()
                .take_while(|y| y.norm <= half)
                .any(|y| dot(&v.x, &y.gx).abs() == y.norm)
        })
        .collect();

    let mut components: Vec<Component> = Vec::new();
    for v in &indecomposable {
        let touching: Vec<usize> = components
            .iter()
            .enumerate()
            .filter(|(_, c)| c.rows.iter().any(|h| dot_i128(h, &v.gx) != 0))
            .map(|(i, _)| i)
            .collect();
        match touching.split_first() {
            None => {
                let mut c = Component::default();
                c.insert(v.x.iter().map(|&a| a as i128).collect())?;
                components.push(c);
            }
            Some((&keep, rest)) => {
                for &other in rest.iter().rev() {
                    let absorbed = components.remove(other);
                    for row in absorbed.rows {
                        components[keep].insert(row)?;
                    }
                }
                components[keep].insert(v.x.iter().map(|&a| a as i128).collect())?;
            }
        }
    }

    // Generation check: the stacked summand bases must be unimodular.
    let stacked: Vec<Vec<Rational>> = components
        .iter()
        .flat_map(|c| c.rows.iter())
        .map(|r| {
            r.iter()
                .map(|&v| Rational::from_integer(v.into()))
                .collect()
        })
        .collect();
    if stacked.len() != n {
        return Ok(None);
    }
    let det = RatMatrix::from_rows(stacked)
        .expect("rows have length n")
        .det();
    if det.abs() != rational::int(1) {
        return Ok(None);
    }

    let mut summands = Vec::with_capacity(components.len());
    for c in components {
        let basis: Vec<Vec<i64>> = c
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&v| i64::try_from(v))
                    .collect::<Result<_, _>>()
            })
            .collect::<Result<_, _>>()
            .map_err(|_| LatticeError::Overflow("summand basis"))?;
        let k = basis.len();
        let sub = GramMatrix::new_unchecked(RatMatrix::from_fn(k, k, |i, j| {
            gram.inner(&basis[i], &basis[j])
        }));
        summands.push(Summand { basis, gram: sub });
    }
    Ok(Some(summands))
}

fn dot_i128(a: &[i128], b: &[i128]) -> i128 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Integer row echelon (Hermite-style) basis of the sublattice generated so far.
#[derive(Default)]
struct Component {
    /// Sorted by strictly increasing pivot column; pivots are positive.
    rows: Vec<Vec<i128>>,
}

impl Component {
    fn insert(&mut self, mut v: Vec<i128>) -> Result<(), LatticeError> {
        let overflow = || LatticeError::Overflow("summand basis");
        let mut idx = 0;
        while idx < self.rows.len() {
            let Some(lead) = v.iter().position(|&c| c != 0) else {
                return Ok(());
            };
            let p = pivot(&self.rows[idx]);
            if lead < p {
                break;
            }
            if lead == p {
                let r = &self.rows[idx];
                let (g, a, b) = ext_gcd(r[p], v[p]);
                let (rp, vp) = (r[p] / g, v[p] / g);
                let mut new_r = Vec::with_capacity(v.len());
                let mut new_v = Vec::with_capacity(v.len());
                for k in 0..v.len() {
                    let nr = a
                        .checked_mul(r[k])
                        .zip(b.checked_mul(v[k]))
                        .and_then(|(x, y)| x.checked_add(y))
                        .ok_or_else(overflow)?;
                    let nv = rp
                        .checked_mul(v[k])
                        .zip(vp.checked_mul(r[k]))
                        .and_then(|(x, y)| x.checked_sub(y))
                        .ok_or_else(overflow)?;
                    new_r.push(nr);
                    new_v.push(nv);
                }
                if new_r[p] < 0 {
                    new_r.iter_mut().for_each(|c| *c = -*c);
                }
                self.rows[idx] = new_r;
                v = new_v;
            }
            idx += 1;
        }
        if let Some(lead) = v.iter().position(|&c| c != 0) {
            if v[lead] < 0 {
                v.iter_mut().for_each(|c| *c = -*c);
            }
            let at = self.rows.partition_point(|r| pivot(r) < lead);
            self.rows.insert(at, v);
        }
        self.reduce_above_pivots();
        Ok(())
    }

    /// Keeps entries above each pivot in `[0, pivot)` so coefficients stay small.
    fn reduce_above_pivots(&mut self) {
        for i in 0..self.rows.len() {
            let p = pivot(&self.rows[i]);
            let piv = self.rows[i][p];
            for j in 0..i {
                let q = self.rows[j][p].div_euclid(piv);
                if q != 0 {
                    let (head, tail) = self.rows.split_at_mut(i);
                    for (a, b) in head[j].iter_mut().zip(&tail[0]) {
                        *a -= q * b;
                    }
                }
            }
        }
    }
}

fn pivot(row: &[i128]) -> usize {
    row.iter()
        .position(|&c| c != 0)
        .expect("echelon rows are nonzero")
}

/// `(g, a, b)` with `g = gcd(x, y) > 0` and `a·x + b·y = g`.
fn ext_gcd(x: i128, y: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (x, y);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}
