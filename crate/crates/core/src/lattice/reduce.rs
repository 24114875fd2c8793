//! Exact LLL reduction of a Gram matrix.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::GramMatrix;
use crate::matrix::RatMatrix;
use crate::rational::{self, Rational};

/// Gram-Schmidt data of `g`: `mu[i][j]` for `j < i` and squared lengths `b`.
fn gram_schmidt(g: &[Vec<Rational>]) -> (Vec<Vec<Rational>>, Vec<Rational>) {
    let n = g.len();
    let mut mu = vec![vec![Rational::zero(); n]; n];
    let mut b = vec![Rational::zero(); n];
    for i in 0..n {
        for j in 0..i {
            let mut s = g[i][j].clone();
            for l in 0..j {
                s -= &mu[j][l] * &mu[i][l] * &b[l];
            }
            mu[i][j] = s / &b[j];
        }
        let mut s = g[i][i].clone();
        for l in 0..i {
            s -= &mu[i][l] * &mu[i][l] * &b[l];
        }
        b[i] = s;
    }
    (mu, b)
}

fn nearest(r: &Rational) -> BigInt {
    rational::floor(&(r + Rational::new(BigInt::one(), BigInt::from(2))))
}

/// LLL reduction with `δ = 3/4`, entirely in rationals.
///
/// Returns `(UᵀGU, U)` with `U` unimodular; the columns of `U` are the
/// reduced basis in the input coordinates.
pub fn lll_reduce(gram: &GramMatrix) -> (GramMatrix, RatMatrix) {
    let n = gram.dim();
    let e = gram.entries();
    let mut g: Vec<Vec<Rational>> = (0..n).map(|i| e.row(i).to_vec()).collect();
    // Rows of `u` are the basis vectors.
    let mut u: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| BigInt::from(u8::from(i == j))).collect())
        .collect();
    let (mut mu, mut b) = gram_schmidt(&g);
    let delta = rational::ratio(3, 4);
    let mut k = 1;
    while k < n {
        for j in (0..k).rev() {
            let q = nearest(&mu[k][j]);
            if q.is_zero() {
                continue;
            }
            let qr = Rational::from_integer(q.clone());
            let gkk = &g[k][k] - &qr * &g[k][j] * rational::int(2) + &qr * &qr * &g[j][j];
            for l in 0..n {
                if l != k {
                    let v = &g[k][l] - &qr * &g[j][l];
                    g[l][k] = v.clone();
                    g[k][l] = v;
                }
            }
            g[k][k] = gkk;
            for c in 0..n {
                let v = &u[k][c] - &q * &u[j][c];
                u[k][c] = v;
            }
            for l in 0..j {
                let v = &mu[k][l] - &qr * &mu[j][l];
                mu[k][l] = v;
            }
            mu[k][j] -= &qr;
        }
        let m = &mu[k][k - 1];
        if b[k] >= (&delta - m * m) * &b[k - 1] {
            k += 1;
        } else {
            g.swap(k, k - 1);
            for row in g.iter_mut() {
                row.swap(k, k - 1);
            }
            u.swap(k, k - 1);
            (mu, b) = gram_schmidt(&g);
            k = k.max(2) - 1;
        }
    }
    let reduced = GramMatrix::new_unchecked(RatMatrix::from_fn(n, n, |i, j| g[i][j].clone()));
    let transform = RatMatrix::from_fn(n, n, |i, j| Rational::from_integer(u[j][i].clone()));
    (reduced, transform)
}
