//! Dense exact rational matrices.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut, Mul};

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

/// Row-major `rows x cols` matrix of [`Rational`]s.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Builds a matrix from row vectors. Returns `None` on ragged input.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Option<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return None;
        }
        let n = rows.len();
        Some(Self {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(columns: Vec<Vec<Rational>>) -> Option<Self> {
        Self::from_rows(columns).map(|m| m.transpose())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = &Rational> {
        self.data.iter()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * k).collect(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// Block-diagonal matrix `diag(self, other)`.
    pub fn block_diag(&self, other: &Self) -> Self {
        let (r, c) = (self.rows + other.rows, self.cols + other.cols);
        Self::from_fn(r, c, |i, j| {
            if i < self.rows && j < self.cols {
                self[(i, j)].clone()
            } else if i >= self.rows && j >= self.cols {
                other[(i - self.rows, j - self.cols)].clone()
            } else {
                Rational::zero()
            }
        })
    }

    /// Determinant by Gaussian elimination. Panics on non-square input.
    pub fn det(&self) -> Rational {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a[(r, col)].is_zero()) else {
                return Rational::zero();
            };
            if pivot != col {
                a.swap_rows(pivot, col);
                det = -det;
            }
            let p = a[(col, col)].clone();
            det *= &p;
            for r in col + 1..n {
                if a[(r, col)].is_zero() {
                    continue;
                }
                let f = &a[(r, col)] / &p;
                for c in col..n {
                    let d = &f * &a[(col, c)];
                    a[(r, c)] -= d;
                }
            }
        }
        det
    }

    /// Gauss-Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[(r, col)].is_zero())?;
            a.swap_rows(pivot, col);
            inv.swap_rows(pivot, col);
            let p = a[(col, col)].clone();
            for c in 0..n {
                a[(col, c)] /= &p;
                inv[(col, c)] /= &p;
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for c in 0..n {
                    let d = &f * &a[(col, c)];
                    a[(r, c)] -= d;
                    let d = &f * &inv[(col, c)];
                    inv[(r, c)] -= d;
                }
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Exact `LDLᵀ` factorization of a symmetric matrix with `L` unit lower
    /// triangular.
    ///
    /// Fails with the 1-based order `k` and value of the first leading
    /// principal minor that is not positive, so success certifies positive
    /// definiteness.
    pub fn ldl(&self) -> Result<Ldl, NonPositiveMinor> {
        assert!(self.is_square(), "LDL of a non-square matrix");
        let n = self.rows;
        let mut l = Self::identity(n);
        let mut d: Vec<Rational> = Vec::with_capacity(n);
        let mut minor = Rational::one();
        for j in 0..n {
            let mut dj = self[(j, j)].clone();
            for k in 0..j {
                dj -= &l[(j, k)] * &l[(j, k)] * &d[k];
            }
            minor *= &dj;
            if !dj.is_positive() {
                return Err(NonPositiveMinor {
                    order: j + 1,
                    value: minor,
                });
            }
            for i in j + 1..n {
                let mut s = self[(i, j)].clone();
                for k in 0..j {
                    s -= &l[(i, k)] * &l[(j, k)] * &d[k];
                }
                l[(i, j)] = s / &dj;
            }
            d.push(dj);
        }
        Ok(Ldl { l, d })
    }

    /// `xᵀ M y` for integer vectors.
    pub fn bilinear(&self, x: &[i64], y: &[i64]) -> Rational {
        let mut acc = Rational::zero();
        for i in 0..self.rows {
            if x[i] == 0 {
                continue;
            }
            let mut row = Rational::zero();
            for j in 0..self.cols {
                if y[j] != 0 {
                    row += &self[(i, j)] * Rational::from_integer(y[j].into());
                }
            }
            acc += row * Rational::from_integer(x[i].into());
        }
        acc
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &RatMatrix {
    type Output = RatMatrix;

    fn mul(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = RatMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let p = a * &rhs[(k, j)];
                    out[(i, j)] += p;
                }
            }
        }
        out
    }
}

/// `M = L · diag(d) · Lᵀ`.
#[derive(Debug, Clone)]
pub struct Ldl {
    pub l: RatMatrix,
    pub d: Vec<Rational>,
}

/// A leading principal minor that is zero or negative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonPositiveMinor {
    pub order: usize,
    pub value: Rational,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn m(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| int(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn det_and_inverse() {
        let a = m(&[&[2, 1], &[1, 2]]);
        assert_eq!(a.det(), int(3));
        let inv = a.inverse().unwrap();
        assert_eq!(inv[(0, 0)], ratio(2, 3));
        assert_eq!(inv[(0, 1)], ratio(-1, 3));
        assert_eq!(&a * &inv, RatMatrix::identity(2));
    }

    #[test]
    fn singular_has_no_inverse() {
        let a = m(&[&[1, 2], &[2, 4]]);
        assert!(a.det().is_zero());
        assert!(a.inverse().is_none());
    }

    #[test]
    fn det_needs_pivoting() {
        let a = m(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 5]]);
        assert_eq!(a.det(), int(-5));
    }

    #[test]
    fn ldl_reconstructs() {
        let a = m(&[&[4, 2, 2], &[2, 5, 1], &[2, 1, 6]]);
        let Ldl { l, d } = a.ldl().unwrap();
        let mut dm = RatMatrix::zeros(3, 3);
        for i in 0..3 {
            dm[(i, i)] = d[i].clone();
        }
        assert_eq!(&(&l * &dm) * &l.transpose(), a);
    }

    #[test]
    fn ldl_reports_failing_minor() {
        let a = m(&[&[1, 2], &[2, 1]]);
        let err = a.ldl().unwrap_err();
        assert_eq!(err.order, 2);
        assert_eq!(err.value, int(-3));
    }
}
