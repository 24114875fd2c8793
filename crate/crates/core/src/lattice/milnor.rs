//! Bases for the lattices `E_{4m}` and the Milnor pair `E₁₆`, `E₈ × E₈`.

use num_integer::Integer;
use num_traits::{One, Zero};

use super::{LatticeBasis, LatticeError};
use crate::matrix::RatMatrix;
use crate::rational::{self, Rational};

/// The `4m x 4m` basis matrix `A_{4m}` of
/// `E_{4m} = {x ∈ Zⁿ ∪ (½𝟙 + Zⁿ) : Σ xᵢ ∈ 2Z}`:
///
/// ```text
/// [ 2 -1  0 ...  0  1/2 ]
/// [ 0  1 -1 ...  0  1/2 ]
/// [ .     .  .      ... ]
/// [ 0  0 ...  1 -1  1/2 ]
/// [ 0  0 ...  0  1  1/2 ]
/// [ 0  0 ...  0  0  1/2 ]
/// ```
pub fn milnor_basis(m: usize) -> Result<LatticeBasis, LatticeError> {
    if m == 0 {
        return Err(LatticeError::ZeroArgument("m"));
    }
    let n = 4 * m;
    // 1-based indices as in the defining table.
    let matrix = RatMatrix::from_fn(n, n, |r, c| {
        let (i, j) = (r + 1, c + 1);
        if j == n {
            rational::ratio(1, 2)
        } else if i == 1 && j == 1 {
            rational::int(2)
        } else if i == j && (2..n).contains(&i) {
            Rational::one()
        } else if j == i + 1 && i <= n - 2 {
            -Rational::one()
        } else {
            Rational::zero()
        }
    });
    LatticeBasis::new(matrix)
}

pub fn e8_basis() -> LatticeBasis {
    milnor_basis(2).expect("m = 2 is valid")
}

pub fn e16_basis() -> LatticeBasis {
    milnor_basis(4).expect("m = 4 is valid")
}

/// `A_{8x8} = diag(A₈, A₈)`.
pub fn e8xe8_basis() -> LatticeBasis {
    let e8 = e8_basis();
    e8.product(&e8)
}

/// Membership in `E_n`: all coordinates integral or all in `½ + Z`, with
/// even coordinate sum.
pub fn in_e_lattice(v: &[Rational]) -> bool {
    let half = rational::ratio(1, 2);
    let all_int = v.iter().all(rational::is_integer);
    let all_half = v.iter().all(|x| rational::is_integer(&(x - &half)));
    if !(all_int || all_half) {
        return false;
    }
    let sum: Rational = v.iter().sum();
    rational::is_integer(&sum) && sum.numer().is_even()
}
