//! Arbitrary-precision fractions.

use alloc::string::String;
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact fraction, always in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Builds `num / den` from machine integers.
///
/// Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Parses `"p/q"` or a bare integer such as `"-3"`.
pub fn parse(text: &str) -> Result<Rational, ParseRationalError> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| ParseRationalError(text.into()))?;
    let den = BigInt::from_str(den).map_err(|_| ParseRationalError(text.into()))?;
    if den.is_zero() {
        return Err(ParseRationalError(text.into()));
    }
    Ok(Rational::new(num, den))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRationalError(pub String);

impl core::fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "invalid rational literal {:?}", self.0)
    }
}

impl core::error::Error for ParseRationalError {}

/// Nearest `f64`. Precise enough for reporting, never used for decisions.
pub fn to_f64(r: &Rational) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // Shift both parts down so the quotient survives the conversion.
            let bits = r.numer().bits().max(r.denom().bits());
            let shift = bits.saturating_sub(1000);
            let n = (r.numer() >> shift).to_f64().unwrap_or(0.0);
            let d = (r.denom() >> shift).to_f64().unwrap_or(1.0);
            n / d
        }
    }
}

/// Largest integer `<= r`.
pub fn floor(r: &Rational) -> BigInt {
    r.numer().div_floor(r.denom())
}

/// Smallest integer `>= r`.
pub fn ceil(r: &Rational) -> BigInt {
    -((-r.numer()).div_floor(r.denom()))
}

pub fn lcm_of_denominators<'a>(items: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    items
        .into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

pub fn is_positive(r: &Rational) -> bool {
    r.is_positive()
}
