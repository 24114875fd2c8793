//! Parsers for numeric command-line values.

use std::f64::consts::PI;

use num_bigint::BigInt;
use spectral_core::rational::{self, Rational};

/// `"3"`, `"-2/5"` or a plain decimal such as `"0.125"`, kept exact.
pub fn exact(text: &str) -> Result<Rational, String> {
    let t = text.trim();
    if let Ok(r) = rational::parse(t) {
        return Ok(r);
    }
    let bad = || format!("expected an integer, p/q or decimal, got {text:?}");
    let (int_part, frac) = t.split_once('.').ok_or_else(bad)?;
    if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac}");
    let num: BigInt = digits.parse().map_err(|_| bad())?;
    let den = BigInt::from(10u32).pow(frac.len() as u32);
    Ok(Rational::new(num, den))
}

pub fn positive_f64(text: &str) -> Result<f64, String> {
    match text.trim().parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("expected a positive number, got {text:?}")),
    }
}

pub fn nonnegative_f64(text: &str) -> Result<f64, String> {
    match text.trim().parse::<f64>() {
        Ok(v) if v >= 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("expected a non-negative number, got {text:?}")),
    }
}

fn factor(text: &str) -> Result<f64, String> {
    let t = text.trim_matches('*');
    if t.is_empty() {
        return Ok(1.0);
    }
    if let Ok(r) = rational::parse(t) {
        return Ok(rational::to_f64(&r));
    }
    t.parse::<f64>().map_err(|_| format!("bad factor {text:?}"))
}

/// An angle: a float in radians or a multiple of `pi` such as `pi`,
/// `0.8pi`, `2pi/3`, `2*pi/3` or `3/4*pi`.
pub fn angle(text: &str) -> Result<f64, String> {
    let t: String = text
        .chars()
        .filter(|c| !c.is_whitespace())
        .collect::<String>()
        .to_ascii_lowercase();
    let Some((before, after)) = t.split_once("pi") else {
        return t
            .parse::<f64>()
            .map_err(|_| format!("expected an angle such as 2.5 or 2pi/3, got {text:?}"));
    };
    let wrap = |e: String| format!("angle {text:?}: {e}");
    let coeff = factor(before).map_err(wrap)?;
    let value = if let Some(den) = after.strip_prefix('/') {
        let d = factor(den).map_err(wrap)?;
        coeff * PI / d
    } else {
        coeff * PI * factor(after).map_err(wrap)?
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(wrap("not finite".into()))
    }
}
