use core::f64::consts::{FRAC_PI_2, PI};

#[allow(unused_imports)] // shadowed by std when it is linked
use num_traits::Float;

use super::corner::corner_coefficient;
use super::{check_time, HeatError};
use crate::polygeom::Polygon;
use crate::quadrature::QuadratureConfig;
use crate::rational::{ratio, Rational};

/// The first three terms of the small-`t` heat trace of a planar domain:
/// `area/(4πt) - perimeter/(8√(πt)) + corner_constant`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeatExpansion {
    pub area: f64,
    pub perimeter: f64,
    pub corner_constant: f64,
}

impl HeatExpansion {
    pub fn area_term(&self, t: f64) -> f64 {
        self.area / (4.0 * PI * t)
    }

    pub fn perimeter_term(&self, t: f64) -> f64 {
        -self.perimeter / (8.0 * (PI * t).sqrt())
    }

    pub fn evaluate(&self, t: f64) -> Result<f64, HeatError> {
        check_time(t)?;
        Ok(self.area_term(t) + self.perimeter_term(t) + self.corner_constant)
    }
}

/// Expansion for a convex polygon whose interior angles all lie in
/// `(π/2, π)`.
pub fn polygon_heat_expansion(
    p: &Polygon,
    cfg: &QuadratureConfig,
) -> Result<HeatExpansion, HeatError> {
    if !p.is_convex() {
        return Err(HeatError::NonConvex);
    }
    let mut corner_constant = 0.0;
    for theta in p.interior_angles()? {
        if !(theta > FRAC_PI_2 && theta < PI) {
            return Err(HeatError::AngleOutOfDomain {
                theta,
                lo: FRAC_PI_2,
                hi: PI,
            });
        }
        corner_constant += corner_coefficient(theta, cfg)?;
    }
    Ok(HeatExpansion {
        area: p.area(),
        perimeter: p.perimeter(),
        corner_constant,
    })
}

/// `N·c(π(N-2)/N)`, the corner constant of a regular `N`-gon. Tends to 1/6.
pub fn corner_sum_regular_ngon(n: u64, cfg: &QuadratureConfig) -> Result<f64, HeatError> {
    if n < 5 {
        return Err(HeatError::TooFewSides {
            sides: n as usize,
            min: 5,
        });
    }
    let theta = PI * (n - 2) as f64 / n as f64;
    Ok(n as f64 * corner_coefficient(theta, cfg)?)
}

/// `(1 - h)/6`: the constant heat-trace coefficient of a smooth planar domain
/// with `h` holes.
pub fn a0_predictor(holes: u64) -> Rational {
    ratio(1 - holes as i64, 6)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygeom::inscribed_regular_ngon;

    #[test]
    fn hexagon_expansion() {
        let hex = inscribed_regular_ngon(6).unwrap();
        let e = polygon_heat_expansion(&hex, &QuadratureConfig::default()).unwrap();
        assert!((e.corner_constant - 6.0 * 5.0 / 144.0).abs() < 1e-9);
        assert!((e.perimeter - 6.0).abs() < 1e-12);
        assert!((e.area_term(0.01) - 4.0 * e.area_term(0.04)).abs() < 1e-9);
    }

    #[test]
    fn square_is_rejected() {
        let sq = inscribed_regular_ngon(4).unwrap();
        assert!(matches!(
            polygon_heat_expansion(&sq, &QuadratureConfig::default()),
            Err(HeatError::AngleOutOfDomain { .. })
        ));
    }

    #[test]
    fn ngon_sums() {
        let cfg = QuadratureConfig::default();
        let five = corner_sum_regular_ngon(5, &cfg).unwrap();
        assert!((five - 2.0 / 9.0).abs() < 1e-9, "{five}");
        let hundred = corner_sum_regular_ngon(100, &cfg).unwrap();
        assert!((hundred - 1.0 / 6.0).abs() <= 2e-3);
        assert!(corner_sum_regular_ngon(4, &cfg).is_err());
    }

    #[test]
    fn holes_constant() {
        assert_eq!(a0_predictor(0), ratio(1, 6));
        assert_eq!(a0_predictor(1), ratio(0, 1));
        assert_eq!(a0_predictor(3), ratio(-1, 3));
    }
}
