use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};

#[allow(unused_imports)] // shadowed by std when it is linked
use num_traits::Float;

use super::{check_time, HeatError};
use crate::quadrature::{integrate_decaying_tail, QuadratureConfig, Rule, Strategy};

/// Heat kernel of `ℝⁿ`: `(4πt)^{-n/2} e^{-|x-y|²/4t}`.
pub fn free_kernel(x: &[f64], y: &[f64], t: f64) -> Result<f64, HeatError> {
    check_time(t)?;
    if x.len() != y.len() {
        return Err(HeatError::DimensionMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    let d2: f64 = x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum();
    let n = x.len() as f64;
    Ok((4.0 * PI * t).powf(-0.5 * n) * (-d2 / (4.0 * t)).exp())
}

/// Dirichlet heat kernel of the upper half-plane `{x₂ > 0}` by reflection.
pub fn halfspace_kernel(x: [f64; 2], y: [f64; 2], t: f64) -> Result<f64, HeatError> {
    check_time(t)?;
    let dx = x[0] - y[0];
    let direct = dx * dx + (x[1] - y[1]) * (x[1] - y[1]);
    let image = dx * dx + (x[1] + y[1]) * (x[1] + y[1]);
    Ok(((-direct / (4.0 * t)).exp() - (-image / (4.0 * t)).exp()) / (4.0 * PI * t))
}

/// Dirichlet heat kernel of the sector `{0 < φ < θ}` on the diagonal, at the
/// point with polar coordinates `(r, φ)`.
///
/// Which reflected images contribute depends on whether `φ` lies below
/// `θ - π/2`, between `θ - π/2` and `π/2`, or above `π/2`. Exactly on one of
/// those two boundaries the entering image carries weight 1/2, which is the
/// value that makes the kernel continuous there: the complex-shifted integral
/// picks up half of the residue at the pole that crosses `s = 0`.
pub fn sector_kernel_diag(
    r: f64,
    phi: f64,
    theta: f64,
    t: f64,
    cfg: &QuadratureConfig,
) -> Result<f64, HeatError> {
    check_time(t)?;
    if !(theta > FRAC_PI_2 && theta < PI) {
        return Err(HeatError::AngleOutOfDomain {
            theta,
            lo: FRAC_PI_2,
            hi: PI,
        });
    }
    if !(phi > 0.0 && phi < theta) {
        return Err(HeatError::PolarAngleOutOfRange { phi, theta });
    }
    if !(r > 0.0 && r.is_finite()) {
        return Err(HeatError::NonPositiveRadius(r));
    }

    let norm = 1.0 / (4.0 * PI * t);
    let img_low = (-(r * phi.sin()).powi(2) / t).exp() * norm;
    let img_high = (-(r * (theta - phi).sin()).powi(2) / t).exp() * norm;
    let d_low = phi - (theta - FRAC_PI_2);
    let d_high = phi - FRAC_PI_2;
    // The reflection in the first edge applies for φ < π/2, the one in the
    // second edge for φ > θ - π/2.
    let images = branch_weight(-d_high) * img_low + branch_weight(d_low) * img_high;

    // sin(π²/θ) = -sin(π(π-θ)/θ), accurate as θ → π.
    let sin_b0 = -(PI * (PI - theta) / theta).sin();
    let pre = sin_b0 / (8.0 * PI * theta * t);
    let decay = r * r / (2.0 * t);

    let plain = carslaw_kernel_integral(theta, decay, cfg)?;
    let (shifted, imag) = shifted_integral(phi, theta, decay, d_low, d_high, cfg)?;
    let scale = shifted.abs().max(1.0);
    if imag.abs() > 1e-10 * scale {
        return Err(HeatError::ImaginaryResidual(imag));
    }
    Ok(norm - images - pre * plain + pre * shifted)
}

/// 1 for `d > 0`, 1/2 at `d = 0`, 0 otherwise.
fn branch_weight(d: f64) -> f64 {
    if d > 0.0 {
        1.0
    } else if d == 0.0 {
        0.5
    } else {
        0.0
    }
}

/// `∫_ℝ e^{-k(1+cosh s)} / (cosh(πs/θ) - cos(π²/θ)) ds`.
fn carslaw_kernel_integral(theta: f64, k: f64, cfg: &QuadratureConfig) -> Result<f64, HeatError> {
    let gap = 1.0 - (PI * PI / theta).cos();
    let ratio = PI / theta;
    let f = |s: f64| {
        let h = (0.5 * ratio * s).sinh();
        (-k * (1.0 + s.cosh())).exp() / (gap + 2.0 * h * h)
    };
    let points = geometric_breakpoints(gap);
    let est = integrate_decaying_tail(f, &points, cfg, Rule::Gk21, Strategy::Global)?;
    Ok(2.0 * est.value)
}

/// Real and imaginary parts of
/// `∫_ℝ e^{-k(1+cosh s)} / (cosh(π(s + 2iφ)/θ) - cos(π²/θ)) ds`.
///
/// The real part is even in `s` and is computed on the half line. The
/// imaginary part is odd, so its integral should vanish; it is returned as a
/// consistency check.
fn shifted_integral(
    phi: f64,
    theta: f64,
    k: f64,
    d_low: f64,
    d_high: f64,
    cfg: &QuadratureConfig,
) -> Result<(f64, f64), HeatError> {
    let ratio = PI / theta;
    let b = 2.0 * PI * phi / theta;
    let (sin_b, cos_b) = b.sin_cos();
    // cos b - cos(π²/θ), factored so it is exact near the branch boundaries.
    let eps0 = 2.0 * (ratio * d_low).sin() * (ratio * d_high).sin();
    let parts = move |s: f64| {
        let a = ratio * s;
        let h = (0.5 * a).sinh();
        let p = eps0 + 2.0 * h * h * cos_b;
        let q = a.sinh() * sin_b;
        let w = (-k * (1.0 + s.cosh())).exp();
        let den = p * p + q * q;
        if den == 0.0 {
            (0.0, 0.0)
        } else {
            (w * p / den, -w * q / den)
        }
    };

    // The integrand is a Lorentzian-like peak of width |eps0|/|sin b| in a.
    let width = if sin_b != 0.0 {
        eps0.abs() / (ratio * sin_b.abs())
    } else {
        1.0
    };
    let points = geometric_breakpoints(width);
    let re = integrate_decaying_tail(|s| parts(s).0, &points, cfg, Rule::Gk21, Strategy::Global)?;

    // Im f(s) + Im f(-s) integrates the odd part over the symmetric range
    // without cancelling large panel values against each other.
    let im = integrate_decaying_tail(
        |s| parts(s).1 + parts(-s).1,
        &points,
        cfg,
        Rule::Gk21,
        Strategy::Global,
    )?;
    Ok((2.0 * re.value, im.value))
}

/// `0, w, 4w, 16w, …` below 1, then 1. Concentrates panels near a peak of
/// width `w` at the origin.
pub(super) fn geometric_breakpoints(w: f64) -> Vec<f64> {
    let mut points = alloc::vec![0.0];
    if w > 0.0 && w < 1.0 {
        let mut x = w;
        while x < 1.0 {
            points.push(x);
            x *= 4.0;
        }
    }
    points.push(1.0);
    points
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn free_kernel_at_coincident_points() {
        let t = 0.3;
        let v = free_kernel(&[0.2, -1.0], &[0.2, -1.0], t).unwrap();
        assert!((v - 1.0 / (4.0 * PI * t)).abs() < 1e-15);
        assert!(free_kernel(&[0.0], &[0.0], 0.0).is_err());
        assert!(free_kernel(&[0.0], &[0.0, 1.0], 1.0).is_err());
    }

    #[test]
    fn halfspace_kernel_values() {
        assert_eq!(halfspace_kernel([0.3, 0.7], [1.0, 0.0], 0.5).unwrap(), 0.0);
        let v = halfspace_kernel([0.0, 1.0], [0.0, 1.0], 1.0).unwrap();
        assert!((v - 0.050_302_555_783_788_09).abs() < 1e-15);
    }

    #[test]
    fn sector_vanishes_at_the_edge() {
        let v = sector_kernel_diag(1.0, 1e-9, 0.75 * PI, 0.1, &cfg()).unwrap();
        assert!(v.abs() < 1e-8, "{v}");
    }

    #[test]
    fn sector_is_continuous_across_branches() {
        let theta = 0.75 * PI;
        for edge in [theta - FRAC_PI_2, FRAC_PI_2] {
            let lo = sector_kernel_diag(1.0, edge - 1e-9, theta, 0.1, &cfg()).unwrap();
            let at = sector_kernel_diag(1.0, edge, theta, 0.1, &cfg()).unwrap();
            let hi = sector_kernel_diag(1.0, edge + 1e-9, theta, 0.1, &cfg()).unwrap();
            assert!((lo - hi).abs() < 1e-6, "{lo} {hi}");
            assert!((lo - at).abs() < 1e-6, "{lo} {at}");
        }
    }

    #[test]
    fn nearly_flat_sector_matches_half_plane() {
        let (r, phi, t) = (1.0, PI / 4.0, 0.1);
        let v = sector_kernel_diag(r, phi, PI - 1e-6, t, &cfg()).unwrap();
        let d = r * phi.sin();
        let h = halfspace_kernel([0.0, d], [0.0, d], t).unwrap();
        assert!((v - h).abs() < 1e-5, "{v} {h}");
    }

    #[test]
    fn sector_symmetric_under_reflection() {
        let theta = 0.8 * PI;
        for phi in [0.1, 0.5, 1.0] {
            let a = sector_kernel_diag(0.7, phi, theta, 0.2, &cfg()).unwrap();
            let b = sector_kernel_diag(0.7, theta - phi, theta, 0.2, &cfg()).unwrap();
            assert!((a - b).abs() < 1e-9, "{phi}: {a} {b}");
        }
    }

    #[test]
    fn sector_guards() {
        assert!(sector_kernel_diag(1.0, 0.5, FRAC_PI_2, 0.1, &cfg()).is_err());
        assert!(sector_kernel_diag(1.0, 0.5, PI, 0.1, &cfg()).is_err());
        assert!(sector_kernel_diag(1.0, 0.0, 2.0, 0.1, &cfg()).is_err());
        assert!(sector_kernel_diag(1.0, 2.0, 2.0, 0.1, &cfg()).is_err());
        assert!(sector_kernel_diag(0.0, 1.0, 2.0, 0.1, &cfg()).is_err());
        assert!(sector_kernel_diag(1.0, 1.0, 2.0, -0.1, &cfg()).is_err());
    }
}
