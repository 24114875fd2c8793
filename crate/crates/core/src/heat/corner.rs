use core::f64::consts::{FRAC_PI_2, PI};

#[allow(unused_imports)] // shadowed by std when it is linked
use num_traits::Float;

use super::kernels::geometric_breakpoints;
use super::HeatError;
use crate::quadrature::{integrate_decaying_tail, QuadratureConfig, Rule, Strategy};

fn check_angle(theta: f64) -> Result<(), HeatError> {
    if theta > FRAC_PI_2 && theta <= PI {
        Ok(())
    } else {
        Err(HeatError::AngleOutOfDomain {
            theta,
            lo: FRAC_PI_2,
            hi: PI,
        })
    }
}

/// `1/((1 + cosh s)(cosh(πs/θ) - cos(π²/θ)))`.
///
/// The second factor is evaluated as `(1 - cos(π²/θ)) + 2 sinh²(πs/2θ)`,
/// which stays accurate when the gap at `s = 0` is small.
pub fn carslaw_integrand(s: f64, theta: f64) -> f64 {
    let gap = 1.0 - (PI * PI / theta).cos();
    let h = (0.5 * PI * s / theta).sinh();
    1.0 / ((1.0 + s.cosh()) * (gap + 2.0 * h * h))
}

/// `∫_ℝ carslaw_integrand(s, θ) ds` for `θ ∈ (π/2, π]`.
pub fn carslaw_integral(theta: f64, cfg: &QuadratureConfig) -> Result<f64, HeatError> {
    carslaw_integral_with(theta, cfg, Rule::Gk21, Strategy::Global)
}

/// [`carslaw_integral`] with an explicit rule and subdivision strategy.
pub fn carslaw_integral_with(
    theta: f64,
    cfg: &QuadratureConfig,
    rule: Rule,
    strategy: Strategy,
) -> Result<f64, HeatError> {
    check_angle(theta)?;
    let w = 1.0 - (PI * PI / theta).cos();
    let mut points = geometric_breakpoints(w.min(0.5));
    if w < 0.5 && !points.contains(&(2.0 * w)) {
        points.push(2.0 * w);
        points.sort_by(f64::total_cmp);
    }
    // The integrand is even, so the half-line value is doubled. The half
    // tolerance keeps the doubled result within `abs_tol`.
    let half = QuadratureConfig {
        abs_tol: 0.5 * cfg.abs_tol,
        ..*cfg
    };
    let est = integrate_decaying_tail(
        |s| carslaw_integrand(s, theta),
        &points,
        &half,
        rule,
        strategy,
    )?;
    Ok(2.0 * est.value)
}

/// Corner contribution to the constant term of the heat trace for an
/// interior angle `θ ∈ (π/2, π]`:
/// `c(θ) = -sin(π²/θ)/(8π) · carslaw_integral(θ)`.
pub fn corner_coefficient(theta: f64, cfg: &QuadratureConfig) -> Result<f64, HeatError> {
    let integral = carslaw_integral(theta, cfg)?;
    // -sin(π²/θ) = sin(π(π-θ)/θ), exact zero at θ = π.
    Ok((PI * (PI - theta) / theta).sin() / (8.0 * PI) * integral)
}

/// `1/((1 + cosh s)(cosh(3s/4) - 1/2))`.
///
/// Dominates [`carslaw_integrand`] for every `θ ∈ [3π/5, π]` and `s ≥ 0`,
/// since `π/θ > 3/4` and `cos(π²/θ) ≤ 1/2` there.
pub fn dominating_integrand(s: f64) -> f64 {
    1.0 / ((1.0 + s.cosh()) * ((0.75 * s).cosh() - 0.5))
}

/// `∫_0^∞ dominating_integrand`.
pub fn dominating_integral(cfg: &QuadratureConfig) -> Result<f64, HeatError> {
    let est = integrate_decaying_tail(
        dominating_integrand,
        &[0.0, 1.0],
        cfg,
        Rule::Gk21,
        Strategy::Global,
    )?;
    Ok(est.value)
}
