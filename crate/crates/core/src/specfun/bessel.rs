use num_complex::Complex64;

use super::gamma::ln_gamma;
use crate::error::{domain, Error, Result};
use crate::quadrature::Integrator;

const BESSEL_I_MAX_TERMS: usize = 500;

/// Modified Bessel function of the first kind I_ν(x) for ν ≥ 0 and complex x,
/// by the ascending series (x/2)^ν Σ (x²/4)^k / (k! Γ(ν+k+1)).
///
/// Non-integer ν uses the principal branch of (x/2)^ν.
pub fn bessel_i(nu: f64, x: Complex64) -> Result<Complex64> {
    if !(nu >= 0.0) || !nu.is_finite() {
        return Err(domain(
            "bessel_i",
            format!("order must be non-negative, got {nu}"),
        ));
    }
    let half = x * 0.5;
    let lead = if nu == 0.0 {
        Complex64::new(1.0, 0.0)
    } else if nu.fract() == 0.0 {
        half.powi(nu as i32)
    } else if half == Complex64::new(0.0, 0.0) {
        Complex64::new(0.0, 0.0)
    } else {
        half.powf(nu)
    };
    let q = half * half;
    let mut term = lead * (-ln_gamma(nu + 1.0)).exp();
    let mut sum = term;
    for k in 0..BESSEL_I_MAX_TERMS {
        let kf = k as f64;
        term *= q / ((kf + 1.0) * (nu + kf + 1.0));
        sum += term;
        if kf > q.norm().sqrt() && term.norm() <= 1e-17 * sum.norm() {
            return Ok(sum);
        }
        if term == Complex64::new(0.0, 0.0) {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence {
        func: "bessel_i",
        iterations: BESSEL_I_MAX_TERMS,
        last_term: term.norm(),
        partial_sum: sum.norm(),
    })
}

/// Upper limit T of the cosh integral with e^{−x cosh T} below
/// 1e−16 of the integrand peak e^{−x}.
fn cosh_cutoff(x: f64) -> f64 {
    let excess = 16.0 * std::f64::consts::LN_10 / x;
    // x (cosh T − 1) = 16 ln 10
    (1.0 + excess).acosh()
}

/// K_{iλ}(x) for real λ and x > 0, from
/// K_{iλ}(x) = ∫₀^∞ e^{−x cosh t} cos(λt) dt.
pub fn bessel_k_imag(lambda: f64, x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain(
            "bessel_k_imag",
            format!("argument must be positive, got {x}"),
        ));
    }
    if !lambda.is_finite() {
        return Err(domain(
            "bessel_k_imag",
            format!("non-finite order {lambda}"),
        ));
    }
    let t_max = cosh_cutoff(x);
    let peak = (-x).exp();
    let integrand = |t: f64| (-x * t.cosh()).exp() * (lambda * t).cos();
    // one panel per half oscillation keeps the adaptive search local
    let pieces = ((lambda.abs() * t_max / std::f64::consts::PI).ceil() as usize).clamp(1, 2000);
    let breaks: Vec<f64> = (0..=pieces)
        .map(|i| t_max * i as f64 / pieces as f64)
        .collect();
    // the Kronrod error floor is ~50ε of ∫|f| ≤ peak·T
    let q = Integrator::new(1e-13 * peak * t_max.max(1.0), 1e-13).with_max_panels(4000);
    let v = q.integrate_vec_breaks(1, |t, out: &mut [f64]| out[0] = integrand(t), &breaks)?;
    Ok(v[0])
}
