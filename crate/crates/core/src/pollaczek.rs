//! Pollaczek polynomials P_n(λ, b) with zero recursion diagonal: evaluation,
//! weight, moments, Jacobi matrix, Gauss rules and large-n asymptotics.

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;

use crate::error::{domain, Result};
use crate::linalg::symmetric_tridiagonal_eigen;
use crate::quadrature::decay_cutoff;
use crate::specfun::gamma::{
    check_positive, gamma_arg, ln_factorial, ln_gamma, ln_gamma_abs, ln_pochhammer,
};
use crate::specfun::{hyp2f1_terminating_exact, GammaLine};

/// Off-diagonal recursion coefficient c_n = ½√((n+1)(n+2b)).
pub fn recursion_coeff(n: usize, b: f64) -> f64 {
    let nf = n as f64;
    0.5 * ((nf + 1.0) * (nf + 2.0 * b)).sqrt()
}

/// The weight ρ_b(λ) = 2^{2b−1}|Γ(b+iλ)|²/(πΓ(2b)).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PollaczekWeight {
    b: f64,
}

impl PollaczekWeight {
    pub fn new(b: f64) -> Result<Self> {
        check_positive("PollaczekWeight::new", "b", b)?;
        Ok(Self { b })
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn ln_density(&self, lambda: f64) -> f64 {
        let b = self.b;
        let line = GammaLine { b, lambda };
        (2.0 * b - 1.0) * LN_2 + 2.0 * ln_gamma_abs(line) - PI.ln() - ln_gamma(2.0 * b)
    }

    pub fn density(&self, lambda: f64) -> f64 {
        self.ln_density(lambda).exp()
    }
}

/// ρ_b(λ).
pub fn weight(lambda: f64, w: &PollaczekWeight) -> f64 {
    w.density(lambda)
}

/// P_0..P_{len−1} at λ by the forward recursion c_{n−1}P_{n−1} + c_n P_{n+1} = λP_n.
pub fn pollaczek_values(len: usize, lambda: f64, b: f64) -> Result<Vec<f64>> {
    check_positive("pollaczek_values", "b", b)?;
    let mut out = Vec::with_capacity(len);
    if len == 0 {
        return Ok(out);
    }
    out.push(1.0);
    if len == 1 {
        return Ok(out);
    }
    out.push(lambda / recursion_coeff(0, b));
    for n in 1..len - 1 {
        let next =
            (lambda * out[n] - recursion_coeff(n - 1, b) * out[n - 1]) / recursion_coeff(n, b);
        out.push(next);
    }
    Ok(out)
}

/// P_n(λ, b) by forward recursion.
pub fn pollaczek_eval(n: usize, lambda: f64, b: f64) -> Result<f64> {
    Ok(pollaczek_values(n + 1, lambda, b)?[n])
}

/// Values and λ-derivatives of P_0..P_{len−1}.
pub fn pollaczek_values_with_derivative(
    len: usize,
    lambda: f64,
    b: f64,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let p = pollaczek_values(len, lambda, b)?;
    let mut dp = vec![0.0; len];
    if len > 1 {
        dp[1] = 1.0 / recursion_coeff(0, b);
    }
    for n in 1..len.saturating_sub(1) {
        dp[n + 1] =
            (p[n] + lambda * dp[n] - recursion_coeff(n - 1, b) * dp[n - 1]) / recursion_coeff(n, b);
    }
    Ok((p, dp))
}

/// √((2b)_n / n!), the factor between P_n and the Gauss series.
pub fn series_normalizer(n: usize, b: f64) -> f64 {
    (0.5 * (ln_pochhammer(2.0 * b, n) - ln_factorial(n))).exp()
}

/// P_n(λ, b) = iⁿ √((2b)_n/n!) F(−n, b+iλ, 2b; 2), with the series summed in
/// exact rational arithmetic. Independent of the recursion.
pub fn pollaczek_via_2f1_complex(n: usize, lambda: f64, b: f64) -> Result<Complex64> {
    check_positive("pollaczek_via_2f1", "b", b)?;
    let f = hyp2f1_terminating_exact(n, Complex64::new(b, lambda), 2.0 * b, 2.0)?;
    let mut prod = 1.0;
    for k in 0..n {
        prod *= (2.0 * b + k as f64) / (k as f64 + 1.0);
    }
    Ok(Complex64::i().powu(n as u32) * prod.sqrt() * f)
}

/// Real part of [`pollaczek_via_2f1_complex`]; the imaginary part vanishes
/// identically for real λ.
pub fn pollaczek_via_2f1(n: usize, lambda: f64, b: f64) -> Result<f64> {
    pollaczek_via_2f1_complex(n, lambda, b).map(|v| v.re)
}

/// ∫ λ^order ρ_b(λ) dλ from the Taylor coefficients of cosh(x/2)^{−2b}.
pub fn moment(order: usize, b: f64) -> Result<f64> {
    check_positive("moment", "b", b)?;
    if order % 2 == 1 {
        return Ok(0.0);
    }
    let h = sech_power_taylor(order, b);
    let m = order / 2;
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    Ok(sign * (ln_factorial(order)).exp() * h[order])
}

/// Taylor coefficients h_0..h_len of cosh(x/2)^{−2b}, by the power rule
/// n h_n = Σ_{k=1}^n ((α+1)k − n) g_k h_{n−k} for h = g^α, g = cosh(x/2).
fn sech_power_taylor(len: usize, b: f64) -> Vec<f64> {
    let alpha = -2.0 * b;
    let mut g = vec![0.0; len + 1];
    let mut t = 1.0;
    for (k, gk) in g.iter_mut().enumerate() {
        if k > 0 {
            t *= 0.5 / k as f64;
        }
        if k % 2 == 0 {
            *gk = t;
        }
    }
    let mut h = vec![0.0; len + 1];
    h[0] = 1.0;
    for n in 1..=len {
        let nf = n as f64;
        let mut s = 0.0;
        for k in (2..=n).step_by(2) {
            s += ((alpha + 1.0) * k as f64 - nf) * g[k] * h[n - k];
        }
        h[n] = s / nf;
    }
    h
}

/// Leading M×M block of the infinite Jacobi matrix: zero diagonal, off-diagonal c_m.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobiMatrix {
    pub b: f64,
    pub offdiag: Vec<f64>,
}

impl JacobiMatrix {
    pub fn size(&self) -> usize {
        self.offdiag.len() + 1
    }
}

pub fn jacobi_matrix(size: usize, b: f64) -> Result<JacobiMatrix> {
    check_positive("jacobi_matrix", "b", b)?;
    if size == 0 {
        return Err(domain("jacobi_matrix", "size must be at least 1"));
    }
    Ok(JacobiMatrix {
        b,
        offdiag: (0..size - 1).map(|m| recursion_coeff(m, b)).collect(),
    })
}

/// Gauss rule of the truncated Jacobi matrix: eigenvalues paired with the
/// squared first components of the normalized eigenvectors.
pub fn gauss_nodes_weights(size: usize, b: f64) -> Result<Vec<(f64, f64)>> {
    let jm = jacobi_matrix(size, b)?;
    let diag = vec![0.0; jm.size()];
    let (nodes, vecs) = symmetric_tridiagonal_eigen(&diag, &jm.offdiag)?;
    Ok(nodes
        .iter()
        .enumerate()
        .map(|(k, &x)| (x, vecs[(0, k)] * vecs[(0, k)]))
        .collect())
}

/// Phases of the large-n expansion: φ = arg Γ(b+iλ), φ₁ = arg Γ(b+1+iλ).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticPhase {
    pub phi: f64,
    pub phi1: f64,
}

impl AsymptoticPhase {
    pub fn new(lambda: f64, b: f64) -> Result<Self> {
        let line = GammaLine::new(b, lambda)?;
        let phi = gamma_arg(line);
        Ok(Self {
            phi,
            phi1: phi + (lambda / b).atan(),
        })
    }
}

/// Terms of the large-n expansion of iⁿ F(−n, b+iλ, 2b; 2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticTerms {
    pub leading: f64,
    pub correction: f64,
}

impl AsymptoticTerms {
    pub fn two_term(&self) -> f64 {
        self.leading + self.correction
    }
}

/// Large-n expansion
/// iⁿF ≈ [2Γ(2b)/|Γ(b+iλ)|](2n)^{−b}{cos(λ ln 2n − φ − nπ/2) − (b√(b²+λ²)/n) cos(λ ln 2n − φ₁ − nπ/2)}.
pub fn asymptotic_2f1(n: usize, lambda: f64, b: f64) -> Result<AsymptoticTerms> {
    if n == 0 {
        return Err(domain("asymptotic_2f1", "n must be positive"));
    }
    let phase = AsymptoticPhase::new(lambda, b)?;
    let nf = n as f64;
    let two_n = 2.0 * nf;
    let amp =
        2.0 * (ln_gamma(2.0 * b) - ln_gamma_abs(GammaLine { b, lambda }) - b * two_n.ln()).exp();
    let quarter_turns = (n % 4) as f64 * 0.5 * PI;
    let base = lambda * two_n.ln() - quarter_turns;
    Ok(AsymptoticTerms {
        leading: amp * (base - phase.phi).cos(),
        correction: -amp * b * b.hypot(lambda) / nf * (base - phase.phi1).cos(),
    })
}

/// iⁿ F(−n, b+iλ, 2b; 2) = P_n / √((2b)_n/n!) from the recursion; exact up
/// to rounding for any n.
pub fn rescaled_2f1(n: usize, lambda: f64, b: f64) -> Result<f64> {
    Ok(pollaczek_eval(n, lambda, b)? / series_normalizer(n, b))
}

/// Both sides of c_M Δ_M = (λ−λ′) Σ_{n≤M} P_n(λ)P_n(λ′).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChristoffelSum {
    pub direct: f64,
    pub closed_form: f64,
    /// Σ |P_n(λ)P_n(λ′)|, the rounding scale of `direct`.
    pub abs_sum: f64,
}

/// Σ_{n≤M} P_n(λ)P_n(λ′) and c_M Δ_M/(λ−λ′) with Δ_M = P_M(λ′)P_{M+1}(λ) − P_{M+1}(λ′)P_M(λ).
///
/// For λ = λ′ exactly the closed form is the limit
/// c_M (P′_{M+1}P_M − P′_M P_{M+1}), using derivatives from the
/// differentiated recursion.
pub fn christoffel_sum(m: usize, lambda: f64, lambda2: f64, b: f64) -> Result<ChristoffelSum> {
    let c = recursion_coeff(m, b);
    let (closed_form, p, q) = if lambda == lambda2 {
        let (p, dp) = pollaczek_values_with_derivative(m + 2, lambda, b)?;
        let cf = c * (dp[m + 1] * p[m] - dp[m] * p[m + 1]);
        (cf, p.clone(), p)
    } else {
        let p = pollaczek_values(m + 2, lambda, b)?;
        let q = pollaczek_values(m + 2, lambda2, b)?;
        let delta = q[m] * p[m + 1] - q[m + 1] * p[m];
        (c * delta / (lambda - lambda2), p, q)
    };
    let mut direct = 0.0;
    let mut abs_sum = 0.0;
    for n in 0..=m {
        direct += p[n] * q[n];
        abs_sum += (p[n] * q[n]).abs();
    }
    Ok(ChristoffelSum {
        direct,
        closed_form,
        abs_sum,
    })
}

/// Half-width L of the λ-interval carrying all but ε/10 of the mass of
/// ρ_b(λ)·Σ_{k≤degree} P_k(λ)², which dominates every |P_m P_n| ρ_b with
/// m, n ≤ degree. The weight decays like |λ|^{2b−1}e^{−π|λ|}.
pub fn quadrature_cutoff(b: f64, eps: f64, degree: usize) -> Result<f64> {
    let w = PollaczekWeight::new(b)?;
    if !(eps > 0.0) {
        return Err(domain(
            "quadrature_cutoff",
            format!("tolerance must be positive, got {eps}"),
        ));
    }
    let envelope = |lambda: f64| {
        let p = pollaczek_values(degree + 1, lambda, b).unwrap_or_default();
        let s: f64 = p.iter().map(|v| v * v).sum();
        w.density(lambda) * s
    };
    // past the envelope's peak the tail integral is below envelope(L)/(π − small)
    Ok(decay_cutoff(envelope, 0.0, 0.25, 0.1 * eps, 500.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::Integrator;
    use approx::assert_relative_eq;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::ToPrimitive;
    use proptest::prelude::*;

    const BS: [f64; 5] = [0.25, 0.5, 0.75, 1.0, 1.5];

    #[test]
    fn low_order_values() {
        assert_eq!(pollaczek_eval(0, 3.7, 0.25).unwrap(), 1.0);
        assert_eq!(pollaczek_eval(1, 0.0, 0.9).unwrap(), 0.0);
        assert_relative_eq!(
            pollaczek_eval(1, 1.0, 0.25).unwrap(),
            2.0 * 2f64.sqrt(),
            max_relative = 1e-15
        );
        assert!(pollaczek_eval(3, 1.0, 0.0).is_err());
        assert!(pollaczek_eval(3, 1.0, -1.0).is_err());
    }

    #[test]
    fn leading_coefficient_is_positive() {
        for &b in &BS {
            for n in 0..15 {
                assert!(pollaczek_eval(n, 1e3, b).unwrap() > 0.0);
            }
        }
    }

    #[test]
    fn recursion_matches_exact_series() {
        for &b in &BS {
            for &lam in &[0.0, 0.3, -1.1, 2.5, 6.0] {
                let p = pollaczek_values(61, lam, b).unwrap();
                for (n, &pn) in p.iter().enumerate() {
                    let v = pollaczek_via_2f1_complex(n, lam, b).unwrap();
                    let scale = pn.abs().max(1e-3);
                    assert!(
                        (v.re - pn).abs() <= 1e-10 * scale,
                        "n={n} b={b} λ={lam}: {} vs {pn}",
                        v.re
                    );
                    assert!(v.im.abs() <= 1e-12 * scale);
                }
            }
        }
        assert_eq!(pollaczek_via_2f1(0, 1.0, 0.25).unwrap(), 1.0);
        assert_relative_eq!(
            pollaczek_via_2f1(2, 0.0, 0.25).unwrap(),
            pollaczek_eval(2, 0.0, 0.25).unwrap(),
            max_relative = 1e-15
        );
    }

    #[test]
    fn weight_special_cases() {
        let w = PollaczekWeight::new(0.5).unwrap();
        assert_relative_eq!(weight(0.0, &w), 1.0, max_relative = 1e-14);
        for &lam in &[0.2, 1.0, 3.0, -4.5] {
            assert_relative_eq!(
                weight(lam, &w),
                1.0 / (PI * lam).cosh(),
                max_relative = 1e-12
            );
        }
        let w1 = PollaczekWeight::new(1.0).unwrap();
        for &lam in &[0.2, 1.0, 3.0] {
            // 2|Γ(1+iλ)|²/π = 2λ/sinh(πλ)
            assert_relative_eq!(
                weight(lam, &w1),
                2.0 * lam / (PI * lam).sinh(),
                max_relative = 1e-12
            );
        }
        assert!(PollaczekWeight::new(0.0).is_err());
    }

    fn quad_moment(order: i32, b: f64) -> f64 {
        let w = PollaczekWeight::new(b).unwrap();
        let l = quadrature_cutoff(b, 1e-14, order as usize)
            .unwrap()
            .max(40.0);
        Integrator::new(1e-15, 1e-13)
            .integrate(|x| x.powi(order) * w.density(x), -l, l)
            .unwrap()
    }

    #[test]
    fn weight_is_normalized_and_second_moment() {
        for &b in &BS {
            assert_relative_eq!(quad_moment(0, b), 1.0, max_relative = 1e-11);
            assert_relative_eq!(quad_moment(2, b), b / 2.0, max_relative = 1e-11);
        }
    }

    fn exact_moment(order: usize, b_num: i64, b_den: i64) -> f64 {
        let q = |n: i64| BigRational::from_integer(BigInt::from(n));
        let alpha = -q(2) * BigRational::new(BigInt::from(b_num), BigInt::from(b_den));
        let mut g = vec![q(0); order + 1];
        let mut t = q(1);
        for k in 0..=order {
            if k > 0 {
                t = t / q(2 * k as i64);
            }
            if k % 2 == 0 {
                g[k] = t.clone();
            }
        }
        let mut h = vec![q(0); order + 1];
        h[0] = q(1);
        for n in 1..=order {
            let mut s = q(0);
            for k in 1..=n {
                s += ((&alpha + q(1)) * q(k as i64) - q(n as i64)) * &g[k] * &h[n - k];
            }
            h[n] = s / q(n as i64);
        }
        let mut fact = q(1);
        for k in 1..=order {
            fact = fact * q(k as i64);
        }
        let sign = if (order / 2) % 2 == 0 { q(1) } else { -q(1) };
        (sign * fact * &h[order]).to_f64().unwrap()
    }

    #[test]
    fn moments_match_rational_recursion_and_quadrature() {
        for &b in &BS {
            assert_eq!(moment(0, b).unwrap(), 1.0);
            assert_eq!(moment(1, b).unwrap(), 0.0);
            assert_eq!(moment(7, b).unwrap(), 0.0);
            assert_relative_eq!(moment(2, b).unwrap(), b / 2.0, max_relative = 1e-15);
            for order in [4, 6, 8] {
                assert_relative_eq!(
                    moment(order, b).unwrap(),
                    quad_moment(order as i32, b),
                    max_relative = 1e-9
                );
            }
        }
        for &(num, den) in &[(1, 4), (3, 4), (3, 2)] {
            let b = num as f64 / den as f64;
            for order in (0..=30).step_by(2) {
                assert_relative_eq!(
                    moment(order, b).unwrap(),
                    exact_moment(order, num, den),
                    max_relative = 1e-12
                );
            }
        }
    }

    #[test]
    fn moments_are_hankel_positive() {
        // the Hankel matrix of a positive measure is positive definite
        for &b in &BS {
            let mu: Vec<f64> = (0..9).map(|k| moment(k, b).unwrap()).collect();
            let h = nalgebra::DMatrix::from_fn(5, 5, |i, j| mu[i + j]);
            assert!(h.cholesky().is_some(), "b={b}");
        }
    }

    #[test]
    fn jacobi_matrix_entries() {
        let jm = jacobi_matrix(2, 0.25).unwrap();
        assert_eq!(jm.size(), 2);
        assert_relative_eq!(jm.offdiag[0], 0.5 * 0.5f64.sqrt(), max_relative = 1e-15);
        assert!(jacobi_matrix(0, 0.25).is_err());
        assert!(jacobi_matrix(40, 0.7)
            .unwrap()
            .offdiag
            .iter()
            .all(|&c| c > 0.0));
    }

    #[test]
    fn reciprocal_coefficients_diverge() {
        // 1/c_m ~ 2/m, so each doubling of the prefix adds about 2 ln 2
        for &b in &BS {
            let s = |m: usize| (0..m).map(|k| 1.0 / recursion_coeff(k, b)).sum::<f64>();
            let mut prev = s(1000);
            for m in [2000, 4000, 8000] {
                let cur = s(m);
                assert!((cur - prev - 2.0 * LN_2).abs() < 1e-2, "b={b} m={m}");
                prev = cur;
            }
        }
    }

    #[test]
    fn gauss_rule_basics() {
        let one = gauss_nodes_weights(1, 0.3).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].0, 0.0);
        assert_relative_eq!(one[0].1, 1.0, max_relative = 1e-15);
        for &b in &BS {
            let rule = gauss_nodes_weights(80, b).unwrap();
            let total: f64 = rule.iter().map(|r| r.1).sum();
            assert_relative_eq!(total, 1.0, max_relative = 1e-13);
            let second: f64 = rule.iter().map(|(x, w)| w * x * x).sum();
            assert_relative_eq!(second, b / 2.0, max_relative = 1e-10);
            for k in 0..40 {
                assert_relative_eq!(
                    rule[k].0,
                    -rule[79 - k].0,
                    epsilon = 1e-11 * (1.0 + rule[k].0.abs())
                );
            }
        }
    }

    #[test]
    fn gauss_nodes_are_zeros_of_next_polynomial() {
        for &b in &BS {
            for (x, _) in gauss_nodes_weights(12, b).unwrap() {
                let p = pollaczek_values(13, x, b).unwrap();
                let scale = p.iter().fold(0.0f64, |m, v| m.max(v.abs()));
                assert!(p[12].abs() < 1e-10 * scale, "b={b} x={x}");
            }
        }
    }

    #[test]
    fn asymptotic_phases() {
        let ph = AsymptoticPhase::new(0.0, 0.6).unwrap();
        assert_eq!(ph.phi, 0.0);
        assert_eq!(ph.phi1, 0.0);
        let ph = AsymptoticPhase::new(1.3, 0.25).unwrap();
        let direct = gamma_arg(GammaLine {
            b: 1.25,
            lambda: 1.3,
        });
        assert_relative_eq!(ph.phi1, direct, max_relative = 1e-12);
    }

    fn envelope_error(n: usize, lam: f64, b: f64, two_term: bool) -> f64 {
        let err = |k: usize| {
            let t = asymptotic_2f1(k, lam, b).unwrap();
            let approx = if two_term { t.two_term() } else { t.leading };
            rescaled_2f1(k, lam, b).unwrap() - approx
        };
        err(n).hypot(err(n + 1))
    }

    #[test]
    fn asymptotic_error_scaling() {
        for &(b, lam) in &[(0.25, 1.0), (0.75, 0.5)] {
            let amp = |n: usize| {
                let t = asymptotic_2f1(n, lam, b).unwrap();
                let s = asymptotic_2f1(n + 1, lam, b).unwrap();
                t.leading.hypot(s.leading)
            };
            // leading term: error relative to amplitude is O(1/n)
            let r1 = envelope_error(256, lam, b, false) / amp(256);
            let r2 = envelope_error(1024, lam, b, false) / amp(1024);
            assert!(
                (r1 / r2 - 4.0).abs() < 1.0,
                "b={b} λ={lam} ratio {}",
                r1 / r2
            );
            // two terms: O(1/n²)
            let r1 = envelope_error(256, lam, b, true) / amp(256);
            let r2 = envelope_error(1024, lam, b, true) / amp(1024);
            let ratio = r1 / r2;
            assert!(ratio > 8.0 && ratio < 32.0, "b={b} λ={lam} ratio {ratio}");
        }
        // amplitude ∝ (2n)^{−b} at λ = 0 where the cosine is ±1 on even n
        let b = 0.75;
        let a1 = asymptotic_2f1(1000, 0.0, b).unwrap().leading.abs();
        let a2 = asymptotic_2f1(4000, 0.0, b).unwrap().leading.abs();
        assert_relative_eq!(a1 / a2, 4f64.powf(b), max_relative = 1e-12);
    }

    #[test]
    fn christoffel_base_and_confluent() {
        let s = christoffel_sum(0, 0.7, -1.3, 0.4).unwrap();
        assert_eq!(s.direct, 1.0);
        assert_relative_eq!(s.closed_form, 1.0, max_relative = 1e-14);
        for &b in &BS {
            let s = christoffel_sum(30, 1.2, 1.2, b).unwrap();
            assert_relative_eq!(s.direct, s.closed_form, max_relative = 1e-11);
        }
    }

    #[test]
    fn cutoff_grows_with_degree_and_precision() {
        let a = quadrature_cutoff(0.5, 1e-8, 0).unwrap();
        let c = quadrature_cutoff(0.5, 1e-12, 0).unwrap();
        let d = quadrature_cutoff(0.5, 1e-8, 20).unwrap();
        assert!(a < c && a < d);
        let w = PollaczekWeight::new(0.5).unwrap();
        assert!(w.density(a) < 1e-9);
    }

    proptest! {
        #[test]
        fn parity(n in 0usize..40, lam in -8.0f64..8.0, b in 0.05f64..3.0) {
            let p = pollaczek_eval(n, lam, b).unwrap();
            let m = pollaczek_eval(n, -lam, b).unwrap();
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            prop_assert!((p - sign * m).abs() <= 1e-14 * p.abs().max(1.0));
        }

        #[test]
        fn weight_is_even_and_positive(lam in -30.0f64..30.0, b in 0.05f64..3.0) {
            let w = PollaczekWeight::new(b).unwrap();
            let r = w.density(lam);
            prop_assert!(r > 0.0);
            prop_assert!((r - w.density(-lam)).abs() <= 1e-14 * r);
        }

        #[test]
        fn christoffel_identity(m in 0usize..=60, lam in -6.0f64..6.0, lam2 in -6.0f64..6.0, b in 0.1f64..2.0) {
            prop_assume!((lam - lam2).abs() > 1e-3);
            let s = christoffel_sum(m, lam, lam2, b).unwrap();
            prop_assert!((s.direct - s.closed_form).abs() <= 1e-11 * s.abs_sum.max(1.0));
            let t = christoffel_sum(m, lam2, lam, b).unwrap();
            prop_assert!((s.closed_form - t.closed_form).abs() <= 1e-12 * s.abs_sum.max(1.0));
        }

        #[test]
        fn gauss_nodes_interlace(size in 1usize..40, b in 0.1f64..2.0) {
            let a = gauss_nodes_weights(size, b).unwrap();
            let c = gauss_nodes_weights(size + 1, b).unwrap();
            for k in 0..size {
                prop_assert!(c[k].0 < a[k].0 + 1e-12 && a[k].0 < c[k + 1].0 + 1e-12);
            }
        }
    }
}
