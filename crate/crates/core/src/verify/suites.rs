use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::oracles::{bessel_k0, two_mode_diagonal_projection};
use super::{CaseResult, VerificationReport};
use crate::classifier::{
    classify, instability_probe, numeric_spectrum_check, QuadHamiltonian, SpectrumKind, DEFAULT_TOL,
};
use crate::error::{Error, Result};
use crate::one_mode::{
    bargmann_kernel, interior_residual, j2_apply_nrep, j2_nrep, j2_zrep, kplus_apply_nrep,
    kplus_nrep, kplus_qrep, kplus_zrep, NRepEigenvector, Parity, QRepClosedForm,
};
use crate::pollaczek::{
    asymptotic_2f1, christoffel_sum, gauss_nodes_weights, moment, pollaczek_values,
    quadrature_cutoff, rescaled_2f1, PollaczekWeight,
};
use crate::quadrature::Integrator;
use crate::specfun::bessel_k_imag;
use crate::specfun::gamma::gamma_arg;
use crate::specfun::orthopoly::oscillator_eigenfunction;
use crate::specfun::GammaLine;
use crate::two_mode::{
    apply_ladder, casimir_column, j2_nrep_2, j2_qrep_2_delta0, j2_zrep_2, kplus_nrep_2,
    kplus_zrep_2, LadderOp, TwoModeLabel,
};

/// Evenly spaced breakpoints, about one per unit length.
fn unit_breaks(a: f64, b: f64) -> Vec<f64> {
    let pieces = ((b - a).ceil() as usize).max(1);
    (0..=pieces)
        .map(|i| a + (b - a) * i as f64 / pieces as f64)
        .collect()
}

fn poly_or_nan(len: usize, lambda: f64, b: f64) -> Vec<f64> {
    pollaczek_values(len, lambda, b).unwrap_or_else(|_| vec![f64::NAN; len])
}

fn check_tolerance(tol: f64) -> Result<()> {
    if tol > 0.0 {
        Ok(())
    } else {
        Err(Error::Argument(format!(
            "tolerance must be positive, got {tol}"
        )))
    }
}

/// Packed upper triangle of the Gram matrix ∫ρ_b P_m P_n dλ, m ≤ n ≤ n_max.
/// The integrand is folded onto λ ≥ 0, so odd entries cancel pointwise.
fn gram_upper(b: f64, n_max: usize, abs_tol: f64) -> Result<Vec<f64>> {
    let w = PollaczekWeight::new(b)?;
    let len = n_max + 1;
    let cutoff = quadrature_cutoff(b, abs_tol, n_max)?;
    let integrand = |lambda: f64, out: &mut [f64]| {
        let p = poly_or_nan(len, lambda, b);
        let q = poly_or_nan(len, -lambda, b);
        let (rp, rq) = (w.density(lambda), w.density(-lambda));
        let mut k = 0;
        for m in 0..len {
            for n in m..len {
                out[k] = rp * p[m] * p[n] + rq * q[m] * q[n];
                k += 1;
            }
        }
    };
    Integrator::new(abs_tol, 0.0)
        .with_max_panels(20_000)
        .integrate_vec_breaks(len * (len + 1) / 2, integrand, &unit_breaks(0.0, cutoff))
}

fn packed_index(len: usize, m: usize, n: usize) -> usize {
    m * len - m * (m + 1) / 2 + n
}

fn orthonormality_cases(b: f64, n_max: usize, tol: f64) -> Vec<CaseResult> {
    let len = n_max + 1;
    let prefix = format!("b={b}");
    let gram = match gram_upper(b, n_max, 1e-3 * tol.min(1e-10)) {
        Ok(g) => g,
        Err(e) => {
            return vec![CaseResult::failed(
                format!("{prefix}: Gram matrix"),
                &e,
                tol,
            )]
        }
    };
    let entry = |m: usize, n: usize| gram[packed_index(len, m, n)];
    let mut worst: f64 = 0.0;
    for m in 0..len {
        for n in m..len {
            let expect = if m == n { 1.0 } else { 0.0 };
            worst = worst.max((entry(m, n) - expect).abs());
        }
    }
    let mut cases = vec![
        CaseResult::new(
            format!("{prefix}: max |G - I| over {len}x{len} Gram matrix"),
            worst,
            tol,
        ),
        CaseResult::new(
            format!("{prefix}: <P0,P0> = 1"),
            (entry(0, 0) - 1.0).abs(),
            1e-10,
        ),
    ];
    if len > 1 {
        cases.push(CaseResult::new(
            format!("{prefix}: <P0,P1> = 0 by parity"),
            entry(0, 1).abs(),
            1e-14,
        ));
    }
    if len > 5 {
        cases.push(CaseResult::new(
            format!("{prefix}: <P5,P5> = 1"),
            (entry(5, 5) - 1.0).abs(),
            1e-8,
        ));
    }
    cases
}

/// Gram-matrix deviation from the identity for each b.
pub fn run_orthonormality(bs: &[f64], n_max: usize, tol: f64) -> Result<VerificationReport> {
    check_tolerance(tol)?;
    for &b in bs {
        PollaczekWeight::new(b)?;
    }
    let cases = bs
        .par_iter()
        .flat_map_iter(|&b| orthonormality_cases(b, n_max, tol))
        .collect();
    Ok(VerificationReport::new("orthonormality", cases))
}

/// ∫λ^k ρ_b dλ by adaptive quadrature, folded onto λ ≥ 0.
fn quadrature_moment(order: usize, b: f64) -> Result<f64> {
    let w = PollaczekWeight::new(b)?;
    // λ^12 ρ_b(λ) is below 1e−40 past λ = 60 for b ≤ 3
    let integrand = |lambda: f64, out: &mut [f64]| {
        let up = lambda.powi(order as i32) * w.density(lambda);
        let down = (-lambda).powi(order as i32) * w.density(-lambda);
        out[0] = up + down;
    };
    let v = Integrator::new(1e-15, 1e-13)
        .with_max_panels(4000)
        .integrate_vec_breaks(1, integrand, &unit_breaks(0.0, 60.0))?;
    Ok(v[0])
}

fn moment_cases(b: f64, orders: &[usize]) -> Vec<CaseResult> {
    let prefix = format!("b={b}");
    let rule = match gauss_nodes_weights(80, b) {
        Ok(r) => r,
        Err(e) => return vec![CaseResult::failed(format!("{prefix}: Gauss rule"), &e, 0.0)],
    };
    let gauss = |k: usize| rule.iter().map(|(x, w)| w * x.powi(k as i32)).sum::<f64>();
    let gauss_abs = |k: usize| {
        rule.iter()
            .map(|(x, w)| w * x.abs().powi(k as i32))
            .sum::<f64>()
    };
    let mut cases = Vec::new();
    for &k in orders {
        let label = format!("{prefix}, order {k:02}");
        let taylor = moment(k, b);
        let quad = quadrature_moment(k, b);
        let (taylor, quad) = match (taylor, quad) {
            (Ok(t), Ok(q)) => (t, q),
            (Err(e), _) | (_, Err(e)) => {
                cases.push(CaseResult::failed(label, &e, 1e-10));
                continue;
            }
        };
        let g = gauss(k);
        if k % 2 == 1 {
            cases.push(CaseResult::new(
                format!("{label}: recursion moment vanishes"),
                taylor.abs(),
                0.0,
            ));
            cases.push(CaseResult::new(
                format!("{label}: quadrature moment vanishes"),
                quad.abs(),
                1e-14,
            ));
            // the computed nodes are symmetric only to rounding, amplified k-fold by x^k
            cases.push(CaseResult::new(
                format!("{label}: Gauss-rule moment vanishes relative to sum w|x|^k"),
                g.abs() / gauss_abs(k),
                1e-12,
            ));
            continue;
        }
        let rel = |x: f64, y: f64| (x - y).abs() / x.abs().max(1.0);
        cases.push(CaseResult::new(
            format!("{label}: recursion vs quadrature"),
            rel(taylor, quad),
            1e-10,
        ));
        cases.push(CaseResult::new(
            format!("{label}: recursion vs Gauss rule M=80"),
            rel(taylor, g),
            1e-10,
        ));
        cases.push(CaseResult::new(
            format!("{label}: quadrature vs Gauss rule M=80"),
            rel(quad, g),
            1e-10,
        ));
        let exact = match k {
            0 => Some(1.0),
            2 => Some(0.5 * b),
            _ => None,
        };
        if let Some(x) = exact {
            for (name, v) in [
                ("recursion", taylor),
                ("quadrature", quad),
                ("Gauss rule", g),
            ] {
                cases.push(CaseResult::new(
                    format!("{label}: {name} equals {x}"),
                    (v - x).abs(),
                    1e-10,
                ));
            }
        }
    }
    cases
}

/// Moments of ρ_b by the Taylor recursion, adaptive quadrature and the
/// 80-point Gauss rule, compared pairwise.
pub fn run_moments(bs: &[f64], orders: &[usize]) -> Result<VerificationReport> {
    if let Some(&k) = orders.iter().find(|&&k| k > 12) {
        return Err(Error::Argument(format!(
            "moment orders are limited to 12, got {k}"
        )));
    }
    for &b in bs {
        PollaczekWeight::new(b)?;
    }
    let cases = bs
        .par_iter()
        .flat_map_iter(|&b| moment_cases(b, orders))
        .collect();
    Ok(VerificationReport::new("moments", cases))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParsevalKind {
    OneMode,
    TwoMode,
}

fn random_coeffs(rng: &mut ChaCha8Rng, len: usize) -> Vec<Complex64> {
    let v: Vec<Complex64> = (0..len)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / norm).collect()
}

fn overlap(vector: &[Complex64], state: &[Complex64]) -> Complex64 {
    vector.iter().zip(state).map(|(f, c)| f.conj() * c).sum()
}

fn basis_state(len: usize, n: usize) -> Vec<Complex64> {
    let mut v = vec![Complex64::new(0.0, 0.0); len];
    v[n] = Complex64::new(1.0, 0.0);
    v
}

const ONE_MODE_SUPPORT: usize = 25;
/// Two-mode states live on n₁, n₂ ≤ 4.
const TWO_MODE_MAX: usize = 4;

fn parseval_one_mode(trials: usize, seed: u64, tol: f64) -> Vec<CaseResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut states = vec![
        (
            "one-mode |0>: integral of rho_1/4 = 1".to_string(),
            basis_state(ONE_MODE_SUPPORT, 0),
        ),
        (
            "one-mode |1>: integral of rho_3/4 = 1".to_string(),
            basis_state(ONE_MODE_SUPPORT, 1),
        ),
    ];
    for t in 0..trials {
        states.push((
            format!("one-mode random state {t:02} (n <= 24)"),
            random_coeffs(&mut rng, ONE_MODE_SUPPORT),
        ));
    }
    let eps = 1e-3 * tol;
    let cutoff = quadrature_cutoff(0.25, eps, ONE_MODE_SUPPORT / 2)
        .and_then(|a| quadrature_cutoff(0.75, eps, ONE_MODE_SUPPORT / 2).map(|b| a.max(b)));
    let integrand = |lambda: f64, out: &mut [f64]| {
        let e = j2_nrep(lambda, Parity::Even, ONE_MODE_SUPPORT);
        let o = j2_nrep(lambda, Parity::Odd, ONE_MODE_SUPPORT);
        match (e, o) {
            (Ok(e), Ok(o)) => {
                for (slot, (_, c)) in out.iter_mut().zip(&states) {
                    *slot = overlap(&e.coeffs, c).norm_sqr() + overlap(&o.coeffs, c).norm_sqr();
                }
            }
            _ => out.fill(f64::NAN),
        }
    };
    let integrals = cutoff.and_then(|l| {
        Integrator::new(1e-2 * tol, 0.0)
            .with_max_panels(20_000)
            .integrate_vec_breaks(states.len(), integrand, &unit_breaks(-l, l))
    });
    collect_parseval(&states, integrals, tol)
}

fn collect_parseval(
    states: &[(String, Vec<Complex64>)],
    integrals: Result<Vec<f64>>,
    tol: f64,
) -> Vec<CaseResult> {
    match integrals {
        Ok(v) => states
            .iter()
            .zip(v)
            .map(|((name, c), integral)| {
                let norm: f64 = c.iter().map(|z| z.norm_sqr()).sum();
                CaseResult::new(name.clone(), (norm - integral).abs(), tol)
            })
            .collect(),
        Err(e) => states
            .iter()
            .map(|(name, _)| CaseResult::failed(name.clone(), &e, tol))
            .collect(),
    }
}

fn parseval_two_mode(trials: usize, seed: u64, tol: f64) -> Vec<CaseResult> {
    let dmax = TWO_MODE_MAX as i64;
    // coefficients grouped by Δn = n₁ − n₂, indexed along each ladder
    let ladder_len = |d: i64| TWO_MODE_MAX + 1 - d.unsigned_abs() as usize;
    let flat_len: usize = (-dmax..=dmax).map(ladder_len).sum();
    let unflatten = |flat: Vec<Complex64>| {
        let mut out = Vec::new();
        let mut it = flat.into_iter();
        for d in -dmax..=dmax {
            out.push(it.by_ref().take(ladder_len(d)).collect::<Vec<_>>());
        }
        out
    };
    let flat_index = |d: i64, n: usize| (-dmax..d).map(ladder_len).sum::<usize>() + n;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x2);
    let mut states = vec![
        (
            "two-mode |0,0>: integral of rho_1/2 = 1".to_string(),
            unflatten(basis_state(flat_len, flat_index(0, 0))),
        ),
        (
            "two-mode |1,0>: integral of rho_1 = 1".to_string(),
            unflatten(basis_state(flat_len, flat_index(1, 0))),
        ),
    ];
    for t in 0..trials {
        states.push((
            format!("two-mode random state {t:02} (n1, n2 <= {TWO_MODE_MAX})"),
            unflatten(random_coeffs(&mut rng, flat_len)),
        ));
    }
    let eps = 1e-3 * tol;
    let cutoff = (0..=dmax).try_fold(0.0f64, |acc, d| {
        Ok::<f64, Error>(acc.max(quadrature_cutoff(
            TwoModeLabel::new(d).c(),
            eps,
            ladder_len(d),
        )?))
    });
    let integrand = |lambda: f64, out: &mut [f64]| {
        out.fill(0.0);
        for d in -dmax..=dmax {
            let len = ladder_len(d);
            let Ok(f) = j2_nrep_2(lambda, TwoModeLabel::new(d), len.max(2)) else {
                out.fill(f64::NAN);
                return;
            };
            let slot = (d + dmax) as usize;
            for (o, (_, c)) in out.iter_mut().zip(&states) {
                *o += overlap(&f.coeffs[..len], &c[slot]).norm_sqr();
            }
        }
    };
    let integrals = cutoff.and_then(|l| {
        Integrator::new(1e-2 * tol, 0.0)
            .with_max_panels(20_000)
            .integrate_vec_breaks(states.len(), integrand, &unit_breaks(-l, l))
    });
    let flat_states: Vec<(String, Vec<Complex64>)> = states
        .into_iter()
        .map(|(n, c)| (n, c.into_iter().flatten().collect()))
        .collect();
    collect_parseval(&flat_states, integrals, tol)
}

/// Σ|c_n|² against the spectral integral of |⟨λ|ψ⟩|² for the basis states
/// |0⟩, |1⟩ and `trials` seeded random states.
pub fn run_parseval(
    kind: ParsevalKind,
    trials: usize,
    seed: u64,
    tol: f64,
) -> Result<VerificationReport> {
    check_tolerance(tol)?;
    let cases = match kind {
        ParsevalKind::OneMode => parseval_one_mode(trials, seed, tol),
        ParsevalKind::TwoMode => parseval_two_mode(trials, seed, tol),
    };
    Ok(VerificationReport::new("parseval", cases).with_seed(seed))
}

/// C^∞ bump supported on (a, b).
fn bump(x: f64, a: f64, b: f64) -> f64 {
    let t = (2.0 * x - a - b) / (b - a);
    if t.abs() >= 1.0 {
        0.0
    } else {
        (-1.0 / (1.0 - t * t)).exp()
    }
}

/// Expansion coefficients ∫ g P_n ρ_b dλ, n ≤ degree, over the support [a, b].
fn expansion_coeffs<G: Fn(f64) -> f64>(
    g: G,
    degree: usize,
    b: f64,
    lo: f64,
    hi: f64,
) -> Result<Vec<f64>> {
    let w = PollaczekWeight::new(b)?;
    let len = degree + 1;
    // P_n oscillates with local period ~2π/ln 2n in λ
    let pieces = ((hi - lo) * (2.0 * len as f64).ln()).ceil() as usize * 2;
    let breaks: Vec<f64> = (0..=pieces)
        .map(|i| lo + (hi - lo) * i as f64 / pieces as f64)
        .collect();
    let integrand = |lambda: f64, out: &mut [f64]| {
        let p = poly_or_nan(len, lambda, b);
        let s = g(lambda) * w.density(lambda);
        for (o, v) in out.iter_mut().zip(p) {
            *o = s * v;
        }
    };
    Integrator::new(1e-13, 0.0)
        .with_max_panels(20_000)
        .integrate_vec_breaks(len, integrand, &breaks)
}

/// Leading large-M form of c_M Δ_M/(λ−λ′):
/// sin((λ−λ′) ln 2M − φ(λ) + φ(λ′)) / (π (λ−λ′) √(ρ_b(λ)ρ_b(λ′))).
fn christoffel_leading(m: usize, lambda: f64, lambda2: f64, b: f64) -> Result<(f64, f64)> {
    let w = PollaczekWeight::new(b)?;
    let phi = gamma_arg(GammaLine::new(b, lambda)?);
    let phi2 = gamma_arg(GammaLine::new(b, lambda2)?);
    let diff = lambda - lambda2;
    let amp = 1.0 / (PI * diff * (w.density(lambda) * w.density(lambda2)).sqrt());
    let arg = diff * (2.0 * m as f64).ln() - phi + phi2;
    Ok((amp * arg.sin(), amp.abs()))
}

/// Worst deviation of the leading form from c_M Δ_M/(λ−λ′) over M..M+span,
/// relative to the leading amplitude.
fn christoffel_leading_error(
    m: usize,
    span: usize,
    lambda: f64,
    lambda2: f64,
    b: f64,
) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for k in m..=m + span {
        let exact = christoffel_sum(k, lambda, lambda2, b)?.closed_form;
        let (approx, amp) = christoffel_leading(k, lambda, lambda2, b)?;
        worst = worst.max((exact - approx).abs() / amp);
    }
    Ok(worst)
}

/// The Christoffel–Darboux identity, the reproducing property of the
/// partial kernels Σ_{n≤M} P_n(λ)P_n(λ′) on a Gaussian of the given width,
/// their vanishing between test functions of disjoint support, and the
/// large-M sine-kernel form.
pub fn run_completeness_delta(
    b: f64,
    ms: &[usize],
    lambda0: f64,
    width: f64,
) -> Result<VerificationReport> {
    PollaczekWeight::new(b)?;
    if ms.is_empty() || !(width > 0.0) {
        return Err(Error::Argument(
            "need at least one truncation and a positive width".into(),
        ));
    }
    let mut ms = ms.to_vec();
    ms.sort_unstable();
    let m_max = *ms.last().expect("non-empty");
    let mut cases = Vec::new();

    // Christoffel–Darboux, including the confluent limit
    let grid = [-3.0, -1.2, 0.4, 2.5].map(|x| x + lambda0);
    for m in [0usize, 1, 10, 30, 60] {
        let mut worst: f64 = 0.0;
        let mut failure = None;
        for &x in &grid {
            for &y in &grid {
                match christoffel_sum(m, x, y, b) {
                    Ok(s) => {
                        worst = worst.max((s.direct - s.closed_form).abs() / s.abs_sum.max(1.0))
                    }
                    Err(e) => failure = Some(e),
                }
            }
        }
        let label = format!("Christoffel-Darboux identity, M={m:02}");
        cases.push(match failure {
            Some(e) => CaseResult::failed(label, &e, 1e-11),
            None => CaseResult::new(label, worst, 1e-11),
        });
    }

    // reproducing property on a Gaussian
    let gaussian = |x: f64| (-0.5 * ((x - lambda0) / width).powi(2)).exp();
    let (lo, hi) = (lambda0 - 9.0 * width, lambda0 + 9.0 * width);
    let at_center = poly_or_nan(m_max + 1, lambda0, b);
    let smeared = expansion_coeffs(gaussian, m_max, b, lo, hi).map(|coeffs| {
        ms.iter()
            .map(|&m| (0..=m).map(|n| coeffs[n] * at_center[n]).sum::<f64>())
            .collect::<Vec<f64>>()
    });
    match smeared {
        Ok(values) => {
            let errors: Vec<f64> = values.iter().map(|v| (v - 1.0).abs()).collect();
            cases.push(CaseResult::new(
                format!("smeared kernel at lambda0={lambda0}, width={width}, M={m_max}"),
                *errors.last().expect("non-empty"),
                1e-3,
            ));
            if ms.len() > 1 {
                cases.push(CaseResult::new(
                    format!("smeared kernel error shrinks from M={} to M={m_max}", ms[0]),
                    errors.last().expect("non-empty") / errors[0],
                    1.0,
                ));
            }
        }
        Err(e) => cases.push(CaseResult::failed("smeared kernel", &e, 1e-3)),
    }

    // disjoint supports: Σ f̂_n ĝ_n → ∫ f g ρ = 0
    let (la, lb) = (lambda0 - 2.0, lambda0 - 0.5);
    let (ra, rb) = (lambda0 + 0.5, lambda0 + 2.0);
    let left = expansion_coeffs(|x| bump(x, la, lb), m_max, b, la, lb);
    let right = expansion_coeffs(|x| bump(x, ra, rb), m_max, b, ra, rb);
    let label = format!("disjoint bumps: partial sum at M={m_max} vanishes");
    cases.push(match (left, right) {
        (Ok(f), Ok(g)) => CaseResult::new(
            label,
            f.iter().zip(&g).map(|(x, y)| x * y).sum::<f64>().abs(),
            1e-4,
        ),
        (Err(e), _) | (_, Err(e)) => CaseResult::failed(label, &e, 1e-4),
    });

    // sine-kernel form, error O(1/M) relative to its amplitude
    let pair = (lambda0, lambda0 + 0.7);
    let m_lo = ms[0].max(16);
    let lo_err = christoffel_leading_error(m_lo, 8, pair.0, pair.1, b);
    let hi_err = christoffel_leading_error(m_max.max(m_lo), 8, pair.0, pair.1, b);
    match (lo_err, hi_err) {
        (Ok(e0), Ok(e1)) => {
            cases.push(CaseResult::new(
                format!(
                    "sine-kernel form at M={}: relative error x M",
                    m_max.max(m_lo)
                ),
                e1 * m_max.max(m_lo) as f64,
                5.0,
            ));
            if m_max > m_lo {
                cases.push(CaseResult::new(
                    format!("sine-kernel error shrinks from M={m_lo} to M={m_max}"),
                    e1 / e0,
                    1.0,
                ));
            }
        }
        (Err(e), _) | (_, Err(e)) => cases.push(CaseResult::failed("sine-kernel form", &e, 1.0)),
    }
    Ok(VerificationReport::new("completeness", cases))
}

/// Least-squares slope of ln y against ln x.
fn log_log_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

/// Error of the large-n expansion at n and n+1 combined, relative to the
/// leading amplitude; consecutive n are a quarter period apart, so the
/// pair is insensitive to isolated zeros of the cosine.
fn asymptotic_relative_error(n: usize, lambda: f64, b: f64, two_term: bool) -> Result<f64> {
    let mut err = [0.0; 2];
    let mut lead = [0.0; 2];
    for (i, k) in [n, n + 1].into_iter().enumerate() {
        let t = asymptotic_2f1(k, lambda, b)?;
        let approx = if two_term { t.two_term() } else { t.leading };
        err[i] = rescaled_2f1(k, lambda, b)? - approx;
        lead[i] = t.leading;
    }
    Ok(err[0].hypot(err[1]) / lead[0].hypot(lead[1]))
}

fn asymptotic_cases(b: f64, lambda: f64, ns: &[usize]) -> Result<Vec<CaseResult>> {
    let prefix = format!("b={b}, lambda={lambda}");
    let xs: Vec<f64> = ns.iter().map(|&n| n as f64).collect();
    let one: Vec<f64> = ns
        .iter()
        .map(|&n| asymptotic_relative_error(n, lambda, b, false))
        .collect::<Result<_>>()?;
    let two: Vec<f64> = ns
        .iter()
        .map(|&n| asymptotic_relative_error(n, lambda, b, true))
        .collect::<Result<_>>()?;
    let s1 = log_log_slope(&xs, &one);
    let s2 = log_log_slope(&xs, &two);
    let mut cases = vec![
        CaseResult::new(
            format!("{prefix}: leading-term error exponent {s1:.3} vs -1"),
            (s1 + 1.0).abs(),
            0.2,
        ),
        CaseResult::new(
            format!("{prefix}: two-term error exponent {s2:.3} vs -2"),
            (s2 + 2.0).abs(),
            0.3,
        ),
    ];
    // the envelope of the exact values shrinks like (2n)^{−b}
    let n0 = ns[0];
    let envelope = |n: usize| -> Result<f64> {
        Ok(rescaled_2f1(n, lambda, b)?.hypot(rescaled_2f1(n + 1, lambda, b)?))
    };
    let ratio = envelope(n0)? / envelope(4 * n0)?;
    cases.push(CaseResult::new(
        format!("{prefix}: envelope ratio n={n0} vs 4n equals 4^b"),
        (ratio / 4f64.powf(b) - 1.0).abs(),
        2.0 / n0 as f64,
    ));
    Ok(cases)
}

/// Error-decay exponents of the one- and two-term large-n expansions over a
/// geometric list of n.
pub fn run_asymptotic(params: &[(f64, f64)], ns: &[usize]) -> Result<VerificationReport> {
    if ns.len() < 2 || ns[0] == 0 {
        return Err(Error::Argument("need at least two positive n".into()));
    }
    let ratio = ns[1] as f64 / ns[0] as f64;
    let geometric = ns
        .windows(2)
        .all(|w| (w[1] as f64 / w[0] as f64 - ratio).abs() < 1e-12 && w[1] > w[0]);
    if !geometric || *ns.last().expect("non-empty") > 4096 {
        return Err(Error::Argument(
            "n list must be increasing, geometric and at most 4096".into(),
        ));
    }
    for &(b, _) in params {
        PollaczekWeight::new(b)?;
    }
    let mut cases: Vec<CaseResult> = params
        .par_iter()
        .map(|&(b, lambda)| {
            asymptotic_cases(b, lambda, ns).unwrap_or_else(|e| {
                vec![CaseResult::failed(
                    format!("b={b}, lambda={lambda}"),
                    &e,
                    0.2,
                )]
            })
        })
        .flatten()
        .collect();
    // at λ = 0 the leading cosine is cos(nπ/2): zero for odd n, as are the exact values
    let mut bs: Vec<f64> = params.iter().map(|p| p.0).collect();
    bs.sort_by(f64::total_cmp);
    bs.dedup();
    for b in bs {
        let n = ns[0] + 1 - ns[0] % 2;
        let label = format!("b={b}, lambda=0: odd n={n} is a node of the leading term");
        let measured = (|| -> Result<f64> {
            let t = asymptotic_2f1(n, 0.0, b)?;
            let even = asymptotic_2f1(n + 1, 0.0, b)?;
            Ok((t.leading / even.leading)
                .abs()
                .max(rescaled_2f1(n, 0.0, b)?.abs()))
        })();
        cases.push(CaseResult::from_result(label, measured, 1e-12));
    }
    Ok(VerificationReport::new("asymptotic", cases))
}

type CaseGroup = Box<dyn Fn() -> Vec<CaseResult> + Send + Sync>;

const LAMBDA_GRID: [f64; 7] = [0.0, 0.5, -0.5, 2.0, -2.0, 5.0, -5.0];
const ETA_GRID: [f64; 3] = [0.5, 2.0, 5.0];

fn z_grid() -> Vec<Complex64> {
    // |z| ≤ 1.98
    let pts = [-1.4, -0.7, 0.0, 0.7, 1.4];
    pts.iter()
        .flat_map(|&x| pts.iter().map(move |&y| Complex64::new(x, y)))
        .collect()
}

fn z_pairs() -> Vec<(Complex64, Complex64)> {
    let c = Complex64::new;
    let pts = [
        c(0.0, 0.0),
        c(1.5, 0.0),
        c(-1.0, 1.0),
        c(0.3, -1.2),
        c(-1.4, -0.4),
        c(0.0, 1.5),
    ];
    pts.iter()
        .flat_map(|&a| pts.iter().map(move |&b| (a, b)))
        .collect()
}

fn parity_name(p: Parity) -> &'static str {
    match p {
        Parity::Even => "even",
        Parity::Odd => "odd",
    }
}

fn relative_gap(closed: Complex64, series: Complex64) -> f64 {
    (closed - series).norm() / closed.norm().max(1.0)
}

fn one_mode_series_case<F, G>(
    label: String,
    vector: Result<NRepEigenvector>,
    closed: F,
    points: G,
) -> CaseResult
where
    F: Fn(Complex64) -> Result<Complex64>,
    G: IntoIterator<Item = Complex64>,
{
    let measured = vector.and_then(|v| {
        points.into_iter().try_fold(0.0f64, |worst, z| {
            let c = closed(z)?;
            Ok(worst.max(relative_gap(c, v.bargmann_series(z))))
        })
    });
    CaseResult::from_result(label, measured, 1e-10)
}

fn one_mode_groups() -> Vec<CaseGroup> {
    let mut groups: Vec<CaseGroup> = Vec::new();
    groups.push(Box::new(|| {
        let mut cases = Vec::new();
        for &lam in &LAMBDA_GRID {
            for parity in [Parity::Even, Parity::Odd] {
                let label = format!(
                    "one-mode J2 residual, lambda={lam}, {}, N=128",
                    parity_name(parity)
                );
                let m = j2_nrep(lam, parity, 128)
                    .map(|v| interior_residual(&j2_apply_nrep(&v.coeffs), &v.coeffs, lam));
                cases.push(CaseResult::from_result(label, m, 1e-12));
            }
        }
        for &eta in &ETA_GRID {
            for parity in [Parity::Even, Parity::Odd] {
                let label = format!(
                    "one-mode K+ residual, eta={eta}, {}, N=128",
                    parity_name(parity)
                );
                let m = kplus_nrep(eta, parity, 128)
                    .map(|v| interior_residual(&kplus_apply_nrep(&v.coeffs), &v.coeffs, eta));
                cases.push(CaseResult::from_result(label, m, 1e-10));
            }
        }
        cases
    }));
    groups.push(Box::new(|| {
        let mut cases = Vec::new();
        for &lam in &[0.0, 0.5, -2.0, 5.0] {
            for parity in [Parity::Even, Parity::Odd] {
                cases.push(one_mode_series_case(
                    format!(
                        "one-mode J2 z-rep vs series, lambda={lam}, {}",
                        parity_name(parity)
                    ),
                    j2_nrep(lam, parity, 120),
                    |z| j2_zrep(lam, parity, z),
                    z_grid(),
                ));
            }
        }
        for &eta in &[0.1, 1.0, 3.5] {
            for parity in [Parity::Even, Parity::Odd] {
                cases.push(one_mode_series_case(
                    format!(
                        "one-mode K+ z-rep vs series, eta={eta}, {}",
                        parity_name(parity)
                    ),
                    kplus_nrep(eta, parity, 120),
                    |z| kplus_zrep(eta, parity, z),
                    z_grid(),
                ));
            }
        }
        cases
    }));
    groups.push(Box::new(|| {
        let mut cases = Vec::new();
        // q-rep pairings with u_0 and u_1 reproduce the first n-rep coefficients
        for &lam in &[-3.0, -1.5, 0.0, 1.5, 3.0] {
            for (parity, n) in [(Parity::Even, 0usize), (Parity::Odd, 1)] {
                let label = format!("one-mode J2 q-rep overlap <{n}|lambda={lam}> real positive");
                let m = QRepClosedForm::new(lam, parity).and_then(|form| {
                    let paired = form.pair(
                        |q| oscillator_eigenfunction(n, q),
                        (-80f64).exp(),
                        4f64.exp(),
                    )?;
                    let rho = PollaczekWeight::new(parity.pollaczek_b())?.density(lam);
                    Ok((paired - rho.sqrt()).norm())
                });
                cases.push(CaseResult::from_result(label, m, 1e-8));
            }
        }
        cases
    }));
    groups.push(Box::new(|| {
        let mut cases = Vec::new();
        for &eta in &[0.05, 0.8, 4.0] {
            for parity in [Parity::Even, Parity::Odd] {
                let label = format!(
                    "one-mode K+ delta pairing vs n-rep, eta={eta}, {}",
                    parity_name(parity)
                );
                let m = kplus_qrep(eta, parity).and_then(|d| {
                    let v = kplus_nrep(eta, parity, 20)?;
                    Ok((0..20).fold(0.0f64, |w, n| {
                        let paired = d.pair_real(|q| oscillator_eigenfunction(n, q));
                        w.max((v.coeffs[n].re - paired).abs() / (1.0 + paired.abs()))
                    }))
                });
                cases.push(CaseResult::from_result(label, m, 1e-13));
                let label = format!(
                    "one-mode K+ kernel pairing vs z-rep, eta={eta}, {}",
                    parity_name(parity)
                );
                let m = kplus_qrep(eta, parity).and_then(|d| {
                    z_grid().into_iter().try_fold(0.0f64, |w, z| {
                        let closed = kplus_zrep(eta, parity, z)?;
                        Ok(w.max(relative_gap(closed, d.pair(|q| bargmann_kernel(z, q)))))
                    })
                });
                cases.push(CaseResult::from_result(label, m, 1e-14));
            }
        }
        cases
    }));
    groups
}

fn two_mode_groups() -> Vec<CaseGroup> {
    let mut groups: Vec<CaseGroup> = Vec::new();
    groups.push(Box::new(|| {
        (0..=3i64)
            .map(|d| {
                let label = TwoModeLabel::new(d);
                let mut worst: f64 = 0.0;
                for n in 0..=40 {
                    for (r, v) in casimir_column(label, n).iter().enumerate() {
                        let expect = if r == n { label.casimir() } else { 0.0 };
                        worst = worst.max((v - expect).abs());
                    }
                }
                CaseResult::new(
                    format!("two-mode Casimir = (dn^2-1)/4, dn={d}, n<=40"),
                    worst,
                    1e-13,
                )
            })
            .collect()
    }));
    groups.push(Box::new(|| {
        let mut cases = Vec::new();
        let interior = |applied: &[Complex64], coeffs: &[Complex64], value: f64| {
            applied[..coeffs.len() - 2]
                .iter()
                .zip(coeffs)
                .fold(0.0f64, |w, (a, c)| w.max((a - value * c).norm()))
        };
        for d in 0..=2i64 {
            let label = TwoModeLabel::new(d);
            for &lam in &LAMBDA_GRID {
                let m = j2_nrep_2(lam, label, 128).map(|v| {
                    interior(
                        &apply_ladder(LadderOp::J2, label, &v.coeffs),
                        &v.coeffs,
                        lam,
                    )
                });
                cases.push(CaseResult::from_result(
                    format!("two-mode J2 residual, dn={d}, lambda={lam}"),
                    m,
                    1e-12,
                ));
            }
            for &eta in &ETA_GRID {
                let m = kplus_nrep_2(eta, label, 128).map(|v| {
                    interior(
                        &apply_ladder(LadderOp::KPlus, label, &v.coeffs),
                        &v.coeffs,
                        eta,
                    )
                });
                cases.push(CaseResult::from_result(
                    format!("two-mode K+ residual, dn={d}, eta={eta}"),
                    m,
                    1e-10,
                ));
            }
        }
        cases
    }));
    groups.push(Box::new(|| {
        let mut cases = Vec::new();
        for d in 0..=3i64 {
            let label = TwoModeLabel::new(d);
            for &lam in &[0.0, 0.6, -2.0, 4.0] {
                let m = j2_nrep_2(lam, label, 120).and_then(|v| {
                    z_pairs().into_iter().try_fold(0.0f64, |w, (z1, z2)| {
                        let closed = j2_zrep_2(lam, label, z1, z2)?;
                        Ok(w.max(relative_gap(closed, v.bargmann_series(z1, z2))))
                    })
                });
                cases.push(CaseResult::from_result(
                    format!("two-mode J2 z-rep vs series, dn={d}, lambda={lam}"),
                    m,
                    1e-10,
                ));
            }
            for &eta in &[0.1, 1.0, 3.0] {
                let m = kplus_nrep_2(eta, label, 120).and_then(|v| {
                    z_pairs().into_iter().try_fold(0.0f64, |w, (z1, z2)| {
                        let closed = kplus_zrep_2(eta, label, z1, z2)?;
                        Ok(w.max(relative_gap(closed, v.bargmann_series(z1, z2))))
                    })
                });
                cases.push(CaseResult::from_result(
                    format!("two-mode K+ z-rep vs series, dn={d}, eta={eta}"),
                    m,
                    1e-9,
                ));
            }
        }
        cases
    }));
    for m in 0..2usize {
        groups.push(Box::new(move || {
            let lam = 0.8;
            let label = format!("two-mode q-rep projection <{m},{m}|lambda={lam}>");
            let measured = two_mode_diagonal_projection(lam, m).and_then(|proj| {
                let v = j2_nrep_2(lam, TwoModeLabel::new(0), 4)?;
                Ok((proj - v.coeffs[m]).norm())
            });
            vec![CaseResult::from_result(label, measured, 1e-6)]
        }));
    }
    groups
}

/// Series, pairing, residual and Casimir checks tying the n-, z- and
/// q-representations together.
pub fn run_cross_representation() -> VerificationReport {
    let mut groups = one_mode_groups();
    groups.extend(two_mode_groups());
    let cases = groups.par_iter().flat_map_iter(|g| g()).collect();
    VerificationReport::new("cross-representation", cases)
}

fn random_discrete_hamiltonian(rng: &mut ChaCha8Rng) -> Result<QuadHamiltonian> {
    let a = rng.gen_range(0.5..2.0);
    let b = rng.gen_range(0.0..0.6) * a;
    QuadHamiltonian::new(
        a,
        b,
        rng.gen_range(0.0..1.0),
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-PI..PI),
        rng.gen_range(-PI..PI),
    )
}

fn level_error(h: &QuadHamiltonian, n: usize, count: usize) -> Result<f64> {
    let class = classify(h, DEFAULT_TOL)?;
    let ev = numeric_spectrum_check(h, n)?;
    Ok(ev
        .iter()
        .zip(class.levels(count))
        .fold(0.0f64, |w, (e, p)| w.max((e - p).abs())))
}

/// Classification against the truncated-matrix spectrum for seeded random
/// instances with A > B, plus the instability probe at A = B.
pub fn run_classifier(instances: usize, seed: u64) -> Result<VerificationReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let hs: Vec<QuadHamiltonian> = (0..instances)
        .map(|_| random_discrete_hamiltonian(&mut rng))
        .collect::<Result<_>>()?;
    let mut cases: Vec<CaseResult> = hs
        .par_iter()
        .enumerate()
        .map(|(i, h)| {
            CaseResult::from_result(
                format!("instance {i:02}: 5 lowest levels vs N=96 truncation"),
                level_error(h, 96, 5),
                1e-6,
            )
        })
        .collect();
    for (i, h) in hs.iter().enumerate() {
        let measured = (|| -> Result<f64> {
            let r0 = classify(h, DEFAULT_TOL)?;
            let r1 = classify(&h.rotated(0.37 + i as f64), DEFAULT_TOL)?;
            Ok((r0.scale - r1.scale).abs().max((r0.shift - r1.shift).abs()))
        })();
        cases.push(CaseResult::from_result(
            format!("instance {i:02}: rotation invariance"),
            measured,
            1e-12,
        ));
    }
    let oscillator = QuadHamiltonian::new(1.0, 0.0, 0.0, 0.0, 0.0, 0.0)?;
    cases.push(CaseResult::from_result(
        "A=1: levels 1, 3, 5, 7, 9 at N=64",
        level_error(&oscillator, 64, 5),
        1e-10,
    ));
    let squeezed = QuadHamiltonian::new(1.0, 0.5, 0.0, 0.0, 0.0, 0.0)?;
    cases.push(CaseResult::from_result(
        "A=1, B=1/2: levels (sqrt3/2)(2k+1) at N=96",
        level_error(&squeezed, 96, 5),
        1e-8,
    ));
    let critical = QuadHamiltonian::new(0.5, 0.5, 0.0, 0.0, 0.0, 0.0)?;
    let probe = instability_probe(&critical, 1e-3, DEFAULT_TOL)?;
    let expected = (
        SpectrumKind::DiscreteEquidistant,
        SpectrumKind::DoubledRealLine,
    );
    cases.push(CaseResult::new(
        "instability probe at A=B: (discrete, doubled real line)",
        if (probe.0.kind, probe.1.kind) == expected {
            0.0
        } else {
            1.0
        },
        0.0,
    ));
    Ok(VerificationReport::new("classifier", cases).with_seed(seed))
}

/// K_{iλ} quadrature at λ = 0 against the real-order K₀ oracle, and the
/// q₁ ↔ q₂ symmetry of the Δn = 0 position wavefunction.
pub fn run_bessel() -> VerificationReport {
    let mut cases = Vec::new();
    let points: Vec<f64> = (0..=99).map(|i| 0.1 + 9.9 * i as f64 / 99.0).collect();
    let measured = points.iter().try_fold(0.0f64, |w, &x| {
        let k = bessel_k_imag(0.0, x)?;
        let reference = bessel_k0(x);
        Ok(w.max((k - reference).abs() / reference))
    });
    cases.push(CaseResult::from_result(
        "K_0 by quadrature vs real-order K_0 on [0.1, 10]",
        measured,
        1e-9,
    ));
    for &lam in &[0.0, 0.7, -2.0, 3.5] {
        let pairs = [(0.3, 1.7), (-2.0, 0.5), (1.2, -0.1), (0.05, 2.9)];
        let measured = pairs.iter().try_fold(0.0f64, |w, &(q1, q2)| {
            let a = j2_qrep_2_delta0(lam, q1, q2)?;
            let b = j2_qrep_2_delta0(lam, q2, q1)?;
            Ok(w.max((a.norm() - b.norm()).abs() / a.norm()))
        });
        cases.push(CaseResult::from_result(
            format!("two-mode q-rep |phi(q1,q2)| = |phi(q2,q1)|, lambda={lam}"),
            measured,
            1e-12,
        ));
    }
    VerificationReport::new("bessel", cases)
}
