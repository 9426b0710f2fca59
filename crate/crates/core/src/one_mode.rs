//! One-mode generators J₂ = (a†² − a²)/4i and K₊ = (a + a†)²/4: generalized
//! eigenvectors in the number, holomorphic and position representations.

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::pollaczek::{pollaczek_values, PollaczekWeight};
use crate::quadrature::Integrator;
use crate::specfun::gamma::gamma_arg;
use crate::specfun::orthopoly::hermite_normalized;
use crate::specfun::{hyp1f1, GammaLine};

/// Which half of the number basis a generalized eigenvector lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn offset(self) -> usize {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    /// Pollaczek parameter b of the J₂ family on this parity: 1/4 or 3/4.
    pub fn pollaczek_b(self) -> f64 {
        match self {
            Parity::Even => 0.25,
            Parity::Odd => 0.75,
        }
    }

    pub fn of(n: usize) -> Parity {
        if n % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Generator {
    #[serde(rename = "J2")]
    J2,
    #[serde(rename = "Kplus")]
    KPlus,
}

/// Truncated number-basis coefficients f_0..f_{N−1} of a generalized
/// eigenvector. `label` is λ for J₂ and η for K₊.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NRepEigenvector {
    pub generator: Generator,
    pub label: f64,
    pub parity: Parity,
    pub coeffs: Vec<Complex64>,
}

impl NRepEigenvector {
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Σ f_n zⁿ/√(n!), the holomorphic representation of the truncation.
    pub fn bargmann_series(&self, z: Complex64) -> Complex64 {
        let mut basis = Complex64::new(1.0, 0.0);
        let mut sum = Complex64::new(0.0, 0.0);
        for (n, f) in self.coeffs.iter().enumerate() {
            if n > 0 {
                basis *= z / (n as f64).sqrt();
            }
            sum += f * basis;
        }
        sum
    }
}

fn unit_phase_minus_i(m: usize) -> Complex64 {
    match m % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, -1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, 1.0),
    }
}

/// J₂ eigenvector: f_{2m+p} = (−i)^m √ρ_b(λ) P_m(λ, b), b = 1/4 (even) or 3/4 (odd).
pub fn j2_nrep(lambda: f64, parity: Parity, len: usize) -> Result<NRepEigenvector> {
    if len < 2 {
        return Err(Error::Argument(format!(
            "need at least 2 coefficients, got {len}"
        )));
    }
    if !lambda.is_finite() {
        return Err(domain("j2_nrep", format!("non-finite λ {lambda}")));
    }
    let b = parity.pollaczek_b();
    let amp = PollaczekWeight::new(b)?.density(lambda).sqrt();
    let p0 = parity.offset();
    let count = (len - p0).div_ceil(2);
    let p = pollaczek_values(count, lambda, b)?;
    let mut coeffs = vec![Complex64::new(0.0, 0.0); len];
    for (m, pm) in p.iter().enumerate() {
        coeffs[2 * m + p0] = unit_phase_minus_i(m) * (amp * pm);
    }
    Ok(NRepEigenvector {
        generator: Generator::J2,
        label: lambda,
        parity,
        coeffs,
    })
}

/// (J₂f)_n = [√(n(n−1)) f_{n−2} − √((n+1)(n+2)) f_{n+2}]/(4i), with
/// coefficients beyond the truncation taken as zero.
pub fn j2_apply_nrep(coeffs: &[Complex64]) -> Vec<Complex64> {
    let len = coeffs.len();
    let inv_4i = Complex64::new(0.0, -0.25);
    (0..len)
        .map(|n| {
            let nf = n as f64;
            let mut s = Complex64::new(0.0, 0.0);
            if n >= 2 {
                s += (nf * (nf - 1.0)).sqrt() * coeffs[n - 2];
            }
            if n + 2 < len {
                s -= ((nf + 1.0) * (nf + 2.0)).sqrt() * coeffs[n + 2];
            }
            s * inv_4i
        })
        .collect()
}

/// (K₊g)_n = [√(n(n−1)) g_{n−2} + (2n+1) g_n + √((n+1)(n+2)) g_{n+2}]/4.
pub fn kplus_apply_nrep(coeffs: &[Complex64]) -> Vec<Complex64> {
    let len = coeffs.len();
    (0..len)
        .map(|n| {
            let nf = n as f64;
            let mut s = (2.0 * nf + 1.0) * coeffs[n];
            if n >= 2 {
                s += (nf * (nf - 1.0)).sqrt() * coeffs[n - 2];
            }
            if n + 2 < len {
                s += ((nf + 1.0) * (nf + 2.0)).sqrt() * coeffs[n + 2];
            }
            s * 0.25
        })
        .collect()
}

/// Largest |(Af)_n − μ f_n| over n ≤ len − 3, i.e. away from the truncation edge.
pub fn interior_residual(applied: &[Complex64], coeffs: &[Complex64], eigenvalue: f64) -> f64 {
    let stop = coeffs.len().saturating_sub(2);
    (0..stop)
        .map(|n| (applied[n] - eigenvalue * coeffs[n]).norm())
        .fold(0.0, f64::max)
}

/// Closed holomorphic form of the J₂ eigenfunction:
/// even √ρ_{1/4} e^{−z²/2} ₁F₁(1/4−iλ; 1/2; z²), odd √ρ_{3/4} e^{−z²/2} z ₁F₁(3/4−iλ; 3/2; z²).
pub fn j2_zrep(lambda: f64, parity: Parity, z: Complex64) -> Result<Complex64> {
    let b = parity.pollaczek_b();
    let amp = PollaczekWeight::new(b)?.density(lambda).sqrt();
    let z2 = z * z;
    let gauss = (-0.5 * z2).exp();
    Ok(match parity {
        Parity::Even => amp * gauss * hyp1f1(Complex64::new(0.25, -lambda), 0.5, z2)?,
        Parity::Odd => amp * gauss * z * hyp1f1(Complex64::new(0.75, -lambda), 1.5, z2)?,
    })
}

/// Position-space J₂ eigenfunction
/// e^{i(arg Γ(b+iλ) + λ ln 2)} (2π)^{−1/2} |q|^{−1/2−2iλ} (× sgn q when odd).
///
/// The phase makes the overlaps with |0⟩ and |1⟩ real and positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QRepClosedForm {
    pub lambda: f64,
    pub parity: Parity,
}

impl QRepClosedForm {
    pub fn new(lambda: f64, parity: Parity) -> Result<Self> {
        if !lambda.is_finite() {
            return Err(domain("QRepClosedForm", format!("non-finite λ {lambda}")));
        }
        Ok(Self { lambda, parity })
    }

    /// Constant phase e^{i(arg Γ(b+iλ) + λ ln 2)}.
    pub fn phase(&self) -> Complex64 {
        let b = self.parity.pollaczek_b();
        let arg = gamma_arg(GammaLine {
            b,
            lambda: self.lambda,
        });
        Complex64::from_polar(1.0, arg + self.lambda * LN_2)
    }

    pub fn eval(&self, q: f64) -> Result<Complex64> {
        if q == 0.0 {
            return Err(Error::Singular(
                "position eigenfunction of J₂ at q = 0".into(),
            ));
        }
        if !q.is_finite() {
            return Err(domain("j2_qrep", format!("non-finite q {q}")));
        }
        let s = q.abs().ln();
        let sign = match self.parity {
            Parity::Odd if q < 0.0 => -1.0,
            _ => 1.0,
        };
        let radial = Complex64::from_polar(
            (2.0 * PI).sqrt().recip() * (-0.5 * s).exp(),
            -2.0 * self.lambda * s,
        );
        Ok(self.phase() * radial * sign)
    }

    /// ∫ φ(q) f(q) dq over q_min ≤ |q| ≤ q_max, integrated in s = ln|q| so
    /// the |q|^{−1/2} endpoint and the log-oscillation are both smooth.
    pub fn pair<F>(&self, f: F, q_min: f64, q_max: f64) -> Result<Complex64>
    where
        F: Fn(f64) -> f64,
    {
        if !(q_min > 0.0 && q_max > q_min) {
            return Err(Error::Argument(format!(
                "need 0 < q_min < q_max, got {q_min}, {q_max}"
            )));
        }
        let (s0, s1) = (q_min.ln(), q_max.ln());
        let sign = match self.parity {
            Parity::Even => 1.0,
            Parity::Odd => -1.0,
        };
        let lam = self.lambda;
        let integrand = |s: f64, out: &mut [f64]| {
            let q = s.exp();
            // dq = q ds, |q|^{−1/2} q = e^{s/2}
            let sym = f(q) + sign * f(-q);
            let mag = (0.5 * s).exp() * sym;
            out[0] = mag * (2.0 * lam * s).cos();
            out[1] = -mag * (2.0 * lam * s).sin();
        };
        let pieces = ((s1 - s0) * (1.0 + lam.abs())).ceil().max(1.0) as usize;
        let breaks: Vec<f64> = (0..=pieces)
            .map(|k| s0 + (s1 - s0) * k as f64 / pieces as f64)
            .collect();
        // the Kronrod error floor is ~50ε ∫|integrand| ds
        let v = Integrator::new(1e-13, 1e-12)
            .with_max_panels(20_000)
            .integrate_vec_breaks(2, integrand, &breaks)?;
        Ok(self.phase() * Complex64::new(v[0], v[1]) / (2.0 * PI).sqrt())
    }
}

pub fn j2_qrep(lambda: f64, parity: Parity, q: f64) -> Result<Complex64> {
    QRepClosedForm::new(lambda, parity)?.eval(q)
}

/// Position-space K₊ eigenfunction: (δ(q − √(2η)) ± δ(q + √(2η)))/(2√(2η)).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeltaPair {
    pub eta: f64,
    pub sign: f64,
    pub amplitude: f64,
}

impl DeltaPair {
    pub fn support(&self) -> f64 {
        (2.0 * self.eta).sqrt()
    }

    pub fn pair<F>(&self, f: F) -> Complex64
    where
        F: Fn(f64) -> Complex64,
    {
        let x = self.support();
        self.amplitude * (f(x) + self.sign * f(-x))
    }

    pub fn pair_real<F>(&self, f: F) -> f64
    where
        F: Fn(f64) -> f64,
    {
        let x = self.support();
        self.amplitude * (f(x) + self.sign * f(-x))
    }
}

fn check_eta(func: &'static str, eta: f64) -> Result<()> {
    if eta > 0.0 && eta.is_finite() {
        Ok(())
    } else {
        Err(domain(
            func,
            format!("η must be positive and finite, got {eta}"),
        ))
    }
}

pub fn kplus_qrep(eta: f64, parity: Parity) -> Result<DeltaPair> {
    check_eta("kplus_qrep", eta)?;
    Ok(DeltaPair {
        eta,
        sign: match parity {
            Parity::Even => 1.0,
            Parity::Odd => -1.0,
        },
        amplitude: 0.5 / (2.0 * eta).sqrt(),
    })
}

/// K₊ eigenvector g_n = (2η)^{−1/2} u_n(√(2η)) on the matching parity, with
/// u_n the oscillator eigenfunctions.
pub fn kplus_nrep(eta: f64, parity: Parity, len: usize) -> Result<NRepEigenvector> {
    check_eta("kplus_nrep", eta)?;
    if len < 2 {
        return Err(Error::Argument(format!(
            "need at least 2 coefficients, got {len}"
        )));
    }
    let y = (2.0 * eta).sqrt();
    let scale = (-eta).exp() / y;
    let h = hermite_normalized(len, y);
    let coeffs = h
        .iter()
        .enumerate()
        .map(|(n, v)| {
            if Parity::of(n) == parity {
                Complex64::new(scale * v, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .collect();
    Ok(NRepEigenvector {
        generator: Generator::KPlus,
        label: eta,
        parity,
        coeffs,
    })
}

/// π^{−1/4}(2η)^{−1/2} e^{−η} e^{−z²/2} {cosh, sinh}(2√η z).
pub fn kplus_zrep(eta: f64, parity: Parity, z: Complex64) -> Result<Complex64> {
    check_eta("kplus_zrep", eta)?;
    let pre = PI.powf(-0.25) / (2.0 * eta).sqrt();
    let w = 2.0 * eta.sqrt() * z;
    // fold e^{−η} into the exponentials so large η does not overflow cosh
    let plus = (w - eta - 0.5 * z * z).exp();
    let minus = (-w - eta - 0.5 * z * z).exp();
    Ok(match parity {
        Parity::Even => pre * 0.5 * (plus + minus),
        Parity::Odd => pre * 0.5 * (plus - minus),
    })
}

/// Bargmann kernel K(z, q) = π^{−1/4} exp(−z²/2 − q²/2 + √2 zq).
pub fn bargmann_kernel(z: Complex64, q: f64) -> Complex64 {
    PI.powf(-0.25) * (-0.5 * z * z - 0.5 * q * q + std::f64::consts::SQRT_2 * z * q).exp()
}
