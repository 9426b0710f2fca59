//! Two-mode realization J₀ = (N₁+N₂+1)/2, J₁ = (a₁†a₂† + a₁a₂)/2,
//! J₂ = (a₁†a₂† − a₁a₂)/2i restricted to a fixed photon-number difference.

use std::f64::consts::{PI, SQRT_2};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::one_mode::Generator;
use crate::pollaczek::{pollaczek_values, PollaczekWeight};
use crate::specfun::gamma::{gamma_abs_sq, ln_factorial, ln_gamma};
use crate::specfun::orthopoly::laguerre;
use crate::specfun::{bessel_i, bessel_k_imag, hyp1f1, GammaLine};

/// Photon-number difference Δn = n₁ − n₂ selecting one irreducible block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwoModeLabel {
    pub delta_n: i64,
}

impl TwoModeLabel {
    pub fn new(delta_n: i64) -> Self {
        Self { delta_n }
    }

    pub fn abs_delta(&self) -> usize {
        self.delta_n.unsigned_abs() as usize
    }

    /// Pollaczek parameter c = (|Δn| + 1)/2.
    pub fn c(&self) -> f64 {
        0.5 * (self.abs_delta() as f64 + 1.0)
    }

    /// Basis ket (n₁, n₂) carrying ladder index n.
    pub fn ket(&self, n: usize) -> (usize, usize) {
        let d = self.abs_delta();
        if self.delta_n >= 0 {
            (n + d, n)
        } else {
            (n, n + d)
        }
    }

    /// Casimir eigenvalue (Δn² − 1)/4.
    pub fn casimir(&self) -> f64 {
        let d = self.delta_n as f64;
        0.25 * (d * d - 1.0)
    }
}

/// Truncated ladder coefficients of a two-mode generalized eigenvector,
/// paired with the kets [`TwoModeLabel::ket`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwoModeNRep {
    pub generator: Generator,
    pub label: TwoModeLabel,
    pub value: f64,
    pub coeffs: Vec<Complex64>,
}

impl TwoModeNRep {
    /// Σ f_n z₁^{n₁} z₂^{n₂}/√(n₁! n₂!) over the ladder kets.
    pub fn bargmann_series(&self, z1: Complex64, z2: Complex64) -> Complex64 {
        let d = self.label.abs_delta();
        let (lead, other) = if self.label.delta_n >= 0 {
            (z1, z2)
        } else {
            (z2, z1)
        };
        // zⁿ/√(n!) for the mode that carries the surplus, starting at n = d
        let mut head = Complex64::new(1.0, 0.0);
        for k in 1..=d {
            head *= lead / (k as f64).sqrt();
        }
        let mut tail = Complex64::new(1.0, 0.0);
        let mut sum = Complex64::new(0.0, 0.0);
        for (n, f) in self.coeffs.iter().enumerate() {
            if n > 0 {
                head *= lead / ((n + d) as f64).sqrt();
                tail *= other / (n as f64).sqrt();
            }
            sum += f * head * tail;
        }
        sum
    }
}

fn minus_i_pow(n: usize) -> Complex64 {
    match n % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, -1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, 1.0),
    }
}

/// Ladder step √((n+1)(n+|Δn|+1)), the raising amplitude of a₁†a₂†.
fn ladder_step(n: usize, d: usize) -> f64 {
    ((n as f64 + 1.0) * ((n + d) as f64 + 1.0)).sqrt()
}

/// J₂ eigenvector on the Δn ladder: f_n = (−i)ⁿ √ρ_c(λ) P_n(λ, c).
///
/// The real sequence √ρ_c P_n alone is the J₁ eigenvector; the unit phases
/// rotate it onto J₂.
pub fn j2_nrep_2(lambda: f64, label: TwoModeLabel, len: usize) -> Result<TwoModeNRep> {
    if len < 2 {
        return Err(Error::Argument(format!(
            "need at least 2 coefficients, got {len}"
        )));
    }
    let c = label.c();
    let amp = PollaczekWeight::new(c)?.density(lambda).sqrt();
    let p = pollaczek_values(len, lambda, c)?;
    Ok(TwoModeNRep {
        generator: Generator::J2,
        label,
        value: lambda,
        coeffs: p
            .iter()
            .enumerate()
            .map(|(n, pn)| minus_i_pow(n) * (amp * pn))
            .collect(),
    })
}

/// Which two-mode generator a ladder application refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LadderOp {
    J0,
    J1,
    J2,
    KPlus,
}

/// Tridiagonal action of a generator on ladder coefficients; entries past
/// the truncation are zero.
pub fn apply_ladder(op: LadderOp, label: TwoModeLabel, coeffs: &[Complex64]) -> Vec<Complex64> {
    let d = label.abs_delta();
    let len = coeffs.len();
    let zero = Complex64::new(0.0, 0.0);
    (0..len)
        .map(|n| {
            let down = if n > 0 {
                ladder_step(n - 1, d) * coeffs[n - 1]
            } else {
                zero
            };
            let up = if n + 1 < len {
                ladder_step(n, d) * coeffs[n + 1]
            } else {
                zero
            };
            let diag = 0.5 * ((2 * n + d) as f64 + 1.0) * coeffs[n];
            match op {
                LadderOp::J0 => diag,
                LadderOp::J1 => 0.5 * (down + up),
                LadderOp::J2 => Complex64::new(0.0, -0.5) * (down - up),
                LadderOp::KPlus => diag + 0.5 * (down + up),
            }
        })
        .collect()
}

/// Dense N×N matrix of a generator on the truncated Δn ladder.
pub fn ladder_matrix(op: LadderOp, label: TwoModeLabel, len: usize) -> DMatrix<Complex64> {
    let mut m = DMatrix::from_element(len, len, Complex64::new(0.0, 0.0));
    for k in 0..len {
        let mut e = vec![Complex64::new(0.0, 0.0); len];
        e[k] = Complex64::new(1.0, 0.0);
        for (r, v) in apply_ladder(op, label, &e).into_iter().enumerate() {
            m[(r, k)] = v;
        }
    }
    m
}

/// Holomorphic J₂ eigenfunction √(ρ_c/Γ(2c)) z₁^{Δn} e^{−z₁z₂} ₁F₁(c−iλ; 2c; 2z₁z₂),
/// with z₁ and z₂ interchanged for Δn < 0.
pub fn j2_zrep_2(
    lambda: f64,
    label: TwoModeLabel,
    z1: Complex64,
    z2: Complex64,
) -> Result<Complex64> {
    let (z1, z2) = if label.delta_n >= 0 {
        (z1, z2)
    } else {
        (z2, z1)
    };
    let c = label.c();
    let d = label.abs_delta();
    let amp = (PollaczekWeight::new(c)?.density(lambda) / (ln_gamma(2.0 * c)).exp()).sqrt();
    let w = z1 * z2;
    Ok(
        amp * z1.powu(d as u32)
            * (-w).exp()
            * hyp1f1(Complex64::new(c, -lambda), 2.0 * c, 2.0 * w)?,
    )
}

/// Position-space J₂ eigenfunction for Δn = 0:
/// |(q₁−q₂)/(q₁+q₂)|^{iλ} K_{iλ}(|q₁²−q₂²|/2) / (π|Γ(1/2+iλ)|).
pub fn j2_qrep_2_delta0(lambda: f64, q1: f64, q2: f64) -> Result<Complex64> {
    if q1.abs() == q2.abs() {
        return Err(Error::Singular(format!("|q₁| = |q₂| = {}", q1.abs())));
    }
    let line = GammaLine::new(0.5, lambda)?;
    let pre = 1.0 / (PI * gamma_abs_sq(line).sqrt());
    let ratio = ((q1 - q2) / (q1 + q2)).abs();
    let phase = Complex64::from_polar(1.0, lambda * ratio.ln());
    let k = bessel_k_imag(lambda, 0.5 * (q1 * q1 - q2 * q2).abs())?;
    Ok(pre * k * phase)
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

/// K₊ = J₀ + J₁ eigenvector
/// g_n = (−1)ⁿ √2 e^{−η} (2η)^{Δn/2} √(n!/(n+Δn)!) L_n^{Δn}(2η).
pub fn kplus_nrep_2(eta: f64, label: TwoModeLabel, len: usize) -> Result<TwoModeNRep> {
    check_eta("kplus_nrep_2", eta)?;
    if len < 2 {
        return Err(Error::Argument(format!(
            "need at least 2 coefficients, got {len}"
        )));
    }
    let d = label.abs_delta();
    let x = 2.0 * eta;
    let coeffs = (0..len)
        .map(|n| {
            let ln_scale =
                -eta + 0.5 * d as f64 * x.ln() + 0.5 * (ln_factorial(n) - ln_factorial(n + d));
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            Complex64::new(
                sign * SQRT_2 * ln_scale.exp() * laguerre(n, d as f64, x),
                0.0,
            )
        })
        .collect();
    Ok(TwoModeNRep {
        generator: Generator::KPlus,
        label,
        value: eta,
        coeffs,
    })
}

/// Σ_k u^k/(k!(k+ν)!) = u^{−ν/2} I_ν(2√u), entire in u.
fn bessel_i_entire(nu: usize, u: Complex64) -> Result<Complex64> {
    let mut term = Complex64::new((-ln_factorial(nu)).exp(), 0.0);
    let mut sum = term;
    for k in 0..500 {
        let kf = k as f64;
        term *= u / ((kf + 1.0) * (kf + 1.0 + nu as f64));
        sum += term;
        if kf * kf > u.norm() && term.norm() <= 1e-17 * sum.norm() {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence {
        func: "bessel_i_entire",
        iterations: 500,
        last_term: term.norm(),
        partial_sum: sum.norm(),
    })
}

/// Holomorphic K₊ eigenfunction √2 e^{−η} (z₁/z₂)^{Δn/2} e^{−z₁z₂} I_{Δn}(2√(2η z₁z₂)),
/// z₁ and z₂ interchanged for Δn < 0.
///
/// For integer Δn the product (z₁/z₂)^{Δn/2} I_{Δn}(·) is a power series in
/// z₁ and z₂. The principal-branch closed form is used where its square
/// roots combine to z₁; at z₂ = 0 or across the cut of √(z₁z₂) the series
/// form is summed instead.
pub fn kplus_zrep_2(
    eta: f64,
    label: TwoModeLabel,
    z1: Complex64,
    z2: Complex64,
) -> Result<Complex64> {
    check_eta("kplus_zrep_2", eta)?;
    let (z1, z2) = if label.delta_n >= 0 {
        (z1, z2)
    } else {
        (z2, z1)
    };
    let d = label.abs_delta();
    let w = z1 * z2;
    let pre = SQRT_2 * (-eta - w).exp();
    if z2 != Complex64::new(0.0, 0.0) {
        let root = w.sqrt();
        let half_ratio = (z1 / z2).sqrt();
        if (half_ratio * root - z1).norm() <= 1e-12 * z1.norm() {
            let arg = 2.0 * (2.0 * eta).sqrt() * root;
            return Ok(pre * half_ratio.powu(d as u32) * bessel_i(d as f64, arg)?);
        }
    }
    // (z₁/z₂)^{d/2} I_d(2√(xw)) = z₁^d x^{d/2} Σ (xw)^k/(k!(k+d)!)
    let x = 2.0 * eta;
    Ok(pre * z1.powu(d as u32) * x.powf(0.5 * d as f64) * bessel_i_entire(d, x * w)?)
}

/// Double-double number hi + lo with |lo| ≤ ulp(hi)/2.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
struct DoubleDouble {
    hi: f64,
    lo: f64,
}

impl DoubleDouble {
    fn from(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    /// √m to about 2^−104 relative: the residual m − hi² is exact under FMA.
    fn sqrt(m: f64) -> Self {
        let hi = m.sqrt();
        if hi == 0.0 {
            return Self::default();
        }
        let residual = (-hi).mul_add(hi, m);
        Self::two_sum(hi, residual / (2.0 * hi))
    }

    fn two_sum(a: f64, b: f64) -> Self {
        let s = a + b;
        let v = s - a;
        Self {
            hi: s,
            lo: (a - (s - v)) + (b - v),
        }
    }

    fn add(self, o: Self) -> Self {
        let s = Self::two_sum(self.hi, o.hi);
        let lo = s.lo + self.lo + o.lo;
        Self::two_sum(s.hi, lo)
    }

    fn neg(self) -> Self {
        Self {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    fn mul(self, o: Self) -> Self {
        let p = self.hi * o.hi;
        let err = self.hi.mul_add(o.hi, -p);
        let lo = err + self.hi * o.lo + self.lo * o.hi;
        Self::two_sum(p, lo)
    }

    fn value(self) -> f64 {
        self.hi + self.lo
    }
}

type DdMatrix = Vec<Vec<DoubleDouble>>;

fn dd_matmul(a: &DdMatrix, b: &DdMatrix) -> DdMatrix {
    let n = a.len();
    (0..n)
        .map(|r| {
            (0..n)
                .map(|c| {
                    (0..n).fold(DoubleDouble::default(), |acc, k| {
                        acc.add(a[r][k].mul(b[k][c]))
                    })
                })
                .collect()
        })
        .collect()
}

/// Column n of C₂ = J₀² − J₁² − J₂² on the Δn ladder, from dense ladder
/// matrices multiplied in double-double arithmetic. The matrices are sized
/// so that column n never touches the truncation edge.
///
/// J₂ has purely imaginary entries ±(i/2)s_k, so −J₂² = B² with B the real
/// antisymmetric matrix of their imaginary parts.
pub fn casimir_column(label: TwoModeLabel, n: usize) -> Vec<f64> {
    let len = n + 3;
    let d = label.abs_delta();
    let zero = DoubleDouble::default();
    let half = DoubleDouble::from(0.5);
    let mut j0 = vec![vec![zero; len]; len];
    let mut j1 = vec![vec![zero; len]; len];
    let mut b = vec![vec![zero; len]; len];
    for k in 0..len {
        j0[k][k] = DoubleDouble::from(0.5 * ((2 * k + d) as f64 + 1.0));
        if k + 1 < len {
            let step = half.mul(DoubleDouble::sqrt(
                (k as f64 + 1.0) * ((k + d) as f64 + 1.0),
            ));
            j1[k][k + 1] = step;
            j1[k + 1][k] = step;
            b[k][k + 1] = step;
            b[k + 1][k] = step.neg();
        }
    }
    let j0sq = dd_matmul(&j0, &j0);
    let j1sq = dd_matmul(&j1, &j1);
    let bsq = dd_matmul(&b, &b);
    (0..len)
        .map(|r| j0sq[r][n].add(j1sq[r][n].neg()).add(bsq[r][n]).value())
        .collect()
}

/// ⟨n|C₂|n⟩ on the Δn ladder; equals (Δn² − 1)/4 for every n.
pub fn casimir_apply(label: TwoModeLabel, n: usize) -> f64 {
    casimir_column(label, n)[n]
}

/// Column n of C₂ from the double-precision dense ladder matrices; its
/// rounding grows like ε·n².
pub fn casimir_column_f64(label: TwoModeLabel, n: usize) -> Vec<Complex64> {
    let len = n + 3;
    let j0 = ladder_matrix(LadderOp::J0, label, len);
    let j1 = ladder_matrix(LadderOp::J1, label, len);
    let j2 = ladder_matrix(LadderOp::J2, label, len);
    let c2 = &j0 * &j0 - &j1 * &j1 - &j2 * &j2;
    (0..len).map(|r| c2[(r, n)]).collect()
}
