//! Independent reference implementations used only for cross-checks.

use std::f64::consts::SQRT_2;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::Result;
use crate::quadrature::Integrator;
use crate::specfun::orthopoly::oscillator_eigenfunction;
use crate::two_mode::j2_qrep_2_delta0;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Truncated annihilation operator: a|n⟩ = √n |n−1⟩.
pub fn dense_annihilation(n: usize) -> DMatrix<Complex64> {
    DMatrix::from_fn(n, n, |r, c| {
        if c == r + 1 {
            Complex64::new((c as f64).sqrt(), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// (a†² − a²)/4i built from dense ladder matrices.
pub fn dense_j2(n: usize) -> DMatrix<Complex64> {
    let a = dense_annihilation(n);
    let ad = a.adjoint();
    (&ad * &ad - &a * &a) * Complex64::new(0.0, -0.25)
}

/// (a + a†)²/4 from dense ladder matrices; the last diagonal entry misses
/// the a a† contribution from outside the truncation.
pub fn dense_kplus(n: usize) -> DMatrix<Complex64> {
    let a = dense_annihilation(n);
    let x = &a + a.adjoint();
    (&x * &x) * Complex64::new(0.25, 0.0)
}

/// Real-order K₀(x), x > 0: ascending series for x ≤ 2, Steed's continued
/// fraction (Temme's form) above.
pub fn bessel_k0(x: f64) -> f64 {
    assert!(x > 0.0, "K0 needs a positive argument");
    if x <= 2.0 {
        k0_series(x)
    } else {
        k0_continued_fraction(x)
    }
}

fn k0_series(x: f64) -> f64 {
    // K₀ = −(ln(x/2) + γ) I₀ + Σ_{k≥1} (x²/4)^k H_k / (k!)²
    let q = 0.25 * x * x;
    let mut term = 1.0;
    let mut i0 = 1.0;
    let mut tail = 0.0;
    let mut harmonic = 0.0;
    for k in 1..60 {
        let kf = k as f64;
        term *= q / (kf * kf);
        harmonic += 1.0 / kf;
        i0 += term;
        tail += term * harmonic;
        if term < 1e-18 * i0 {
            break;
        }
    }
    -((0.5 * x).ln() + EULER_GAMMA) * i0 + tail
}

fn k0_continued_fraction(x: f64) -> f64 {
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut delh = d;
    let (mut q1, mut q2) = (0.0, 1.0);
    let a1 = 0.25;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 2..10_000 {
        let fi = i as f64;
        a -= 2.0 * (fi - 1.0);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < 1e-16 {
            break;
        }
    }
    (std::f64::consts::PI / (2.0 * x)).sqrt() * (-x).exp() / s
}

/// ⟨m,m|λ⟩ = ∫∫ u_m(q₁)u_m(q₂) φ(q₁,q₂) dq₁dq₂ for the Δn = 0 position
/// wavefunction φ, by nested quadrature.
///
/// With u = (q₁−q₂)/√2, v = (q₁+q₂)/√2 in polar form, t = r²/2 and
/// x = ln cot θ, the four quadrants contribute equally and
/// |q₁²−q₂²|/2 = t/cosh x, |u/v| = e^x, dq₁dq₂ = dt dx/(2 cosh x).
pub fn two_mode_diagonal_projection(lambda: f64, m: usize) -> Result<Complex64> {
    let integrand = |x: f64, out: &mut [f64]| {
        let theta = (-x).exp().atan();
        let inner = |s: f64, o: &mut [f64]| {
            let t = s.exp();
            let r = (2.0 * t).sqrt();
            let (u, v) = (r * theta.cos(), r * theta.sin());
            let (q1, q2) = ((u + v) / SQRT_2, (v - u) / SQRT_2);
            let val = match j2_qrep_2_delta0(lambda, q1, q2) {
                Ok(phi) => {
                    phi * (oscillator_eigenfunction(m, q1)
                        * oscillator_eigenfunction(m, q2)
                        * t
                        * 2.0
                        / x.cosh())
                }
                Err(_) => Complex64::new(f64::NAN, f64::NAN),
            };
            o[0] = val.re;
            o[1] = val.im;
        };
        match Integrator::new(1e-11, 1e-9).integrate_vec(2, inner, -30.0, 4.5) {
            Ok(v) => out.copy_from_slice(&v),
            Err(_) => out.fill(f64::NAN),
        }
    };
    let v = Integrator::new(1e-10, 1e-8).integrate_vec(2, integrand, -24.0, 24.0)?;
    Ok(Complex64::new(v[0], v[1]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn k0_reference_values() {
        assert_relative_eq!(
            bessel_k0(0.1),
            2.427_069_024_702_016_6,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            bessel_k0(1.0),
            0.421_024_438_240_708_34,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            bessel_k0(2.0),
            0.113_893_872_749_533_44,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            bessel_k0(5.0),
            0.003_691_098_334_042_594,
            max_relative = 1e-13
        );
    }

    #[test]
    fn k0_branches_agree_at_switch() {
        let lo = k0_series(2.0);
        let hi = k0_continued_fraction(2.0);
        assert_relative_eq!(lo, hi, max_relative = 1e-13);
    }

    #[test]
    fn ladder_commutator_is_identity_in_interior() {
        let n = 12;
        let a = dense_annihilation(n);
        let comm = &a * a.adjoint() - a.adjoint() * &a;
        for r in 0..n - 1 {
            for c in 0..n - 1 {
                let expect = if r == c { 1.0 } else { 0.0 };
                assert!((comm[(r, c)] - Complex64::new(expect, 0.0)).norm() < 1e-14);
            }
        }
    }
}
