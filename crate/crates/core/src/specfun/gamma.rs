use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

// Lanczos approximation, g = 607/128, fourteen-term partial-fraction sum.
const LANCZOS_SHIFT: f64 = 5.242_187_5;
const LANCZOS_C0: f64 = 0.999_999_999_999_997_092;
const LANCZOS_COEFFS: [f64; 14] = [
    57.156_235_665_862_923_5,
    -59.597_960_355_475_491_2,
    14.136_097_974_741_747_1,
    -0.491_913_816_097_620_199,
    0.339_946_499_848_118_887e-4,
    0.465_236_289_270_485_756e-4,
    -0.983_744_753_048_795_646e-4,
    0.158_088_703_224_912_494e-3,
    -0.210_264_441_724_104_883e-3,
    0.217_439_618_115_212_643e-3,
    -0.164_318_106_536_763_890e-3,
    0.844_182_239_838_527_433e-4,
    -0.261_908_384_015_814_087e-4,
    0.368_991_826_595_316_234e-5,
];
const SQRT_2PI: f64 = 2.506_628_274_631_000_5;

/// The point `b + iλ` on a vertical line in the right half plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GammaLine {
    pub b: f64,
    pub lambda: f64,
}

impl GammaLine {
    pub fn new(b: f64, lambda: f64) -> Result<Self> {
        if !(b > 0.0) || !b.is_finite() || !lambda.is_finite() {
            return Err(domain(
                "GammaLine",
                format!("need b > 0 and finite λ, got b={b}, λ={lambda}"),
            ));
        }
        Ok(Self { b, lambda })
    }

    pub fn point(&self) -> Complex64 {
        Complex64::new(self.b, self.lambda)
    }
}

fn lanczos_complex(z: Complex64) -> Complex64 {
    let tmp = z + LANCZOS_SHIFT;
    let head = (z + 0.5) * tmp.ln() - tmp;
    let mut ser = Complex64::new(LANCZOS_C0, 0.0);
    for (j, c) in LANCZOS_COEFFS.iter().enumerate() {
        ser += *c / (z + (j + 1) as f64);
    }
    head + (ser * SQRT_2PI).ln() - z.ln()
}

fn lanczos_real(x: f64) -> f64 {
    let tmp = x + LANCZOS_SHIFT;
    let head = (x + 0.5) * tmp.ln() - tmp;
    let mut ser = LANCZOS_C0;
    for (j, c) in LANCZOS_COEFFS.iter().enumerate() {
        ser += c / (x + (j + 1) as f64);
    }
    head + (SQRT_2PI * ser / x).ln()
}

fn is_pole(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0
}

/// ln sin(πz), real part exact, imaginary part modulo 2π.
fn ln_sin_pi(z: Complex64) -> Complex64 {
    let y = PI * z.im;
    if y.abs() < 20.0 {
        (z * PI).sin().ln()
    } else {
        // |sin πz| ~ e^{π|y|}/2; the neglected factor is 1 - e^{-2π|y|}.
        let phase = if y > 0.0 {
            -PI * z.re + PI / 2.0
        } else {
            PI * z.re - PI / 2.0
        };
        Complex64::new(y.abs() - std::f64::consts::LN_2, phase)
    }
}

/// Log-gamma on the standard branch (continuous in the right half plane,
/// cut along the negative real axis).
///
/// For `re(z) <= 0` the reflection formula is used; there the imaginary
/// part is only determined modulo 2π.
pub fn log_gamma_complex(z: Complex64) -> Result<Complex64> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(domain(
            "log_gamma_complex",
            format!("non-finite argument {z}"),
        ));
    }
    if is_pole(z) {
        return Err(domain("log_gamma_complex", format!("pole at {}", z.re)));
    }
    if z.re >= 0.5 {
        Ok(lanczos_complex(z))
    } else if z.re > 0.0 {
        // one upward step keeps the result on the continuous branch
        Ok(lanczos_complex(z + 1.0) - z.ln())
    } else {
        let reflected = lanczos_complex(Complex64::new(1.0, 0.0) - z);
        Ok(Complex64::new(PI.ln(), 0.0) - ln_sin_pi(z) - reflected)
    }
}

/// ln Γ(x) for real x > 0.
pub fn ln_gamma(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    if x >= 0.5 {
        lanczos_real(x)
    } else {
        lanczos_real(x + 1.0) - x.ln()
    }
}

/// Γ(x) for real x > 0.
pub fn gamma(x: f64) -> f64 {
    ln_gamma(x).exp()
}

/// |Γ(b + iλ)|².
pub fn gamma_abs_sq(g: GammaLine) -> f64 {
    (2.0 * log_gamma_complex(g.point())
        .map(|l| l.re)
        .unwrap_or(f64::NAN))
    .exp()
}

/// ln |Γ(b + iλ)|, useful where the modulus itself underflows.
pub fn ln_gamma_abs(g: GammaLine) -> f64 {
    log_gamma_complex(g.point())
        .map(|l| l.re)
        .unwrap_or(f64::NAN)
}

/// arg Γ(b + iλ), continuous and odd in λ.
pub fn gamma_arg(g: GammaLine) -> f64 {
    log_gamma_complex(g.point())
        .map(|l| l.im)
        .unwrap_or(f64::NAN)
}

/// ln of the Pochhammer symbol (a)_m = Γ(a+m)/Γ(a) for a > 0.
pub fn ln_pochhammer(a: f64, m: usize) -> f64 {
    ln_gamma(a + m as f64) - ln_gamma(a)
}

/// ln n!
pub fn ln_factorial(n: usize) -> f64 {
    ln_gamma(n as f64 + 1.0)
}

pub(crate) fn check_positive(func: &'static str, name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            func,
            detail: format!("{name} must be positive and finite, got {v}"),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn lg(re: f64, im: f64) -> Complex64 {
        log_gamma_complex(Complex64::new(re, im)).unwrap()
    }

    #[test]
    fn small_integer_and_half_values() {
        assert!(lg(1.0, 0.0).norm() < 1e-15);
        assert!(lg(2.0, 0.0).norm() < 1e-15);
        assert_relative_eq!(lg(5.0, 0.0).re, 24f64.ln(), max_relative = 1e-14);
        assert_relative_eq!(lg(0.5, 0.0).re, PI.sqrt().ln(), max_relative = 1e-14);
        assert_relative_eq!(gamma(0.25), 3.625_609_908_221_908_3, max_relative = 1e-14);
    }

    #[test]
    fn poles_are_rejected() {
        assert!(log_gamma_complex(Complex64::new(0.0, 0.0)).is_err());
        assert!(log_gamma_complex(Complex64::new(-3.0, 0.0)).is_err());
        assert!(log_gamma_complex(Complex64::new(-3.0, 1e-9)).is_ok());
    }

    #[test]
    fn reflection_moduli() {
        for &lam in &[0.0, 0.3, 1.0, 4.5, 12.0, 30.0] {
            let half = gamma_abs_sq(GammaLine {
                b: 0.5,
                lambda: lam,
            });
            assert_relative_eq!(half, PI / (PI * lam).cosh(), max_relative = 1e-13);
            let one = gamma_abs_sq(GammaLine {
                b: 1.0,
                lambda: lam,
            });
            let expect = if lam == 0.0 {
                1.0
            } else {
                PI * lam / (PI * lam).sinh()
            };
            assert_relative_eq!(one, expect, max_relative = 1e-13);
        }
    }

    #[test]
    fn known_complex_value() {
        // Γ(1+i) = 0.498015668118356 - 0.154949828301811 i
        let g = lg(1.0, 1.0).exp();
        assert_relative_eq!(g.re, 0.498_015_668_118_356_04, max_relative = 1e-13);
        assert_relative_eq!(g.im, -0.154_949_828_301_810_69, max_relative = 1e-13);
        assert_relative_eq!(
            gamma_arg(GammaLine {
                b: 1.0,
                lambda: 1.0
            }),
            lg(1.0, 1.0).im
        );
    }

    #[test]
    fn argument_is_odd_and_continuous() {
        let mut prev = gamma_arg(GammaLine {
            b: 0.25,
            lambda: 0.0,
        });
        assert_eq!(prev, 0.0);
        let mut lam = 0.0;
        while lam < 50.0 {
            lam += 0.01;
            let a = gamma_arg(GammaLine {
                b: 0.25,
                lambda: lam,
            });
            assert_eq!(
                a,
                -gamma_arg(GammaLine {
                    b: 0.25,
                    lambda: -lam
                })
            );
            // derivative is Re ψ(b+iλ) ≈ ln λ, far below a jump of 2π
            assert!((a - prev).abs() < 0.1, "jump at λ={lam}: {prev} -> {a}");
            prev = a;
        }
    }

    #[test]
    fn duplication_identity_grid() {
        let half_ln_pi = 0.5 * PI.ln();
        for i in 0..16 {
            for j in -10..=10 {
                let z = Complex64::new(0.15 + 0.6 * i as f64, 2.5 * j as f64);
                let lhs = log_gamma_complex(2.0 * z).unwrap();
                let rhs = log_gamma_complex(z).unwrap()
                    + log_gamma_complex(z + 0.5).unwrap()
                    + (2.0 * z - 1.0) * std::f64::consts::LN_2
                    - half_ln_pi;
                // compare Γ values: relative error of Γ = |Δ ln Γ| (mod 2πi)
                let diff = lhs - rhs;
                let wrapped =
                    Complex64::new(diff.re, diff.im - (diff.im / (2.0 * PI)).round() * 2.0 * PI);
                assert!(wrapped.norm() < 1e-12, "z={z}: {wrapped}");
            }
        }
    }

    #[test]
    fn recurrence_across_shift_boundary() {
        for &im in &[0.0, 0.7, -3.0, 25.0] {
            let z = Complex64::new(0.499_999, im);
            let lhs = log_gamma_complex(z + 1.0).unwrap();
            let rhs = log_gamma_complex(z).unwrap() + z.ln();
            assert!((lhs - rhs).norm() < 1e-13);
        }
    }

    #[test]
    fn negative_half_plane_modulus() {
        // |Γ(-1/2)| = 2√π
        let v = lg(-0.5, 0.0);
        assert_relative_eq!(v.re, (2.0 * PI.sqrt()).ln(), max_relative = 1e-13);
        // Γ(z)Γ(1-z) = π / sin(πz) in modulus, large imaginary part
        let z = Complex64::new(-0.3, 40.0);
        let lhs = lg(z.re, z.im).re + lg(1.3, -40.0).re;
        let rhs = PI.ln() - ln_sin_pi(z).re;
        assert_relative_eq!(lhs, rhs, max_relative = 1e-12);
    }
}
