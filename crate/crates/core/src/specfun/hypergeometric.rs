use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{domain, Error, Result};

const HYP1F1_MAX_TERMS: usize = 10_000;
const HYP1F1_REL_STOP: f64 = 1e-17;

fn forbidden_lower(c: f64, m: usize) -> bool {
    c <= 0.0 && c.fract() == 0.0 && (-c) < m as f64
}

/// Neumaier-compensated accumulator for complex sums.
#[derive(Debug, Default, Clone, Copy)]
pub struct CompensatedSum {
    sum: Complex64,
    comp: Complex64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: Complex64) {
        self.sum.re = two_sum_step(self.sum.re, x.re, &mut self.comp.re);
        self.sum.im = two_sum_step(self.sum.im, x.im, &mut self.comp.im);
    }

    pub fn value(&self) -> Complex64 {
        self.sum + self.comp
    }
}

fn two_sum_step(s: f64, x: f64, comp: &mut f64) -> f64 {
    let t = s + x;
    if s.abs() >= x.abs() {
        *comp += (s - t) + x;
    } else {
        *comp += (x - t) + s;
    }
    t
}

/// Terminating Gauss series F(−m, a, c; z) summed in double precision.
///
/// Also returns Σ|terms|, the absolute condition scale: the rounding error of
/// the result is a small multiple of `scale · ε`. For z = 2 the scale grows
/// like 3^m, so large m should go through [`hyp2f1_terminating_exact`].
pub fn hyp2f1_terminating_scaled(
    m: usize,
    a: Complex64,
    c: f64,
    z: f64,
) -> Result<(Complex64, f64)> {
    if forbidden_lower(c, m) {
        return Err(domain(
            "hyp2f1_terminating",
            format!("lower parameter c = {c} is a non-positive integer above -{m}"),
        ));
    }
    let mut term = Complex64::new(1.0, 0.0);
    let mut acc = CompensatedSum::default();
    let mut scale = 0.0;
    acc.add(term);
    scale += term.norm();
    for k in 0..m {
        let kf = k as f64;
        term *= (a + kf) * ((kf - m as f64) * z / ((c + kf) * (kf + 1.0)));
        acc.add(term);
        scale += term.norm();
    }
    Ok((acc.value(), scale))
}

/// Terminating Gauss series F(−m, a, c; z) as an m+1 term polynomial sum.
pub fn hyp2f1_terminating(m: usize, a: Complex64, c: f64, z: f64) -> Result<Complex64> {
    hyp2f1_terminating_scaled(m, a, c, z).map(|(v, _)| v)
}

#[derive(Clone, Debug)]
struct ComplexRational {
    re: BigRational,
    im: BigRational,
}

impl ComplexRational {
    fn mul(&self, other: &ComplexRational) -> ComplexRational {
        ComplexRational {
            re: &self.re * &other.re - &self.im * &other.im,
            im: &self.re * &other.im + &self.im * &other.re,
        }
    }

    fn scale(&self, r: &BigRational) -> ComplexRational {
        ComplexRational {
            re: &self.re * r,
            im: &self.im * r,
        }
    }
}

fn exact(x: f64, func: &'static str) -> Result<BigRational> {
    BigRational::from_float(x).ok_or_else(|| domain(func, format!("non-finite input {x}")))
}

/// Same series as [`hyp2f1_terminating`], evaluated in exact rational
/// arithmetic (every finite double is a dyadic rational) and rounded once.
///
/// Immune to the cancellation of the double-precision sum; cost grows roughly
/// quadratically in m.
pub fn hyp2f1_terminating_exact(m: usize, a: Complex64, c: f64, z: f64) -> Result<Complex64> {
    const F: &str = "hyp2f1_terminating_exact";
    if forbidden_lower(c, m) {
        return Err(domain(
            F,
            format!("lower parameter c = {c} is a non-positive integer above -{m}"),
        ));
    }
    let a_re = exact(a.re, F)?;
    let a_im = exact(a.im, F)?;
    let c = exact(c, F)?;
    let z = exact(z, F)?;
    let mut term = ComplexRational {
        re: BigRational::from_integer(BigInt::from(1)),
        im: BigRational::zero(),
    };
    let mut sum = term.clone();
    for k in 0..m {
        let kq = BigRational::from_integer(BigInt::from(k));
        let mq = BigRational::from_integer(BigInt::from(m));
        let rising = ComplexRational {
            re: &a_re + &kq,
            im: a_im.clone(),
        };
        let ratio =
            (&kq - &mq) * &z / ((&c + &kq) * (&kq + BigRational::from_integer(BigInt::from(1))));
        term = term.mul(&rising).scale(&ratio);
        sum.re += &term.re;
        sum.im += &term.im;
    }
    let re = sum.re.to_f64().unwrap_or(f64::NAN);
    let im = sum.im.to_f64().unwrap_or(f64::NAN);
    Ok(Complex64::new(re, im))
}

fn hyp1f1_series(a: Complex64, c: f64, x: Complex64) -> Result<Complex64> {
    let mut term = Complex64::new(1.0, 0.0);
    let mut acc = CompensatedSum::default();
    acc.add(term);
    // terms decrease monotonically once k exceeds |x| + |a|
    let monotone_from = x.norm() + a.norm();
    for k in 0..HYP1F1_MAX_TERMS {
        let kf = k as f64;
        term *= (a + kf) * x / ((c + kf) * (kf + 1.0));
        acc.add(term);
        if term == Complex64::new(0.0, 0.0) {
            return Ok(acc.value());
        }
        if kf + 1.0 > monotone_from && term.norm() < HYP1F1_REL_STOP * acc.value().norm() {
            return Ok(acc.value());
        }
    }
    let partial = acc.value();
    Err(Error::NonConvergence {
        func: "hyp1f1",
        iterations: HYP1F1_MAX_TERMS,
        last_term: term.norm(),
        partial_sum: partial.norm(),
    })
}

/// Kummer's confluent function ₁F₁(a; c; x).
///
/// For re(x) < 0 the Kummer transform e^x ₁F₁(c−a; c; −x) is summed instead
/// so that the series has no cancellation from alternating signs.
pub fn hyp1f1(a: Complex64, c: f64, x: Complex64) -> Result<Complex64> {
    if c <= 0.0 && c.fract() == 0.0 {
        return Err(domain(
            "hyp1f1",
            format!("lower parameter c = {c} is a non-positive integer"),
        ));
    }
    if !x.re.is_finite() || !x.im.is_finite() {
        return Err(domain("hyp1f1", format!("non-finite argument {x}")));
    }
    if x.re < 0.0 {
        let c_minus_a = Complex64::new(c, 0.0) - a;
        Ok(x.exp() * hyp1f1_series(c_minus_a, c, -x)?)
    } else {
        hyp1f1_series(a, c, x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn cx(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn terminating_base_cases() {
        assert_eq!(
            hyp2f1_terminating(0, cx(0.3, 2.0), 0.5, 2.0).unwrap(),
            cx(1.0, 0.0)
        );
        let a = cx(0.25, -1.5);
        let c = 0.75;
        let v = hyp2f1_terminating(1, a, c, 2.0).unwrap();
        let expect = cx(1.0, 0.0) - 2.0 * a / c;
        assert!((v - expect).norm() < 1e-15);
        assert!(hyp2f1_terminating(3, a, -1.0, 2.0).is_err());
        assert!(hyp2f1_terminating(1, a, -1.0, 2.0).is_ok());
        assert!(hyp2f1_terminating_exact(3, a, 0.0, 2.0).is_err());
    }

    #[test]
    fn exact_matches_double_where_well_conditioned() {
        for m in 0..12 {
            let a = cx(0.75, 0.4);
            let (d, scale) = hyp2f1_terminating_scaled(m, a, 1.5, 2.0).unwrap();
            let e = hyp2f1_terminating_exact(m, a, 1.5, 2.0).unwrap();
            assert!((d - e).norm() < 8.0 * f64::EPSILON * scale, "m={m}");
        }
    }

    #[test]
    fn sign_symmetry_under_conjugate_parameter() {
        // F(-m, 1/4 - iλ, 1/2; 2) = (-1)^m F(-m, 1/4 + iλ, 1/2; 2)
        for &lam in &[0.0, 0.5, 1.75, 3.0] {
            for m in 0..40 {
                let lhs = hyp2f1_terminating_exact(m, cx(0.25, -lam), 0.5, 2.0).unwrap();
                let rhs = hyp2f1_terminating_exact(m, cx(0.25, lam), 0.5, 2.0).unwrap();
                let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                assert!(
                    (lhs - sign * rhs).norm() <= 1e-14 * lhs.norm().max(1e-300),
                    "m={m} λ={lam}"
                );
            }
        }
    }

    #[test]
    fn confluent_trivial_cases() {
        assert_eq!(
            hyp1f1(cx(0.25, -3.0), 0.5, cx(0.0, 0.0)).unwrap(),
            cx(1.0, 0.0)
        );
        for &x in &[cx(1.3, 0.0), cx(-2.5, 0.7), cx(0.2, -3.0), cx(-9.0, 0.0)] {
            let v = hyp1f1(cx(1.5, 0.0), 1.5, x).unwrap();
            assert!((v - x.exp()).norm() < 1e-14 * x.exp().norm(), "x={x}");
        }
        assert!(hyp1f1(cx(1.0, 0.0), -2.0, cx(1.0, 0.0)).is_err());
    }

    fn exact_1f1(a: f64, c: f64, x: f64, terms: usize) -> f64 {
        let a = BigRational::from_float(a).unwrap();
        let c = BigRational::from_float(c).unwrap();
        let x = BigRational::from_float(x).unwrap();
        let one = BigRational::from_integer(BigInt::from(1));
        let mut t = one.clone();
        let mut s = one.clone();
        for k in 0..terms {
            let kq = BigRational::from_integer(BigInt::from(k));
            t = t * (&a + &kq) * &x / ((&c + &kq) * (&kq + &one));
            s += &t;
        }
        s.to_f64().unwrap()
    }

    #[test]
    fn confluent_against_long_exact_series() {
        let oracle = exact_1f1(0.25, 0.5, 1.0, 80);
        let v = hyp1f1(cx(0.25, 0.0), 0.5, cx(1.0, 0.0)).unwrap();
        assert_relative_eq!(v.re, oracle, max_relative = 1e-12);
        assert_eq!(v.im, 0.0);
        // Kummer branch: x = -3
        let oracle = exact_1f1(0.25, 0.5, -3.0, 120);
        let v = hyp1f1(cx(0.25, 0.0), 0.5, cx(-3.0, 0.0)).unwrap();
        assert_relative_eq!(v.re, oracle, max_relative = 1e-12);
    }

    #[test]
    fn nonconvergence_is_reported() {
        let err = hyp1f1(cx(0.5, 0.0), 0.5, cx(50_000.0, 0.0)).unwrap_err();
        assert!(matches!(err, Error::NonConvergence { .. }));
    }
}
