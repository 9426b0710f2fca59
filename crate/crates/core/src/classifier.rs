//! Spectral classification of the hermitian quadratic Hamiltonian
//! H = A(a†a + aa†) + B e^{iΦ}a² + B e^{−iΦ}a†² + C e^{iΨ}a + C e^{−iΨ}a† + D.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::hermitian_eigenvalues;

/// Default relative tolerance for deciding A = B.
pub const DEFAULT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadHamiltonian {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub phi: f64,
    pub psi: f64,
}

impl QuadHamiltonian {
    pub fn new(a: f64, b: f64, c: f64, d: f64, phi: f64, psi: f64) -> Result<Self> {
        let h = Self {
            a,
            b,
            c,
            d,
            phi,
            psi,
        };
        h.validate()?;
        Ok(h)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("A", self.a), ("B", self.b), ("C", self.c)] {
            if !(v >= 0.0) || !v.is_finite() {
                return Err(Error::Argument(format!(
                    "{name} must be finite and non-negative, got {v}"
                )));
            }
        }
        for (name, v) in [("D", self.d), ("Φ", self.phi), ("Ψ", self.psi)] {
            if !v.is_finite() {
                return Err(Error::Argument(format!("{name} must be finite, got {v}")));
            }
        }
        Ok(())
    }

    /// The same operator after a → e^{−iχ}a.
    pub fn rotated(&self, chi: f64) -> Self {
        Self {
            phi: self.phi + 2.0 * chi,
            psi: self.psi + chi,
            ..*self
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpectrumKind {
    /// scale·{(2k+1)/4} + shift, simple eigenvalues.
    DiscreteEquidistant,
    /// The whole real line, twice.
    DoubledRealLine,
    /// [shift, ∞), twice.
    DoubledHalfAxis,
    /// The whole real line, once.
    FullRealLine,
}

/// Normal form: H is unitarily equivalent to scale·G + shift, with G one of
/// J₀ = (a†a + 1/2)/2, J₂, K₊ = q²/2 or p according to `kind`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumClassification {
    pub kind: SpectrumKind,
    pub scale: f64,
    pub shift: f64,
    /// Displacement removing the linear terms (A ≠ B only).
    pub alpha: Option<Complex64>,
    pub multiplicity: u32,
    /// Set for A = B = C = 0, where H = D is a constant.
    pub degenerate: bool,
}

impl SpectrumClassification {
    /// Lowest `count` levels of a discrete spectrum.
    pub fn levels(&self, count: usize) -> Vec<f64> {
        (0..count)
            .map(|k| self.scale * (2 * k + 1) as f64 / 4.0 + self.shift)
            .collect()
    }
}

/// Displacement α solving 2Aᾱ + 2Be^{iΦ}α + Ce^{iΨ} = 0.
fn displacement(h: &QuadHamiltonian) -> Complex64 {
    let det = h.a * h.a - h.b * h.b;
    let bracket =
        h.a * Complex64::from_polar(1.0, -h.psi) - h.b * Complex64::from_polar(1.0, h.psi - h.phi);
    -h.c * bracket / (2.0 * det)
}

/// Constant left after displacing by α: D − C²[A − B cos(Φ − 2Ψ)]/(2(A² − B²)).
fn displaced_constant(h: &QuadHamiltonian) -> f64 {
    let det = h.a * h.a - h.b * h.b;
    h.d - h.c * h.c * (h.a - h.b * (h.phi - 2.0 * h.psi).cos()) / (2.0 * det)
}

pub fn classify(h: &QuadHamiltonian, tol: f64) -> Result<SpectrumClassification> {
    h.validate()?;
    if !(tol > 0.0) {
        return Err(Error::Argument(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let gap = h.a - h.b;
    let big = h.a.max(h.b);
    if gap.abs() > tol * big {
        let det = h.a * h.a - h.b * h.b;
        let (kind, multiplicity) = if gap > 0.0 {
            (SpectrumKind::DiscreteEquidistant, 1)
        } else {
            (SpectrumKind::DoubledRealLine, 2)
        };
        return Ok(SpectrumClassification {
            kind,
            scale: 4.0 * det.abs().sqrt(),
            shift: displaced_constant(h),
            alpha: Some(displacement(h)),
            multiplicity,
            degenerate: false,
        });
    }
    // A = B: after a → e^{−iΦ/2}a the operator is 2Aq² + C√2(cos θ q − sin θ p), θ = Ψ − Φ/2
    let theta = h.psi - 0.5 * h.phi;
    let transverse = h.c * theta.sin().abs();
    let a = 0.5 * (h.a + h.b);
    if transverse > tol * h.c.max(a) {
        let shift = if a > 0.0 {
            h.d - h.c * h.c / (4.0 * a) * theta.cos().powi(2)
        } else {
            h.d
        };
        return Ok(SpectrumClassification {
            kind: SpectrumKind::FullRealLine,
            scale: std::f64::consts::SQRT_2 * transverse,
            shift,
            alpha: None,
            multiplicity: 1,
            degenerate: false,
        });
    }
    if a == 0.0 {
        // A = B = 0 and no transverse part: C√2 q (if C > 0) or the constant D
        return Ok(if h.c > 0.0 {
            SpectrumClassification {
                kind: SpectrumKind::FullRealLine,
                scale: std::f64::consts::SQRT_2 * h.c,
                shift: h.d,
                alpha: None,
                multiplicity: 1,
                degenerate: false,
            }
        } else {
            SpectrumClassification {
                kind: SpectrumKind::DiscreteEquidistant,
                scale: 0.0,
                shift: h.d,
                alpha: None,
                multiplicity: 1,
                degenerate: true,
            }
        });
    }
    Ok(SpectrumClassification {
        kind: SpectrumKind::DoubledHalfAxis,
        scale: 4.0 * a,
        shift: h.d - h.c * h.c / (4.0 * a),
        alpha: None,
        multiplicity: 2,
        degenerate: false,
    })
}

/// Classifications of H with A raised by ε and with B raised by ε.
pub fn instability_probe(
    h: &QuadHamiltonian,
    epsilon: f64,
    tol: f64,
) -> Result<(SpectrumClassification, SpectrumClassification)> {
    if !(epsilon >= 0.0) || !epsilon.is_finite() {
        return Err(Error::Argument(format!(
            "ε must be finite and non-negative, got {epsilon}"
        )));
    }
    let up_a = QuadHamiltonian {
        a: h.a + epsilon,
        ..*h
    };
    let up_b = QuadHamiltonian {
        b: h.b + epsilon,
        ..*h
    };
    Ok((classify(&up_a, tol)?, classify(&up_b, tol)?))
}

/// Dense N×N matrix of H in the number basis.
pub fn number_basis_matrix(h: &QuadHamiltonian, n: usize) -> DMatrix<Complex64> {
    let mut m = DMatrix::from_element(n, n, Complex64::new(0.0, 0.0));
    let two = h.b * Complex64::from_polar(1.0, h.phi);
    let one = h.c * Complex64::from_polar(1.0, h.psi);
    for k in 0..n {
        let kf = k as f64;
        m[(k, k)] = Complex64::new(h.a * (2.0 * kf + 1.0) + h.d, 0.0);
        if k + 1 < n {
            // ⟨k|a|k+1⟩ = √(k+1)
            let v = one * (kf + 1.0).sqrt();
            m[(k, k + 1)] = v;
            m[(k + 1, k)] = v.conj();
        }
        if k + 2 < n {
            let v = two * ((kf + 1.0) * (kf + 2.0)).sqrt();
            m[(k, k + 2)] = v;
            m[(k + 2, k)] = v.conj();
        }
    }
    m
}

/// Ascending eigenvalues of the N×N number-basis truncation of H.
pub fn numeric_spectrum_check(h: &QuadHamiltonian, n: usize) -> Result<Vec<f64>> {
    h.validate()?;
    if n < 16 {
        return Err(Error::Argument(format!(
            "truncation must be at least 16, got {n}"
        )));
    }
    hermitian_eigenvalues(number_basis_matrix(h, n))
}
