//! Special-function kernel: complex gamma, hypergeometric series, classical
//! orthogonal polynomials and modified Bessel functions.

pub mod bessel;
pub mod gamma;
pub mod hypergeometric;
pub mod orthopoly;

pub use bessel::{bessel_i, bessel_k_imag};
pub use gamma::{gamma_abs_sq, gamma_arg, log_gamma_complex, GammaLine};
pub use hypergeometric::{hyp1f1, hyp2f1_terminating, hyp2f1_terminating_exact};
pub use orthopoly::{hermite, laguerre};

/// A point of the complex plane (holomorphic-representation argument).
pub type ComplexPoint = num_complex::Complex64;
