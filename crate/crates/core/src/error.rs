use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Input outside the mathematical domain of the function.
    #[error("domain error in {func}: {detail}")]
    Domain { func: &'static str, detail: String },

    /// A series or iteration failed to reach its stopping criterion.
    #[error("{func} did not converge after {iterations} iterations (last term {last_term:e}, partial sum {partial_sum:e})")]
    NonConvergence {
        func: &'static str,
        iterations: usize,
        last_term: f64,
        partial_sum: f64,
    },

    /// Adaptive quadrature exhausted its subdivision budget.
    #[error("quadrature did not reach tolerance: estimated error {error_estimate:e} after {subdivisions} subdivisions")]
    Quadrature {
        error_estimate: f64,
        subdivisions: usize,
    },

    /// Evaluation on a singular locus of a generalized eigenfunction.
    #[error("singular point: {0}")]
    Singular(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("eigensolver failed: {0}")]
    Eigen(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(func: &'static str, detail: impl Into<String>) -> Error {
    Error::Domain {
        func,
        detail: detail.into(),
    }
}
