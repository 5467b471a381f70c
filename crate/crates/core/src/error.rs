use thiserror::Error;

/// Errors raised by the numerics in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("invalid domain: {0}")]
    InvalidDomain(String),

    #[error("unsupported family: {0}")]
    UnsupportedFamily(String),

    #[error("degenerate normalization: {0}")]
    DegenerateNormalization(String),

    #[error("grid too short: {0}")]
    GridTooShort(String),

    #[error("quadrature did not stabilize: {0}")]
    QuadratureDivergence(String),

    #[error("no convergence after {iterations} iterations (best constant {best_constant:e}, residual {best_residual:e})")]
    NoConvergence {
        iterations: usize,
        best_constant: f64,
        best_residual: f64,
    },
}

impl Error {
    /// Short machine-parsable tag for the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidParams(_) => "InvalidParams",
            Error::InvalidDomain(_) => "InvalidDomain",
            Error::UnsupportedFamily(_) => "UnsupportedFamily",
            Error::DegenerateNormalization(_) => "DegenerateNormalization",
            Error::GridTooShort(_) => "GridTooShort",
            Error::QuadratureDivergence(_) => "QuadratureDivergence",
            Error::NoConvergence { .. } => "NoConvergence",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
