use thiserror::Error;

/// Errors produced by the factor, oracle and inequality computations.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("parameter out of domain: {0}")]
    Domain(String),

    #[error("degree {degree} exceeds the cap {capacity}")]
    DegreeOverflow { degree: usize, capacity: usize },

    #[error("Cholesky breakdown: matrix is numerically indefinite (condition estimate {condition:.3e})")]
    Conditioning { condition: f64 },

    #[error("operator produced a non-polynomial 1/x term with coefficient {coefficient}")]
    NonPolynomialTerm { coefficient: f64 },

    #[error("zero polynomial has no Rayleigh quotient")]
    ZeroPolynomial,
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
