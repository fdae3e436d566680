use thiserror::Error;

/// Errors raised by the walk library.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Two objects that must share a shape do not.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// A coin system or resolution of the identity fails its defining relations.
    #[error("invalid input: {0}")]
    Invalid(String),

    /// A chosen coin component is not an eigenvector of its weighted sum.
    #[error("component for tau = {tau} is not an eigenvector (residual {residual:e})")]
    NotEigenvector { tau: usize, residual: f64 },

    /// A numerical routine did not meet its accuracy contract.
    #[error("numerical error: {0}")]
    Numerical(String),

    #[error("serialization error: {0}")]
    Serde(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
