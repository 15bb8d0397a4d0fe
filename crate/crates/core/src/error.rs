use thiserror::Error;

/// Errors raised by the algebra engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or out-of-range input.
    #[error("input error: {0}")]
    Input(String),

    /// Operand shapes are incompatible.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// The request exceeds the supported enumeration bounds.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// An automorphism has an eigenvalue outside the permitted set.
    #[error("purity violation: characteristic polynomial has offending factor {factor}")]
    PurityViolation { factor: String },

    /// A verification routine found a mismatch.
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}
