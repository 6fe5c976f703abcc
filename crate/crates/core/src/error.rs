use thiserror::Error;

/// Errors raised by the algebraic layers. Solver outcomes that are part of
/// normal operation (not inner, exhausted, unsupported) are reported through
/// [`crate::backends::Certificate`] instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("descriptor mismatch: {0}")]
    Mismatch(String),
    #[error("invalid structure constants: {0}")]
    InvalidAlgebra(String),
    #[error("algebra is not central simple")]
    NotCentralSimple,
    #[error("element is not invertible{}", witness.as_ref().map(|w| format!(" (witness {w})")).unwrap_or_default())]
    NotInvertible { witness: Option<String> },
    #[error("invalid homomorphism: {0}")]
    InvalidHom(String),
    #[error("conjugation identity fails at basis element {label} (index {index})")]
    ConjugationMismatch { index: usize, label: String },
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
