use std::fmt;

/// Errors surfaced by library operations.
///
/// `InvalidParameter` maps to CLI exit code 2 ("could not run"),
/// `VerificationFailed` to exit code 1 ("ran and the check failed").
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QlfError {
    /// A precondition on the inputs is violated; the message names it.
    InvalidParameter(String),
    /// A verification ran to completion and found a discrepancy.
    VerificationFailed(String),
    /// Series division hit a non-dividing leading coefficient.
    SeriesDivision(String),
    /// An internal self-diagnostic tripped (e.g. a non-integral exponent
    /// where integrality is guaranteed by construction).
    Internal(String),
}

impl fmt::Display for QlfError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QlfError::InvalidParameter(m) => write!(f, "invalid parameter: {m}"),
            QlfError::VerificationFailed(m) => write!(f, "verification failed: {m}"),
            QlfError::SeriesDivision(m) => write!(f, "series division: {m}"),
            QlfError::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

impl std::error::Error for QlfError {}

pub type Result<T> = std::result::Result<T, QlfError>;
