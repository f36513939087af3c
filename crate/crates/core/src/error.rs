use thiserror::Error;

/// Errors raised by the evaluation, sequence and analysis routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error in {op}: {detail}")]
    Domain { op: &'static str, detail: String },

    /// A caller-side precondition (bracket signs, lengths, tolerances) is violated.
    #[error("precondition violated in {op}: {detail}")]
    Precondition { op: &'static str, detail: String },

    /// An internal safety cap tripped; indicates a bug rather than bad input.
    #[error("internal error in {op}: {detail}")]
    Internal { op: &'static str, detail: String },
}

impl Error {
    pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            op,
            detail: detail.into(),
        }
    }

    pub(crate) fn precondition(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Precondition {
            op,
            detail: detail.into(),
        }
    }

    pub(crate) fn internal(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Internal {
            op,
            detail: detail.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Rejects non-finite and non-positive reals.
pub(crate) fn require_positive(op: &'static str, x: f64) -> Result<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(
            op,
            format!("expected a finite x > 0, got {x}"),
        ))
    }
}
