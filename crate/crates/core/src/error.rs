use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid {field}: {message}")]
    Validation { field: String, message: String },

    #[error("subset is not invariant: {0}")]
    NotInvariant(String),

    #[error("presentations do not match: {0}")]
    PresentationMismatch(String),

    #[error("homomorphism is not well defined: {0}")]
    NotWellDefined(String),

    #[error("enumeration cap exceeded: {0}")]
    EnumerationCap(String),

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("input error: {0}")]
    Input(String),

    /// A machine check that must hold for every valid input failed. This
    /// signals a defect in the library, not in the input.
    #[error("internal consistency check failed: {0}")]
    InternalConsistency(String),
}

impl Error {
    pub fn validation(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Validation {
            field: field.into(),
            message: message.into(),
        }
    }

    pub fn is_internal(&self) -> bool {
        matches!(self, Error::InternalConsistency(_))
    }
}
