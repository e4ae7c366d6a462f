use thiserror::Error;

/// Errors raised by constructions and validators across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("codomain mismatch: {0}")]
    CodomainMismatch(String),

    #[error("domain mismatch: {0}")]
    DomainMismatch(String),

    #[error("base mismatch: {0}")]
    BaseMismatch(String),

    #[error("budget exceeded in {op}: {required} candidates, budget {budget}")]
    BudgetExceeded {
        op: String,
        required: u128,
        budget: u64,
    },

    #[error("invalid {kind}: {detail}")]
    Invalid { kind: String, detail: String },

    #[error("typing error: {0}")]
    Typing(String),

    #[error("non-cartesian edge in limit diagram: {0}")]
    NonCartesianEdge(String),

    #[error("limit diagram is not connected")]
    DisconnectedDiagram,

    #[error("direction transport is inconsistent: {0}")]
    InconsistentTransport(String),

    #[error("schema error at {path}: {detail}")]
    Schema { path: String, detail: String },

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub fn invalid(kind: &str, detail: impl Into<String>) -> Self {
        Error::Invalid {
            kind: kind.to_string(),
            detail: detail.into(),
        }
    }

    pub fn schema(path: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Schema {
            path: path.into(),
            detail: detail.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
