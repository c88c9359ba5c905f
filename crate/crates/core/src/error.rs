use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("field error: {0}")]
    Field(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("operands live over different algebras")]
    AlgebraMismatch,
    #[error("relation is not admissible: {0}")]
    NonAdmissible(String),
    #[error("possibly infinite-dimensional: no vanishing path length up to cap {0}")]
    PossiblyInfinite(usize),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("decomposition failed: {0}")]
    Decomposition(String),
    #[error("cap reached: {0}")]
    CapReached(String),
    #[error("budget exhausted: {0}")]
    Budget(String),
    #[error("theorem check failed: {0}")]
    Falsified(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Stable machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Field(_) => "field",
            Error::Parse(_) => "parse",
            Error::Dimension(_) => "dimension",
            Error::FieldMismatch => "field_mismatch",
            Error::AlgebraMismatch => "algebra_mismatch",
            Error::NonAdmissible(_) => "non_admissible",
            Error::PossiblyInfinite(_) => "possibly_infinite",
            Error::Precondition(_) => "precondition",
            Error::Decomposition(_) => "decomposition",
            Error::CapReached(_) => "cap_reached",
            Error::Budget(_) => "budget",
            Error::Falsified(_) => "falsified",
            Error::Io(_) => "io",
        }
    }

    /// Process exit status used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::CapReached(_) | Error::Budget(_) => 3,
            Error::Falsified(_) => 4,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
