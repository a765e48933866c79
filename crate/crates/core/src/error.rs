use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Failures surfaced by the algebra routines.
///
/// The variants are grouped by how a caller is expected to react: structural
/// misuse (mismatched rings or ranks), mathematical preconditions, exhausted
/// resource caps, and internal contract violations that indicate a bug.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero in F_{0}")]
    DivisionByZero(u64),

    #[error("p must be prime (got {0})")]
    NotPrime(u64),

    #[error("objects belong to different rings")]
    ContextMismatch,

    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("exponent overflow")]
    Overflow,

    #[error("unit ideal: {0}")]
    UnitIdeal(&'static str),

    #[error("{0}")]
    Precondition(String),

    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("parse error at {line}:{col}: {msg}")]
    Parse {
        line: usize,
        col: usize,
        msg: String,
    },
}

impl Error {
    pub(crate) fn parse(col: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line: 1,
            col,
            msg: msg.into(),
        }
    }

    /// Re-anchors a parse error reported against a single line of a larger file.
    pub fn at_line(self, line: usize, col_offset: usize) -> Self {
        match self {
            Error::Parse { col, msg, .. } => Error::Parse {
                line,
                col: col + col_offset,
                msg,
            },
            other => other,
        }
    }
}
