use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("model has no arcs")]
    EmptyModel,
    #[error("arc {0} collapses to a single point")]
    DegenerateArc(usize),
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("placement conflict: {0}")]
    PlacementConflict(String),
    #[error("unknown id: {0}")]
    UnknownId(String),
    #[error("inconsistent mapping: {0}")]
    InconsistentMapping(String),
    #[error("mapping violated: {0}")]
    MappingViolated(String),
    #[error("negative weight not allowed for {0}")]
    WeightSignViolation(String),
    #[error("weight kind does not match problem {0}")]
    KindMismatch(String),
    #[error("instance too large for exhaustive search: {0}")]
    TooLarge(String),
    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("internal invariant failed: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
