use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid table: {0}")]
    InvalidTable(String),

    #[error("not a group: {0}")]
    NotAGroup(String),

    #[error("not a quandle: {0}")]
    NotAQuandle(String),

    #[error("product of {factors} factors has more than {cap} elements")]
    SizeOverflow { factors: usize, cap: usize },

    #[error("element {element} out of range for size {size}")]
    ElementOutOfRange { element: usize, size: usize },

    #[error("pair ({0}, {0}) lies on the diagonal")]
    DiagonalPair(usize),

    #[error("constraint set contains both ({0}, {1}) and its reverse")]
    ReversedConstraint(usize, usize),

    #[error("order relation is not completed: pair ({0}, {1}) is undecided")]
    Incomplete(usize, usize),

    #[error("bit string has length {found}, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("size {size} exceeds the configured bound {bound}")]
    BoundExceeded { size: usize, bound: usize },

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("order count overflowed")]
    CountOverflow,

    #[error("factor order {index} is invalid: {reason}")]
    InvalidFactorOrder { index: usize, reason: String },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{source_name}:{line}: {message} (at `{token}`)")]
    Parse { source_name: String, line: usize, token: String, message: String },

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    pub fn parse(source_name: &str, line: usize, token: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse { source_name: source_name.to_string(), line, token: token.into(), message: message.into() }
    }
}
