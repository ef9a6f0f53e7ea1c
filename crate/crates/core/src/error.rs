use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at eps = 0")]
    PoleAtZero,
    #[error("cardinality mismatch: {left} vs {right}")]
    CardinalityMismatch { left: usize, right: usize },
    #[error("cannot parse rational `{0}`")]
    ParseRational(String),
    #[error("syntax error at column {position}: expected {expected}")]
    Syntax { position: usize, expected: String },
    #[error("unbound name `{0}`")]
    UnboundName(String),
    #[error("unsatisfiable partition spec: {0}")]
    UnsatisfiableSpec(String),
    #[error("signature mismatch")]
    SignatureMismatch,
    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },
    #[error("invalid chain: {0}")]
    InvalidChain(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("more than one coincident u/v pair; a single eps cannot separate them")]
    MultipleCollisions,
    #[error("malformed data: {0}")]
    MalformedData(String),
    #[error("sign convention is ambiguous: {0}")]
    AmbiguousConvention(String),
}
