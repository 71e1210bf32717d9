use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("relation {0} is not a composable path")]
    NonComposableRelation(String),
    #[error("relation {0} is too short: relations need at least two arrows")]
    RelationTooShort(String),
    #[error("algebra is infinite-dimensional: arbitrarily long nonzero paths exist")]
    InfiniteDimensional,
    #[error("{0} is not a prime field characteristic")]
    NotPrime(u32),
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("unsupported quiver shape: {0}")]
    UnsupportedShape(String),
    #[error("representation does not match its algebra: {0}")]
    InvalidRepresentation(String),
    #[error("objects live over different algebras")]
    AlgebraMismatch,
    #[error("indecomposable list incomplete: {0}")]
    IncompleteModel(String),
    #[error("bound exceeded: {what} is {value}, limit {limit}")]
    BoundExceeded {
        what: &'static str,
        value: usize,
        limit: usize,
    },
    #[error("unknown name: {0}")]
    UnknownName(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("consistency failure: {0}")]
    Consistency(String),
    #[error("invalid group action: {0}")]
    InvalidAction(String),
}

pub type Result<T> = std::result::Result<T, Error>;
