use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("group closure exceeds the maximum order {limit}")]
    GroupTooLarge { limit: usize },
    #[error("group of order {order} exceeds the lattice bound {limit}")]
    LatticeTooLarge { order: usize, limit: usize },
    #[error("isomorphism testing is unsupported for order {order} (bound {limit})")]
    UnsupportedSize { order: usize, limit: usize },
    #[error("subgroup is not normal in the parent group")]
    NotNormal,
    #[error("action does not extend to a homomorphism: {0}")]
    InvalidAction(String),
    #[error("invalid automorphism: {0}")]
    InvalidAutomorphism(String),
    #[error("parse error in {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("invalid parameters: {0}")]
    InvalidParameter(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error("internal consistency error: {0}")]
    Consistency(String),
    #[error("invalid configuration: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn parse(input: &str, reason: impl Into<String>) -> Self {
        Error::Parse {
            input: input.to_string(),
            reason: reason.into(),
        }
    }
}
