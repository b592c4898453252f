use thiserror::Error;

/// Errors raised by the exact engine.
#[derive(Debug, Error)]
pub enum Error {
    #[error("permutation sizes differ: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("invalid permutation: {0}")]
    InvalidPerm(String),
    #[error("pair does not generate a transitive subgroup")]
    NotTransitive,
    #[error("Laurent polynomial is not invariant under A -> -1/A")]
    NotInvariant,
    #[error("triangular solve left a nonzero residual")]
    NoPreimage,
    #[error("rational function does not become a Laurent polynomial under alpha = A^2")]
    NotLaurent,
    #[error("index {0} out of range (need at least {1})")]
    BadIndex(usize, usize),
    #[error("bicolored graph has an isolated vertex")]
    IsolatedVertex,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("size {requested} exceeds budget {budget}")]
    BudgetExceeded { requested: usize, budget: usize },
    #[error("diagram size {requested} exceeds the oracle bound {bound}")]
    BoundExceeded { requested: usize, bound: usize },
    #[error("weight is not defined exactly on the black vertices")]
    DomainMismatch,
    #[error("interpolation system is inconsistent or rank deficient: {0}")]
    RankDeficient(String),
    #[error("multirectangular heights are not weakly decreasing")]
    NotDecreasing,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
