use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("integer overflow while computing {0}")]
    Range(&'static str),
    #[error("C({m},{n}) has both parameters odd: it is a 2-component link, not a knot")]
    NotAKnot { m: i64, n: i64 },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("search gave up after visiting {nodes} nodes (budget exhausted)")]
    BudgetExceeded { nodes: u64 },
    #[error("inconsistent bounds: {0}")]
    Inconsistent(String),
    #[error("unknown residue form `{0}`")]
    UnknownForm(String),
}

pub type Result<T> = std::result::Result<T, Error>;
