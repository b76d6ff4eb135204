use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("not a permutation: {0:?}")]
    NotAPermutation(Vec<usize>),

    #[error("malformed partition: {0}")]
    MalformedPartition(String),

    #[error("malformed table: {0}")]
    MalformedTable(String),

    #[error("product is not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),

    #[error(
        "partition is not a congruence: {0}~{1} and {2}~{3} but their products are not related"
    )]
    NotACongruence(usize, usize, usize, usize),

    #[error("tables violate equation {equation} at {witness:?}")]
    NotASolution {
        equation: u8,
        witness: (usize, usize, usize),
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("hypothesis `{0}` does not hold")]
    Hypothesis(&'static str),

    #[error("cocycle law fails at (a, b, c) = {0:?}")]
    CocycleViolation((usize, usize, usize)),

    #[error("invalid group spec `{0}`: {1}")]
    InvalidGroupSpec(String, String),

    #[error("{0}")]
    Invariant(String),

    #[error("census size {n} exceeds the configured budget of {max}")]
    Budget { n: usize, max: usize },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
