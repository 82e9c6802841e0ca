use thiserror::Error;

use crate::state::MAX_CONTOURS;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("a chain needs at least 2 contours, got {0}")]
    TooFewContours(usize),

    #[error("a chain supports at most {MAX_CONTOURS} contours, got {0}")]
    TooManyContours(usize),

    #[error("cell values must be 0 or 1, got {value} at position {position}")]
    InvalidCell { position: usize, value: u8 },

    #[error("state string may contain only '0' and '1', got {0:?}")]
    InvalidStateChar(char),

    #[error("state string has length {found} but n = {expected}")]
    StateLength { expected: usize, found: usize },

    #[error("state code {code} does not fit into {n} contours")]
    InvalidStateCode { n: usize, code: u64 },

    #[error("the odd-even rule needs an even number of contours, got {0}")]
    OddEvenParity(usize),

    #[error("epsilon must lie in [0, 1), got {0}")]
    InvalidEpsilon(f64),

    #[error(
        "n = {n} exceeds the exact-analysis cap of {cap}; \
         use Monte Carlo estimation (`mc`) for chains this large"
    )]
    ExactCapExceeded { n: usize, cap: usize },

    #[error("n = {n} exceeds the exhaustive-search cap of {cap}")]
    SearchCapExceeded { n: usize, cap: usize },

    #[error(
        "stationary distribution is not unique: {} closed recurrent classes \
         (epsilon = 0 or a degenerate rule?)",
        .classes.len()
    )]
    MultipleRecurrentClasses { classes: Vec<Vec<String>> },

    #[error("stationary solve residual {residual:.3e} exceeds tolerance {tolerance:.1e}")]
    ResidualTooLarge { residual: f64, tolerance: f64 },

    #[error("stationary solve produced a significantly negative probability ({0:.3e})")]
    NegativeProbability(f64),

    #[error("linear solve failed: singular transition structure")]
    SingularSystem,

    #[error("power iteration did not converge within {0} iterations")]
    NoConvergence(usize),

    #[error("invalid macrostate partition: {0}")]
    InvalidPartition(String),

    #[error("partition is defined for n = {partition_n} but the matrix has n = {matrix_n}")]
    PartitionMismatch { partition_n: usize, matrix_n: usize },

    #[error("sweep needs at least one epsilon value")]
    EmptyEpsilonList,

    #[error("environment variable {name} must be a positive integer, got {value:?}")]
    InvalidEnvVar { name: &'static str, value: String },

    #[error("verification found counterexamples")]
    VerificationFailed,

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
