use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a sorting sequence needs at least one pile")]
    NoPiles,

    #[error("index {index} out of range for {piles} piles (must be below 2^{})", piles.saturating_sub(1))]
    IndexOutOfRange { piles: usize, index: u64 },

    #[error("{piles} piles exceeds the configured cap of {cap}")]
    PileCapExceeded { piles: usize, cap: usize },

    #[error("invalid sorting sequence: {0}")]
    InvalidSequence(String),

    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("piles must hold at least one coin")]
    EmptyPiles,

    #[error("fake count {f} outside [0, {max}]")]
    FakeCountOutOfRange { f: u64, max: u64 },

    #[error("invalid solution: {0}")]
    InvalidSolution(String),

    #[error("invalid coefficients: {0}")]
    InvalidCoefficients(String),

    #[error("coefficients have gcd {0}; the Frobenius number is undefined")]
    NotCoprime(u64),

    #[error("sequence has a single weight class; thresholds are undefined")]
    TrivialSequence,

    #[error("redistribution step at class {0} is not applicable")]
    StepNotApplicable(usize),

    #[error("oracle would visit {states} states, above the limit of {limit}")]
    GuardExceeded { states: u128, limit: u128 },

    #[error("zero new possibilities for f = {0}; revealing factor undefined")]
    ZeroNewPossibilities(u64),
}
