use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("variable index {index} out of range 1..={k}")]
    InvalidIndex { index: usize, k: usize },
    #[error("quadruple {0:?} is satisfied identically")]
    IdentityEquality([usize; 4]),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("subset scan over {k} variables exceeds the cap of {cap}")]
    TooManySubsets { k: usize, cap: usize },
    #[error("no generic solution found after {attempts} attempts")]
    RetryLimitExceeded { attempts: usize },
    #[error("tuple does not satisfy the configuration")]
    NotASolution,
    #[error("work estimate {needed} exceeds budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("equality {0} does not involve the anchor variable")]
    AnchorMissing(String),
    #[error("equalities are linearly dependent")]
    NotIndependent,
    #[error("collection is not 2-good: {0}")]
    NotTwoGood(String),
    #[error("difference-alignment graph is not a path on four vertices")]
    NotAPath,
    #[error("only {found} elements survive, {needed} required")]
    InsufficientDensity { found: usize, needed: usize },
    #[error("no equal-sum cube structure found")]
    NotFound,
    #[error("cube points collide")]
    DegenerateCube,
    #[error("equality {0} is degenerate")]
    DegenerateInput(String),
    #[error("derived quantities disagree: {0}")]
    Inconsistent(String),
    #[error("unknown lemma {0:?}")]
    UnknownLemma(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
