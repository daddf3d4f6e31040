use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("continued fraction expansion needs a value > 1, got {0}")]
    NotGreaterThanOne(String),
    #[error("continued fraction terms must all be >= 2")]
    BadContinuedFraction,
    #[error("Seifert coefficient {0} must have |p| > 1")]
    DegenerateCoefficient(String),
    #[error("{0} is not in lowest terms")]
    NotReduced(String),
    #[error("generalized Euler number is negative; reverse orientation first")]
    NegativeEuler,
    #[error("generalized Euler number is non-zero")]
    NonZeroEuler,
    #[error("no exceptional fibers")]
    NoFibers,
    #[error("space is not in normalized form (all p/q > 1, e >= 0)")]
    NotNormalized,
    #[error("space is not of paired form S2(l; p1/q1, ..., p2l/q2l) with eps = 0")]
    NotPaired,
    #[error("matrix is not positive semidefinite")]
    NotPositiveSemidefinite,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("{rows} rows cannot carry a form of rank {rank}")]
    TooFewRows { rows: usize, rank: usize },
    #[error("integer overflow: {0}")]
    Overflow(String),
    #[error("factorization contradicts the central-row structure: {0}")]
    Inconsistent(String),
    #[error("tangle {0} has both p and q even")]
    BothEven(String),
    #[error("expected a 2-component link, found {0} components")]
    NotTwoComponents(usize),
    #[error("invalid link data: {0}")]
    LinkData(String),
    #[error("no class with index {0}")]
    NoSuchClass(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
