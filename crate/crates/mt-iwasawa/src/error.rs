use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MtError {
    #[error("invalid prime context: {0}")]
    InvalidContext(String),
    #[error("precision insufficient: {0}")]
    PrecisionInsufficient(String),
    #[error("series is zero")]
    ZeroSeries,
    #[error("resultant vanishes")]
    ZeroResultant,
    #[error("selected prime over p is ramified (factor {0} is not squarefree mod p)")]
    RamifiedPrime(String),
    #[error("no prime factor with index {0}")]
    NoSuchPrime(usize),
    #[error("tail of truncated series is not controlled: {0}")]
    TailNotControlled(String),
    #[error("series is not p-large at n = {0}")]
    NotPLarge(u32),
    #[error("test refused in a ramified context")]
    RamifiedContext,
    #[error("unsupported branch: {0}")]
    UnsupportedBranch(String),
    #[error("unsupported character: {0}")]
    UnsupportedCharacter(String),
    #[error("eigenspace has dimension {0} after all supplied eigenvalues")]
    AmbiguousEigenspace(usize),
    #[error("eigenvalue data is inconsistent with the space (empty eigenspace)")]
    EmptyEigenspace,
    #[error("divisibility check failed: {0}")]
    DivisibilityFails(String),
    #[error("no stable residuals: {0}")]
    Unstable(String),
    #[error("branches disagree: {0}")]
    InconsistentBranches(String),
    #[error("no fit: {0}")]
    NoFit(String),
    #[error("wrong weights: {0}")]
    WrongWeights(String),
    #[error("schema error: {0}")]
    SchemaError(String),
    #[error("level {level} is divisible by p = {p}")]
    LevelDivisibleByP { level: u64, p: u64 },
    #[error("missing eigenvalues: {0}")]
    MissingEigenvalues(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, MtError>;

impl From<std::io::Error> for MtError {
    fn from(e: std::io::Error) -> Self {
        MtError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for MtError {
    fn from(e: serde_json::Error) -> Self {
        MtError::SchemaError(e.to_string())
    }
}
