use thiserror::Error;

/// Every failure an operation can report. `code()` is the stable string the
/// CLI emits as `error_code`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands belong to different rings: {0}")]
    RingMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("ring {0} is infinite")]
    InfiniteRing(String),
    #[error("{0} is not a unit")]
    NotAUnit(String),
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("inputs are not coprime: {0}")]
    NotCoprime(String),
    #[error("no witness found: {0}")]
    WitnessNotFound(String),
    #[error("matrix is not invertible: {0}")]
    NotInvertible(String),
    #[error("not supported: {0}")]
    NotSupported(String),
    #[error("element is not neat: {0}")]
    NotNeat(String),
    #[error("unsupported ring: {0}")]
    UnsupportedRing(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("construction failed: {0}")]
    ConstructionFailed(String),
    #[error("bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("certificate check failed: {0}")]
    CheckFailed(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::RingMismatch(_) => "RingMismatch",
            Error::Parse(_) => "ParseError",
            Error::NotPrime(_) => "NotPrime",
            Error::InfiniteRing(_) => "InfiniteRing",
            Error::NotAUnit(_) => "NotAUnit",
            Error::NoSolution(_) => "NoSolution",
            Error::NotCoprime(_) => "NotCoprime",
            Error::WitnessNotFound(_) => "WitnessNotFound",
            Error::NotInvertible(_) => "NotInvertible",
            Error::NotSupported(_) => "NotSupported",
            Error::NotNeat(_) => "NotNeat",
            Error::UnsupportedRing(_) => "UnsupportedRing",
            Error::PreconditionViolated(_) => "PreconditionViolated",
            Error::ConstructionFailed(_) => "ConstructionFailed",
            Error::BoundExceeded(_) => "BoundExceeded",
            Error::CheckFailed(_) => "CheckFailed",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
