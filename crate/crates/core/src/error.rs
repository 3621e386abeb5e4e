use thiserror::Error;

/// Errors raised by the numeric kernels and the zero pipeline.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("argument is at (or within resolution of) the pole of zeta at s = 1")]
    PoleAtOne,
    #[error("requested precision cannot be met: {0}")]
    PrecisionUnachievable(String),
    #[error("derivative circle would enclose or touch the pole at s = 1")]
    PoleTooClose,
    #[error("chi(s) has a pole at this point")]
    PoleOfChi,
    #[error("zeta(s) vanishes at this point; log-derivative undefined")]
    ZeroOfZeta,
    #[error("zero search could not certify completeness: {0}")]
    MissedZero(String),
    #[error("zero count ambiguous: {0}")]
    AmbiguousCount(String),
    #[error("malformed ordinate on line {0}")]
    MalformedLine(usize),
    #[error("ordinates not strictly ascending at line {0}")]
    NotAscending(usize),
    #[error("imported ordinate failed verification: {0}")]
    VerificationFailed(String),
    #[error("zero table does not cover the requested height: {0}")]
    InsufficientTable(String),
    #[error("X is not exact; integer indicator undecidable")]
    InexactX,
    #[error("formula requires a positive integer X")]
    XNotInteger,
    #[error("Laurent table too shallow: {0}")]
    TablesTooShallow(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("non-finite value produced in {0}")]
    NonFinite(String),
    #[error("sum range too large: {0}")]
    SumTooLarge(String),
    #[error("I/O error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
