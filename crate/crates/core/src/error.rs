use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// The enclosure radius grew past the blow-up threshold even at the
    /// largest configured precision.
    #[error("enclosure too wide at {bits} bits; more precision needed")]
    NeedMorePrecision { bits: u32 },

    #[error("comparison undecided at index {index} at the current precision")]
    IndeterminateAtPrecision { index: usize },

    #[error("index {index} is past the end of the table (length {len})")]
    OutOfTable { index: usize, len: usize },

    #[error("ratio m_l never exceeded alpha within {scan_limit} terms; the sequence looks analytic or the scan is too short")]
    AnalyticLikeOrScanTooShort { scan_limit: usize },

    #[error("constancy interval starting at {start} did not close within {budget} ratios")]
    ScanExhausted { start: usize, budget: usize },

    #[error("constant c_{k} must satisfy c_k >= M_k")]
    InvalidConstant { k: usize },

    #[error("requested tolerance not reachable within {budget} groups")]
    TailNotSmallEnough { budget: usize },

    #[error("invalid weight table: {0}")]
    InvalidTable(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
