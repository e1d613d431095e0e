use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("index {index} out of range for dimension {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("malformed partition: {0}")]
    MalformedPartition(String),
    #[error("infeasible after {attempts} attempts: {reason}")]
    Infeasible { attempts: usize, reason: String },
    #[error("minor of {{{0}}} missing from table")]
    MissingMinor(String),
    #[error("minor of {{{subset}}} has magnitude {value} > 1")]
    MinorOutOfRange { subset: String, value: f64 },
    #[error("graph: {0}")]
    Graph(String),
    #[error("edge vectors belong to different graphs")]
    GraphMismatch,
    #[error("graph is not two-connected")]
    NotTwoConnected,
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("genericity failure at {site}: {detail}")]
    Genericity { site: String, detail: String },
    #[error("ambiguous sign at {site}")]
    AmbiguousSign { site: String },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
