use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid multicharge: {0}")]
    InvalidCharge(String),
    #[error("size or level mismatch: {0}")]
    Mismatch(String),
    #[error("node {0} is not in the diagram")]
    NodeNotInDiagram(String),
    #[error("node {0} is not removable")]
    NotRemovable(String),
    #[error("row index {t} out of range {lo}..={hi}")]
    RowOutOfRange { t: usize, lo: usize, hi: usize },
    #[error("beta sequence violates a block window: {0}")]
    BetaWindow(String),
    #[error("invalid valuation context e={e}, p={p}")]
    InvalidContext { e: u32, p: u32 },
    #[error("zero quantum integer factor")]
    ZeroFactor,
    #[error("polynomial is not anti-invariant under bar")]
    NotAntiInvariant,
    #[error("inexact polynomial division")]
    InexactDivision,
    #[error("no finite field found: {0}")]
    NoField(String),
    #[error("decomposition algorithm failed: {0}")]
    Decomposition(String),
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
    #[error("missing decomposition matrix for modulus {0}")]
    MissingMatrix(u32),
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
