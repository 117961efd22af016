//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("field error: {0}")]
    Field(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),
    #[error("relation is not admissible: {0}")]
    NotAdmissible(String),
    #[error(
        "path algebra exceeds the path-length guard of {0}; it is probably infinite dimensional"
    )]
    InfiniteDimensional(usize),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("sort mismatch: {0}")]
    SortMismatch(String),
    #[error("operation needs a bound quiver algebra with an admissible ideal")]
    NotBoundQuiver,
    #[error("catalogue is incomplete: {0}")]
    IncompleteCatalogue(String),
    #[error("bounds exceeded: {0}")]
    BoundsExceeded(String),
    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("witness construction failed: {0}")]
    Witness(String),
    #[error("cache file is malformed: {0}")]
    Cache(String),
    #[error("cache format version mismatch: found `{found}`, expected `{expected}`")]
    CacheVersion { found: String, expected: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
