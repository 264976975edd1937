use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("ill-defined homomorphism: {0}")]
    IllDefined(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("degree {degree} outside window [{lo}, {hi}]")]
    DegreeOutOfWindow { degree: i64, lo: i64, hi: i64 },
    #[error("invalid input: {0}")]
    Input(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
