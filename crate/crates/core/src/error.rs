use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("characteristic {characteristic} too small: {reason}")]
    Characteristic { characteristic: u64, reason: String },
    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("not artinian by degree {0}")]
    NotArtinian(usize),
    #[error("not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("not Gorenstein: {0}")]
    NotGorenstein(String),
    #[error("map is not well defined: {0}")]
    IllDefinedMap(String),
    #[error("map is not surjective: {0}")]
    NotSurjective(String),
    #[error("inconsistent linear system: {0}")]
    Inconsistent(String),
    #[error("size guard exceeded: {0}")]
    TooLarge(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
