use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("presentation is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("not a complex: {0}")]
    NotAComplex(String),
    #[error("module is not free: {0}")]
    NotFree(String),
    #[error("ill-formed ring map: {0}")]
    IllFormedMap(String),
    #[error("limit exceeded: {0}")]
    Limit(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("stabilization not reached: {0}")]
    NotStabilized(String),
}
