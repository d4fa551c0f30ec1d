use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("index {index} out of range for a set of {len} points")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("triangle indices must be distinct, got ({0}, {1}, {2})")]
    RepeatedIndex(usize, usize, usize),
    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("points {0} and {1} coincide")]
    DuplicatePoint(usize, usize),
    #[error("coordinate {value} is not in field {field}")]
    FieldMismatch { field: &'static str, value: String },
    #[error("all points are collinear")]
    Collinear,
    #[error("triangle ({0}, {1}, {2}) is degenerate")]
    DegenerateTriangle(usize, usize, usize),
    #[error("configuration is degenerate (three collinear points)")]
    DegenerateConfiguration,
    #[error("expected exactly {expected} points, got {got}")]
    WrongPointCount { expected: usize, got: usize },
    #[error("measure is not real-valued")]
    ComplexMeasure,
    #[error("measure and configuration disagree: {0}")]
    Mismatch(String),
    #[error("triangle ({0}, {1}, {2}) is not a basis triangle through z0")]
    NotBasisTriangle(usize, usize, usize),
    #[error("search window of {0} candidates exceeds the limit")]
    SearchTooLarge(u128),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
