use thiserror::Error;

use crate::exactlin::Field;

/// Errors shared across the whole library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("field mismatch: expected {expected}, got {got}")]
    FieldMismatch { expected: Field, got: Field },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("operation requires the rational field, got {0}")]
    UnsupportedField(Field),
    #[error("element is not an almost-idempotent: x*x - x is not in the radical")]
    NotAlmostIdempotent,
    #[error("invalid idempotent data: {0}")]
    BadIdempotents(String),
    #[error("resolving idempotents unavailable: {0}")]
    IdempotentsUnavailable(String),
    #[error("side mismatch: expected {expected} comodule, got {got}")]
    SideMismatch { expected: String, got: String },
    #[error("comodules live over different coalgebras")]
    ParentMismatch,
    #[error("unknown poset element `{0}`")]
    UnknownElement(String),
    #[error("poset parse error at line {line}: {msg}")]
    PosetParse { line: usize, msg: String },
    #[error("{0}")]
    Validation(String),
    #[error("no injective element found by the deterministic search")]
    NoInjectiveFound,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("file format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
