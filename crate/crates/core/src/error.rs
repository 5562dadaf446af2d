use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),
    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u32, right: u32 },
    #[error("modulus {0} is not supported here; this operation needs modulus 3")]
    ModulusRequired(u32),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("partition {partition} does not fit the {rows}x{cols} box")]
    OutsideBox {
        partition: String,
        rows: usize,
        cols: usize,
    },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("delta = {0} is divisible by 3")]
    InvalidDelta(i64),
    #[error("degenerate torus action: {0}")]
    DegenerateAction(String),
    #[error("model inconsistency: {0}")]
    ModelInconsistency(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("space mismatch: {0}")]
    SpaceMismatch(String),
    #[error("unknown space `{0}`")]
    UnknownSpace(String),
    #[error("correspondence is not idempotent")]
    NotIdempotent,
}

pub type Result<T> = std::result::Result<T, Error>;
