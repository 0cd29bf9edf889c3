use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Exact comparison could not be decided within the precision ceiling.
    /// The operands were closer than 2^-bits apart.
    #[error("precision exhausted at {bits} bits: operands are too close to separate")]
    PrecisionExhausted { bits: u32 },

    #[error("labeling is not a partition: {0}")]
    PartitionViolation(String),

    #[error("instance too large: n = {n} exceeds the exhaustive-search cap {cap}")]
    InstanceTooLarge { n: usize, cap: usize },

    #[error("graph file, line {line}: {msg}")]
    GraphParse { line: usize, msg: String },

    #[error("domination failure: {0}")]
    DominationFailure(String),
}
