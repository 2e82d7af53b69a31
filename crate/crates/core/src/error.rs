use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("empty truncation")]
    EmptyTruncation,
    #[error("beyond truncation: {0}")]
    BeyondTruncation(String),
    #[error("shape: {0}")]
    Shape(String),
    #[error("not a ring morphism: {0}")]
    NotRingMorphism(String),
    #[error("not nilpotent-like: substituted series has a nonzero constant term")]
    NotNilpotentLike,
    #[error("not a first Chern class: {0}")]
    NotFirstChernClass(String),
    #[error("insufficient Mishchenko depth: need p_{needed}, cache holds up to p_{available}")]
    InsufficientDepth { needed: usize, available: usize },
    #[error("uncertified Mishchenko element p_{0} in integral mode")]
    Uncertified(usize),
    #[error("depth exhausted: need depth {needed}, have {available}")]
    DepthExhausted { needed: usize, available: usize },
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("truncation mismatch: {0}")]
    TruncationMismatch(String),
    #[error("ring mismatch")]
    RingMismatch,
    #[error("coefficient a_{i}{j} is outside the known range of the table")]
    UnknownCoefficient { i: usize, j: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
