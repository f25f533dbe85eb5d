use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed token at offset {pos}: {msg}")]
    MalformedToken { pos: usize, msg: String },

    #[error("block word is not a restricted growth string at offset {pos}")]
    NonRgs { pos: usize },

    #[error("color {color} out of range at offset {pos} (colors must lie in 1..={k})")]
    ColorOutOfRange { pos: usize, color: u32, k: u32 },

    #[error("length mismatch: block word has {word} entries, color word has {colors}")]
    LengthMismatch { word: usize, colors: usize },

    #[error("index set invalid: {0}")]
    InvalidIndexSet(String),

    #[error("not a permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid vincular pattern: {0}")]
    InvalidVincular(String),

    #[error("invalid block form: {0}")]
    InvalidBlocks(String),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("n = {n} is below the validity range of {entry} (n >= {min})")]
    BelowValidity {
        entry: String,
        n: usize,
        min: usize,
    },

    #[error("{map}: input outside the domain ({reason})")]
    DomainViolation { map: &'static str, reason: String },

    #[error("unknown name: {0}")]
    UnknownName(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("thread pool: {0}")]
    ThreadPool(String),
}
