use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: [{left}] vs [{right}]")]
    RingMismatch { left: String, right: String },

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("exponent vector has length {got}, but the ring has {expected} variables")]
    Arity { expected: usize, got: usize },

    #[error("colon by the zero ideal")]
    ColonByZero,

    #[error("saturation did not stabilize within {0} steps")]
    SaturationCap(usize),

    #[error("expected a nonzero proper ideal, got {0}")]
    Degenerate(String),

    #[error("not a filtration: {0}")]
    NotFiltration(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
