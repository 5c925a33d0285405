use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("generator context mismatch: {0}")]
    ContextMismatch(String),

    #[error("coefficient domain mismatch: {left} vs {right}")]
    DomainMismatch { left: String, right: String },

    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("unknown generator {0}")]
    UnknownGenerator(String),

    #[error("generator index out of range: {0}")]
    GeneratorIndexOutOfRange(String),

    #[error("weight {weight} exceeds the weight cap {cap}")]
    WeightCap { weight: u32, cap: u32 },

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    #[error("modulus {0} is not 0 or a prime")]
    CompositeModulus(u64),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("cache error: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
