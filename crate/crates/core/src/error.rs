use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("component count {0} is outside 2..=16")]
    ComponentCount(usize),

    #[error("component index {index} is outside 1..={n}")]
    ComponentIndex { index: usize, n: usize },

    #[error("value {value} does not encode a configuration of {n} components")]
    ConfigurationRange { value: u32, n: usize },

    #[error("truth table has {got} images, expected {expected}")]
    TableLength { got: usize, expected: usize },

    #[error("image {image} at position {position} is outside 0..{bound}")]
    ImageRange {
        position: usize,
        image: u32,
        bound: u32,
    },

    #[error("strategy has {available} terms but {requested} steps were requested")]
    StrategyTooShort { available: usize, requested: usize },

    #[error("operands have different component counts ({left} vs {right})")]
    ComponentMismatch { left: usize, right: usize },

    #[error("xorshift state must be nonzero")]
    ZeroSeed,

    #[error("iteration graph of the function is not strongly connected")]
    NotStronglyConnected,

    #[error("probability vector sums to {0}, expected 1")]
    NotNormalized(f64),

    #[error("sequence of {len} bits is too short, at least {min} required")]
    SequenceTooShort { len: usize, min: usize },

    #[error("{got} p-values supplied, at least {min} required")]
    TooFewPValues { got: usize, min: usize },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("cannot access {}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parameter(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }
}
