use thiserror::Error;

/// Errors for the whole computation pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The rank n of the root system must be at least 2.
    #[error("invalid rank: n must be at least 2, got {0}")]
    InvalidRank(usize),

    /// A parameter outside its documented domain (d < 1 and the like).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A configurable resource cap was exceeded; raise the cap to proceed.
    #[error("resource limit exceeded: {what} requires {required}, cap is {cap}")]
    ResourceLimit {
        what: &'static str,
        required: u128,
        cap: u128,
    },

    /// The alternating sum came out negative. Dimensions are non-negative,
    /// so this signals an implementation bug, not a property of the input.
    #[error("alternating sum for nu({n},{d},{k}) is negative: {value}")]
    NegativeDimension {
        n: usize,
        d: u32,
        k: u32,
        value: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
