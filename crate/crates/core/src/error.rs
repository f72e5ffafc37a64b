use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parameter out of range: {0}")]
    ParameterRange(String),

    /// The dyadic fold `d` and the dilation sums are only defined on (0, ∞).
    #[error("set or support has a point <= 0 (lowest endpoint {0})")]
    NonPositiveSupport(String),

    #[error("q must be odd, got {0}")]
    EvenQ(i64),

    #[error("step function pieces overlap near {0}")]
    OverlappingPieces(String),

    #[error("not a wavelet set: {0}")]
    NotAWaveletSet(String),

    #[error("not a wavelet: {0}")]
    NotAWavelet(String),

    #[error("non-MSF wavelet with trivial shift set; refusing to classify")]
    Unclassifiable,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
