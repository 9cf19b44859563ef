use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("precision failure: {0}")]
    Precision(String),

    #[error("reduction stalled after {retries} retries at bound {bound}")]
    ReductionStall { retries: u32, bound: String },

    #[error("invalid configuration:\n  {}", .0.join("\n  "))]
    ConfigInvalid(Vec<String>),

    #[error("exceptional point: {0}")]
    Exceptional(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("divergence: {0}")]
    Divergence(String),

    #[error("out of domain: {0}")]
    OutOfDomain(String),

    #[error("rank deficiency: {0}")]
    Rank(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
