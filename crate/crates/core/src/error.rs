use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("hermite order {n} exceeds the configured cap {max}")]
    Capacity { n: u32, max: u32 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("{0}")]
    InvalidParams(String),

    #[error("degenerate point: {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
