use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("p divides level: {p} | {level}")]
    CharacteristicDividesLevel { p: u64, level: u64 },
    #[error("enumeration bound exceeded: {size} > {bound}")]
    EnumerationBound { size: u64, bound: u64 },
    #[error("singular curve")]
    Singular,
    #[error("degenerate parameters: {0}")]
    Degenerate(String),
    #[error("not implemented: {0}")]
    Unsupported(String),
    #[error("consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
