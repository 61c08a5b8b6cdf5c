use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("cyclotomic level must be positive")]
    ZeroLevel,
    #[error("division by zero in cyclotomic field")]
    DivisionByZero,
    #[error("Galois exponent {exponent} is not coprime to {modulus}")]
    NotCoprime { exponent: i64, modulus: u64 },
    #[error("level mismatch: {0} vs {1}")]
    LevelMismatch(u64, u64),
    #[error("invalid character label `{0}`")]
    BadLabel(String),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("m = {0} is not a critical point")]
    NotCritical(i64),
    #[error("function is not multiplicative on the subgroup")]
    NotMultiplicative,
    #[error("class function is not a virtual character: {0}")]
    NotVirtualCharacter(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("element does not lie in the subfield of level {0}")]
    NotInSubfield(u64),
}

pub type Result<T> = std::result::Result<T, Error>;
