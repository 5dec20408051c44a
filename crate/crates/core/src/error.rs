use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("order undefined: {r} divides {q}")]
    OrderUndefined { q: String, r: u64 },
    #[error("r must be odd (got {0})")]
    EvenModulus(u64),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("pi-part of zero is undefined")]
    ZeroPiPart,
    #[error("malformed group spec `{spec}`: {reason}")]
    Parse { spec: String, reason: String },
    #[error("not a simple group: {0}")]
    NotSimple(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("permutation error: {0}")]
    Perm(String),
    #[error("group order {order} exceeds the configured cap {cap}")]
    OrderCap { order: String, cap: u64 },
    #[error("grid error: {0}")]
    Grid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
