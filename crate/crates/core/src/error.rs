use thiserror::Error;

/// Errors raised by series arithmetic, modular-form reduction and the
/// obstruction engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A coefficient was requested (or required) outside the window of
    /// exponents that the inputs determine.
    #[error("insufficient precision: need q^{needed}, determined window is [{valuation}, {horizon})")]
    InsufficientPrecision {
        needed: i64,
        valuation: i64,
        horizon: i64,
    },

    #[error("series is not invertible: coefficient at q^{0} is zero")]
    NotInvertible(i64),

    #[error("mixed weight: expected weight {expected}, found a term of weight {found}")]
    MixedWeight { expected: i64, found: i64 },

    #[error("witness `{0}` is not in the catalog")]
    MissingWitness(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
