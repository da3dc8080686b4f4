use thiserror::Error;

/// Failures raised by the algebraic operations in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("series has zero constant term and is not invertible")]
    ZeroConstantTerm,
    #[error("inner series of a composition must have zero constant term")]
    InnerConstantTerm,
    #[error("not a delta series (need c_0 = 0 and c_1 != 0)")]
    NotDeltaSeries,
    #[error("exp requires a series with zero constant term")]
    NonzeroConstantTerm,
    #[error("log requires a series with constant term 1")]
    ConstantTermNotOne,
    #[error("truncation order {available} is too small, need at least {needed}")]
    OrderTooSmall { needed: usize, available: usize },
    #[error("variable {0} is not supported by this operation")]
    UnsupportedVariable(String),
    #[error("y-index {index} is below the floor {floor}")]
    IndexBelowFloor { index: i64, floor: i64 },
    #[error("polynomial is not homogeneous in weight")]
    NotHomogeneous,
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("unknown identity tag `{0}`")]
    UnknownIdentityTag(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
