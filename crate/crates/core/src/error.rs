use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("non-unit divisor: series has zero constant term")]
    NonUnitDivisor,
    #[error("log of non-unit series: constant term must be exactly 1")]
    LogOfNonUnit,
    #[error("exp of series with nonzero constant term")]
    ExpNonzeroConstant,
    #[error("rational power of non-unit series: constant term must be exactly 1")]
    RationalPowerOfNonUnit,
    #[error("composition requires zero constant term in the inner series")]
    CompositionNonzeroConstant,
    #[error("series not invertible under composition: need zero constant term and nonzero linear term")]
    NotInvertible,
    #[error("binomial lower index must be non-negative (got {0})")]
    NegativeBinomialIndex(i64),
    #[error("b-sequence too short: need index {needed}, have {available}")]
    BSequenceTooShort { needed: usize, available: usize },
    #[error("recursion route is defined for g >= 1 only (got g = {0})")]
    GenusBelowOne(i64),
    #[error("insufficient truncation order: requested coefficient {requested}, series known to order {order}")]
    InsufficientOrder { requested: usize, order: usize },
    #[error("targets defined for k >= 2 only (got k = {0})")]
    TargetsBelowTwo(usize),
    #[error("invalid rational literal {0:?}")]
    ParseRational(String),
}

pub type Result<T> = std::result::Result<T, Error>;
