use thiserror::Error;

use crate::ring::RingDescriptor;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("mixed coefficient rings: {left} and {right}")]
    MixedRings {
        left: RingDescriptor,
        right: RingDescriptor,
    },
    #[error("monoid mismatch: {left} and {right}")]
    MonoidMismatch { left: String, right: String },
    #[error("{n} is not an element of {monoid}")]
    NotInMonoid { n: u64, monoid: String },
    #[error("{n} lies outside the stored window (bound {bound})")]
    OutsideBound { n: u64, bound: u64 },
    #[error("{monoid} is not a submonoid of {target} up to {bound}")]
    NotASubmonoid {
        monoid: String,
        target: String,
        bound: u64,
    },
    #[error("element is not invertible in {0}")]
    NotInvertible(RingDescriptor),
    #[error("value at 1 is not a unit of {0}")]
    NotAUnit(RingDescriptor),
    #[error("operation requires {expected}, got {got}")]
    WrongRing {
        expected: &'static str,
        got: RingDescriptor,
    },
    #[error("no value given for prime {0}")]
    MissingPrimeValue(u64),
    #[error("rank mismatch: {left} and {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("bound {bound} too small: {reason}")]
    BoundTooSmall { bound: u64, reason: String },
    #[error("operation requires {expected}, got {got}")]
    SpecMismatch { expected: String, got: String },
    #[error("{0} has a prime factor outside the series variables")]
    DenominatorOutsideVariables(u64),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("invalid monoid: {0}")]
    InvalidMonoid(String),
    #[error("arithmetic overflow: {0}")]
    Overflow(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_))
    }
}
