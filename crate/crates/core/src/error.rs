use std::fmt;

use thiserror::Error;

use crate::local::{InvValue, Place};

/// Errors raised by every layer of the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("cannot factor {value}: cofactor has no prime divisor below {bound}")]
    Factorization { value: i128, bound: u64 },
    #[error("validity violation: {0}")]
    Violation(ViolationReport),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn malformed(msg: impl Into<String>) -> Error {
    Error::Malformed(msg.into())
}

/// Why a local datum failed the global sum condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ViolationReport {
    pub total: InvValue,
    /// Places whose summed invariant (over all factors) is nonzero, in ascending order.
    pub places: Vec<Place>,
}

impl fmt::Display for ViolationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sum of local invariants is {}, nonzero at [", self.total)?;
        for (k, v) in self.places.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}
