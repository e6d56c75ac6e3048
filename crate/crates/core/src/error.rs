use thiserror::Error;

use crate::roots::ComplexPoint;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The caller supplied arguments outside the operation's domain.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A coefficient that must be an integer had a denominator. This is a
    /// defect in the library, never a property of the input.
    #[error("internal error: coefficient {index} is not integral ({value})")]
    NonIntegral { index: usize, value: String },

    #[error("root finder did not converge after {iterations} iterations")]
    NonConvergence {
        iterations: usize,
        partial: Vec<ComplexPoint>,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    /// True for failures caused by the library itself rather than by input.
    pub fn is_internal(&self) -> bool {
        !matches!(self, Error::InvalidInput(_))
    }
}
