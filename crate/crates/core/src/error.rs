use thiserror::Error;

/// Errors raised by the library.
///
/// `Internal` marks a failed self-check: one of the exact identities the
/// library verifies while computing did not hold. It always indicates a bug
/// in this crate, never a user error.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{value} is not coprime to {modulus}")]
    NotCoprime { value: String, modulus: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("inconsistent presentation {presentation}: {reason}")]
    InconsistentPresentation {
        presentation: String,
        reason: &'static str,
    },

    #[error("invalid canonical parameters {0}")]
    InvalidCanonical(String),

    #[error("group order {order} exceeds the configured cap {cap}")]
    CapExceeded { order: u64, cap: u64 },

    #[error("subgroup is not normal in the ambient group")]
    NotNormal,

    #[error("strong Shoda condition fails: conjugation by {conjugator} gives a nonzero product")]
    ShodaCondition { conjugator: String },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("internal check failed: {0}")]
    Internal(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
