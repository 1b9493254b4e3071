use thiserror::Error;

/// Errors raised by the exact arithmetic, constructions, certifiers and search.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    MalformedInput(String),

    #[error("insufficient input: {0}")]
    InsufficientInput(String),

    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),

    #[error("singular system: rank {rank} of {size}")]
    Singular { rank: usize, size: usize },

    #[error("radicand mismatch: sqrt({left}) combined with sqrt({right})")]
    RadicandMismatch { left: u64, right: u64 },

    #[error("unsupported Hadamard order {0}: the Paley construction needs 4v-1 prime")]
    UnsupportedOrder(u64),

    #[error("unsupported degree {0}: only polynomials of degree at most 2 reduce on the sphere")]
    UnsupportedDegree(u32),

    #[error("search space of {size} points exceeds the guard of {limit}")]
    ResourceGuard { size: u128, limit: u128 },

    #[error("internal inconsistency: {0}")]
    Internal(String),

    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },
}

impl Error {
    pub(crate) fn malformed(msg: impl Into<String>) -> Self {
        Error::MalformedInput(msg.into())
    }

    pub(crate) fn hypothesis(msg: impl Into<String>) -> Self {
        Error::HypothesisViolation(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    pub(crate) fn parse(what: &'static str, input: &str) -> Self {
        Error::Parse {
            what,
            input: input.to_string(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
