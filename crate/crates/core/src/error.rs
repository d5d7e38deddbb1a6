use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A delta operator violates `Σ aₙ = 0`, `Σ n·aₙ = N`, or has a non-positive
    /// normalizer or spacing.
    #[error("invalid delta operator: {0}")]
    InvalidDelta(String),

    /// A floating-point product left the representable `f64` range.
    #[error("overflow: {0}")]
    Overflow(String),

    /// An argument lies outside the domain where the function is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// A value that must be real came out with a significant imaginary part.
    #[error("internal consistency check failed: {0}")]
    InternalConsistency(String),

    #[error("window of {len} samples is too small, at least {needed} are required")]
    WindowTooSmall { len: usize, needed: usize },

    #[error("state n = {n} is non-physical in a well of M = {points} points")]
    NonPhysicalState { n: u64, points: u64 },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
