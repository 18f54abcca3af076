//! Error type shared by every module in the crate.

/// Convenient alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors reported by the numerical kernels and the verifier.
///
/// The taxonomy separates *caller mistakes* ([`Error::Domain`],
/// [`Error::UnknownCheck`]) from *numerical exhaustion*
/// ([`Error::PrecisionExhausted`], [`Error::NonConvergent`],
/// [`Error::Diverged`]) and from *mathematical cross-check failures*
/// ([`Error::ChainInconsistent`], [`Error::NoMatchingRoot`]) which
/// indicate that two supposedly equivalent computations disagreed.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation
    /// (negative radicand, nome outside (0, 1), zero denominator, …).
    #[error("domain error: {0}")]
    Domain(String),

    /// A series or infinite product failed to reach the requested
    /// tolerance within the iteration budget.
    #[error("failed to converge: {0}")]
    NonConvergent(String),

    /// The working precision is insufficient to resolve the quantity —
    /// e.g. a nome that underflows, or a polynomial whose roots cannot be
    /// separated by sign changes at this precision.
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    /// Root selection found no candidate agreeing with the provided
    /// independent estimate.
    #[error("no root matching the oracle value: {0}")]
    NoMatchingRoot(String),

    /// Two independent computations of the same quantity disagreed by
    /// more than the certified tolerance.
    #[error("chain inconsistency: {0}")]
    ChainInconsistent(String),

    /// A locally convergent iteration (Newton polish) left its basin.
    #[error("iteration diverged: {0}")]
    Diverged(String),

    /// The verifier was asked for a check id that is not in the catalog.
    #[error("unknown check id: {0}")]
    UnknownCheck(String),
}
