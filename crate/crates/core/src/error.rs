use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// The variants are coarse on purpose: the CLI maps them onto exit codes, so
/// each one corresponds to a distinct kind of failure a caller can act on.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation
    /// (non-positive imaginary part, non-residue, malformed matrix, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Input violates a hypothesis of the factorization theorems
    /// (non-fundamental discriminant, non-coprime pair, wrong residue mod 8, ...).
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    /// Working precision was not enough to recognize an exact value.
    #[error("precision exhausted at {prec} bits (residual {residual})")]
    Precision { prec: usize, residual: String },

    /// A construction failed an internal consistency check.
    #[error("construction failed: {0}")]
    Construction(String),

    /// A truncated series does not carry enough terms for the request.
    #[error("insufficient series order: {0}")]
    Order(String),

    /// Unsupported option (e.g. a Weyl chamber the expansion code does not handle).
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A structural invariant from the theory did not hold.
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

pub(crate) fn hypothesis<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Hypothesis(msg.into()))
}
