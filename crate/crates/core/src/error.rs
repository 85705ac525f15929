use thiserror::Error;

/// Failure modes shared by every module of the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument falls outside the domain of the operation.
    #[error("DomainError: {0}")]
    Domain(String),

    /// Evaluation at a pole (zeta at s = 1, log-gamma at a non-positive integer).
    #[error("PoleError: {0}")]
    Pole(String),

    /// The factor 1 - 2^(1-s) is too close to zero to divide by.
    #[error("SingularFactorError: |1 - 2^(1-s)| = {modulus:e} at s = {re} + {im}i")]
    SingularFactor { re: f64, im: f64, modulus: f64 },

    /// An iterative scheme did not reach its tolerance within the allowed budget.
    #[error("ConvergenceError: {0}")]
    Convergence(String),

    /// Solver configuration rejected (cost guards, inconsistent sampling).
    #[error("ConfigError: {0}")]
    Config(String),

    /// Requested size exceeds a hard limit.
    #[error("LimitError: {0}")]
    Limit(String),

    /// A running product left the representable range.
    #[error("OverflowError: {0}")]
    Overflow(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True for failures of the numerics rather than of the inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::Convergence(_) | Error::Overflow(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
