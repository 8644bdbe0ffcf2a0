//! Error type shared by every module of the crate.

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong in a library call.
///
/// The variants split into two families: caller mistakes (`Domain`,
/// `Contract`) and numeric refusals (`UnresolvedOscillation`,
/// `NonConvergence`, `TailTooLarge`), where the requested computation is
/// declined because the supplied resolution cannot deliver a trustworthy
/// answer. Refusing loudly is part of the oracle contract: an
/// under-resolved oscillatory integral must never return a plausible-looking
/// wrong number.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// Input outside the mathematical domain of the operation.
    #[error("domain error in {context}: {message}")]
    Domain {
        context: &'static str,
        message: String,
    },

    /// A documented precondition between arguments was violated.
    #[error("contract violation in {context}: {message}")]
    Contract {
        context: &'static str,
        message: String,
    },

    /// The quadrature budget cannot resolve the integrand's fastest
    /// oscillation at the required nodes-per-wavelength density.
    #[error("unresolved oscillation: {required} quadrature nodes required, {given} given")]
    UnresolvedOscillation { required: usize, given: usize },

    /// An adaptive rule hit its refinement cap without the result settling.
    #[error("no convergence after {evaluations} evaluations (last change {last_delta:e})")]
    NonConvergence { evaluations: usize, last_delta: f64 },

    /// The integrand is not negligible at the truncation boundary, so the
    /// truncated integral would silently drop mass.
    #[error("integrand magnitude {magnitude:e} at the truncation boundary exceeds the 1e-12 tail budget")]
    TailTooLarge { magnitude: f64 },

    /// A quantity that must vanish analytically (e.g. the imaginary part of
    /// a real density) came out above the rounding tolerance.
    #[error("internal consistency check failed in {context}: {message}")]
    InternalConsistency {
        context: &'static str,
        message: String,
    },
}

impl Error {
    pub(crate) fn domain(context: &'static str, message: impl Into<String>) -> Self {
        Error::Domain {
            context,
            message: message.into(),
        }
    }

    pub(crate) fn contract(context: &'static str, message: impl Into<String>) -> Self {
        Error::Contract {
            context,
            message: message.into(),
        }
    }

    /// True for the variants that mean "the numeric method declined to
    /// answer" rather than "the caller passed garbage".
    pub fn is_numeric_refusal(&self) -> bool {
        matches!(
            self,
            Error::UnresolvedOscillation { .. }
                | Error::NonConvergence { .. }
                | Error::TailTooLarge { .. }
        )
    }
}
