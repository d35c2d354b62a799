//! Crate-wide error type.

use num_complex::Complex64;
use thiserror::Error;

/// Errors produced by the numerical routines in this crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An argument violated a documented precondition.
    #[error("domain error: {0}")]
    Domain(String),

    /// An adaptive quadrature hit its refinement cap before the successive
    /// refinements agreed to the requested tolerance. The last estimate is
    /// carried so callers can still inspect it.
    #[error(
        "quadrature failed to converge to {tolerance:e} (last estimate {last_estimate}, \
         last refinement change {last_change:e})"
    )]
    QuadratureConvergence {
        last_estimate: f64,
        last_change: f64,
        tolerance: f64,
    },

    /// The resolvent was requested at a point of the spectrum (lambda^n = -mu).
    #[error("singular resolvent: lambda = {lambda} satisfies lambda^n = -mu")]
    SingularResolvent { lambda: Complex64 },

    /// A principal-branch matrix power was requested for a matrix with an
    /// eigenvalue on the closed negative real axis.
    #[error("eigenvalue {value} lies on the principal branch cut")]
    BranchCut { value: Complex64 },

    /// An eigendecomposition was too ill-conditioned to trust.
    #[error("matrix is numerically defective (eigenvector condition number {cond:.3e})")]
    Defective { cond: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
