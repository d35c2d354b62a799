//! Fractional powers of the block operator that rewrites an n-th order in
//! time evolution equation as a first-order system, computed per mode of a
//! positive diagonal base operator.
//!
//! The crate provides:
//!
//! * closed-form blocks for the operator, its inverse, its resolvent, and its
//!   fractional powers, built from Chebyshev polynomials of the second kind
//!   ([`block`], [`chebyshev`]);
//! * two independent cross-check routes for every fractional power: a
//!   principal-branch eigendecomposition and entrywise quadrature of the
//!   Balakrishnan integral ([`block`], [`quadrature`]);
//! * eigenvalue-location formulas, the sectoriality threshold
//!   `n / (2 (n - 1))`, and numeric spectrum validation ([`spectrum`]);
//! * exact per-mode evolution of the fractional first-order system with
//!   phase-space norms and decay/blow-up diagnostics ([`evolution`]);
//! * the reduction of the first-order system back to a scalar n-th order
//!   equation via exterior-power traces ([`reduction`]);
//! * a Dirichlet polyharmonic operator on an interval as the concrete base
//!   operator, with a sine-spectral initial value solver ([`laplacian`]);
//! * the validation suite behind the command line front end ([`validate`]).
//!
//! ```
//! use fracop::block::{assemble_lambda, fractional_power_closed_form,
//!                     fractional_power_eig_oracle};
//!
//! let closed = fractional_power_closed_form(3, 17.5, 0.5)?;
//! let oracle = fractional_power_eig_oracle(&assemble_lambda(3, 17.5)?, 0.5)?;
//! assert!(closed.max_abs_diff(&oracle) < 1e-10);
//! # Ok::<(), fracop::Error>(())
//! ```

pub mod block;
pub mod chebyshev;
pub mod error;
pub mod evolution;
pub mod laplacian;
pub mod linalg;
pub mod quadrature;
pub mod reduction;
pub mod spectral;
pub mod validate;
pub mod spectrum;

pub use block::ModeBlock;
pub use error::{Error, Result};
pub use quadrature::{QuadScheme, QuadratureSpec};
pub use spectral::SpectralOperator;
pub use spectrum::{Generation, OperatorTag, SpectrumReport};
