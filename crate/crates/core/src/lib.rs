//! Orthogonal polynomials on the unit circle, para-orthogonal nodes,
//! Szegő quadrature, and Lagrange interpolation at those nodes.
//!
//! The crate is organized bottom-up:
//!
//! * [`measure`] — finite positive measures on the circle (density plus
//!   atoms), trigonometric moments, integration, and Lᵖ norms.
//! * [`opuc`] — Verblunsky coefficients from moments, orthonormal
//!   polynomials φₙ / φₙ*, and Christoffel–Darboux kernels.
//! * [`paraorth`] — para-orthogonal polynomials, their unimodular zeros
//!   (quadrature nodes), and Szegő quadrature weights.
//! * [`lagrange`] — fundamental polynomials and the interpolation
//!   operator at para-orthogonal nodes, with Lᵖ error norms.
//! * [`harness`] — measure-spec parsing, the function catalog, the
//!   identity-verification suite, and convergence experiments backing
//!   the `szego` CLI.

mod dd;
pub mod harness;
pub mod lagrange;
pub mod measure;
pub mod opuc;
pub mod paraorth;

pub use measure::{Atom, Density, Measure, MeasureError, MomentTable, SzegoClass};
pub use opuc::{OpucBasis, OpucError, PhiPair};
pub use paraorth::{NodeSystem, ParaorthError};

use num_complex::Complex64;

/// The point e^{iθ} on the unit circle.
#[inline]
pub fn unit(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta)
}
