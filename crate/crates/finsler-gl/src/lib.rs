//! Left-invariant p-norm metrics on the general linear group GL(N).
//!
//! For an even integer `p = 2n` the tangent norm at `g` is `‖g⁻¹x‖_p`, the
//! Schatten p-norm taken with the normalized trace. This crate computes the
//! extremal curves of the associated length and energy functionals:
//!
//! * [`variational`] — Legendre transform `v ↦ w = v(v*v)^{n-1}` and its
//!   inverse, the momentum equation `ẇ = |w|^q − |w*|^q`, discrete length and
//!   energy functionals, and the second-variation quadratic form.
//! * [`flow`] — initial-value geodesic solver with conservation monitoring
//!   (the singular values of the momentum, its skew part and the speed are
//!   all first integrals).
//! * [`closed_form`] — explicit geodesics: the `p = 2` product of two
//!   one-parameter groups, normal velocities, partial-isometry velocities,
//!   the metric tensor and the invariant Levi-Civita connection.
//! * [`shooting`] — boundary-value solver (Riemannian logarithm for `p = 2`,
//!   geodesic shooting for general even `p`) and the induced distance.
//! * [`spectral`] — the isospectral auxiliary flow `ḃ = [b^α, K]`, the
//!   derivative of its spectral projections, and the unitary transport frame
//!   that conjugates the moving eigenprojections back to their initial
//!   positions.
//! * [`linalg`] — the dense complex kernels everything above is built on.

pub mod closed_form;
pub mod error;
pub mod flow;
pub mod group;
pub mod linalg;
pub mod sample;
pub mod serialize;
pub mod shooting;
pub mod spectral;
pub mod variational;

pub use error::{Error, Result};
pub use group::GroupElement;
pub use linalg::{CMatrix, PolarFactors, PositiveMatrix, Spectrum};
pub use variational::PMetric;
