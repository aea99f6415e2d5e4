//! Explicit geodesics and the Riemannian (p = 2) structure.
//!
//! For p = 2 every geodesic is the product of two one-parameter groups,
//! `g(t) = g₀ e^{t v₀*} e^{t(v₀ − v₀*)}`. The same formula solves the
//! variational problem for every even p when v₀ is a partial isometry, and
//! collapses to the one-parameter group `g₀ e^{t v₀}` exactly when v₀ is
//! normal.

use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::linalg::{commutator, expm, trace_inner, uniform_norm, CMatrix};

/// Default relative tolerance for the structure predicates below.
pub const DEFAULT_PREDICATE_TOL: f64 = 1e-10;

/// The p = 2 geodesic g₀·e^{t·v₀*}·e^{t(v₀ − v₀*)}.
pub fn riemannian_geodesic(g0: &GroupElement, v0: &CMatrix, t: f64) -> CMatrix {
    let adj = v0.adjoint();
    let skew2 = v0 - &adj;
    g0.matrix() * expm(&adj.scale(t)) * expm(&skew2.scale(t))
}

/// The Riemannian exponential Exp_g(v) = g·e^{v*}·e^{v − v*}, the time-one
/// geodesic with initial velocity g·v.
pub fn riemannian_exp(g: &GroupElement, v: &CMatrix) -> CMatrix {
    riemannian_geodesic(g, v, 1.0)
}

/// Geodesic for a partial-isometry initial velocity, valid for every even p.
///
/// Errors unless `v0*v0` is a projection within `tol`.
pub fn partial_isometry_geodesic(
    g0: &GroupElement,
    v0: &CMatrix,
    t: f64,
    tol: f64,
) -> Result<CMatrix> {
    let gram = v0.adjoint() * v0;
    let defect = uniform_norm(&(&gram * &gram - &gram));
    if defect > tol {
        return Err(Error::NotPartialIsometry { defect, tol });
    }
    Ok(riemannian_geodesic(g0, v0, t))
}

/// One-parameter-group geodesic g₀·e^{t·v₀}, the extremal exactly when v₀
/// is normal. Errors on a non-normal velocity.
pub fn one_parameter_geodesic(
    g0: &GroupElement,
    v0: &CMatrix,
    t: f64,
    tol: f64,
) -> Result<CMatrix> {
    let defect = uniform_norm(&commutator(v0, &v0.adjoint()));
    let scaled_tol = tol * (1.0 + uniform_norm(v0).powi(2));
    if defect > scaled_tol {
        return Err(Error::NotNormal { defect, tol: scaled_tol });
    }
    Ok(g0.matrix() * expm(&v0.scale(t)))
}

/// vv* = v*v within `tol·(1 + ‖v‖²)`.
pub fn is_normal(v: &CMatrix, tol: f64) -> bool {
    let defect = uniform_norm(&commutator(v, &v.adjoint()));
    defect <= tol * (1.0 + uniform_norm(v).powi(2))
}

/// v*v is a projection within `tol`.
pub fn is_partial_isometry(v: &CMatrix, tol: f64) -> bool {
    let gram = v.adjoint() * v;
    uniform_norm(&(&gram * &gram - &gram)) <= tol
}

/// The metric tensor at g: ⟨x, y⟩_g = τ((gg*)⁻¹ x y*) = ⟨g⁻¹x, g⁻¹y⟩.
pub fn metric_at(g: &GroupElement, x: &CMatrix, y: &CMatrix) -> f64 {
    let g_inv = g.inverse();
    trace_inner(&(&g_inv * x), &(&g_inv * y))
}

/// The metric kernel g ↦ (g·g*)⁻¹.
pub fn angular_momentum(g: &GroupElement) -> CMatrix {
    (g.matrix() * g.matrix().adjoint())
        .try_inverse()
        .expect("gg* of an invertible g is invertible")
}

/// Levi-Civita connection on left-invariant fields, evaluated at the
/// identity: ∇_V W = ½([v, w] + [v, w*] + [w, v*]).
pub fn levi_civita_invariant(v: &CMatrix, w: &CMatrix) -> CMatrix {
    (commutator(v, w) + commutator(v, &w.adjoint()) + commutator(w, &v.adjoint())).scale(0.5)
}
