//! Variational core of the p-norm metric: the Legendre transform and its
//! inverse, the momentum (Hamilton) equation right-hand side, the
//! Euler–Lagrange residual, discrete length/energy functionals, and the
//! second-variation quadratic form with its degeneracy test.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{
    self, mat_pow, p_norm, uniform_norm, CMatrix, SingularTriplets, TOL_RANK,
};

/// The metric exponent p = 2n with its derived quantities.
///
/// `q = p/(p−1)` is the conjugate exponent and `alpha = q/2 ∈ (1/2, 1]` is
/// the exponent of the auxiliary isospectral flow.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PMetric {
    p: u32,
}

impl PMetric {
    /// p must be an even integer ≥ 2.
    pub fn new(p: u32) -> Result<Self> {
        if p < 2 || p % 2 != 0 {
            return Err(Error::InvalidExponent(p));
        }
        Ok(PMetric { p })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn p_f64(&self) -> f64 {
        self.p as f64
    }

    /// n = p/2.
    pub fn n(&self) -> u32 {
        self.p / 2
    }

    /// Conjugate exponent q = p/(p−1) ∈ (1, 2].
    pub fn q(&self) -> f64 {
        self.p_f64() / (self.p_f64() - 1.0)
    }

    /// α = q/2 ∈ (1/2, 1].
    pub fn alpha(&self) -> f64 {
        self.q() / 2.0
    }
}

/// Legendre transform w = v (v*v)^{n−1}.
///
/// The identity `(v*v)^n = (w*w)^{n/(2n−1)}` ties the moduli of velocity and
/// momentum together; for p = 2 the transform is the identity map.
pub fn legendre(v: &CMatrix, m: PMetric) -> CMatrix {
    let n = m.n() as usize;
    if n == 1 {
        return v.clone();
    }
    let gram = v.adjoint() * v;
    v * mat_pow(&gram, n - 1)
}

/// Inverse Legendre transform v = Ω |w|^{1/(p−1)}, where w = Ω|w| is the
/// polar decomposition. Rank-deficient momenta are allowed: singular values
/// below `TOL_RANK · σ_max` are treated as exactly zero.
pub fn legendre_inverse(w: &CMatrix, m: PMetric) -> CMatrix {
    if m.p() == 2 {
        return w.clone();
    }
    let t = SingularTriplets::of(w);
    legendre_inverse_from(&t, m)
}

/// Inverse Legendre transform from a precomputed SVD of w.
pub(crate) fn legendre_inverse_from(t: &SingularTriplets, m: PMetric) -> CMatrix {
    let r = 1.0 / (m.p_f64() - 1.0);
    let cutoff = TOL_RANK * t.sigma_max();
    t.map_outer(|s| if s > cutoff && s > 0.0 { s.powf(r) } else { 0.0 })
}

/// Right-hand side of the momentum equation ẇ = |w|^q − |w*|^q.
///
/// The result is self-adjoint; equivalently, the skew-adjoint part of w is a
/// first integral of the flow.
pub fn hamilton_rhs(w: &CMatrix, m: PMetric) -> CMatrix {
    let t = SingularTriplets::of(w);
    hamilton_rhs_from(&t, m)
}

/// Momentum-equation right-hand side from a precomputed SVD of w.
pub(crate) fn hamilton_rhs_from(t: &SingularTriplets, m: PMetric) -> CMatrix {
    let q = m.q();
    let rhs = t.map_modulus(|s| s.powf(q)) - t.map_comodulus(|s| s.powf(q));
    // mathematically Hermitian; symmetrize away the last-ulp drift
    (&rhs + rhs.adjoint()).scale(0.5)
}

/// Euler–Lagrange residual for an analytic (v, v̇) pair:
///
/// `d/dt[v(v*v)^{n−1}] − (v*v)^n + (vv*)^n`,
///
/// with the time derivative expanded by the product rule. The pair solves
/// the extremal equation exactly when the residual vanishes.
pub fn el_residual(v: &CMatrix, vdot: &CMatrix, m: PMetric) -> CMatrix {
    let n = m.n() as usize;
    let gram = v.adjoint() * v;
    let cogram = v * v.adjoint();
    let mut wdot = vdot * mat_pow(&gram, n - 1);
    if n >= 2 {
        let mid = vdot.adjoint() * v + v.adjoint() * vdot;
        let dim = v.nrows();
        let mut acc = CMatrix::zeros(dim, dim);
        for j in 0..=(n - 2) {
            acc += mat_pow(&gram, j) * &mid * mat_pow(&gram, n - 2 - j);
        }
        wdot += v * acc;
    }
    wdot - mat_pow(&gram, n) + mat_pow(&cogram, n)
}

/// Node-wise Euler–Lagrange residual norms along a sampled velocity curve,
/// differentiating the momentum `w(t) = legendre(v(t))` by central finite
/// differences on the grid (five-point interior stencil on uniform grids).
///
/// Returns one residual per interior node; endpoints are skipped.
pub fn el_residual_path(times: &[f64], v: &[CMatrix], m: PMetric) -> Vec<f64> {
    assert_eq!(times.len(), v.len());
    let len = times.len();
    if len < 3 {
        return Vec::new();
    }
    let w: Vec<CMatrix> = v.iter().map(|vj| legendre(vj, m)).collect();
    let h = times[1] - times[0];
    let uniform = times
        .windows(2)
        .all(|t| ((t[1] - t[0]) - h).abs() <= 1e-9 * h.abs());

    let n = m.n() as usize;
    let mut out = Vec::with_capacity(len - 2);
    for j in 1..len - 1 {
        let wdot = if uniform && j >= 2 && j + 2 < len {
            (&w[j - 2] - &w[j + 2] + (&w[j + 1] - &w[j - 1]).scale(8.0)).scale(1.0 / (12.0 * h))
        } else {
            (&w[j + 1] - &w[j - 1]).scale(1.0 / (times[j + 1] - times[j - 1]))
        };
        let gram = v[j].adjoint() * &v[j];
        let cogram = &v[j] * v[j].adjoint();
        let res = wdot - mat_pow(&gram, n) + mat_pow(&cogram, n);
        out.push(uniform_norm(&res));
    }
    out
}

/// A discrete curve in GL(N) on a grid 0 = t₀ < … < t_M = 1.
#[derive(Clone, Debug)]
pub struct DiscretePath {
    times: Vec<f64>,
    points: Vec<CMatrix>,
}

impl DiscretePath {
    pub fn new(times: Vec<f64>, points: Vec<CMatrix>) -> Result<Self> {
        if times.len() != points.len() {
            return Err(Error::InvalidPath(format!(
                "{} times but {} points",
                times.len(),
                points.len()
            )));
        }
        if times.len() < 2 {
            return Err(Error::InvalidPath("need at least two nodes".into()));
        }
        if times[0].abs() > 1e-9 || (times[times.len() - 1] - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidPath("grid must span [0, 1]".into()));
        }
        if times.windows(2).any(|t| t[1] <= t[0]) {
            return Err(Error::InvalidPath("grid must be strictly increasing".into()));
        }
        let dim = points[0].nrows();
        for (j, g) in points.iter().enumerate() {
            if g.nrows() != dim || g.ncols() != dim {
                return Err(Error::DimensionMismatch(g.nrows(), g.ncols(), dim, dim));
            }
            let cond = crate::group::condition_number(g);
            if !(cond < 1.0 / TOL_RANK) {
                return Err(Error::InvalidPath(format!("singular point at node {j}")));
            }
        }
        Ok(DiscretePath { times, points })
    }

    /// Samples `point_at` on the given grid.
    pub fn sample(times: Vec<f64>, point_at: impl Fn(f64) -> CMatrix) -> Result<Self> {
        let points = times.iter().map(|&t| point_at(t)).collect();
        Self::new(times, points)
    }

    /// A uniform grid with `segments + 1` nodes.
    pub fn uniform_grid(segments: usize) -> Vec<f64> {
        (0..=segments).map(|j| j as f64 / segments as f64).collect()
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn points(&self) -> &[CMatrix] {
        &self.points
    }

    /// Left-translated velocity estimates g_j⁻¹ ġ_j, with ġ by centered
    /// differences (one-sided at the endpoints).
    pub fn velocities(&self) -> Vec<CMatrix> {
        let len = self.times.len();
        let mut out = Vec::with_capacity(len);
        for j in 0..len {
            let (lo, hi) = if j == 0 {
                (0, 1)
            } else if j == len - 1 {
                (len - 2, len - 1)
            } else {
                (j - 1, j + 1)
            };
            let gdot = (&self.points[hi] - &self.points[lo])
                .scale(1.0 / (self.times[hi] - self.times[lo]));
            let g_inv = self.points[j]
                .clone()
                .try_inverse()
                .expect("points validated invertible");
            out.push(g_inv * gdot);
        }
        out
    }

    fn trapezoid(&self, values: impl Iterator<Item = f64>) -> f64 {
        let t = &self.times;
        let len = t.len();
        values
            .enumerate()
            .map(|(j, f)| {
                let weight = if j == 0 {
                    (t[1] - t[0]) / 2.0
                } else if j == len - 1 {
                    (t[len - 1] - t[len - 2]) / 2.0
                } else {
                    (t[j + 1] - t[j - 1]) / 2.0
                };
                weight * f
            })
            .sum()
    }
}

/// Discrete p-energy ∫‖g⁻¹ġ‖_p^p dt by the composite trapezoid rule.
pub fn p_energy(path: &DiscretePath, m: PMetric) -> f64 {
    let p = m.p_f64();
    path.trapezoid(path.velocities().iter().map(|v| p_norm(v, p).powf(p)))
}

/// Discrete p-length ∫‖g⁻¹ġ‖_p dt by the composite trapezoid rule.
pub fn p_length(path: &DiscretePath, m: PMetric) -> f64 {
    let p = m.p_f64();
    path.trapezoid(path.velocities().iter().map(|v| p_norm(v, p)))
}

/// Second variation Q_v(z) = d²/ds² ‖v + s·z‖_p^p at s = 0.
///
/// The map s ↦ ‖v + s·z‖_p^p is a polynomial of degree p, so the symmetric
/// (p+1)-point central difference differentiates it exactly up to roundoff.
/// Q is nonnegative, and vanishes exactly on the degenerate directions
/// detected by [`is_degenerate_direction`].
pub fn second_variation(v: &CMatrix, z: &CMatrix, m: PMetric) -> f64 {
    let p = m.p_f64();
    let half = m.n() as usize;
    let h = 0.5 * (1.0 + uniform_norm(v)) / (1.0 + uniform_norm(z));
    let weights = second_derivative_weights(half);
    let mut acc = 0.0;
    for (j, w) in weights.iter().enumerate() {
        if *w == 0.0 {
            continue;
        }
        let s = (j as f64 - half as f64) * h;
        let shifted = v + z.scale(s);
        acc += w * p_norm(&shifted, p).powf(p);
    }
    acc / (h * h)
}

/// Central weights u_j on integer nodes −k..k with Σ u_j ξ^m = 2·δ_{m,2},
/// exact for polynomials of degree ≤ 2k. Divide by h² after scaling nodes
/// by h.
fn second_derivative_weights(k: usize) -> Vec<f64> {
    let size = 2 * k + 1;
    let vand = DMatrix::<f64>::from_fn(size, size, |m, j| {
        let xi = j as f64 - k as f64;
        xi.powi(m as i32)
    });
    let mut rhs = nalgebra::DVector::<f64>::zeros(size);
    rhs[2] = 2.0;
    vand.lu()
        .solve(&rhs)
        .expect("Vandermonde on distinct nodes is invertible")
        .iter()
        .copied()
        .collect()
}

/// True when z is a degeneracy direction of Q_v, i.e. z v* = 0 = v* z
/// within `tol` in operator norm.
pub fn is_degenerate_direction(v: &CMatrix, z: &CMatrix, tol: f64) -> bool {
    uniform_norm(&(z * v.adjoint())) <= tol && uniform_norm(&(v.adjoint() * z)) <= tol
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{cr, cx};
    use approx::assert_relative_eq;
    use nalgebra::DVector;

    fn diag(entries: &[nalgebra::Complex<f64>]) -> CMatrix {
        let d = DVector::from_iterator(entries.len(), entries.iter().copied());
        CMatrix::from_diagonal(&d)
    }

    fn metric(p: u32) -> PMetric {
        PMetric::new(p).unwrap()
    }

    #[test]
    fn metric_validation() {
        assert!(PMetric::new(3).is_err());
        assert!(PMetric::new(0).is_err());
        let m = metric(4);
        assert_eq!(m.n(), 2);
        assert_relative_eq!(m.q(), 4.0 / 3.0);
        assert_relative_eq!(m.alpha(), 2.0 / 3.0);
    }

    #[test]
    fn legendre_examples() {
        let v = CMatrix::from_row_slice(2, 2, &[cx(0.3, 1.0), cr(2.0), cr(-1.0), cx(0.0, 0.5)]);
        assert_eq!(legendre(&v, metric(2)), v);

        // diag(2, i), p = 4: v*v = diag(4, 1), w = diag(8, i)
        let v = diag(&[cr(2.0), cx(0.0, 1.0)]);
        let w = legendre(&v, metric(4));
        assert!((w - diag(&[cr(8.0), cx(0.0, 1.0)])).norm() < 1e-13);

        // unitary v: v*v = 1 so w = v for every p
        let u = crate::linalg::polar_decompose(&CMatrix::from_row_slice(
            2,
            2,
            &[cx(1.0, 0.4), cr(0.3), cx(-0.2, 0.2), cx(0.8, -1.0)],
        ))
        .omega;
        for p in [2, 4, 6] {
            assert!((legendre(&u, metric(p)) - &u).norm() < 1e-12);
        }
    }

    #[test]
    fn legendre_inverse_examples() {
        let w = CMatrix::from_row_slice(2, 2, &[cr(1.0), cr(2.0), cx(0.0, 3.0), cr(-1.0)]);
        assert_eq!(legendre_inverse(&w, metric(2)), w);

        let w = diag(&[cr(8.0), cx(0.0, 1.0)]);
        let v = legendre_inverse(&w, metric(4));
        assert!((v - diag(&[cr(2.0), cx(0.0, 1.0)])).norm() < 1e-12);
    }

    #[test]
    fn legendre_round_trip_including_rank_deficient() {
        let full = CMatrix::from_row_slice(
            3,
            3,
            &[
                cx(0.5, -0.2),
                cr(1.0),
                cx(0.0, 0.7),
                cr(-0.4),
                cx(1.2, 0.1),
                cr(0.0),
                cx(0.3, 0.3),
                cr(0.8),
                cx(-0.6, 0.5),
            ],
        );
        // rank-1: outer product
        let col = CMatrix::from_row_slice(3, 1, &[cr(1.0), cx(0.0, 1.0), cr(-0.5)]);
        let row = CMatrix::from_row_slice(1, 3, &[cx(0.2, 0.1), cr(1.0), cr(0.3)]);
        let rank1 = &col * &row;
        for p in [2u32, 4, 6] {
            let m = metric(p);
            for v in [&full, &rank1] {
                let back = legendre_inverse(&legendre(v, m), m);
                assert!(
                    (&back - v).norm() < 1e-9,
                    "round trip failed for p={p}: {}",
                    (&back - v).norm()
                );
            }
        }
    }

    #[test]
    fn modulus_identity_between_v_and_w() {
        // (v*v)^n = (w*w)^{n/(2n−1)}
        let v = CMatrix::from_row_slice(
            2,
            2,
            &[cx(0.9, 0.2), cr(0.4), cx(-0.1, 1.1), cx(0.3, -0.8)],
        );
        for p in [4u32, 6] {
            let m = metric(p);
            let n = m.n() as f64;
            let w = legendre(&v, m);
            let lhs = crate::linalg::PositiveMatrix::new(v.adjoint() * &v)
                .unwrap()
                .power(n);
            let rhs = crate::linalg::PositiveMatrix::new(w.adjoint() * &w)
                .unwrap()
                .power(n / (2.0 * n - 1.0));
            assert!((lhs.matrix() - rhs.matrix()).norm() < 1e-9);
        }
    }

    #[test]
    fn hamilton_rhs_examples() {
        // normal momentum: |w| = |w*| so the rhs vanishes
        let w = diag(&[cx(1.0, 2.0), cr(-0.5)]);
        assert!(hamilton_rhs(&w, metric(4)).norm() < 1e-13);

        // shift: |w| = diag(0,1), |w*| = diag(1,0)
        let w = CMatrix::from_row_slice(2, 2, &[cr(0.0), cr(1.0), cr(0.0), cr(0.0)]);
        for p in [2u32, 4, 6] {
            let rhs = hamilton_rhs(&w, metric(p));
            assert!((rhs.clone() - diag(&[cr(-1.0), cr(1.0)])).norm() < 1e-13);
        }

        // scaled shift at q = 4/3
        let w = CMatrix::from_row_slice(2, 2, &[cr(0.0), cr(3.0), cr(0.0), cr(0.0)]);
        let rhs = hamilton_rhs(&w, metric(4));
        let s = 3f64.powf(4.0 / 3.0);
        assert!((rhs - diag(&[cr(-s), cr(s)])).norm() < 1e-12);
    }

    #[test]
    fn el_residual_vanishes_for_constant_normal_velocity() {
        let v = diag(&[cx(1.0, 1.0), cx(0.0, -2.0)]);
        let zero = CMatrix::zeros(2, 2);
        for p in [2u32, 4, 6] {
            assert!(el_residual(&v, &zero, metric(p)).norm() < 1e-12);
        }
    }

    #[test]
    fn el_residual_vanishes_on_partial_isometry_solution() {
        // v(t) = e^{−2ity}x e^{2ity} + iy for a partial isometry v0 = x + iy
        let v0 = CMatrix::from_row_slice(2, 2, &[cr(0.0), cr(1.0), cr(0.0), cr(0.0)]);
        let x = (&v0 + v0.adjoint()).scale(0.5);
        let y = (&v0 - v0.adjoint()).scale(0.5) * cx(0.0, -1.0);
        for t in [0.0, 0.3] {
            let rot = crate::linalg::expm(&(y.clone() * cx(0.0, 2.0 * t)));
            let rot_inv = crate::linalg::expm(&(y.clone() * cx(0.0, -2.0 * t)));
            let vt = &rot_inv * &x * &rot + &y * cx(0.0, 1.0);
            let bracket = &(&y * cx(0.0, -2.0)) * &x - &x * &(&y * cx(0.0, -2.0));
            let vdot = &rot_inv * bracket * &rot;
            for p in [2u32, 4, 6] {
                let r = el_residual(&vt, &vdot, metric(p));
                assert!(r.norm() < 1e-12, "p={p}, t={t}: residual {}", r.norm());
            }
        }
    }

    #[test]
    fn el_residual_matches_finite_difference_of_momentum() {
        let v = CMatrix::from_row_slice(
            2,
            2,
            &[cx(0.4, -0.3), cr(1.1), cx(0.0, 0.6), cx(-0.7, 0.2)],
        );
        let vdot = CMatrix::from_row_slice(
            2,
            2,
            &[cr(0.2), cx(-0.5, 0.1), cx(0.9, 0.0), cx(0.1, 0.8)],
        );
        let h = 1e-5;
        for p in [4u32, 6] {
            let m = metric(p);
            let plus = legendre(&(&v + vdot.scale(h)), m);
            let minus = legendre(&(&v - vdot.scale(h)), m);
            let wdot_fd = (plus - minus).scale(1.0 / (2.0 * h));
            let gram = v.adjoint() * &v;
            let cogram = &v * v.adjoint();
            let n = m.n() as usize;
            let res_fd = wdot_fd - mat_pow(&gram, n) + mat_pow(&cogram, n);
            let res = el_residual(&v, &vdot, m);
            assert!(
                (res - res_fd).norm() < 1e-7,
                "p={p} disagreement with finite difference"
            );
        }
    }

    #[test]
    fn energy_and_length_of_constant_path() {
        let grid = DiscretePath::uniform_grid(16);
        let g = CMatrix::identity(3, 3);
        let path = DiscretePath::sample(grid, |_| g.clone()).unwrap();
        assert_eq!(p_energy(&path, metric(4)), 0.0);
        assert_eq!(p_length(&path, metric(4)), 0.0);
    }

    #[test]
    fn energy_of_unitary_one_parameter_group() {
        // g(t) = e^{t·i·h} has constant velocity i·h
        let h = CMatrix::from_row_slice(2, 2, &[cr(0.7), cx(0.2, -0.4), cx(0.2, 0.4), cr(-0.3)]);
        let ih = h.clone() * cx(0.0, 1.0);
        let m = metric(4);
        let grid = DiscretePath::uniform_grid(200);
        let path = DiscretePath::sample(grid, |t| crate::linalg::expm(&ih.scale(t))).unwrap();
        let expect_len = p_norm(&h, 4.0);
        let expect_energy = expect_len.powi(4);
        assert_relative_eq!(p_length(&path, m), expect_len, epsilon = 1e-4);
        assert_relative_eq!(p_energy(&path, m), expect_energy, epsilon = 1e-4);
        // Hölder: length^p ≤ energy (+ roundoff)
        assert!(p_length(&path, m).powi(4) <= p_energy(&path, m) + 1e-12);
    }

    #[test]
    fn length_is_left_invariant() {
        let h = CMatrix::from_row_slice(2, 2, &[cx(0.1, 0.2), cr(0.5), cx(-0.4, 0.0), cr(0.2)]);
        let k = CMatrix::from_row_slice(2, 2, &[cr(2.0), cx(0.0, 1.0), cr(0.0), cr(1.0)]);
        let grid = DiscretePath::uniform_grid(64);
        let base = DiscretePath::sample(grid.clone(), |t| crate::linalg::expm(&h.scale(t))).unwrap();
        let moved = DiscretePath::sample(grid, |t| &k * crate::linalg::expm(&h.scale(t))).unwrap();
        let m = metric(4);
        assert_relative_eq!(p_length(&base, m), p_length(&moved, m), epsilon = 1e-12);
    }

    #[test]
    fn second_variation_p2_is_twice_norm_squared() {
        let v = CMatrix::from_row_slice(2, 2, &[cx(0.3, 1.0), cr(0.5), cr(-2.0), cx(0.1, -0.2)]);
        let z = CMatrix::from_row_slice(2, 2, &[cr(1.0), cx(0.0, 0.4), cx(0.7, 0.0), cr(-0.6)]);
        let q = second_variation(&v, &z, metric(2));
        assert_relative_eq!(q, 2.0 * p_norm(&z, 2.0).powi(2), epsilon = 1e-12);
    }

    #[test]
    fn second_variation_degenerate_direction_p4() {
        let v = diag(&[cr(1.0), cr(0.0)]);
        let z = diag(&[cr(0.0), cr(1.0)]);
        assert!(is_degenerate_direction(&v, &z, 1e-10));
        let q = second_variation(&v, &z, metric(4));
        assert!(q.abs() < 1e-10, "degenerate Q = {q}");
        // the exact expansion ‖v+sz‖₄⁴ = ‖v‖₄⁴ + s⁴‖z‖₄⁴
        for s in [0.1, 0.5, 1.0] {
            let lhs = p_norm(&(&v + z.scale(s)), 4.0).powi(4);
            let rhs = p_norm(&v, 4.0).powi(4) + s.powi(4) * p_norm(&z, 4.0).powi(4);
            assert_relative_eq!(lhs, rhs, epsilon = 1e-10);
        }
    }

    #[test]
    fn degeneracy_detector() {
        let v = diag(&[cr(1.0), cr(0.0)]);
        assert!(is_degenerate_direction(&v, &CMatrix::zeros(2, 2), 1e-12));
        let z = diag(&[cr(0.0), cr(1.0)]);
        assert!(is_degenerate_direction(&v, &z, 1e-10));
        // invertible v forces v*z ≠ 0 for z ≠ 0
        let vinv = diag(&[cr(1.0), cr(2.0)]);
        assert!(!is_degenerate_direction(&vinv, &z, 1e-10));
    }
}
