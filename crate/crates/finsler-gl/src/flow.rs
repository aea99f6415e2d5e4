//! Initial-value geodesic solver: integrates the momentum equation
//! `ẇ = |w|^q − |w*|^q`, reconstructs the velocity by inverse Legendre
//! transform, integrates the group equation `ġ = g·v` on the same stages,
//! and monitors the conserved quantities of the flow.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{condition_number, GroupElement};
use crate::linalg::{
    cluster_values, p_norm, skew_part, uniform_norm, CMatrix, SingularTriplets, TOL_RANK,
};
use crate::variational::{el_residual_path, legendre, legendre_inverse_from, DiscretePath, PMetric};

/// Relative eigenvalue-gap tolerance used when monitoring multiplicities.
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum IntegratorMethod {
    /// Classical fixed-step fourth-order Runge–Kutta (the default).
    Rk4Fixed,
    /// Dormand–Prince 5(4) with PI step control.
    Rk45Adaptive,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct IntegratorConfig {
    pub method: IntegratorMethod,
    /// Fixed step, or the initial step of the adaptive method.
    pub step: f64,
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_steps: usize,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        IntegratorConfig {
            method: IntegratorMethod::Rk4Fixed,
            step: 1e-3,
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            max_steps: 4_000_000,
        }
    }
}

impl IntegratorConfig {
    pub fn rk4(step: f64) -> Self {
        IntegratorConfig { step, ..Default::default() }
    }

    pub fn adaptive(abs_tol: f64, rel_tol: f64) -> Self {
        IntegratorConfig {
            method: IntegratorMethod::Rk45Adaptive,
            step: 1e-3,
            abs_tol,
            rel_tol,
            max_steps: 4_000_000,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.step > 0.0) {
            return Err(Error::InvalidConfig(format!("step must be > 0, got {}", self.step)));
        }
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0) {
            return Err(Error::InvalidConfig("tolerances must be > 0".into()));
        }
        if self.max_steps == 0 {
            return Err(Error::InvalidConfig("max_steps must be >= 1".into()));
        }
        Ok(())
    }
}

/// State handled by the generic Runge–Kutta drivers.
pub(crate) trait OdeState: Clone {
    /// self + Σ cᵢ·kᵢ.
    fn combine(&self, terms: &[(f64, &Self)]) -> Self;
    /// max |err| / (abs_tol + rel_tol·max(|a|, |b|)) over entries.
    fn error_ratio(err: &Self, a: &Self, b: &Self, abs_tol: f64, rel_tol: f64) -> f64;
    fn all_finite(&self) -> bool;
}

impl OdeState for CMatrix {
    fn combine(&self, terms: &[(f64, &Self)]) -> Self {
        let mut out = self.clone();
        for (c, k) in terms {
            out += k.scale(*c);
        }
        out
    }

    fn error_ratio(err: &Self, a: &Self, b: &Self, abs_tol: f64, rel_tol: f64) -> f64 {
        let mut worst: f64 = 0.0;
        for ((e, x), y) in err.iter().zip(a.iter()).zip(b.iter()) {
            let scale = abs_tol + rel_tol * x.norm().max(y.norm());
            worst = worst.max(e.norm() / scale);
        }
        worst
    }

    fn all_finite(&self) -> bool {
        self.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

/// Joint momentum/group state for the geodesic flow.
#[derive(Clone)]
struct WgState {
    w: CMatrix,
    g: CMatrix,
}

impl OdeState for WgState {
    fn combine(&self, terms: &[(f64, &Self)]) -> Self {
        let mut w = self.w.clone();
        let mut g = self.g.clone();
        for (c, k) in terms {
            w += k.w.scale(*c);
            g += k.g.scale(*c);
        }
        WgState { w, g }
    }

    fn error_ratio(err: &Self, a: &Self, b: &Self, abs_tol: f64, rel_tol: f64) -> f64 {
        CMatrix::error_ratio(&err.w, &a.w, &b.w, abs_tol, rel_tol)
            .max(CMatrix::error_ratio(&err.g, &a.g, &b.g, abs_tol, rel_tol))
    }

    fn all_finite(&self) -> bool {
        self.w.all_finite() && self.g.all_finite()
    }
}

/// Fixed-step RK4 on an autonomous system; the grid divides `t_end` exactly.
fn rk4_fixed<S: OdeState>(
    f: &dyn Fn(&S) -> S,
    y0: S,
    t_end: f64,
    step: f64,
    max_steps: usize,
) -> Result<Vec<(f64, S)>> {
    let steps = ((t_end / step) - 1e-9).ceil().max(1.0) as usize;
    if steps > max_steps {
        return Err(Error::IntegrationFailed(format!(
            "{steps} fixed steps exceed max_steps = {max_steps}"
        )));
    }
    let h = t_end / steps as f64;
    let mut nodes = Vec::with_capacity(steps + 1);
    let mut y = y0;
    nodes.push((0.0, y.clone()));
    for j in 0..steps {
        let k1 = f(&y);
        let k2 = f(&y.combine(&[(h / 2.0, &k1)]));
        let k3 = f(&y.combine(&[(h / 2.0, &k2)]));
        let k4 = f(&y.combine(&[(h, &k3)]));
        y = y.combine(&[(h / 6.0, &k1), (h / 3.0, &k2), (h / 3.0, &k3), (h / 6.0, &k4)]);
        if !y.all_finite() {
            return Err(Error::IntegrationFailed(format!(
                "non-finite state at t = {}",
                (j + 1) as f64 * h
            )));
        }
        nodes.push(((j + 1) as f64 * h, y.clone()));
    }
    Ok(nodes)
}

/// Dormand–Prince 5(4) with multiplicative step control.
fn dopri45<S: OdeState>(
    f: &dyn Fn(&S) -> S,
    y0: S,
    t_end: f64,
    cfg: &IntegratorConfig,
) -> Result<Vec<(f64, S)>> {
    // Butcher tableau
    const A: [[f64; 6]; 6] = [
        [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
        [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
        [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
        [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
        [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
    ];
    const B5: [f64; 7] = [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
        0.0,
    ];
    const B4: [f64; 7] = [
        5179.0 / 57600.0,
        0.0,
        7571.0 / 16695.0,
        393.0 / 640.0,
        -92097.0 / 339200.0,
        187.0 / 2100.0,
        1.0 / 40.0,
    ];

    let mut nodes = vec![(0.0, y0.clone())];
    let mut y = y0;
    let mut t = 0.0;
    let mut h = cfg.step.min(t_end);
    let mut attempts = 0usize;
    while t < t_end * (1.0 - 1e-14) {
        attempts += 1;
        if attempts > cfg.max_steps {
            return Err(Error::IntegrationFailed(format!(
                "adaptive integrator exceeded max_steps = {}",
                cfg.max_steps
            )));
        }
        if t + h > t_end {
            h = t_end - t;
        }
        let mut k: Vec<S> = Vec::with_capacity(7);
        k.push(f(&y));
        for row in 0..6 {
            let terms: Vec<(f64, &S)> = A[row][..=row]
                .iter()
                .enumerate()
                .filter(|(_, a)| **a != 0.0)
                .map(|(i, a)| (h * a, &k[i]))
                .collect();
            k.push(f(&y.combine(&terms)));
        }
        let y5 = {
            let terms: Vec<(f64, &S)> = B5
                .iter()
                .enumerate()
                .filter(|(_, b)| **b != 0.0)
                .map(|(i, b)| (h * b, &k[i]))
                .collect();
            y.combine(&terms)
        };
        let y4 = {
            let terms: Vec<(f64, &S)> = B4
                .iter()
                .enumerate()
                .filter(|(_, b)| **b != 0.0)
                .map(|(i, b)| (h * b, &k[i]))
                .collect();
            y.combine(&terms)
        };
        let err_terms: Vec<(f64, &S)> = B5
            .iter()
            .zip(B4.iter())
            .enumerate()
            .filter(|(_, (b5, b4))| **b5 != **b4)
            .map(|(i, (b5, b4))| (h * (b5 - b4), &k[i]))
            .collect();
        let zero = y.combine(&[(-1.0, &y)]);
        let err = zero.combine(&err_terms);

        let ratio = if y5.all_finite() && err.all_finite() {
            S::error_ratio(&err, &y, &y5, cfg.abs_tol, cfg.rel_tol)
        } else {
            f64::INFINITY
        };
        if ratio <= 1.0 {
            t += h;
            y = y5;
            nodes.push((t, y.clone()));
        }
        let factor = if ratio.is_finite() && ratio > 0.0 {
            (0.9 * ratio.powf(-0.2)).clamp(0.2, 5.0)
        } else if ratio == 0.0 {
            5.0
        } else {
            0.2
        };
        h *= factor;
        if h < 1e-14 * t_end {
            return Err(Error::IntegrationFailed("step size underflow".into()));
        }
    }
    Ok(nodes)
}

fn integrate<S: OdeState>(
    f: &dyn Fn(&S) -> S,
    y0: S,
    t_end: f64,
    cfg: &IntegratorConfig,
) -> Result<Vec<(f64, S)>> {
    cfg.validate()?;
    if !(t_end > 0.0) {
        return Err(Error::InvalidConfig(format!("final time must be > 0, got {t_end}")));
    }
    match cfg.method {
        IntegratorMethod::Rk4Fixed => rk4_fixed(f, y0, t_end, cfg.step, cfg.max_steps),
        IntegratorMethod::Rk45Adaptive => dopri45(f, y0, t_end, cfg),
    }
}

/// Integrates the momentum equation `ẇ = |w|^q − |w*|^q` from `w0`.
pub fn integrate_hamilton(
    w0: &CMatrix,
    m: PMetric,
    t_end: f64,
    cfg: &IntegratorConfig,
) -> Result<Vec<(f64, CMatrix)>> {
    let f = move |w: &CMatrix| crate::variational::hamilton_rhs(w, m);
    integrate(&f, w0.clone(), t_end, cfg)
}

/// Conservation diagnostics along a trajectory. All drifts compare against
/// the initial node and are zero for an exact solution.
#[derive(Clone, Debug, Serialize)]
pub struct ConservationReport {
    /// Max deviation of the sorted eigenvalues of w*w from t = 0.
    pub spectrum_drift: f64,
    /// Max ‖k(t) − k(0)‖ of the skew-adjoint part k = (w − w*)/2.
    pub skew_drift: f64,
    /// Max |‖v(t)‖_p − ‖v(0)‖_p|.
    pub speed_drift: f64,
    /// Whether the eigenvalue multiplicity signature of w*w is the same at
    /// every node (clusters taken at `DEFAULT_CLUSTER_TOL`).
    pub multiplicity_stable: bool,
}

impl ConservationReport {
    pub fn compute(m: PMetric, v: &[CMatrix], w: &[CMatrix], cluster_tol: f64) -> Self {
        assert!(!w.is_empty(), "conservation report needs at least one node");
        assert_eq!(v.len(), w.len());
        let p = m.p_f64();

        let eigs_of = |wj: &CMatrix| -> Vec<f64> {
            let mut s: Vec<f64> = wj
                .clone()
                .singular_values()
                .iter()
                .map(|x| x * x)
                .collect();
            s.sort_by(|a, b| b.partial_cmp(a).expect("finite"));
            s
        };

        let eigs0 = eigs_of(&w[0]);
        let sig0 = cluster_values(&eigs0, cluster_tol).signature().to_vec();
        let skew0 = skew_part(&w[0]);
        let speed0 = p_norm(&v[0], p);

        let mut spectrum_drift: f64 = 0.0;
        let mut skew_drift: f64 = 0.0;
        let mut speed_drift: f64 = 0.0;
        let mut multiplicity_stable = true;
        for (vj, wj) in v.iter().zip(w.iter()).skip(1) {
            let eigs = eigs_of(wj);
            let drift = eigs
                .iter()
                .zip(eigs0.iter())
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            spectrum_drift = spectrum_drift.max(drift);
            skew_drift = skew_drift.max(uniform_norm(&(skew_part(wj) - &skew0)));
            speed_drift = speed_drift.max((p_norm(vj, p) - speed0).abs());
            if cluster_values(&eigs, cluster_tol).signature() != sig0.as_slice() {
                multiplicity_stable = false;
            }
        }
        ConservationReport { spectrum_drift, skew_drift, speed_drift, multiplicity_stable }
    }
}

/// A sampled geodesic: per-node group point, velocity and momentum, plus the
/// conservation diagnostics of the run.
#[derive(Clone, Debug)]
pub struct Trajectory {
    pub metric: PMetric,
    pub times: Vec<f64>,
    pub g: Vec<CMatrix>,
    pub v: Vec<CMatrix>,
    pub w: Vec<CMatrix>,
    pub diagnostics: ConservationReport,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.g[0].nrows()
    }

    pub fn endpoint(&self) -> &CMatrix {
        self.g.last().expect("trajectory is non-empty")
    }

    /// Largest node-wise Euler–Lagrange residual (interior nodes).
    pub fn el_residual_max(&self) -> f64 {
        el_residual_path(&self.times, &self.v, self.metric)
            .into_iter()
            .fold(0.0, f64::max)
    }

    /// Re-parametrizes the group nodes onto [0, 1] for the discrete
    /// length/energy functionals.
    pub fn to_unit_path(&self) -> Result<DiscretePath> {
        let t_end = *self.times.last().expect("non-empty");
        let times = self.times.iter().map(|t| t / t_end).collect();
        DiscretePath::new(times, self.g.clone())
    }
}

/// Integrates the geodesic with initial position `g0` and initial velocity
/// `v0` (so the initial momentum is `legendre(v0)`), monitoring conserved
/// quantities along the way.
///
/// The momentum and group equations share integrator stages: at each stage
/// one SVD of w yields both the momentum right-hand side and the velocity
/// `v = Ω|w|^{1/(p−1)}` driving `ġ = g·v`.
pub fn geodesic_ivp(
    g0: &GroupElement,
    v0: &CMatrix,
    m: PMetric,
    t_end: f64,
    cfg: &IntegratorConfig,
) -> Result<Trajectory> {
    let n = g0.dim();
    if v0.nrows() != n || v0.ncols() != n {
        return Err(Error::DimensionMismatch(v0.nrows(), v0.ncols(), n, n));
    }
    let w0 = legendre(v0, m);
    let f = move |s: &WgState| {
        let t = SingularTriplets::of(&s.w);
        let wdot = crate::variational::hamilton_rhs_from(&t, m);
        let v = if m.p() == 2 { s.w.clone() } else { legendre_inverse_from(&t, m) };
        WgState { w: wdot, g: &s.g * v }
    };
    let nodes = integrate(&f, WgState { w: w0, g: g0.matrix().clone() }, t_end, cfg)?;

    let mut times = Vec::with_capacity(nodes.len());
    let mut g = Vec::with_capacity(nodes.len());
    let mut w = Vec::with_capacity(nodes.len());
    for (t, s) in nodes {
        times.push(t);
        g.push(s.g);
        w.push(s.w);
    }
    for (j, gj) in g.iter().enumerate() {
        let cond = condition_number(gj);
        if !(cond < 1.0 / TOL_RANK) {
            return Err(Error::SingularDrift { node: j, cond });
        }
    }
    let v: Vec<CMatrix> = w
        .iter()
        .map(|wj| crate::variational::legendre_inverse(wj, m))
        .collect();
    let diagnostics = ConservationReport::compute(m, &v, &w, DEFAULT_CLUSTER_TOL);
    Ok(Trajectory { metric: m, times, g, v, w, diagnostics })
}

/// Recomputes the conservation diagnostics of a trajectory.
pub fn conservation_report(traj: &Trajectory) -> ConservationReport {
    ConservationReport::compute(traj.metric, &traj.v, &traj.w, DEFAULT_CLUSTER_TOL)
}
