//! Dense complex linear algebra kernels: normalized trace, Schatten p-norms,
//! polar decomposition with the kernel convention, spectral calculus for
//! positive matrices, and the matrix exponential / principal logarithm.
//!
//! All norms written `‖·‖_p` are taken with the *normalized* trace
//! `τ(x) = Re tr(x)/N`, so that `‖1‖_p = 1` for every p. The operator norm
//! (largest singular value) is [`uniform_norm`].

use nalgebra::{Complex, DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};

/// Square complex matrix, the ambient algebra for everything in this crate.
pub type CMatrix = DMatrix<Complex<f64>>;

/// Relative singular-value cutoff below which a direction counts as kernel.
pub const TOL_RANK: f64 = 1e-10;
/// Relative tolerance for Hermitian symmetry checks.
pub const TOL_HERM: f64 = 1e-10;
/// Relative tolerance below which negative eigenvalues are clamped to zero.
pub const TOL_PSD: f64 = 1e-10;

#[inline]
pub(crate) fn cx(re: f64, im: f64) -> Complex<f64> {
    Complex::new(re, im)
}

#[inline]
pub(crate) fn cr(re: f64) -> Complex<f64> {
    Complex::new(re, 0.0)
}

/// Normalized real trace τ(x) = Re(tr x)/N, so τ(1) = 1.
pub fn normalized_trace(x: &CMatrix) -> f64 {
    let n = x.nrows() as f64;
    x.diagonal().iter().map(|z| z.re).sum::<f64>() / n
}

/// Real trace inner product ⟨x, y⟩ = τ(y*x) = Re tr(y*x)/N.
///
/// Panics on shape mismatch; ⟨x, x⟩ equals `p_norm(x, 2)²`.
pub fn trace_inner(x: &CMatrix, y: &CMatrix) -> f64 {
    assert_eq!(x.shape(), y.shape(), "trace_inner: shape mismatch");
    let n = x.nrows() as f64;
    x.iter()
        .zip(y.iter())
        .map(|(a, b)| (b.conj() * a).re)
        .sum::<f64>()
        / n
}

/// Singular values of `x` in descending order.
pub fn singular_values(x: &CMatrix) -> Vec<f64> {
    let sv = x.clone().singular_values();
    let mut out: Vec<f64> = sv.iter().copied().collect();
    out.sort_by(|a, b| b.partial_cmp(a).expect("singular values are finite"));
    out
}

/// Operator norm: the largest singular value.
pub fn uniform_norm(x: &CMatrix) -> f64 {
    x.clone()
        .singular_values()
        .iter()
        .copied()
        .fold(0.0, f64::max)
}

/// Schatten norm `‖x‖_p = (τ|x|^p)^{1/p}` for real p ≥ 1.
pub fn p_norm(x: &CMatrix, p: f64) -> f64 {
    assert!(p >= 1.0, "p_norm requires p >= 1, got {p}");
    let n = x.nrows() as f64;
    let sum: f64 = x
        .clone()
        .singular_values()
        .iter()
        .map(|s| s.powf(p))
        .sum();
    (sum / n).powf(1.0 / p)
}

/// Commutator ab − ba.
pub fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b - b * a
}

/// Hermitian part (x + x*)/2.
pub(crate) fn hermitian_part(x: &CMatrix) -> CMatrix {
    (x + x.adjoint()).scale(0.5)
}

/// Skew-adjoint part (x − x*)/2.
pub fn skew_part(x: &CMatrix) -> CMatrix {
    (x - x.adjoint()).scale(0.5)
}

/// Small integer matrix power by repeated multiplication.
pub(crate) fn mat_pow(a: &CMatrix, k: usize) -> CMatrix {
    let n = a.nrows();
    let mut out = CMatrix::identity(n, n);
    for _ in 0..k {
        out = &out * a;
    }
    out
}

/// Shared singular value decomposition x = U Σ V*.
///
/// One factorization serves both polar factors and every function of |x| or
/// |x*|, which keeps the per-stage cost of the momentum flow at a single SVD.
pub(crate) struct SingularTriplets {
    pub u: CMatrix,
    pub sigma: Vec<f64>,
    pub v_t: CMatrix,
}

impl SingularTriplets {
    pub fn of(x: &CMatrix) -> Self {
        let svd = x.clone().svd(true, true);
        SingularTriplets {
            u: svd.u.expect("svd requested u"),
            sigma: svd.singular_values.iter().copied().collect(),
            v_t: svd.v_t.expect("svd requested v_t"),
        }
    }

    pub fn sigma_max(&self) -> f64 {
        self.sigma.iter().copied().fold(0.0, f64::max)
    }

    /// U f(Σ) V*.
    pub fn map_outer(&self, f: impl Fn(f64) -> f64) -> CMatrix {
        let d = DVector::from_iterator(self.sigma.len(), self.sigma.iter().map(|&s| cr(f(s))));
        &self.u * CMatrix::from_diagonal(&d) * &self.v_t
    }

    /// f(|x|) = V f(Σ) V*.
    pub fn map_modulus(&self, f: impl Fn(f64) -> f64) -> CMatrix {
        let d = DVector::from_iterator(self.sigma.len(), self.sigma.iter().map(|&s| cr(f(s))));
        self.v_t.adjoint() * CMatrix::from_diagonal(&d) * &self.v_t
    }

    /// f(|x*|) = U f(Σ) U*.
    pub fn map_comodulus(&self, f: impl Fn(f64) -> f64) -> CMatrix {
        let d = DVector::from_iterator(self.sigma.len(), self.sigma.iter().map(|&s| cr(f(s))));
        &self.u * CMatrix::from_diagonal(&d) * self.u.adjoint()
    }
}

/// Positive semidefinite matrix with its spectral decomposition cached.
///
/// Eigenvalues are stored in descending order; slightly negative values
/// (within `TOL_PSD` relative) are clamped to zero at construction.
#[derive(Clone, Debug)]
pub struct PositiveMatrix {
    mat: CMatrix,
    eigenvalues: Vec<f64>,
    eigenvectors: CMatrix,
}

impl PositiveMatrix {
    /// Validates Hermitian symmetry and positivity within the crate tolerances.
    pub fn new(a: CMatrix) -> Result<Self> {
        if a.nrows() != a.ncols() {
            return Err(Error::DimensionMismatch(a.nrows(), a.ncols(), a.nrows(), a.nrows()));
        }
        let scale = uniform_norm(&a);
        let herm_tol = TOL_HERM * (1.0 + scale);
        let asymmetry = uniform_norm(&(&a - a.adjoint()));
        if asymmetry > herm_tol {
            return Err(Error::NotHermitian { asymmetry, tol: herm_tol });
        }
        let psd_tol = TOL_PSD * (1.0 + scale);
        let (vals, vecs) = hermitian_eigen(&hermitian_part(&a));
        if let Some(&min) = vals.last() {
            if min < -psd_tol {
                return Err(Error::NotPositive { eigenvalue: min, tol: psd_tol });
            }
        }
        let clamped: Vec<f64> = vals.into_iter().map(|l| l.max(0.0)).collect();
        Ok(Self::from_eigen(clamped, vecs))
    }

    /// Nearest positive part: hermitizes and clamps *all* negative eigenvalues.
    ///
    /// Used inside integrator stages, where transient O(step) negativity near
    /// a kernel is expected and must not abort the flow.
    pub(crate) fn nearest(a: &CMatrix) -> Self {
        let (vals, vecs) = hermitian_eigen(&hermitian_part(a));
        let clamped: Vec<f64> = vals.into_iter().map(|l| l.max(0.0)).collect();
        Self::from_eigen(clamped, vecs)
    }

    /// From a known spectral decomposition (descending λ ≥ 0, unitary columns).
    pub(crate) fn from_eigen(eigenvalues: Vec<f64>, eigenvectors: CMatrix) -> Self {
        let d = DVector::from_iterator(eigenvalues.len(), eigenvalues.iter().map(|&l| cr(l)));
        let mat = &eigenvectors * CMatrix::from_diagonal(&d) * eigenvectors.adjoint();
        PositiveMatrix { mat, eigenvalues, eigenvectors }
    }

    /// The modulus |x| = √(x*x), computed from the singular values of x.
    pub fn modulus_of(x: &CMatrix) -> Self {
        let t = SingularTriplets::of(x);
        let v = t.v_t.adjoint();
        let mut pairs: Vec<(f64, usize)> =
            t.sigma.iter().copied().zip(0..t.sigma.len()).collect();
        pairs.sort_by(|a, b| b.0.partial_cmp(&a.0).expect("finite"));
        let vals: Vec<f64> = pairs.iter().map(|p| p.0).collect();
        let n = v.nrows();
        let vecs = CMatrix::from_fn(n, n, |r, c| v[(r, pairs[c].1)]);
        Self::from_eigen(vals, vecs)
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> CMatrix {
        self.mat
    }

    /// Eigenvalues in descending order (all ≥ 0).
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Unitary matrix whose columns are the eigenvectors, ordered to match
    /// [`Self::eigenvalues`].
    pub fn eigenvectors(&self) -> &CMatrix {
        &self.eigenvectors
    }

    /// Same eigenvectors, eigenvalues raised to r > 0 (with 0^r := 0).
    pub fn power(&self, r: f64) -> PositiveMatrix {
        assert!(r > 0.0, "power requires a positive exponent, got {r}");
        let vals: Vec<f64> = self
            .eigenvalues
            .iter()
            .map(|&l| if l > 0.0 { l.powf(r) } else { 0.0 })
            .collect();
        Self::from_eigen(vals, self.eigenvectors.clone())
    }
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues descending.
fn hermitian_eigen(h: &CMatrix) -> (Vec<f64>, CMatrix) {
    let se = SymmetricEigen::new(h.clone());
    let n = se.eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        se.eigenvalues[j]
            .partial_cmp(&se.eigenvalues[i])
            .expect("eigenvalues are finite")
    });
    let vals: Vec<f64> = order.iter().map(|&i| se.eigenvalues[i]).collect();
    let vecs = CMatrix::from_fn(n, n, |r, c| se.eigenvectors[(r, order[c])]);
    (vals, vecs)
}

/// Polar factorization x = Ω·|x| with Ω vanishing on the kernel of |x|.
#[derive(Clone, Debug)]
pub struct PolarFactors {
    /// Partial isometry from range(|x|) onto range(x); unitary when x is
    /// invertible.
    pub omega: CMatrix,
    /// The positive factor |x| = √(x*x).
    pub modulus: PositiveMatrix,
}

/// Polar decomposition via SVD. Singular values below `TOL_RANK·σ_max` are
/// treated as exactly zero, so Ω is built only from the retained triplets.
pub fn polar_decompose(x: &CMatrix) -> PolarFactors {
    let t = SingularTriplets::of(x);
    let cutoff = TOL_RANK * t.sigma_max();
    let omega = t.map_outer(|s| if s > cutoff && s > 0.0 { 1.0 } else { 0.0 });
    let modulus = PositiveMatrix::modulus_of(x);
    PolarFactors { omega, modulus }
}

/// Matrix exponential by scaling and squaring of the Taylor series.
///
/// Relative accuracy ~1e-14 for `uniform_norm(x)` up to ~10.
pub fn expm(x: &CMatrix) -> CMatrix {
    let n = x.nrows();
    let norm = x.norm(); // Frobenius bounds the spectral norm from above
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as i32
    } else {
        0
    };
    let scaled = x.scale(0.5f64.powi(squarings));
    let mut term = CMatrix::identity(n, n);
    let mut sum = CMatrix::identity(n, n);
    for k in 1..=48u32 {
        term = (&term * &scaled).scale(1.0 / k as f64);
        sum += &term;
        if term.norm() <= 1e-17 * sum.norm() {
            break;
        }
    }
    let mut out = sum;
    for _ in 0..squarings {
        out = &out * &out;
    }
    out
}

/// Principal matrix logarithm by inverse scaling and squaring.
///
/// Requires an invertible argument with no eigenvalue on `(-inf, 0]`; the
/// result has eigenvalue imaginary parts in (−π, π) and satisfies
/// `expm(logm_principal(g)) = g` to roundoff.
pub fn logm_principal(g: &CMatrix) -> Result<CMatrix> {
    let n = g.nrows();
    let eigs = g
        .clone()
        .eigenvalues()
        .ok_or_else(|| Error::Numerical("eigenvalue computation failed".into()))?;
    let max_abs = eigs.iter().map(|z| z.norm()).fold(0.0, f64::max);
    for z in eigs.iter() {
        if z.norm() <= TOL_RANK * max_abs {
            return Err(Error::Singular { cond: f64::INFINITY });
        }
        if z.re < 0.0 && z.im.abs() <= 1e-12 * z.norm() {
            return Err(Error::BranchCut { re: z.re, im: z.im });
        }
    }

    let id = CMatrix::identity(n, n);
    let mut a = g.clone();
    let mut halvings = 0i32;
    while (&a - &id).norm() > 0.25 {
        a = sqrtm(&a)?;
        halvings += 1;
        if halvings > 90 {
            return Err(Error::Numerical("matrix logarithm did not contract".into()));
        }
    }

    // Mercator series log(1 + e) = Σ (−1)^{m+1} e^m / m for ‖e‖ ≤ 1/4.
    let e = &a - &id;
    let mut power = e.clone();
    let mut sum = e.clone();
    for m in 2..=80usize {
        power = &power * &e;
        let sign = if m % 2 == 0 { -1.0 } else { 1.0 };
        let term = power.scale(sign / m as f64);
        sum += &term;
        if term.norm() <= 1e-17 * (1.0 + sum.norm()) {
            break;
        }
    }
    Ok(sum.scale(2f64.powi(halvings)))
}

/// Principal square root by the Denman–Beavers iteration.
fn sqrtm(a: &CMatrix) -> Result<CMatrix> {
    let n = a.nrows();
    let mut y = a.clone();
    let mut z = CMatrix::identity(n, n);
    for _ in 0..80 {
        let y_inv = y
            .clone()
            .try_inverse()
            .ok_or(Error::Singular { cond: f64::INFINITY })?;
        let z_inv = z
            .clone()
            .try_inverse()
            .ok_or(Error::Singular { cond: f64::INFINITY })?;
        let y_next = (&y + &z_inv).scale(0.5);
        let z_next = (&z + &y_inv).scale(0.5);
        let delta = (&y_next - &y).norm();
        y = y_next;
        z = z_next;
        if delta <= 1e-15 * (1.0 + y.norm()) {
            break;
        }
    }
    let check = (&y * &y - a).norm();
    if check > 1e-9 * (1.0 + a.norm()) {
        return Err(Error::Numerical(format!(
            "matrix square root failed to converge (defect {check:.3e})"
        )));
    }
    Ok(y)
}

/// Eigenvalues of a positive matrix grouped into clusters.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
    multiplicities: Vec<usize>,
}

impl Spectrum {
    /// Strictly decreasing cluster representatives.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Cluster sizes, aligned with [`Self::eigenvalues`]; they sum to N.
    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    /// The multiplicity signature used for stability comparisons.
    pub fn signature(&self) -> &[usize] {
        &self.multiplicities
    }
}

/// Clusters the eigenvalues of `a`: two consecutive (sorted) eigenvalues fall
/// in the same cluster when their gap is at most `cluster_tol · λ_max`. The
/// representative of a cluster is the mean of its members.
pub fn spectrum_of(a: &PositiveMatrix, cluster_tol: f64) -> Spectrum {
    cluster_values(a.eigenvalues(), cluster_tol)
}

/// Clustering on a plain descending list of non-negative values.
pub(crate) fn cluster_values(sorted_desc: &[f64], cluster_tol: f64) -> Spectrum {
    assert!(!sorted_desc.is_empty(), "cannot cluster an empty spectrum");
    let scale = sorted_desc[0];
    let threshold = cluster_tol * scale;
    let mut eigenvalues = Vec::new();
    let mut multiplicities = Vec::new();
    let mut start = 0usize;
    for i in 1..=sorted_desc.len() {
        let split = i == sorted_desc.len() || sorted_desc[i - 1] - sorted_desc[i] > threshold;
        if split {
            let members = &sorted_desc[start..i];
            eigenvalues.push(members.iter().sum::<f64>() / members.len() as f64);
            multiplicities.push(members.len());
            start = i;
        }
    }
    Spectrum { eigenvalues, multiplicities }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn diag(entries: &[Complex<f64>]) -> CMatrix {
        let d = DVector::from_iterator(entries.len(), entries.iter().copied());
        CMatrix::from_diagonal(&d)
    }

    #[test]
    fn normalized_trace_of_identity_is_one() {
        for n in 1..=5 {
            assert_eq!(normalized_trace(&CMatrix::identity(n, n)), 1.0);
        }
    }

    #[test]
    fn normalized_trace_of_imaginary_identity_is_zero() {
        let m = CMatrix::identity(3, 3) * cx(0.0, 1.0);
        assert_eq!(normalized_trace(&m), 0.0);
    }

    #[test]
    fn normalized_trace_diagonal() {
        let m = diag(&[cr(1.0), cr(3.0)]);
        assert_eq!(normalized_trace(&m), 2.0);
    }

    #[test]
    fn p_norm_basics() {
        let zero = CMatrix::zeros(3, 3);
        assert_eq!(p_norm(&zero, 4.0), 0.0);
        for p in [1.0, 2.0, 4.0, 7.5] {
            assert_relative_eq!(p_norm(&CMatrix::identity(4, 4), p), 1.0, epsilon = 1e-14);
        }
        // singular values {0, 2}: ‖x‖₄ = (2⁴/2)^{1/4} = 8^{1/4}
        let m = diag(&[cr(0.0), cr(2.0)]);
        assert_relative_eq!(p_norm(&m, 4.0), 8f64.powf(0.25), epsilon = 1e-14);
    }

    #[test]
    fn trace_inner_examples() {
        let id = CMatrix::identity(2, 2);
        assert_relative_eq!(trace_inner(&id, &id), 1.0);
        // x self-adjoint, y = i·x: Re(i tr(x²)) = 0
        let x = CMatrix::from_row_slice(2, 2, &[cr(1.0), cx(0.0, 1.0), cx(0.0, -1.0), cr(2.0)]);
        let y = x.clone() * cx(0.0, 1.0);
        assert_relative_eq!(trace_inner(&x, &y), 0.0, epsilon = 1e-15);
        // disjoint supports
        let a = diag(&[cr(1.0), cr(0.0)]);
        let b = diag(&[cr(0.0), cr(1.0)]);
        assert_eq!(trace_inner(&a, &b), 0.0);
        // consistency with the 2-norm
        assert_relative_eq!(trace_inner(&x, &x), p_norm(&x, 2.0).powi(2), epsilon = 1e-13);
    }

    #[test]
    fn polar_of_invertible_has_unitary_factor() {
        let m = CMatrix::from_row_slice(
            2,
            2,
            &[cx(1.0, 0.3), cx(-0.2, 1.1), cx(0.5, 0.0), cx(2.0, -0.4)],
        );
        let pf = polar_decompose(&m);
        let gram = pf.omega.adjoint() * &pf.omega;
        assert!((gram - CMatrix::identity(2, 2)).norm() < 1e-12);
        let recon = &pf.omega * pf.modulus.matrix();
        assert!((recon - &m).norm() < 1e-12);
    }

    #[test]
    fn polar_of_nilpotent_shift() {
        // x = [[0,2],[0,0]] → Ω = [[0,1],[0,0]], |x| = diag(0,2)
        let m = CMatrix::from_row_slice(2, 2, &[cr(0.0), cr(2.0), cr(0.0), cr(0.0)]);
        let pf = polar_decompose(&m);
        let omega_expect = CMatrix::from_row_slice(2, 2, &[cr(0.0), cr(1.0), cr(0.0), cr(0.0)]);
        assert!((pf.omega.clone() - omega_expect).norm() < 1e-12);
        let modulus_expect = diag(&[cr(0.0), cr(2.0)]);
        assert!((pf.modulus.matrix() - modulus_expect).norm() < 1e-12);
        assert!((&pf.omega * pf.modulus.matrix() - &m).norm() < 1e-12);
    }

    #[test]
    fn polar_of_zero_is_zero() {
        let pf = polar_decompose(&CMatrix::zeros(3, 3));
        assert_eq!(pf.omega.norm(), 0.0);
        assert_eq!(pf.modulus.matrix().norm(), 0.0);
    }

    #[test]
    fn positive_power_scalar_case() {
        let a = PositiveMatrix::new(diag(&[cr(4.0), cr(9.0)])).unwrap();
        let r = a.power(0.5);
        assert!((r.matrix() - diag(&[cr(2.0), cr(3.0)])).norm() < 1e-12);
        let same = a.power(1.0);
        assert!((same.matrix() - a.matrix()).norm() < 1e-12);
        let id = PositiveMatrix::new(CMatrix::identity(3, 3)).unwrap();
        assert!((id.power(0.37).matrix() - CMatrix::identity(3, 3)).norm() < 1e-13);
    }

    #[test]
    fn positive_rejects_non_hermitian_and_negative() {
        let m = CMatrix::from_row_slice(2, 2, &[cr(1.0), cr(1.0), cr(0.0), cr(1.0)]);
        assert!(matches!(PositiveMatrix::new(m), Err(Error::NotHermitian { .. })));
        let neg = diag(&[cr(1.0), cr(-0.5)]);
        assert!(matches!(PositiveMatrix::new(neg), Err(Error::NotPositive { .. })));
        // a tiny negative eigenvalue is clamped
        let tiny = diag(&[cr(1.0), cr(-1e-12)]);
        let a = PositiveMatrix::new(tiny).unwrap();
        assert_eq!(a.eigenvalues()[1], 0.0);
    }

    #[test]
    fn expm_basics() {
        assert!((expm(&CMatrix::zeros(3, 3)) - CMatrix::identity(3, 3)).norm() < 1e-15);
        let d = diag(&[cr(1.2), cx(0.0, 2.0)]);
        let e = expm(&d);
        let expect = diag(&[cr(1.2f64.exp()), cx(0.0, 2.0).exp()]);
        assert!((e - expect).norm() < 1e-13);
        // nilpotent: series terminates
        let nilp = CMatrix::from_row_slice(2, 2, &[cr(0.0), cr(1.0), cr(0.0), cr(0.0)]);
        let expect = CMatrix::identity(2, 2) + &nilp;
        assert!((expm(&nilp) - expect).norm() < 1e-15);
    }

    #[test]
    fn expm_inverse_identity() {
        let m = CMatrix::from_row_slice(
            3,
            3,
            &[
                cx(0.3, 0.1),
                cx(-1.0, 0.4),
                cr(2.0),
                cx(0.0, -0.7),
                cr(0.5),
                cx(1.0, 1.0),
                cr(-0.3),
                cx(0.2, 0.2),
                cx(-0.5, 0.9),
            ],
        );
        let prod = expm(&m) * expm(&m.clone().scale(-1.0));
        assert!((prod - CMatrix::identity(3, 3)).norm() < 1e-12);
    }

    #[test]
    fn logm_diagonal() {
        assert!(logm_principal(&CMatrix::identity(4, 4)).unwrap().norm() < 1e-14);
        let g = diag(&[cr(2f64.exp()), cr((-1f64).exp())]);
        let l = logm_principal(&g).unwrap();
        assert!((l - diag(&[cr(2.0), cr(-1.0)])).norm() < 1e-12);
    }

    #[test]
    fn logm_branch_cut_detected() {
        let g = diag(&[cr(-1.0), cr(2.0)]);
        assert!(matches!(logm_principal(&g), Err(Error::BranchCut { .. })));
        let s = diag(&[cr(0.0), cr(2.0)]);
        assert!(matches!(logm_principal(&s), Err(Error::Singular { .. })));
    }

    #[test]
    fn spectrum_clustering() {
        let id = PositiveMatrix::new(CMatrix::identity(3, 3)).unwrap();
        let s = spectrum_of(&id, 1e-10);
        assert_eq!(s.eigenvalues(), &[1.0]);
        assert_eq!(s.multiplicities(), &[3]);

        let a = PositiveMatrix::new(diag(&[cr(2.0), cr(2.0 + 1e-14), cr(5.0)])).unwrap();
        let s = spectrum_of(&a, 1e-10);
        assert_eq!(s.multiplicities(), &[1, 2]);
        assert_relative_eq!(s.eigenvalues()[0], 5.0);
        assert_relative_eq!(s.eigenvalues()[1], 2.0, epsilon = 1e-12);

        let b = PositiveMatrix::new(diag(&[cr(0.0), cr(1.0)])).unwrap();
        let s = spectrum_of(&b, 1e-10);
        assert_eq!(s.eigenvalues(), &[1.0, 0.0]);
        assert_eq!(s.multiplicities(), &[1, 1]);

        let z = PositiveMatrix::new(CMatrix::zeros(2, 2)).unwrap();
        let s = spectrum_of(&z, 1e-10);
        assert_eq!(s.multiplicities(), &[2]);
    }
}
