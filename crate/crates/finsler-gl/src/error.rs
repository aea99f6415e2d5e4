//! Error type shared by the whole crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}x{1} vs {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),

    #[error("matrix is not Hermitian: asymmetry {asymmetry:.3e} exceeds {tol:.3e}")]
    NotHermitian { asymmetry: f64, tol: f64 },

    #[error("matrix is not positive semidefinite: eigenvalue {eigenvalue:.3e} below -{tol:.3e}")]
    NotPositive { eigenvalue: f64, tol: f64 },

    #[error("matrix is singular or too ill-conditioned (condition number {cond:.3e})")]
    Singular { cond: f64 },

    #[error("eigenvalue {re:.6e}{im:+.6e}i lies on the branch cut (-inf, 0] of the principal logarithm")]
    BranchCut { re: f64, im: f64 },

    #[error("matrix is not normal: ‖vv* - v*v‖ = {defect:.3e} exceeds {tol:.3e}")]
    NotNormal { defect: f64, tol: f64 },

    #[error("matrix is not a partial isometry: ‖(v*v)² - v*v‖ = {defect:.3e} exceeds {tol:.3e}")]
    NotPartialIsometry { defect: f64, tol: f64 },

    #[error("matrix is not skew-adjoint: ‖K + K*‖ = {defect:.3e} exceeds {tol:.3e}")]
    NotSkewAdjoint { defect: f64, tol: f64 },

    #[error("metric exponent must be an even integer >= 2, got {0}")]
    InvalidExponent(u32),

    #[error("power exponent alpha must lie in (1/2, 1], got {0}")]
    InvalidAlpha(f64),

    #[error("coupling coefficient undefined for equal eigenvalues {0}")]
    EqualEigenvalues(f64),

    #[error("spectral index {index} out of range (frame has {count} positive eigenvalues)")]
    IndexOutOfRange { index: usize, count: usize },

    #[error("invalid integrator configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("integration failed: {0}")]
    IntegrationFailed(String),

    #[error("group element drifted to singularity at node {node} (condition number {cond:.3e})")]
    SingularDrift { node: usize, cond: f64 },

    #[error("spectral frame break: {0}")]
    FrameBreak(String),

    #[error("boundary-value solver did not converge: best residual {residual:.3e} after {iters} iterations")]
    NonConvergence { residual: f64, iters: usize },

    #[error("numerical failure: {0}")]
    Numerical(String),
}
