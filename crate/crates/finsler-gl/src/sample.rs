//! Seeded random matrix models used by the verification suite and tests.
//!
//! The base model has independent standard complex Gaussian entries scaled
//! by 1/√N, which keeps `‖x‖₂` of order one across dimensions; the other
//! generators are projections of it onto the structured classes.

use nalgebra::Complex;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::{cr, polar_decompose, CMatrix};

/// Deterministic generator for a given seed.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent standard complex Gaussian entries scaled by 1/√N.
pub fn complex_gaussian(n: usize, rng: &mut impl Rng) -> CMatrix {
    let scale = 1.0 / (2.0 * n as f64).sqrt();
    CMatrix::from_fn(n, n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex::new(re * scale, im * scale)
    })
}

/// Hermitian projection of the Gaussian model.
pub fn self_adjoint(n: usize, rng: &mut impl Rng) -> CMatrix {
    let x = complex_gaussian(n, rng);
    (&x + x.adjoint()).scale(0.5)
}

/// Skew-adjoint projection of the Gaussian model.
pub fn skew_adjoint(n: usize, rng: &mut impl Rng) -> CMatrix {
    let x = complex_gaussian(n, rng);
    (&x - x.adjoint()).scale(0.5)
}

/// Haar-like unitary: the polar factor of a Gaussian sample.
pub fn unitary(n: usize, rng: &mut impl Rng) -> CMatrix {
    polar_decompose(&complex_gaussian(n, rng)).omega
}

/// A normal matrix U·diag(λ)·U* with Gaussian complex eigenvalues.
pub fn normal_matrix(n: usize, rng: &mut impl Rng) -> CMatrix {
    let u = unitary(n, rng);
    let d = CMatrix::from_fn(n, n, |i, j| {
        if i == j {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex::new(re, im)
        } else {
            Complex::new(0.0, 0.0)
        }
    });
    &u * d * u.adjoint()
}

/// A partial isometry of the given rank: Σ_{i<rank} u_i v_i* for
/// independent random unitaries U, V.
pub fn partial_isometry(n: usize, rank: usize, rng: &mut impl Rng) -> CMatrix {
    assert!(rank <= n);
    let u = unitary(n, rng);
    let v = unitary(n, rng);
    let d = CMatrix::from_fn(n, n, |i, j| {
        if i == j && i < rank {
            cr(1.0)
        } else {
            cr(0.0)
        }
    });
    &u * d * v.adjoint()
}

/// A positive matrix with eigenvalues spread in [lo, hi].
pub fn positive(n: usize, lo: f64, hi: f64, rng: &mut impl Rng) -> CMatrix {
    assert!(0.0 <= lo && lo <= hi);
    let u = unitary(n, rng);
    let d = CMatrix::from_fn(n, n, |i, j| {
        if i == j {
            cr(rng.random_range(lo..=hi))
        } else {
            cr(0.0)
        }
    });
    &u * d * u.adjoint()
}

/// An invertible Gaussian sample (resampled until comfortably conditioned).
pub fn invertible(n: usize, rng: &mut impl Rng) -> CMatrix {
    loop {
        let x = complex_gaussian(n, rng);
        if crate::group::condition_number(&x) < 1e6 {
            return x;
        }
    }
}
