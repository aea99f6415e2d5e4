//! Points of the invertible group GL(N).

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, TOL_RANK};

/// An invertible N×N complex matrix.
///
/// Construction checks that the smallest singular value exceeds
/// `TOL_RANK · σ_max`, so the inverse is always well defined.
#[derive(Clone, Debug)]
pub struct GroupElement {
    mat: CMatrix,
}

impl GroupElement {
    pub fn new(mat: CMatrix) -> Result<Self> {
        if mat.nrows() != mat.ncols() || mat.nrows() == 0 {
            return Err(Error::DimensionMismatch(mat.nrows(), mat.ncols(), mat.nrows(), mat.nrows()));
        }
        if mat.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Numerical("group element has non-finite entries".into()));
        }
        let cond = condition_number(&mat);
        if !(cond < 1.0 / TOL_RANK) {
            return Err(Error::Singular { cond });
        }
        Ok(GroupElement { mat })
    }

    pub fn identity(n: usize) -> Self {
        GroupElement { mat: CMatrix::identity(n, n) }
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

    pub fn inverse(&self) -> CMatrix {
        self.mat
            .clone()
            .try_inverse()
            .expect("validated invertible at construction")
    }
}

/// Ratio of extreme singular values; infinite for a rank-deficient matrix.
pub fn condition_number(m: &CMatrix) -> f64 {
    let sv = m.clone().singular_values();
    let max = sv.iter().copied().fold(0.0, f64::max);
    let min = sv.iter().copied().fold(f64::INFINITY, f64::min);
    if min <= 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::cr;

    #[test]
    fn rejects_singular() {
        let m = CMatrix::from_row_slice(2, 2, &[cr(1.0), cr(0.0), cr(0.0), cr(0.0)]);
        assert!(matches!(GroupElement::new(m), Err(Error::Singular { .. })));
    }

    #[test]
    fn identity_inverse() {
        let g = GroupElement::identity(3);
        assert_eq!(g.inverse(), CMatrix::identity(3, 3));
    }
}
