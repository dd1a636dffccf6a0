//! Thomas elimination for tridiagonal systems.

use crate::error::{Error, Result};

/// Pivots smaller than this (relative to the row's diagonal) count as zero.
const PIVOT_EPS: f64 = 1e-14;

/// Solves `sub[i]·x[i−1] + diag[i]·x[i] + sup[i]·x[i+1] = rhs[i]`.
///
/// `sub[0]` and `sup[n−1]` are ignored.
pub fn solve(sub: &[f64], diag: &[f64], sup: &[f64], rhs: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    assert!(n > 0 && sub.len() == n && sup.len() == n && rhs.len() == n);

    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];
    let mut pivot = diag[0];
    if !(pivot.abs() > PIVOT_EPS * diag[0].abs().max(1.0)) {
        return Err(Error::SingularSystem { row: 0 });
    }
    c[0] = sup[0] / pivot;
    d[0] = rhs[0] / pivot;
    for i in 1..n {
        pivot = diag[i] - sub[i] * c[i - 1];
        if !(pivot.abs() > PIVOT_EPS * diag[i].abs()) {
            return Err(Error::SingularSystem { row: i });
        }
        if i + 1 < n {
            c[i] = sup[i] / pivot;
        }
        d[i] = (rhs[i] - sub[i] * d[i - 1]) / pivot;
    }
    let mut x = d;
    for i in (0..n - 1).rev() {
        x[i] -= c[i] * x[i + 1];
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_system() {
        let n = 4;
        let x = solve(&[0.0; 4], &[1.0; 4], &[0.0; 4], &[1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(x.len(), n);
        assert_eq!(x, vec![1.0, 2.0, 3.0, 4.0]);
    }

    #[test]
    fn laplacian_against_dense_residual() {
        let n = 9;
        let sub = vec![-1.0; n];
        let diag = vec![2.5; n];
        let sup = vec![-1.0; n];
        let rhs: Vec<f64> = (0..n).map(|i| (i as f64).sin()).collect();
        let x = solve(&sub, &diag, &sup, &rhs).unwrap();
        for i in 0..n {
            let mut r = diag[i] * x[i] - rhs[i];
            if i > 0 {
                r += sub[i] * x[i - 1];
            }
            if i + 1 < n {
                r += sup[i] * x[i + 1];
            }
            assert!(r.abs() < 1e-13);
        }
    }

    #[test]
    fn singular_system_is_reported() {
        // [1 1; 1 1]
        let err = solve(&[0.0, 1.0], &[1.0, 1.0], &[1.0, 0.0], &[1.0, 1.0]).unwrap_err();
        assert!(matches!(err, Error::SingularSystem { row: 1 }));
        let err = solve(&[0.0], &[0.0], &[0.0], &[1.0]).unwrap_err();
        assert!(matches!(err, Error::SingularSystem { row: 0 }));
    }
}
