//! Thin wrappers over nalgebra factorizations with deterministic ordering.

use nalgebra::DMatrix;

use crate::{Complex64, Error, Result};

/// Singular values sorted in non-increasing order.
pub fn singular_values_desc(m: &DMatrix<Complex64>) -> Vec<f64> {
    let mut sv: Vec<f64> = m.clone().singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

/// Numerical rank by a relative singular-value cutoff. An identically zero
/// matrix has rank 0.
pub fn relative_rank(m: &DMatrix<Complex64>, rel_tol: f64) -> (usize, Vec<f64>) {
    let sv = singular_values_desc(m);
    let smax = sv.first().copied().unwrap_or(0.0);
    if smax == 0.0 {
        return (0, sv);
    }
    let rank = sv.iter().filter(|&&s| s > rel_tol * smax).count();
    (rank, sv)
}

/// Hermitian eigendecomposition with eigenpairs sorted by non-increasing
/// eigenvalue.
pub fn hermitian_eigen_desc(m: &DMatrix<Complex64>) -> Result<(Vec<f64>, DMatrix<Complex64>)> {
    let eig = m
        .clone()
        .try_symmetric_eigen(f64::EPSILON, 10_000)
        .ok_or_else(|| Error::Numerics("hermitian eigendecomposition did not converge".into()))?;
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
    let values: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let n = m.nrows();
    let mut vectors = DMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    Ok((values, vectors))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex;

    #[test]
    fn rank_of_zero_matrix_is_zero() {
        let m = DMatrix::<Complex64>::zeros(3, 4);
        let (rank, _) = relative_rank(&m, 1e-9);
        assert_eq!(rank, 0);
    }

    #[test]
    fn hermitian_eigen_is_sorted() {
        let i = Complex::new(0.0, 1.0);
        let m = DMatrix::from_row_slice(
            2,
            2,
            &[Complex::new(2.0, 0.0), i, -i, Complex::new(3.0, 0.0)],
        );
        let (vals, vecs) = hermitian_eigen_desc(&m).unwrap();
        assert!(vals[0] >= vals[1]);
        // residual ‖Mv − γv‖ per pair
        for (k, &val) in vals.iter().enumerate() {
            let v = vecs.column(k).clone_owned();
            let r = &m * &v - &v * Complex::new(val, 0.0);
            assert!(r.norm() < 1e-12);
        }
    }
}
