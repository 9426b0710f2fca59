//! Thin wrappers over nalgebra's symmetric/hermitian eigensolver.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Eigen-decomposition of the symmetric tridiagonal matrix with the given
/// diagonal and off-diagonal. Returns eigenvalues in ascending order and the
/// matching orthonormal eigenvectors as columns.
pub fn symmetric_tridiagonal_eigen(diag: &[f64], off: &[f64]) -> Result<(Vec<f64>, DMatrix<f64>)> {
    let n = diag.len();
    if n == 0 || off.len() + 1 != n {
        return Err(Error::Argument(format!(
            "tridiagonal shape mismatch: {} diagonal, {} off-diagonal entries",
            n,
            off.len()
        )));
    }
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = diag[i];
    }
    for (i, c) in off.iter().enumerate() {
        m[(i, i + 1)] = *c;
        m[(i + 1, i)] = *c;
    }
    let eig = SymmetricEigen::try_new(m, f64::EPSILON, 0).ok_or_else(|| {
        Error::Eigen(format!(
            "tridiagonal eigensolver did not converge (n = {n})"
        ))
    })?;
    Ok(sorted(eig.eigenvalues.as_slice(), &eig.eigenvectors))
}

fn sorted(values: &[f64], vectors: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let vals = order.iter().map(|&i| values[i]).collect();
    let vecs = DMatrix::from_fn(vectors.nrows(), vectors.ncols(), |r, c| {
        vectors[(r, order[c])]
    });
    (vals, vecs)
}

/// Ascending eigenvalues of a dense hermitian matrix.
pub fn hermitian_eigenvalues(m: DMatrix<Complex64>) -> Result<Vec<f64>> {
    let n = m.nrows();
    let eig = SymmetricEigen::try_new(m, f64::EPSILON, 0)
        .ok_or_else(|| Error::Eigen(format!("hermitian eigensolver did not converge (n = {n})")))?;
    let mut vals: Vec<f64> = eig.eigenvalues.iter().cloned().collect();
    vals.sort_by(f64::total_cmp);
    Ok(vals)
}
