//! Dense eigen and least-squares helpers on top of nalgebra.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::lie::{CMat, Complex64};

/// Eigen-decomposition of a Hermitian matrix with eigenvalues in
/// decreasing order; columns of the returned matrix are the eigenvectors.
pub fn hermitian_eigen(m: &CMat) -> (Vec<f64>, CMat) {
    let herm = (m + m.adjoint()) * Complex64::from(0.5);
    let eig = SymmetricEigen::new(herm);
    let n = m.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = CMat::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
    (values, vectors)
}

/// Eigenvalues of a Hermitian matrix, decreasing.
pub fn hermitian_spectrum(m: &CMat) -> Vec<f64> {
    let herm = (m + m.adjoint()) * Complex64::from(0.5);
    let mut values: Vec<f64> = herm.symmetric_eigenvalues().iter().copied().collect();
    values.sort_by(|a, b| b.total_cmp(a));
    values
}

/// Spectrum of an anti-Hermitian matrix `Z = iH`, reported as the
/// (decreasing) eigenvalues of `H = -iZ`.
pub fn anti_hermitian_spectrum(z: &CMat) -> Vec<f64> {
    hermitian_spectrum(&(z * Complex64::new(0.0, -1.0)))
}

/// Minimal gap between consecutive entries of a sorted list.
pub fn min_gap(sorted: &[f64]) -> f64 {
    sorted.windows(2).map(|w| (w[0] - w[1]).abs()).fold(f64::INFINITY, f64::min)
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Minimum-norm least-squares solution of `A x = b` together with the
/// residual `|A x - b|`.
pub fn least_squares(a: &DMatrix<f64>, b: &DVector<f64>) -> (DVector<f64>, f64) {
    let svd = a.clone().svd(true, true);
    let cutoff = 1e-12 * svd.singular_values.max().max(f64::MIN_POSITIVE);
    let x = svd.solve(b, cutoff).expect("both factors were computed");
    let residual = (a * &x - b).norm();
    (x, residual)
}

/// Numerical rank with a relative singular-value cutoff.
pub fn rank(a: &DMatrix<f64>, rel_tol: f64) -> usize {
    let sv = a.singular_values();
    let top = sv.max();
    if top == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > rel_tol * top).count()
}

/// Stacks `[Re M; Im M]` (column-major) into one real vector.
pub fn realify(m: &CMat) -> DVector<f64> {
    let len = m.len();
    DVector::from_fn(2 * len, |k, _| if k < len { m[k].re } else { m[k - len].im })
}
