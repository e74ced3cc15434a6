//! Thin wrappers around the dense Hermitian eigensolver.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

/// Dense complex operator, used for unitaries and eigenvector bases.
pub type Operator = DMatrix<Complex64>;

/// Builds the symmetrized operator (A + A^dag)/2 from row-major entries.
pub(crate) fn symmetrized(dim: usize, entries: &[Complex64]) -> Operator {
    DMatrix::from_fn(dim, dim, |r, c| {
        (entries[r * dim + c] + entries[c * dim + r].conj()) * 0.5
    })
}

/// Eigenvalues of the symmetrized matrix, ascending.
pub(crate) fn hermitian_eigenvalues(dim: usize, entries: &[Complex64]) -> Vec<f64> {
    let mut vals: Vec<f64> = symmetrized(dim, entries)
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .collect();
    vals.sort_by(f64::total_cmp);
    vals
}

/// Eigenpairs of the symmetrized matrix; eigenvector `k` is column `k`.
pub(crate) fn hermitian_eigh(dim: usize, entries: &[Complex64]) -> (Vec<f64>, Operator) {
    let eig = SymmetricEigen::new(symmetrized(dim, entries));
    (eig.eigenvalues.iter().copied().collect(), eig.eigenvectors)
}

/// Kronecker product of two operators, left factor most significant.
pub fn kron(a: &Operator, b: &Operator) -> Operator {
    a.kronecker(b)
}
