//! Thin helpers over nalgebra used across modules.

use nalgebra::ComplexField;
use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::num::{creal, Real, C};

pub type CMatrix<T> = DMatrix<C<T>>;
pub type CVector<T> = DVector<C<T>>;

/// Eigenvalues (ascending) and matching eigenvector columns of a Hermitian matrix.
///
/// Only the Hermitian part of `m` is used.
pub fn eigh<T: Real>(m: &CMatrix<T>) -> (Vec<T>, CMatrix<T>) {
    let herm = hermitian_part(m);
    let eig = SymmetricEigen::new(herm);
    sort_eigen(eig.eigenvalues.iter().copied().collect(), eig.eigenvectors)
}

/// Real symmetric counterpart of [`eigh`].
pub fn eigh_real<T: Real>(m: &DMatrix<T>) -> (Vec<T>, DMatrix<T>) {
    let sym = (m + m.transpose()) * T::lit(0.5);
    let eig = SymmetricEigen::new(sym);
    sort_eigen(eig.eigenvalues.iter().copied().collect(), eig.eigenvectors)
}

fn sort_eigen<T: Real, S: nalgebra::Scalar>(values: Vec<T>, vectors: DMatrix<S>) -> (Vec<T>, DMatrix<S>) {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).expect("eigenvalue is NaN"));
    let sorted = order.iter().map(|&i| values[i]).collect();
    let vecs = DMatrix::from_fn(vectors.nrows(), vectors.ncols(), |r, c| vectors[(r, order[c])].clone());
    (sorted, vecs)
}

/// Eigenvalues only, ascending.
pub fn eigvalsh<T: Real>(m: &CMatrix<T>) -> Vec<T> {
    let mut vals: Vec<T> = hermitian_part(m).symmetric_eigenvalues().iter().copied().collect();
    vals.sort_by(|a, b| a.partial_cmp(b).expect("eigenvalue is NaN"));
    vals
}

pub fn hermitian_part<T: Real>(m: &CMatrix<T>) -> CMatrix<T> {
    (m + m.adjoint()) * creal(T::lit(0.5))
}

/// Singular values sorted in descending order.
pub fn singular_values<T: Real>(m: &CMatrix<T>) -> Vec<T> {
    let mut sv: Vec<T> = m.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.partial_cmp(a).expect("singular value is NaN"));
    sv
}

/// Numerical rank: singular values above `rel_tol` times the largest.
pub fn rank_relative<T: Real>(m: &CMatrix<T>, rel_tol: T) -> usize {
    let sv = singular_values(m);
    match sv.first() {
        Some(&top) if top > T::zero() => sv.iter().filter(|&&s| s > rel_tol * top).count(),
        _ => 0,
    }
}

pub fn kron<T: Real>(a: &CMatrix<T>, b: &CMatrix<T>) -> CMatrix<T> {
    a.kronecker(b)
}

pub fn identity<T: Real>(d: usize) -> CMatrix<T> {
    CMatrix::identity(d, d)
}

/// Frobenius norm of `U†U − 𝕀`.
pub fn unitarity_defect<T: Real>(u: &CMatrix<T>) -> T {
    let n = u.ncols();
    (u.adjoint() * u - identity::<T>(n)).norm()
}

/// Largest elementwise modulus of `M − M†`.
pub fn hermiticity_defect<T: Real>(m: &CMatrix<T>) -> T {
    let diff = m - m.adjoint();
    diff.iter().fold(T::zero(), |acc, z| acc.max(z.modulus()))
}

pub fn to_complex<T: Real>(m: &DMatrix<T>) -> CMatrix<T> {
    m.map(creal)
}

/// Orthonormal basis that starts with the (normalized) `first` vector and is
/// completed from the standard basis.
///
/// Candidates whose residual after projection falls below `skip_tol` are
/// skipped. Each accepted vector is orthogonalized twice (classical
/// Gram–Schmidt with reorthogonalization).
pub fn complete_basis<T: Real>(first: &CVector<T>, skip_tol: T) -> CMatrix<T> {
    let d = first.len();
    let mut basis: Vec<CVector<T>> = Vec::with_capacity(d);
    basis.push(first.normalize());
    for k in 0..d {
        if basis.len() == d {
            break;
        }
        let mut v = CVector::<T>::zeros(d);
        v[k] = creal(T::one());
        for _ in 0..2 {
            for b in &basis {
                let proj = b.dotc(&v);
                v -= b * proj;
            }
        }
        let n = v.norm();
        if n < skip_tol {
            continue;
        }
        basis.push(v / creal(n));
    }
    assert_eq!(basis.len(), d, "standard basis always completes the span");
    CMatrix::from_columns(&basis)
}
