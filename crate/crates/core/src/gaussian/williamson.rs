use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::linalg::{eigh, eigh_real, to_complex};
use crate::num::{cplx, Real};

use super::covariance::{CovarianceMatrix, GaussianState};
use super::symplectic::{symplectic_defect, symplectic_form, SymplecticMatrix};

/// Williamson normal form of a positive definite symmetric matrix:
/// returns `S` symplectic and `ν` descending with `S A Sᵀ = ⊕ νⱼ𝕀₂`.
///
/// With `K = A^{1/2}`, the Hermitian matrix `i·KΩK` has eigenpairs `±νⱼ`.
/// For the `+νⱼ` eigenvector `w = u + iv` the real vectors `√2 v, √2 u`
/// bring `KΩK` into `⊕ νⱼ[[0, 1], [−1, 0]]`, and `S = D^{1/2} Oᵀ K⁻¹`.
pub(crate) fn williamson_decompose<T: Real>(a: &DMatrix<T>) -> Result<(DMatrix<T>, Vec<T>)> {
    let dim = a.nrows();
    if dim == 0 || !dim.is_multiple_of(2) || !a.is_square() {
        return Err(Error::InvalidDimension(format!("expected 2n x 2n, got {}x{}", a.nrows(), a.ncols())));
    }
    let n = dim / 2;
    let (lam, v) = eigh_real(a);
    if lam[0] <= T::zero() {
        return Err(Error::NotPositive(lam[0].as_f64()));
    }
    let root = DVector::from_iterator(dim, lam.iter().map(|l| l.sqrt()));
    let inv_root = DVector::from_iterator(dim, lam.iter().map(|l| T::one() / l.sqrt()));
    let k = &v * DMatrix::from_diagonal(&root) * v.transpose();
    let k_inv = &v * DMatrix::from_diagonal(&inv_root) * v.transpose();

    let m = &k * symplectic_form::<T>(n) * &k;
    let herm = to_complex(&m) * cplx(T::zero(), T::one());
    let (vals, vecs) = eigh(&herm);

    let sqrt2 = T::lit(std::f64::consts::SQRT_2);
    let mut o = DMatrix::<T>::zeros(dim, dim);
    let mut nu = Vec::with_capacity(n);
    for j in 0..n {
        // Positive half of the spectrum, largest first.
        let idx = dim - 1 - j;
        nu.push(vals[idx]);
        let w = vecs.column(idx);
        for r in 0..dim {
            o[(r, 2 * j)] = sqrt2 * w[r].im;
            o[(r, 2 * j + 1)] = sqrt2 * w[r].re;
        }
    }
    let d_half = DVector::from_iterator(dim, nu.iter().flat_map(|&x| [x.sqrt(), x.sqrt()]));
    let s = DMatrix::from_diagonal(&d_half) * o.transpose() * k_inv;
    Ok((s, nu))
}

fn normal_form<T: Real>(nu: &[T]) -> DMatrix<T> {
    DMatrix::from_diagonal(&DVector::from_iterator(2 * nu.len(), nu.iter().flat_map(|&x| [x, x])))
}

/// `‖SσSᵀ − ⊕νⱼ𝕀₂‖_F / ‖σ‖_F`.
pub fn williamson_residual<T: Real>(cov: &CovarianceMatrix<T>, s: &SymplecticMatrix<T>, nu: &[T]) -> T {
    let sigma = cov.matrix();
    (s.matrix() * sigma * s.matrix().transpose() - normal_form(nu)).norm() / sigma.norm()
}

/// Symplectic `S` and spectrum `ν` (descending) with `SσSᵀ = ⊕ νⱼ𝕀₂`.
///
/// Fails with [`Error::WilliamsonFailed`] if the reconstruction residual
/// exceeds 1e-8 or `S` is not symplectic to 1e-10.
pub fn williamson<T: Real>(cov: &CovarianceMatrix<T>) -> Result<(SymplecticMatrix<T>, Vec<T>)> {
    let (s, nu) = williamson_decompose(cov.matrix())?;
    let s = SymplecticMatrix::new(s).map_err(|e| match e {
        Error::NotSymplectic(d) => Error::WilliamsonFailed(d),
        other => other,
    })?;
    let residual = williamson_residual(cov, &s, &nu);
    if residual > T::tol(1e-8) {
        return Err(Error::WilliamsonFailed(residual.as_f64()));
    }
    debug_assert!(symplectic_defect(s.matrix()).is_finite());
    Ok((s, nu))
}

/// Moves a Gaussian state into its normal-mode frame, where the covariance
/// is `⊕ νⱼ𝕀₂` and every mode bipartition is separable.
pub fn mode_separating_transform<T: Real>(state: &GaussianState<T>) -> Result<(SymplecticMatrix<T>, GaussianState<T>)> {
    let (s, _) = williamson(&state.cov)?;
    let transformed = state.transform(&s)?;
    Ok((s, transformed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::{symplectic_eigenvalues, CovarianceMatrix};
    use crate::random::{random_covariance, rng};

    #[test]
    fn vacuum_reconstruction() {
        let cov = CovarianceMatrix::<f64>::vacuum(3);
        let (s, nu) = williamson(&cov).unwrap();
        assert!(nu.iter().all(|&v| (v - 1.0).abs() < 1e-12));
        assert!(williamson_residual(&cov, &s, &nu) < 1e-12);
    }

    #[test]
    fn squeezed_mode_is_unsqueezed() {
        let r = 0.9_f64;
        let cov =
            CovarianceMatrix::new(DMatrix::from_diagonal(&DVector::from_vec(vec![(2.0 * r).exp(), (-2.0 * r).exp()])))
                .unwrap();
        let (s, nu) = williamson(&cov).unwrap();
        assert!((nu[0] - 1.0).abs() < 1e-12);
        let back = s.matrix() * cov.matrix() * s.matrix().transpose();
        assert!((back - DMatrix::identity(2, 2)).norm() < 1e-10);
    }

    #[test]
    fn random_covariances_reconstruct() {
        let mut g = rng(77);
        for n in 1..=4 {
            for _ in 0..5 {
                let (cov, expected) = random_covariance::<f64>(&mut g, n, 0.8, 4.0);
                let (s, nu) = williamson(&cov).unwrap();
                assert!(williamson_residual(&cov, &s, &nu) < 1e-8);
                assert!(s.defect() < 1e-10);
                for (a, b) in nu.iter().zip(&expected) {
                    assert!((a - b).abs() < 1e-8);
                }
                let direct = symplectic_eigenvalues(&cov);
                for (a, b) in nu.iter().zip(&direct) {
                    assert!((a - b).abs() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn degenerate_thermal_spectrum() {
        let mut g = rng(5);
        let s = crate::random::random_symplectic::<f64>(&mut g, 3, 0.5);
        let base = CovarianceMatrix::thermal(&[2.0, 2.0, 2.0]).unwrap();
        let cov = base.transform(&s).unwrap();
        let (sw, nu) = williamson(&cov).unwrap();
        assert!(nu.iter().all(|&v| (v - 2.0).abs() < 1e-9));
        assert!(williamson_residual(&cov, &sw, &nu) < 1e-8);
    }
}
