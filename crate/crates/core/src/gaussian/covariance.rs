use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::linalg::eigh_real;
use crate::num::Real;

use super::symplectic::{symplectic_form, SymplecticMatrix};

/// Symplectic eigenvalues of a positive definite matrix, descending.
///
/// With `K = σ^{1/2}`, the antisymmetric `KΩK` has eigenvalues `±iνⱼ`, so
/// `−(KΩK)²` is symmetric with each `νⱼ²` appearing twice.
pub(crate) fn symplectic_spectrum<T: Real>(sigma: &DMatrix<T>) -> Result<Vec<T>> {
    let n = sigma.nrows() / 2;
    let (lam, v) = eigh_real(sigma);
    if lam[0] <= T::zero() {
        return Err(Error::NotPositive(lam[0].as_f64()));
    }
    let sqrt = DVector::from_iterator(lam.len(), lam.iter().map(|l| l.sqrt()));
    let k = &v * DMatrix::from_diagonal(&sqrt) * v.transpose();
    let m = &k * symplectic_form::<T>(n) * &k;
    let (sq, _) = eigh_real(&(-(&m * &m)));
    let mut nu: Vec<T> = sq.iter().rev().step_by(2).map(|x| x.max(T::zero()).sqrt()).collect();
    nu.truncate(n);
    Ok(nu)
}

/// Real symmetric `2n × 2n` covariance matrix with vacuum `σ = 𝕀`.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceMatrix<T: Real> {
    sigma: DMatrix<T>,
}

impl<T: Real> CovarianceMatrix<T> {
    /// Checks symmetry (1e-12, relative to the largest entry) and the
    /// uncertainty bound `ν_min ≥ 1 − 1e-8`.
    pub fn new(sigma: DMatrix<T>) -> Result<Self> {
        if !sigma.is_square() || !sigma.nrows().is_multiple_of(2) || sigma.nrows() == 0 {
            return Err(Error::InvalidDimension(format!(
                "covariance must be 2n x 2n, got {}x{}",
                sigma.nrows(),
                sigma.ncols()
            )));
        }
        let scale = T::one().max(sigma.amax());
        let asym = (&sigma - sigma.transpose()).amax();
        if asym > T::tol(1e-12) * scale {
            return Err(Error::NotSymmetric(asym.as_f64()));
        }
        let sigma = (&sigma + sigma.transpose()) * T::lit(0.5);
        let nu = symplectic_spectrum(&sigma).map_err(|e| match e {
            Error::NotPositive(v) => Error::UncertaintyViolation(v),
            other => other,
        })?;
        let min = *nu.last().unwrap();
        if min < T::one() - T::tol(1e-8) {
            return Err(Error::UncertaintyViolation(min.as_f64()));
        }
        Ok(Self { sigma })
    }

    pub fn vacuum(n_modes: usize) -> Self {
        Self { sigma: DMatrix::identity(2 * n_modes, 2 * n_modes) }
    }

    /// Product of thermal modes with the given symplectic eigenvalues.
    pub fn thermal(nu: &[T]) -> Result<Self> {
        let diag = DVector::from_iterator(2 * nu.len(), nu.iter().flat_map(|&v| [v, v]));
        Self::new(DMatrix::from_diagonal(&diag))
    }

    /// Two-mode squeezed vacuum: diagonal blocks `cosh(2r)𝕀₂`, off-diagonal
    /// blocks `sinh(2r)·diag(1, −1)`.
    pub fn two_mode_squeezed(r: T) -> Self {
        let two = T::lit(2.0);
        let (c, s) = ((two * r).cosh(), (two * r).sinh());
        let z = T::zero();
        Self { sigma: DMatrix::from_row_slice(4, 4, &[c, z, s, z, z, c, z, -s, s, z, c, z, z, -s, z, c]) }
    }

    pub(crate) fn from_computed(sigma: DMatrix<T>) -> Self {
        Self { sigma: (&sigma + sigma.transpose()) * T::lit(0.5) }
    }

    pub fn n_modes(&self) -> usize {
        self.sigma.nrows() / 2
    }

    pub fn matrix(&self) -> &DMatrix<T> {
        &self.sigma
    }

    /// `S σ Sᵀ`.
    pub fn transform(&self, s: &SymplecticMatrix<T>) -> Result<Self> {
        if s.n_modes() != self.n_modes() {
            return Err(Error::DimensionMismatch { expected: self.n_modes(), got: s.n_modes() });
        }
        Ok(Self::from_computed(s.matrix() * &self.sigma * s.matrix().transpose()))
    }
}

/// Gaussian state: covariance plus first moments.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianState<T: Real> {
    pub cov: CovarianceMatrix<T>,
    pub mean: DVector<T>,
}

impl<T: Real> GaussianState<T> {
    pub fn new(cov: CovarianceMatrix<T>, mean: DVector<T>) -> Result<Self> {
        if mean.len() != cov.matrix().nrows() {
            return Err(Error::DimensionMismatch { expected: cov.matrix().nrows(), got: mean.len() });
        }
        Ok(Self { cov, mean })
    }

    /// Zero-mean state.
    pub fn centered(cov: CovarianceMatrix<T>) -> Self {
        let n = cov.matrix().nrows();
        Self { cov, mean: DVector::zeros(n) }
    }

    pub fn n_modes(&self) -> usize {
        self.cov.n_modes()
    }

    /// `ξ ↦ Sξ`: covariance `SσSᵀ`, mean `S·mean`.
    pub fn transform(&self, s: &SymplecticMatrix<T>) -> Result<Self> {
        Ok(Self { cov: self.cov.transform(s)?, mean: s.matrix() * &self.mean })
    }

    /// Phase-space displacement of the mean.
    pub fn displace(&self, shift: &DVector<T>) -> Result<Self> {
        if shift.len() != self.mean.len() {
            return Err(Error::DimensionMismatch { expected: self.mean.len(), got: shift.len() });
        }
        Ok(Self { cov: self.cov.clone(), mean: &self.mean + shift })
    }
}

/// Symplectic eigenvalues `ν₁ ≥ … ≥ νₙ ≥ 1`.
pub fn symplectic_eigenvalues<T: Real>(cov: &CovarianceMatrix<T>) -> Vec<T> {
    symplectic_spectrum(cov.matrix()).expect("validated covariance is positive definite")
}

/// `1/√det σ`.
pub fn gaussian_purity<T: Real>(cov: &CovarianceMatrix<T>) -> T {
    T::one() / cov.matrix().clone().determinant().sqrt()
}

/// All symplectic eigenvalues equal to 1 within 1e-8.
pub fn is_pure<T: Real>(cov: &CovarianceMatrix<T>) -> bool {
    symplectic_eigenvalues(cov).iter().all(|&v| (v - T::one()).abs() <= T::tol(1e-8))
}

fn check_modes(n: usize, modes: &[usize]) -> Result<()> {
    if modes.is_empty() {
        return Err(Error::InvalidModes("mode selection is empty".into()));
    }
    for (i, &m) in modes.iter().enumerate() {
        if m >= n {
            return Err(Error::InvalidModes(format!("mode index {m} out of range for {n} modes")));
        }
        if modes[..i].contains(&m) {
            return Err(Error::InvalidModes(format!("mode index {m} repeated")));
        }
    }
    Ok(())
}

/// Marginal on the kept modes (0-based), in the given order.
pub fn reduce_modes<T: Real>(state: &GaussianState<T>, keep: &[usize]) -> Result<GaussianState<T>> {
    check_modes(state.n_modes(), keep)?;
    let idx: Vec<usize> = keep.iter().flat_map(|&m| [2 * m, 2 * m + 1]).collect();
    let sigma = state.cov.matrix();
    let sub = DMatrix::from_fn(idx.len(), idx.len(), |r, c| sigma[(idx[r], idx[c])]);
    let mean = DVector::from_iterator(idx.len(), idx.iter().map(|&i| state.mean[i]));
    Ok(GaussianState { cov: CovarianceMatrix::from_computed(sub), mean })
}

pub(crate) fn complement(n: usize, modes: &[usize]) -> Result<Vec<usize>> {
    check_modes(n, modes)?;
    let rest: Vec<usize> = (0..n).filter(|m| !modes.contains(m)).collect();
    if rest.is_empty() {
        return Err(Error::InvalidModes("bipartition side B is empty".into()));
    }
    Ok(rest)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Moduli of the eigenvalues of `iΩσ` computed from the characteristic
    /// structure of the explicit 4×4 two-mode squeezed matrix: for this
    /// matrix `(Ωσ)² = −(c² − s²)𝕀`, so every modulus is `√(c² − s²)`.
    #[test]
    fn two_mode_squeezed_spectrum() {
        for r in [0.2, 0.7, 1.5] {
            let cov = CovarianceMatrix::<f64>::two_mode_squeezed(r);
            let om = symplectic_form::<f64>(2);
            let a = &om * cov.matrix();
            let sq = &a * &a;
            assert!((sq + DMatrix::identity(4, 4)).norm() < 1e-9 * (2.0 * r).cosh().powi(2));
            let nu = symplectic_eigenvalues(&cov);
            assert!((nu[0] - 1.0).abs() < 1e-9 && (nu[1] - 1.0).abs() < 1e-9);
            assert!((gaussian_purity(&cov) - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn simple_spectra() {
        assert_eq!(symplectic_eigenvalues(&CovarianceMatrix::<f64>::vacuum(3)), vec![1.0; 3]);
        let sq = CovarianceMatrix::<f64>::new(DMatrix::from_diagonal(&DVector::from_vec(vec![4.0, 0.25]))).unwrap();
        assert!((symplectic_eigenvalues(&sq)[0] - 1.0).abs() < 1e-12);
        let th = CovarianceMatrix::<f64>::thermal(&[3.0]).unwrap();
        assert!((gaussian_purity(&th) - 1.0 / 3.0).abs() < 1e-14);
        assert!(!is_pure(&th) && is_pure(&CovarianceMatrix::<f64>::vacuum(2)));
    }

    #[test]
    fn rejects_unphysical() {
        let bad = DMatrix::from_diagonal(&DVector::from_vec(vec![0.5, 0.5]));
        assert!(matches!(CovarianceMatrix::<f64>::new(bad), Err(Error::UncertaintyViolation(_))));
        let neg = DMatrix::from_diagonal(&DVector::from_vec(vec![-1.0, 2.0]));
        assert!(matches!(CovarianceMatrix::<f64>::new(neg), Err(Error::UncertaintyViolation(_))));
        let asym = DMatrix::from_row_slice(2, 2, &[1.0, 0.1, 0.0, 1.0]);
        assert!(matches!(CovarianceMatrix::<f64>::new(asym), Err(Error::NotSymmetric(_))));
    }

    #[test]
    fn reductions() {
        let vac = GaussianState::centered(CovarianceMatrix::<f64>::vacuum(2));
        assert_eq!(reduce_modes(&vac, &[0]).unwrap().cov, CovarianceMatrix::vacuum(1));
        let r = 0.8;
        let tms = GaussianState::centered(CovarianceMatrix::<f64>::two_mode_squeezed(r));
        let red = reduce_modes(&tms, &[0]).unwrap();
        assert!((red.cov.matrix() - DMatrix::identity(2, 2) * (2.0 * r).cosh()).norm() < 1e-14);
        assert_eq!(reduce_modes(&tms, &[0, 1]).unwrap(), tms);
        assert!(reduce_modes(&tms, &[]).is_err());
        assert!(reduce_modes(&tms, &[2]).is_err());
        assert!(reduce_modes(&tms, &[1, 1]).is_err());
    }
}
