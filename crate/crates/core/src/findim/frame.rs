use std::borrow::Cow;

use crate::error::{Error, Result};
use crate::linalg::{identity, unitarity_defect, CMatrix, CVector};
use crate::num::Real;

use super::state::{DensityMatrix, PureState};

/// Bipartite factorization `d = k₁·k₂` with both factors at least 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Factorization {
    k1: usize,
    k2: usize,
}

impl Factorization {
    pub fn new(k1: usize, k2: usize) -> Result<Self> {
        if k1 < 2 || k2 < 2 {
            return Err(Error::InvalidFactorization(format!("both factors must be at least 2, got ({k1}, {k2})")));
        }
        Ok(Self { k1, k2 })
    }

    /// Factorization that must reproduce the dimension `d`.
    pub fn for_dim(d: usize, k1: usize, k2: usize) -> Result<Self> {
        let f = Self::new(k1, k2)?;
        if f.dim() != d {
            return Err(Error::InvalidFactorization(format!("{k1}·{k2} != {d}")));
        }
        Ok(f)
    }

    pub fn dim(&self) -> usize {
        self.k1 * self.k2
    }

    pub fn k1(&self) -> usize {
        self.k1
    }

    pub fn k2(&self) -> usize {
        self.k2
    }

    pub fn factors(&self) -> (usize, usize) {
        (self.k1, self.k2)
    }

    /// `min(k₁, k₂)`, the number of Schmidt coefficients.
    pub fn schmidt_len(&self) -> usize {
        self.k1.min(self.k2)
    }

    pub(crate) fn check_dim(&self, got: usize) -> Result<()> {
        if got != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got });
        }
        Ok(())
    }
}

/// A tensor product structure: a factorization plus the unitary `U` that
/// maps the native basis onto the product basis of the virtual subsystems.
///
/// The identity frame is stored without materializing `𝕀`.
#[derive(Debug, Clone, PartialEq)]
pub struct TpsFrame<T: Real> {
    factorization: Factorization,
    unitary: Option<CMatrix<T>>,
}

impl<T: Real> TpsFrame<T> {
    pub fn identity(factorization: Factorization) -> Self {
        Self { factorization, unitary: None }
    }

    /// Checks `‖U†U − 𝕀‖_F < 1e-10`.
    pub fn new(factorization: Factorization, unitary: CMatrix<T>) -> Result<Self> {
        let d = factorization.dim();
        if unitary.nrows() != d || unitary.ncols() != d {
            return Err(Error::DimensionMismatch { expected: d, got: unitary.nrows() });
        }
        let defect = unitarity_defect(&unitary);
        if defect > T::tol(1e-10) {
            return Err(Error::NotUnitary(defect.as_f64()));
        }
        Ok(Self { factorization, unitary: Some(unitary) })
    }

    pub fn factorization(&self) -> Factorization {
        self.factorization
    }

    pub fn dim(&self) -> usize {
        self.factorization.dim()
    }

    pub fn is_identity(&self) -> bool {
        self.unitary.is_none()
    }

    pub fn unitary(&self) -> Cow<'_, CMatrix<T>> {
        match &self.unitary {
            Some(u) => Cow::Borrowed(u),
            None => Cow::Owned(identity(self.dim())),
        }
    }

    /// `U v`.
    pub fn map_vector(&self, v: &CVector<T>) -> CVector<T> {
        match &self.unitary {
            Some(u) => u * v,
            None => v.clone(),
        }
    }

    /// `U M U†`.
    pub fn map_operator(&self, m: &CMatrix<T>) -> CMatrix<T> {
        match &self.unitary {
            Some(u) => u * m * u.adjoint(),
            None => m.clone(),
        }
    }

    /// `U† M U`: an operator given in the product basis, expressed natively.
    pub fn pull_back_operator(&self, m: &CMatrix<T>) -> CMatrix<T> {
        match &self.unitary {
            Some(u) => u.adjoint() * m * u,
            None => m.clone(),
        }
    }

    /// The frame whose unitary is `V U`.
    pub fn then(&self, v: &CMatrix<T>) -> Result<Self> {
        let u = v * self.unitary().as_ref();
        Self::new(self.factorization, u)
    }
}

/// States that can be re-expressed in the product basis of a frame.
pub trait ApplyFrame<T: Real>: Sized {
    /// Returns `Uψ` for vectors and `UρU†` for density matrices.
    fn apply_frame(&self, frame: &TpsFrame<T>) -> Result<Self>;
}

impl<T: Real> ApplyFrame<T> for PureState<T> {
    fn apply_frame(&self, frame: &TpsFrame<T>) -> Result<Self> {
        frame.factorization().check_dim(self.dim())?;
        Ok(PureState::from_computed(frame.map_vector(self.amplitudes())))
    }
}

impl<T: Real> ApplyFrame<T> for DensityMatrix<T> {
    fn apply_frame(&self, frame: &TpsFrame<T>) -> Result<Self> {
        frame.factorization().check_dim(self.dim())?;
        Ok(DensityMatrix::from_computed_unchecked(frame.map_operator(self.matrix())))
    }
}

pub fn apply_frame<T: Real, S: ApplyFrame<T>>(state: &S, frame: &TpsFrame<T>) -> Result<S> {
    state.apply_frame(frame)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_pure, random_unitary};

    fn f22() -> Factorization {
        Factorization::new(2, 2).unwrap()
    }

    #[test]
    fn factorization_rules() {
        assert!(Factorization::new(1, 4).is_err());
        assert!(Factorization::for_dim(6, 2, 2).is_err());
        assert_eq!(Factorization::for_dim(6, 2, 3).unwrap().schmidt_len(), 2);
    }

    #[test]
    fn identity_frame_is_noop() {
        let psi = random_pure::<f64>(4, 1).unwrap();
        let out = apply_frame(&psi, &TpsFrame::identity(f22())).unwrap();
        assert_eq!(out, psi);
    }

    #[test]
    fn frame_then_inverse_restores_state() {
        let psi = random_pure::<f64>(4, 2).unwrap();
        let u = random_unitary::<f64>(4, 3).unwrap();
        let fwd = TpsFrame::new(f22(), u.clone()).unwrap();
        let back = TpsFrame::new(f22(), u.adjoint()).unwrap();
        let round = psi.apply_frame(&fwd).unwrap().apply_frame(&back).unwrap();
        assert!((round.amplitudes() - psi.amplitudes()).norm() < 1e-12);
    }

    #[test]
    fn maximally_mixed_is_frame_invariant() {
        let rho = DensityMatrix::<f64>::maximally_mixed(4).unwrap();
        for seed in 0..5 {
            let frame = TpsFrame::new(f22(), random_unitary(4, seed).unwrap()).unwrap();
            let out = rho.apply_frame(&frame).unwrap();
            assert!((out.matrix() - rho.matrix()).norm() < 1e-14);
        }
    }

    #[test]
    fn rejects_mismatch_and_non_unitary() {
        let psi = random_pure::<f64>(6, 2).unwrap();
        assert!(matches!(
            psi.apply_frame(&TpsFrame::identity(f22())),
            Err(Error::DimensionMismatch { expected: 4, got: 6 })
        ));
        let m = CMatrix::<f64>::identity(4, 4) * crate::num::creal(1.01);
        assert!(matches!(TpsFrame::new(f22(), m), Err(Error::NotUnitary(_))));
    }
}
