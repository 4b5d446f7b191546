use crate::error::{Error, Result};
use crate::findim::{schmidt_decompose, Factorization, PureState, TpsFrame};
use crate::linalg::{complete_basis, CVector};
use crate::num::{creal, Real};

/// Desired squared Schmidt coefficients for a bipartition, stored descending.
#[derive(Debug, Clone, PartialEq)]
pub struct TargetSpectrum<T: Real> {
    probabilities: Vec<T>,
}

impl<T: Real> TargetSpectrum<T> {
    /// Accepts any order; entries must be nonnegative and sum to 1 within 1e-12.
    pub fn new(mut probabilities: Vec<T>) -> Result<Self> {
        if probabilities.is_empty() {
            return Err(Error::InvalidTarget("spectrum is empty".into()));
        }
        if let Some(bad) = probabilities.iter().find(|p| !p.is_finite() || **p < T::zero()) {
            return Err(Error::InvalidTarget(format!("negative or non-finite entry {bad}")));
        }
        let total = probabilities.iter().fold(T::zero(), |a, &p| a + p);
        if (total - T::one()).abs() > T::tol(1e-12) {
            return Err(Error::InvalidTarget(format!("entries sum to {total}, not 1")));
        }
        probabilities.sort_by(|a, b| b.partial_cmp(a).unwrap());
        Ok(Self { probabilities })
    }

    /// `(1, 0, …, 0)`: a product state.
    pub fn product(len: usize) -> Self {
        let mut probabilities = vec![T::zero(); len.max(1)];
        probabilities[0] = T::one();
        Self { probabilities }
    }

    /// Uniform spectrum: maximal entanglement.
    pub fn uniform(len: usize) -> Self {
        let len = len.max(1);
        Self { probabilities: vec![T::one() / T::from_usize(len).unwrap(); len] }
    }

    pub fn probabilities(&self) -> &[T] {
        &self.probabilities
    }

    pub fn len(&self) -> usize {
        self.probabilities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probabilities.is_empty()
    }
}

/// Builds a frame in which `psi` has exactly the `target` Schmidt spectrum.
///
/// The canonical target `φ = Σᵢ √λᵢ |i⟩|i⟩` and `ψ` are each completed to an
/// orthonormal basis from the standard basis; `U = Σⱼ |b'ⱼ⟩⟨bⱼ|` then maps
/// `ψ` to `φ`.
pub fn tailor_frame<T: Real>(
    psi: &PureState<T>,
    factorization: Factorization,
    target: &TargetSpectrum<T>,
) -> Result<TpsFrame<T>> {
    factorization.check_dim(psi.dim())?;
    if target.len() != factorization.schmidt_len() {
        return Err(Error::InvalidTarget(format!(
            "target has {} entries, factorization {:?} needs {}",
            target.len(),
            factorization.factors(),
            factorization.schmidt_len()
        )));
    }
    let (d, k2) = (factorization.dim(), factorization.k2());
    let mut phi = CVector::<T>::zeros(d);
    for (i, &lam) in target.probabilities().iter().enumerate() {
        phi[i * k2 + i] = creal(lam.sqrt());
    }

    let skip = T::tol(1e-8);
    let source = complete_basis(psi.amplitudes(), skip);
    let dest = complete_basis(&phi, skip);
    let frame = TpsFrame::new(factorization, dest * source.adjoint())?;

    let got = schmidt_decompose(psi, &frame)?.coefficients;
    let worst = got.iter().zip(target.probabilities()).fold(T::zero(), |acc, (a, b)| acc.max((*a - *b).abs()));
    if worst > T::tol(1e-10) {
        return Err(Error::Decomposition(format!("tailored frame misses target spectrum by {:e}", worst.as_f64())));
    }
    Ok(frame)
}

/// Frame in which `psi` is a product state.
pub fn min_frame<T: Real>(psi: &PureState<T>, factorization: Factorization) -> Result<TpsFrame<T>> {
    tailor_frame(psi, factorization, &TargetSpectrum::product(factorization.schmidt_len()))
}

/// Frame in which `psi` is maximally entangled.
pub fn max_frame<T: Real>(psi: &PureState<T>, factorization: Factorization) -> Result<TpsFrame<T>> {
    tailor_frame(psi, factorization, &TargetSpectrum::uniform(factorization.schmidt_len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::findim::{bell_state, entanglement_entropy, BellLabel};
    use crate::linalg::unitarity_defect;
    use crate::random::random_pure;
    use std::f64::consts::LN_2;

    fn f(k1: usize, k2: usize) -> Factorization {
        Factorization::new(k1, k2).unwrap()
    }

    #[test]
    fn product_state_made_maximal() {
        let psi = PureState::<f64>::basis(4, 0).unwrap();
        let t = TargetSpectrum::new(vec![0.5, 0.5]).unwrap();
        let frame = tailor_frame(&psi, f(2, 2), &t).unwrap();
        assert!((entanglement_entropy(&psi, &frame).unwrap() - LN_2).abs() < 1e-10);
    }

    #[test]
    fn bell_state_made_product() {
        let psi = bell_state::<f64>(BellLabel::PhiPlus);
        let t = TargetSpectrum::new(vec![1.0, 0.0]).unwrap();
        let frame = tailor_frame(&psi, f(2, 2), &t).unwrap();
        assert!(entanglement_entropy(&psi, &frame).unwrap() < 1e-10);
    }

    #[test]
    fn random_state_arbitrary_target() {
        let psi = random_pure::<f64>(8, 21).unwrap();
        let t = TargetSpectrum::new(vec![0.7, 0.3]).unwrap();
        let frame = tailor_frame(&psi, f(2, 4), &t).unwrap();
        let got = schmidt_decompose(&psi, &frame).unwrap().coefficients;
        assert!((got[0] - 0.7).abs() < 1e-10 && (got[1] - 0.3).abs() < 1e-10);
        assert!(unitarity_defect(frame.unitary().as_ref()) < 1e-10);
    }

    #[test]
    fn extremes() {
        for seed in 0..5 {
            let psi = random_pure::<f64>(4, seed).unwrap();
            assert!(entanglement_entropy(&psi, &min_frame(&psi, f(2, 2)).unwrap()).unwrap() < 1e-10);
            let max = entanglement_entropy(&psi, &max_frame(&psi, f(2, 2)).unwrap()).unwrap();
            assert!((max - LN_2).abs() < 1e-10);
        }
        let psi = random_pure::<f64>(12, 3).unwrap();
        let max = entanglement_entropy(&psi, &max_frame(&psi, f(3, 4)).unwrap()).unwrap();
        assert!((max - 3f64.ln()).abs() < 1e-10);
        // Already a product state: target met, frame need not be identity.
        let prod = PureState::<f64>::basis(4, 3).unwrap();
        assert!(entanglement_entropy(&prod, &min_frame(&prod, f(2, 2)).unwrap()).unwrap() < 1e-10);
    }

    #[test]
    fn degenerate_targets_allowed() {
        let psi = random_pure::<f64>(9, 4).unwrap();
        let t = TargetSpectrum::new(vec![0.4, 0.4, 0.2]).unwrap();
        let frame = tailor_frame(&psi, f(3, 3), &t).unwrap();
        let got = schmidt_decompose(&psi, &frame).unwrap().coefficients;
        assert!((got[0] - 0.4).abs() < 1e-10 && (got[2] - 0.2).abs() < 1e-10);
    }

    #[test]
    fn target_validation() {
        assert!(TargetSpectrum::<f64>::new(vec![0.6, 0.6]).is_err());
        assert!(TargetSpectrum::<f64>::new(vec![1.2, -0.2]).is_err());
        assert_eq!(TargetSpectrum::<f64>::new(vec![0.3, 0.7]).unwrap().probabilities(), &[0.7, 0.3]);
        let psi = random_pure::<f64>(8, 1).unwrap();
        let t = TargetSpectrum::new(vec![0.5, 0.3, 0.2]).unwrap();
        assert!(matches!(tailor_frame(&psi, f(2, 4), &t), Err(Error::InvalidTarget(_))));
    }
}
