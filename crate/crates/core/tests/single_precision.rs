//! The library is generic over the scalar; spot-check the `f32` path.

use tpslab::findim::{bell_state, entanglement_entropy, BellLabel, Factorization, TpsFrame};
use tpslab::gaussian::{gaussian_entropy_across, williamson, CovarianceMatrix, GaussianState};
use tpslab::tailor::min_frame;
use tpslab::twobody::{interparticle_entanglement, TwoBodyParams};
use tpslab::{CovarianceMatrixF32, PureStateF32};

#[test]
fn bell_state_in_single_precision() {
    let f = Factorization::new(2, 2).unwrap();
    let phi: PureStateF32 = bell_state(BellLabel::PhiPlus);
    let s = entanglement_entropy(&phi, &TpsFrame::identity(f)).unwrap();
    assert!((s - std::f32::consts::LN_2).abs() < 1e-5);
    let s_min = entanglement_entropy(&phi, &min_frame(&phi, f).unwrap()).unwrap();
    assert!(s_min < 1e-5);
}

#[test]
fn gaussian_in_single_precision() {
    let cov: CovarianceMatrixF32 = CovarianceMatrix::two_mode_squeezed(0.5);
    let (_, nu) = williamson(&cov).unwrap();
    assert!(nu.iter().all(|&v| (v - 1.0).abs() < 1e-4));
    let s32 = gaussian_entropy_across(&GaussianState::centered(cov), &[0]).unwrap();
    let s64 = gaussian_entropy_across(&GaussianState::centered(CovarianceMatrix::<f64>::two_mode_squeezed(0.5)), &[0])
        .unwrap();
    assert!((s32 as f64 - s64).abs() < 1e-4);
}

#[test]
fn two_body_in_single_precision() {
    let p = TwoBodyParams::<f32>::new(1.0, 1.0, 1.0, 1.0).unwrap();
    let s32 = interparticle_entanglement(&p).unwrap();
    let s64 = interparticle_entanglement(&TwoBodyParams::<f64>::new(1.0, 1.0, 1.0, 1.0).unwrap()).unwrap();
    assert!((s32 as f64 - s64).abs() < 1e-4);
}
