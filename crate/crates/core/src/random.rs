//! Seeded generators for test inputs: Haar states and unitaries, random
//! density matrices, random symplectic matrices and covariances.

use nalgebra::ComplexField;
use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::findim::{partial_trace_raw, DensityMatrix, PureState, Side};
use crate::gaussian::{symplectic_form, CovarianceMatrix, SymplecticMatrix};
use crate::linalg::{CMatrix, CVector};
use crate::num::{cplx, creal, Real};

pub type Rng = ChaCha20Rng;

pub fn rng(seed: u64) -> Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

fn normal<T: Real>(rng: &mut Rng) -> T {
    let x: f64 = StandardNormal.sample(rng);
    T::lit(x)
}

pub(crate) fn uniform<T: Real>(rng: &mut Rng, lo: f64, hi: f64) -> T {
    let u: f64 = rand::Rng::random(rng);
    T::lit(lo + (hi - lo) * u)
}

fn ginibre<T: Real>(rng: &mut Rng, rows: usize, cols: usize) -> CMatrix<T> {
    let scale = T::lit(std::f64::consts::FRAC_1_SQRT_2);
    CMatrix::from_fn(rows, cols, |_, _| cplx(normal::<T>(rng) * scale, normal::<T>(rng) * scale))
}

/// Haar-random unitary drawn from an existing generator.
pub fn haar_unitary<T: Real>(rng: &mut Rng, d: usize) -> CMatrix<T> {
    let z = ginibre::<T>(rng, d, d);
    let qr = z.qr();
    let mut q = qr.q();
    let r = qr.r();
    // Fix the phase freedom so the distribution is exactly Haar.
    for j in 0..d {
        let rjj = r[(j, j)];
        let m = rjj.modulus();
        let phase = if m > T::zero() { rjj / creal(m) } else { creal(T::one()) };
        let mut col = q.column_mut(j);
        col *= phase;
    }
    q
}

pub fn random_unitary<T: Real>(d: usize, seed: u64) -> Result<CMatrix<T>> {
    if d == 0 {
        return Err(Error::InvalidDimension("unitary dimension must be at least 1".into()));
    }
    Ok(haar_unitary(&mut rng(seed), d))
}

pub fn haar_state<T: Real>(rng: &mut Rng, d: usize) -> PureState<T> {
    let v: CVector<T> = ginibre::<T>(rng, d, 1).column(0).into_owned();
    PureState::normalized(v).expect("gaussian vector has nonzero norm")
}

pub fn random_pure<T: Real>(d: usize, seed: u64) -> Result<PureState<T>> {
    if d == 0 {
        return Err(Error::InvalidDimension("state dimension must be at least 1".into()));
    }
    Ok(haar_state(&mut rng(seed), d))
}

/// Random density matrix of exact rank `rank`: the marginal of a Haar pure
/// state on `d·rank`.
pub fn random_density<T: Real>(d: usize, rank: usize, seed: u64) -> Result<DensityMatrix<T>> {
    if d == 0 || rank == 0 || rank > d {
        return Err(Error::InvalidDimension(format!("need d >= 1 and 1 <= rank <= d, got d={d}, rank={rank}")));
    }
    let psi = haar_state::<T>(&mut rng(seed), d * rank);
    let proj = psi.projector_matrix();
    DensityMatrix::from_computed(partial_trace_raw(&proj, d, rank, Side::A))
}

/// Orthogonal symplectic matrix built from a Haar unitary on `n` modes.
pub fn random_passive<T: Real>(rng: &mut Rng, n: usize) -> DMatrix<T> {
    let u = haar_unitary::<T>(rng, n);
    // a_j -> Σ u_jk a_k acts on (x, p) as [[Re u, -Im u], [Im u, Re u]].
    DMatrix::from_fn(2 * n, 2 * n, |r, c| {
        let (j, qj) = (r / 2, r % 2);
        let (k, qk) = (c / 2, c % 2);
        let z = u[(j, k)];
        match (qj, qk) {
            (0, 0) | (1, 1) => z.re,
            (0, 1) => -z.im,
            _ => z.im,
        }
    })
}

/// Random symplectic `O₁ · ⊕ diag(e^{r}, e^{−r}) · O₂` with squeezing
/// parameters uniform in `[−max_squeeze, max_squeeze]`.
pub fn random_symplectic<T: Real>(rng: &mut Rng, n: usize, max_squeeze: f64) -> SymplecticMatrix<T> {
    let o1 = random_passive::<T>(rng, n);
    let o2 = random_passive::<T>(rng, n);
    let mut sq = DVector::<T>::zeros(2 * n);
    for j in 0..n {
        let r: T = uniform(rng, -max_squeeze, max_squeeze);
        sq[2 * j] = r.exp();
        sq[2 * j + 1] = (-r).exp();
    }
    let s = o1 * DMatrix::from_diagonal(&sq) * o2;
    debug_assert!({
        let om = symplectic_form::<T>(n);
        (s.transpose() * &om * &s - om).norm() < T::lit(1e-8)
    });
    SymplecticMatrix::new_unchecked(s)
}

/// Random valid covariance `S D Sᵀ` together with the symplectic spectrum
/// `D` it was built from (descending).
pub fn random_covariance<T: Real>(
    rng: &mut Rng,
    n: usize,
    max_squeeze: f64,
    max_thermal: f64,
) -> (CovarianceMatrix<T>, Vec<T>) {
    let s = random_symplectic::<T>(rng, n, max_squeeze);
    let mut nu: Vec<T> = (0..n).map(|_| uniform(rng, 1.0, max_thermal)).collect();
    let d = DMatrix::from_diagonal(&DVector::from_iterator(2 * n, nu.iter().flat_map(|&v| [v, v])));
    let sigma = s.matrix() * d * s.matrix().transpose();
    nu.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let cov = CovarianceMatrix::new(sigma).expect("generator produces valid covariances");
    (cov, nu)
}
