//! Two distinguishable particles on a periodic 1D lattice with a contact
//! interaction.
//!
//! `H = H_hop ⊗ 𝕀 + 𝕀 ⊗ H_hop + g Σᵢ |i,i⟩⟨i,i|`, with `H_hop` the
//! nearest-neighbour hopping matrix (`−J` between neighbours, ring closed).
//! Amplitudes use index `i·N + j` for particle A on site `i` and B on `j`.
//! Time evolution is exact: one dense eigendecomposition, then a phase per
//! eigenvalue for every requested time.

use nalgebra::{ComplexField, DMatrix};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::findim::{entanglement_entropy, Factorization, PureState, TpsFrame};
use crate::linalg::{eigh, eigh_real, hermiticity_defect, to_complex, CMatrix, CVector};
use crate::num::{cplx, Real, C};

pub const MIN_SITES: usize = 8;
pub const MAX_SITES: usize = 48;

/// Discrete Gaussian wave packet: center and width in site units,
/// quasi-momentum in `(−π, π]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Packet<T: Real> {
    pub center: T,
    pub width: T,
    pub momentum: T,
}

impl<T: Real> Packet<T> {
    pub fn new(center: T, width: T, momentum: T) -> Result<Self> {
        let p = Self { center, width, momentum };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<()> {
        if self.width <= T::zero() || !self.width.is_finite() {
            return Err(Error::InvalidParams(format!("packet width must be positive, got {}", self.width)));
        }
        let pi = T::pi();
        if !(self.momentum > -pi && self.momentum <= pi) {
            return Err(Error::InvalidParams(format!("momentum {} outside (-pi, pi]", self.momentum)));
        }
        if !self.center.is_finite() {
            return Err(Error::InvalidParams("packet center must be finite".into()));
        }
        Ok(())
    }

    /// Group velocity `2J sin k` under hopping `J`.
    pub fn group_velocity(&self, hopping: T) -> T {
        T::lit(2.0) * hopping * self.momentum.sin()
    }
}

/// Ring lattice, hopping, contact interaction and the two in-packets.
/// The boundary is always periodic.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeConfig<T: Real> {
    pub n_sites: usize,
    pub hopping: T,
    pub interaction: T,
    pub packet_a: Packet<T>,
    pub packet_b: Packet<T>,
}

impl<T: Real> LatticeConfig<T> {
    pub fn new(n_sites: usize, hopping: T, interaction: T, packet_a: Packet<T>, packet_b: Packet<T>) -> Result<Self> {
        let c = Self { n_sites, hopping, interaction, packet_a, packet_b };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if !(MIN_SITES..=MAX_SITES).contains(&self.n_sites) {
            return Err(Error::InvalidParams(format!(
                "n_sites must be in {MIN_SITES}..={MAX_SITES}, got {}",
                self.n_sites
            )));
        }
        if self.hopping <= T::zero() || !self.hopping.is_finite() {
            return Err(Error::InvalidParams(format!("hopping must be positive, got {}", self.hopping)));
        }
        if !self.interaction.is_finite() {
            return Err(Error::InvalidParams("interaction must be finite".into()));
        }
        self.packet_a.validate()?;
        self.packet_b.validate()
    }

    pub fn dim(&self) -> usize {
        self.n_sites * self.n_sites
    }

    /// Estimated time for the packets to meet: minimal-image separation over
    /// the closing speed. `None` when the packets do not approach.
    pub fn collision_time(&self) -> Option<T> {
        let sep = min_image(self.packet_a.center - self.packet_b.center, self.n_sites);
        let speed = self.packet_a.group_velocity(self.hopping).abs() + self.packet_b.group_velocity(self.hopping).abs();
        (speed > T::zero()).then(|| sep.abs() / speed)
    }

    pub fn factorization(&self) -> Factorization {
        Factorization::new(self.n_sites, self.n_sites).expect("n_sites >= 2")
    }
}

fn min_image<T: Real>(d: T, n: usize) -> T {
    let n = T::from_usize(n).unwrap();
    d - (d / n).round() * n
}

/// Normalized amplitudes `exp(−d²/(4w²))·e^{ikd}` on `n` sites, `d` the
/// minimal-image offset from the center.
pub fn packet_amplitudes<T: Real>(n: usize, packet: &Packet<T>) -> Result<CVector<T>> {
    packet.validate()?;
    let four_w2 = T::lit(4.0) * packet.width * packet.width;
    let mut v = CVector::from_fn(n, |i, _| {
        let d = min_image(T::from_usize(i).unwrap() - packet.center, n);
        let amp = (-(d * d) / four_w2).exp();
        let phase = packet.momentum * d;
        cplx(amp * phase.cos(), amp * phase.sin())
    });
    let norm = v.norm();
    if norm <= T::zero() || !norm.is_finite() {
        return Err(Error::InvalidParams(format!("packet width {} leaves no weight on the lattice", packet.width)));
    }
    v.unscale_mut(norm);
    Ok(v)
}

/// Two-particle wave function on an `N`-site ring.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoParticleState<T: Real> {
    n_sites: usize,
    amplitudes: CVector<T>,
}

impl<T: Real> TwoParticleState<T> {
    pub fn new(n_sites: usize, amplitudes: CVector<T>) -> Result<Self> {
        if amplitudes.len() != n_sites * n_sites {
            return Err(Error::DimensionMismatch { expected: n_sites * n_sites, got: amplitudes.len() });
        }
        let norm = amplitudes.norm();
        if (norm - T::one()).abs() > T::tol(1e-10) {
            return Err(Error::NotNormalized(norm.as_f64()));
        }
        Ok(Self { n_sites, amplitudes })
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn amplitudes(&self) -> &CVector<T> {
        &self.amplitudes
    }

    pub fn amplitude(&self, site_a: usize, site_b: usize) -> C<T> {
        self.amplitudes[site_a * self.n_sites + site_b]
    }

    pub fn norm(&self) -> T {
        self.amplitudes.norm()
    }

    pub fn to_pure_state(&self) -> PureState<T> {
        PureState::from_computed(self.amplitudes.clone())
    }

    /// Entropy between particle A and particle B, in nats.
    pub fn entropy(&self) -> Result<T> {
        let f = Factorization::new(self.n_sites, self.n_sites)?;
        entanglement_entropy(&self.to_pure_state(), &TpsFrame::identity(f))
    }

    /// `⟨ψ|H|ψ⟩`.
    pub fn energy(&self, h: &CMatrix<T>) -> Result<T> {
        if h.nrows() != self.amplitudes.len() || !h.is_square() {
            return Err(Error::DimensionMismatch { expected: self.amplitudes.len(), got: h.nrows() });
        }
        Ok(self.amplitudes.dotc(&(h * &self.amplitudes)).re)
    }
}

pub fn build_product_in_state<T: Real>(config: &LatticeConfig<T>) -> Result<TwoParticleState<T>> {
    config.validate()?;
    let n = config.n_sites;
    let a = packet_amplitudes(n, &config.packet_a)?;
    let b = packet_amplitudes(n, &config.packet_b)?;
    let amps = a.kronecker(&b);
    let norm = amps.norm();
    Ok(TwoParticleState { n_sites: n, amplitudes: amps.unscale(norm) })
}

/// Single-particle hopping matrix on an `n`-site ring.
pub fn hopping_matrix<T: Real>(n: usize, hopping: T) -> DMatrix<T> {
    let mut h = DMatrix::zeros(n, n);
    for i in 0..n {
        let j = (i + 1) % n;
        h[(i, j)] = -hopping;
        h[(j, i)] = -hopping;
    }
    h
}

pub fn build_hamiltonian<T: Real>(config: &LatticeConfig<T>) -> CMatrix<T> {
    to_complex(&build_hamiltonian_real(config))
}

fn build_hamiltonian_real<T: Real>(config: &LatticeConfig<T>) -> DMatrix<T> {
    let n = config.n_sites;
    let hop = hopping_matrix(n, config.hopping);
    let id = DMatrix::<T>::identity(n, n);
    let mut h = hop.kronecker(&id) + id.kronecker(&hop);
    for i in 0..n {
        h[(i * n + i, i * n + i)] += config.interaction;
    }
    h
}

enum Eigenbasis<T: Real> {
    Real(DMatrix<T>),
    Complex(CMatrix<T>),
}

/// `exp(−iHt)` through a single eigendecomposition of `H`.
pub struct Propagator<T: Real> {
    values: Vec<T>,
    basis: Eigenbasis<T>,
}

impl<T: Real> Propagator<T> {
    pub fn new(h: &CMatrix<T>) -> Result<Self> {
        if !h.is_square() {
            return Err(Error::InvalidDimension(format!("{}x{} Hamiltonian", h.nrows(), h.ncols())));
        }
        let scale = T::one().max(h.iter().fold(T::zero(), |m, z| m.max(z.modulus())));
        let defect = hermiticity_defect(h);
        if defect > T::tol(1e-12) * scale {
            return Err(Error::NotHermitian(defect.as_f64()));
        }
        if h.iter().all(|z| z.im == T::zero()) {
            let (values, vectors) = eigh_real(&h.map(|z| z.re));
            Ok(Self { values, basis: Eigenbasis::Real(vectors) })
        } else {
            let (values, vectors) = eigh(h);
            Ok(Self { values, basis: Eigenbasis::Complex(vectors) })
        }
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn eigenvalues(&self) -> &[T] {
        &self.values
    }

    fn phases(&self, t: T) -> Vec<C<T>> {
        self.values
            .iter()
            .map(|&e| {
                let a = -e * t;
                cplx(a.cos(), a.sin())
            })
            .collect()
    }

    pub fn apply(&self, psi: &CVector<T>, t: T) -> Result<CVector<T>> {
        if psi.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: psi.len() });
        }
        if t == T::zero() {
            return Ok(psi.clone());
        }
        let phases = self.phases(t);
        Ok(match &self.basis {
            Eigenbasis::Real(v) => {
                let re = v.tr_mul(&psi.map(|z| z.re));
                let im = v.tr_mul(&psi.map(|z| z.im));
                let c = CVector::from_fn(self.dim(), |i, _| cplx(re[i], im[i]) * phases[i]);
                let re = v * c.map(|z| z.re);
                let im = v * c.map(|z| z.im);
                CVector::from_fn(self.dim(), |i, _| cplx(re[i], im[i]))
            }
            Eigenbasis::Complex(v) => {
                let mut c = v.ad_mul(psi);
                for (x, p) in c.iter_mut().zip(&phases) {
                    *x *= *p;
                }
                v * c
            }
        })
    }

    /// The full unitary `V e^{−iΛt} V†`.
    pub fn unitary(&self, t: T) -> CMatrix<T> {
        let phases = self.phases(t);
        let v = match &self.basis {
            Eigenbasis::Real(v) => to_complex(v),
            Eigenbasis::Complex(v) => v.clone(),
        };
        let scaled = CMatrix::from_fn(v.nrows(), v.ncols(), |r, c| v[(r, c)] * phases[c]);
        scaled * v.adjoint()
    }
}

/// `ψ(t)` for every time, in input order.
pub fn evolve<T: Real>(psi: &TwoParticleState<T>, h: &CMatrix<T>, times: &[T]) -> Result<Vec<TwoParticleState<T>>> {
    let prop = Propagator::new(h)?;
    evolve_with(&prop, psi, times)
}

pub fn evolve_with<T: Real>(
    prop: &Propagator<T>,
    psi: &TwoParticleState<T>,
    times: &[T],
) -> Result<Vec<TwoParticleState<T>>> {
    times
        .par_iter()
        .map(|&t| {
            let amplitudes = prop.apply(&psi.amplitudes, t)?;
            Ok(TwoParticleState { n_sites: psi.n_sites, amplitudes })
        })
        .collect()
}

/// Interparticle entropy (nats) of the evolved product in-state at each time.
pub fn entanglement_history<T: Real>(config: &LatticeConfig<T>, times: &[T]) -> Result<Vec<(T, T)>> {
    let psi = build_product_in_state(config)?;
    let h = build_hamiltonian(config);
    let prop = Propagator::new(&h)?;
    times
        .par_iter()
        .map(|&t| {
            let amplitudes = prop.apply(&psi.amplitudes, t)?;
            let s = TwoParticleState { n_sites: psi.n_sites, amplitudes }.entropy()?;
            Ok((t, s))
        })
        .collect()
}

/// Default sampling: 0 to twice the collision time in 40 steps, or 0..10
/// when the packets never meet.
pub fn default_times<T: Real>(config: &LatticeConfig<T>) -> Vec<T> {
    let end = config.collision_time().map_or(T::lit(10.0), |t| T::lit(2.0) * t);
    (0..=40).map(|i| end * T::from_usize(i).unwrap() / T::lit(40.0)).collect()
}
