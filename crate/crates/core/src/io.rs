//! JSON file formats for states, frames and Gaussian states.
//!
//! ```text
//! pure:     {"dim": d, "amplitudes": [[re, im], ...]}
//! density:  {"dim": d, "matrix": [[[re, im], ...], ...]}        row-major
//! frame:    {"d": d, "factors": [k1, k2], "frame": [[[re, im], ...], ...] | "identity"}
//! gaussian: {"n_modes": n, "sigma": [[...], ...], "mean": [...]}  mean optional on input
//! ```
//!
//! Unknown keys are rejected. Numbers are written as shortest round-trip
//! decimal doubles.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::findim::{DensityMatrix, Factorization, PureState, TpsFrame};
use crate::gaussian::{CovarianceMatrix, GaussianState};
use crate::linalg::{CMatrix, CVector};
use crate::num::{cplx, Real, C};

type Pair = [f64; 2];

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PureJson {
    dim: usize,
    amplitudes: Vec<Pair>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DensityJson {
    dim: usize,
    matrix: Vec<Vec<Pair>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum FrameBody {
    Named(String),
    Matrix(Vec<Vec<Pair>>),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FrameJson {
    d: usize,
    factors: [usize; 2],
    frame: FrameBody,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GaussianJson {
    n_modes: usize,
    sigma: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    mean: Option<Vec<f64>>,
}

fn parse<'a, D: Deserialize<'a>>(text: &'a str) -> Result<D> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

fn render<S: Serialize>(value: &S) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

fn to_c<T: Real>(p: &Pair) -> Result<C<T>> {
    if !p[0].is_finite() || !p[1].is_finite() {
        return Err(Error::Parse("non-finite number".into()));
    }
    Ok(cplx(T::lit(p[0]), T::lit(p[1])))
}

fn plain<T: Real>(x: T) -> f64 {
    // Drops the sign of negative zero.
    x.as_f64() + 0.0
}

fn from_c<T: Real>(z: &C<T>) -> Pair {
    [plain(z.re), plain(z.im)]
}

fn complex_matrix<T: Real>(rows: &[Vec<Pair>], d: usize) -> Result<CMatrix<T>> {
    if rows.len() != d || rows.iter().any(|r| r.len() != d) {
        return Err(Error::Parse(format!("expected a {d}x{d} matrix")));
    }
    let mut m = CMatrix::zeros(d, d);
    for (i, row) in rows.iter().enumerate() {
        for (j, p) in row.iter().enumerate() {
            m[(i, j)] = to_c(p)?;
        }
    }
    Ok(m)
}

fn complex_rows<T: Real>(m: &CMatrix<T>) -> Vec<Vec<Pair>> {
    m.row_iter().map(|r| r.iter().map(from_c).collect()).collect()
}

pub fn pure_state_from_json<T: Real>(text: &str) -> Result<PureState<T>> {
    let j: PureJson = parse(text)?;
    if j.amplitudes.len() != j.dim {
        return Err(Error::DimensionMismatch { expected: j.dim, got: j.amplitudes.len() });
    }
    let amps = j.amplitudes.iter().map(to_c).collect::<Result<Vec<_>>>()?;
    PureState::new(CVector::from_vec(amps))
}

pub fn pure_state_to_json<T: Real>(state: &PureState<T>) -> String {
    render(&PureJson { dim: state.dim(), amplitudes: state.amplitudes().iter().map(from_c).collect() })
}

pub fn density_from_json<T: Real>(text: &str) -> Result<DensityMatrix<T>> {
    let j: DensityJson = parse(text)?;
    DensityMatrix::new(complex_matrix(&j.matrix, j.dim)?)
}

pub fn density_to_json<T: Real>(rho: &DensityMatrix<T>) -> String {
    render(&DensityJson { dim: rho.dim(), matrix: complex_rows(rho.matrix()) })
}

pub fn frame_from_json<T: Real>(text: &str) -> Result<TpsFrame<T>> {
    let j: FrameJson = parse(text)?;
    let f = Factorization::for_dim(j.d, j.factors[0], j.factors[1])?;
    match j.frame {
        FrameBody::Named(name) if name == "identity" => Ok(TpsFrame::identity(f)),
        FrameBody::Named(name) => {
            Err(Error::Parse(format!("unknown frame {name:?}, expected \"identity\" or a matrix")))
        }
        FrameBody::Matrix(rows) => TpsFrame::new(f, complex_matrix(&rows, j.d)?),
    }
}

pub fn frame_to_json<T: Real>(frame: &TpsFrame<T>) -> String {
    let f = frame.factorization();
    let body = if frame.is_identity() {
        FrameBody::Named("identity".into())
    } else {
        FrameBody::Matrix(complex_rows(&frame.unitary()))
    };
    render(&FrameJson { d: f.dim(), factors: [f.k1(), f.k2()], frame: body })
}

pub fn gaussian_from_json<T: Real>(text: &str) -> Result<GaussianState<T>> {
    let j: GaussianJson = parse(text)?;
    let n = 2 * j.n_modes;
    if j.n_modes == 0 || j.sigma.len() != n || j.sigma.iter().any(|r| r.len() != n) {
        return Err(Error::Parse(format!("sigma must be {n}x{n} for n_modes = {}", j.n_modes)));
    }
    if j.sigma.iter().flatten().any(|x| !x.is_finite()) {
        return Err(Error::Parse("non-finite number".into()));
    }
    let sigma = DMatrix::from_fn(n, n, |r, c| T::lit(j.sigma[r][c]));
    let cov = CovarianceMatrix::new(sigma)?;
    match j.mean {
        None => Ok(GaussianState::centered(cov)),
        Some(m) => {
            if m.iter().any(|x| !x.is_finite()) {
                return Err(Error::Parse("non-finite number".into()));
            }
            GaussianState::new(cov, DVector::from_iterator(m.len(), m.iter().map(|&x| T::lit(x))))
        }
    }
}

pub fn gaussian_to_json<T: Real>(state: &GaussianState<T>) -> String {
    let sigma = state.cov.matrix().row_iter().map(|r| r.iter().map(|&x| plain(x)).collect()).collect();
    render(&GaussianJson {
        n_modes: state.n_modes(),
        sigma,
        mean: Some(state.mean.iter().map(|&x| plain(x)).collect()),
    })
}

/// Real matrix as nested rows, for reports.
pub fn real_matrix_to_json<T: Real>(m: &DMatrix<T>) -> serde_json::Value {
    serde_json::Value::from(m.row_iter().map(|r| r.iter().map(|&x| plain(x)).collect::<Vec<f64>>()).collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::findim::{bell_state, BellLabel};
    use crate::random::random_unitary;

    #[test]
    fn pure_round_trip() {
        let s = bell_state::<f64>(BellLabel::PsiMinus);
        let back: PureState<f64> = pure_state_from_json(&pure_state_to_json(&s)).unwrap();
        assert_eq!(back, s);
        let text = r#"{"dim": 2, "amplitudes": [[1, 0], [0, 0]]}"#;
        assert_eq!(pure_state_from_json::<f64>(text).unwrap().dim(), 2);
    }

    #[test]
    fn strictness() {
        let extra = r#"{"dim": 2, "amplitudes": [[1, 0], [0, 0]], "note": 1}"#;
        assert!(matches!(pure_state_from_json::<f64>(extra), Err(Error::Parse(_))));
        let short = r#"{"dim": 3, "amplitudes": [[1, 0], [0, 0]]}"#;
        assert!(pure_state_from_json::<f64>(short).is_err());
        assert!(pure_state_from_json::<f64>("{").is_err());
        let unnormalized = r#"{"dim": 2, "amplitudes": [[1, 0], [1, 0]]}"#;
        assert!(matches!(pure_state_from_json::<f64>(unnormalized), Err(Error::NotNormalized(_))));
        let frame = r#"{"d": 4, "factors": [2, 2], "frame": "other"}"#;
        assert!(frame_from_json::<f64>(frame).is_err());
        let frame = r#"{"d": 6, "factors": [2, 2], "frame": "identity"}"#;
        assert!(frame_from_json::<f64>(frame).is_err());
    }

    #[test]
    fn density_round_trip() {
        let rho = bell_state::<f64>(BellLabel::PhiPlus).projector();
        let back: DensityMatrix<f64> = density_from_json(&density_to_json(&rho)).unwrap();
        assert_eq!(back.matrix(), rho.matrix());
    }

    #[test]
    fn frame_round_trip() {
        let f = Factorization::new(2, 3).unwrap();
        let id: TpsFrame<f64> = frame_from_json(&frame_to_json(&TpsFrame::<f64>::identity(f))).unwrap();
        assert!(id.is_identity());
        let fr = TpsFrame::new(f, random_unitary::<f64>(6, 5).unwrap()).unwrap();
        let back: TpsFrame<f64> = frame_from_json(&frame_to_json(&fr)).unwrap();
        assert_eq!(back.unitary().as_ref(), fr.unitary().as_ref());
    }

    #[test]
    fn gaussian_round_trip() {
        let st = GaussianState::centered(CovarianceMatrix::<f64>::two_mode_squeezed(0.7));
        let back: GaussianState<f64> = gaussian_from_json(&gaussian_to_json(&st)).unwrap();
        assert_eq!(back, st);
        let no_mean = r#"{"n_modes": 1, "sigma": [[1, 0], [0, 1]]}"#;
        assert_eq!(gaussian_from_json::<f64>(no_mean).unwrap().mean.len(), 2);
        let bad = r#"{"n_modes": 1, "sigma": [[0.5, 0], [0, 0.5]]}"#;
        assert!(matches!(gaussian_from_json::<f64>(bad), Err(Error::UncertaintyViolation(_))));
    }
}
