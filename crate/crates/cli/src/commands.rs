use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde_json::json;
use tpslab::findim::{entanglement_entropy, schmidt_decompose, Factorization, PureState, Side, TpsFrame};
use tpslab::gaussian::{
    gaussian_entropy_across, gaussian_purity, is_pure, log_negativity_two_mode, mode_separating_transform, williamson,
    williamson_residual, GaussianState,
};
use tpslab::scattering::{default_times, entanglement_history, LatticeConfig, Packet};
use tpslab::tailor::{check_zanardi, subalgebra_generators, tailor_frame, TargetSpectrum};
use tpslab::twobody::{
    ground_state_covariance, internal_external_entanglement, internal_external_entropy, interparticle_entanglement,
    interparticle_entropy, TwoBodyParams,
};
use tpslab::{io, random};

use crate::args::{Factors, GaussianCommand, Masses, Range, ScatterArgs, TailorArgs, TwobodyCommand, ZanardiArgs};
use crate::report::{bits, list, num, write_atomic, Csv};
use crate::Failure;

pub struct Ctx {
    pub bits: bool,
}

impl Ctx {
    fn entropy_lines(&self, key: &str, nats: f64) -> String {
        let mut s = format!("{key}_nats={}\n", num(nats));
        if self.bits {
            s.push_str(&format!("{key}_bits={}\n", num(bits(nats))));
        }
        s
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

/// File contents go to `out` when given, otherwise to stdout.
fn emit(out: &Option<PathBuf>, contents: &str) -> Result<(), Failure> {
    match out {
        Some(path) => write_atomic(path, contents).map_err(|e| Failure::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

fn factorization(d: usize, f: Factors) -> Result<Factorization, Failure> {
    Ok(Factorization::for_dim(d, f.0, f.1)?)
}

pub fn tailor(ctx: &Ctx, a: &TailorArgs) -> Result<(), Failure> {
    let psi: PureState<f64> = match (&a.state, a.random_dim) {
        (Some(path), _) => io::pure_state_from_json(&read(path)?)?,
        (None, Some(d)) => random::random_pure(d, a.seed)?,
        (None, None) => return Err(Failure::Usage("either --state or --random-dim is required".into())),
    };
    let f = factorization(psi.dim(), a.factors)?;
    let mut target = a.target.clone();
    if target.len() > f.schmidt_len() {
        return Err(Failure::Usage(format!(
            "target has {} entries but factors {},{} allow at most {}",
            target.len(),
            a.factors.0,
            a.factors.1,
            f.schmidt_len()
        )));
    }
    target.resize(f.schmidt_len(), 0.0);
    let frame = tailor_frame(&psi, f, &TargetSpectrum::new(target)?)?;
    let schmidt = schmidt_decompose(&psi, &frame)?.coefficients;
    let entropy = entanglement_entropy(&psi, &frame)?;
    emit(&a.out, &io::frame_to_json(&frame))?;
    print!("schmidt={}\n{}", list(&schmidt), ctx.entropy_lines("entropy", entropy));
    Ok(())
}

pub fn zanardi(a: &ZanardiArgs) -> Result<(), Failure> {
    let frame: TpsFrame<f64> = match (&a.frame, a.factors) {
        (Some(path), _) => io::frame_from_json(&read(path)?)?,
        (None, Some(f)) => TpsFrame::identity(Factorization::new(f.0, f.1)?),
        (None, None) => return Err(Failure::Usage("either --frame or --factors is required".into())),
    };
    let (first, second) = match a.pair.as_str() {
        "aa" => (Side::A, Side::A),
        "bb" => (Side::B, Side::B),
        _ => (Side::A, Side::B),
    };
    let report = check_zanardi(&subalgebra_generators(&frame, first), &subalgebra_generators(&frame, second))?;
    let text = format!(
        "independence={}\nmax_commutator_norm={}\ncompleteness={}\nspan_dimension={}/{}\n\
         local_accessibility=not_evaluated (physical criterion)\ninduces_tps={}\n",
        report.independent,
        num(report.max_commutator_norm),
        report.complete,
        report.span_dimension,
        report.full_dimension,
        report.induces_tps()
    );
    if a.out.is_some() {
        emit(&a.out, &text)?;
    }
    print!("{text}");
    Ok(())
}

fn load_gaussian(path: &Path) -> Result<GaussianState<f64>, Failure> {
    Ok(io::gaussian_from_json(&read(path)?)?)
}

pub fn gaussian(ctx: &Ctx, cmd: &GaussianCommand) -> Result<(), Failure> {
    match cmd {
        GaussianCommand::Williamson { input, out } => {
            let st = load_gaussian(input)?;
            let (s, nu) = williamson(&st.cov)?;
            let residual = williamson_residual(&st.cov, &s, &nu);
            println!("nu={}", list(&nu));
            println!("residual={}", num(residual));
            println!("symplectic_defect={}", num(s.defect()));
            if out.is_some() {
                let body = json!({ "nu": nu, "S": io::real_matrix_to_json(s.matrix()), "residual": residual });
                emit(out, &(serde_json::to_string_pretty(&body).expect("plain data") + "\n"))?;
            } else {
                println!("S={}", io::real_matrix_to_json(s.matrix()));
            }
        }
        GaussianCommand::Entangle { input, partition } => {
            let st = load_gaussian(input)?;
            let n = st.n_modes();
            let modes = one_based(partition, n)?;
            println!("purity={}", num(gaussian_purity(&st.cov)));
            if is_pure(&st.cov) {
                print!("{}", ctx.entropy_lines("entropy", gaussian_entropy_across(&st, &modes)?));
            } else if n != 2 {
                return Err(tpslab::Error::MixedState(gaussian_purity(&st.cov)).into());
            }
            if n == 2 && modes.len() == 1 {
                println!("log_negativity={}", num(log_negativity_two_mode(&st)?));
            }
        }
        GaussianCommand::Separate { input, out } => {
            let st = load_gaussian(input)?;
            let (_, moved) = mode_separating_transform(&st)?;
            let m = moved.cov.matrix();
            let mut cross = 0.0_f64;
            for i in 0..m.nrows() {
                for j in 0..m.ncols() {
                    if i / 2 != j / 2 {
                        cross = cross.max(m[(i, j)].abs());
                    }
                }
            }
            emit(out, &io::gaussian_to_json(&moved))?;
            println!("max_cross_block={}", num(cross));
            if moved.n_modes() == 2 {
                println!("log_negativity={}", num(log_negativity_two_mode(&moved)?));
            }
        }
        GaussianCommand::Random { modes, seed, max_squeeze, max_thermal, out } => {
            if *modes == 0 || *max_squeeze < 0.0 || *max_thermal < 1.0 {
                return Err(Failure::Usage("need --modes >= 1, --max-squeeze >= 0, --max-thermal >= 1".into()));
            }
            let mut rng = random::rng(*seed);
            let (cov, _) = random::random_covariance::<f64>(&mut rng, *modes, *max_squeeze, *max_thermal);
            emit(out, &io::gaussian_to_json(&GaussianState::centered(cov)))?;
        }
    }
    Ok(())
}

fn one_based(partition: &[usize], n: usize) -> Result<Vec<usize>, Failure> {
    let mut modes = Vec::with_capacity(partition.len());
    for &m in partition {
        if m == 0 || m > n {
            return Err(Failure::Usage(format!("partition mode {m} outside 1..={n}")));
        }
        modes.push(m - 1);
    }
    Ok(modes)
}

fn params(m: &Masses, kappa: f64) -> Result<TwoBodyParams<f64>, Failure> {
    Ok(TwoBodyParams::new(m.m1, m.m2, m.omega, kappa)?)
}

pub fn twobody(ctx: &Ctx, cmd: &TwobodyCommand) -> Result<(), Failure> {
    match cmd {
        TwobodyCommand::Sweep { masses, kappa, out } => {
            let rows = kappa
                .values()
                .par_iter()
                .map(|&k| {
                    let p = params(masses, k)?;
                    Ok([k, interparticle_entanglement(&p)?, internal_external_entanglement(&p)?])
                })
                .collect::<Result<Vec<_>, Failure>>()?;
            let mut header = vec!["kappa", "interparticle_entropy", "internal_external_entropy"];
            if ctx.bits {
                header.extend(["interparticle_entropy_bits", "internal_external_entropy_bits"]);
            }
            let mut csv = Csv::new(&header);
            for r in rows {
                if ctx.bits {
                    csv.row(&[r[0], r[1], r[2], bits(r[1]), bits(r[2])]);
                } else {
                    csv.row(&r);
                }
            }
            emit(out, &csv.finish())?;
        }
        TwobodyCommand::Ground { masses, kappa, out } => {
            let p = params(masses, *kappa)?;
            let gs = ground_state_covariance(&p)?;
            emit(out, &io::gaussian_to_json(&gs))?;
            let lines = ctx.entropy_lines("interparticle_entropy", interparticle_entropy(&gs)?)
                + &ctx.entropy_lines("internal_external_entropy", internal_external_entropy(&gs, &p)?);
            if out.is_some() {
                print!("{lines}");
            } else {
                eprint!("{lines}");
            }
        }
    }
    Ok(())
}

pub fn scatter(ctx: &Ctx, a: &ScatterArgs) -> Result<(), Failure> {
    let n = a.sites as usize;
    let xa = a.xa.unwrap_or(n as f64 / 4.0);
    let xb = a.xb.unwrap_or(3.0 * n as f64 / 4.0);
    let config = LatticeConfig::new(n, a.hop, a.g, Packet::new(xa, a.width, a.ka)?, Packet::new(xb, a.width, a.kb)?)?;
    let times = a.times.as_ref().map_or_else(|| default_times(&config), Range::values);
    let history = entanglement_history(&config, &times)?;
    let mut header = vec!["t", "entropy_nats"];
    if ctx.bits {
        header.push("entropy_bits");
    }
    let mut csv = Csv::new(&header);
    for (t, s) in history {
        if ctx.bits {
            csv.row(&[t, s, bits(s)]);
        } else {
            csv.row(&[t, s]);
        }
    }
    emit(&a.out, &csv.finish())
}
