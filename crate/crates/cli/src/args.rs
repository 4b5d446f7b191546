use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "tpslab", version, about = "Entanglement relative to observable-induced tensor product structures")]
pub struct Cli {
    /// Also report entropies in bits.
    #[arg(long, global = true)]
    pub bits: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a frame giving a pure state a chosen Schmidt spectrum.
    Tailor(TailorArgs),
    /// Check subsystem independence and completeness of a frame's subalgebras.
    Zanardi(ZanardiArgs),
    /// Gaussian state tools.
    #[command(subcommand)]
    Gaussian(GaussianCommand),
    /// Two trapped, coupled particles.
    #[command(subcommand)]
    Twobody(TwobodyCommand),
    /// Entanglement history of two wave packets colliding on a ring.
    Scatter(ScatterArgs),
    /// Run an experiment described by a JSON config file.
    Run(RunArgs),
}

#[derive(Debug, Args)]
pub struct TailorArgs {
    /// Pure state JSON.
    #[arg(long, conflicts_with = "random_dim", required_unless_present = "random_dim")]
    pub state: Option<PathBuf>,
    /// Use a Haar-random state of this dimension instead of --state.
    #[arg(long)]
    pub random_dim: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Factor dimensions k1,k2.
    #[arg(long)]
    pub factors: Factors,
    /// Target Schmidt probabilities; missing trailing entries are zero.
    #[arg(long, value_delimiter = ',', num_args = 1.., allow_negative_numbers = true)]
    pub target: Vec<f64>,
    /// Frame JSON output (stdout when omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ZanardiArgs {
    /// Frame JSON; identity frame on --factors when omitted.
    #[arg(long, required_unless_present = "factors")]
    pub frame: Option<PathBuf>,
    #[arg(long, conflicts_with = "frame")]
    pub factors: Option<Factors>,
    /// Which subalgebras to pair: ab (the frame's two factors), aa or bb.
    #[arg(long, default_value = "ab", value_parser = ["ab", "aa", "bb"])]
    pub pair: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum GaussianCommand {
    /// Williamson normal form of a covariance matrix.
    Williamson {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Entanglement of the listed modes (1-based) against the rest.
    Entangle {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        partition: Vec<usize>,
    },
    /// Move a state into its mode-separating frame.
    Separate {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Random valid covariance matrix.
    Random {
        #[arg(long)]
        modes: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest single-mode squeezing parameter.
        #[arg(long, default_value_t = 1.0)]
        max_squeeze: f64,
        /// Largest symplectic eigenvalue; 1 gives a pure state.
        #[arg(long, default_value_t = 1.0)]
        max_thermal: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct Masses {
    #[arg(long, default_value_t = 1.0)]
    pub m1: f64,
    #[arg(long, default_value_t = 1.0)]
    pub m2: f64,
    /// Trap frequency.
    #[arg(long, default_value_t = 1.0)]
    pub omega: f64,
}

#[derive(Debug, Subcommand)]
pub enum TwobodyCommand {
    /// Ground-state entanglement over a range of couplings.
    Sweep {
        #[command(flatten)]
        masses: Masses,
        /// Coupling range start:stop:step (stop included).
        #[arg(long)]
        kappa: Range,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Ground state for one coupling, in mass-scaled particle quadratures.
    Ground {
        #[command(flatten)]
        masses: Masses,
        #[arg(long)]
        kappa: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct ScatterArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(8..=48))]
    pub sites: u64,
    #[arg(long, default_value_t = 1.0)]
    pub hop: f64,
    /// Contact interaction strength.
    #[arg(long, allow_negative_numbers = true)]
    pub g: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub ka: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub kb: f64,
    /// Packet centers; default N/4 and 3N/4.
    #[arg(long)]
    pub xa: Option<f64>,
    #[arg(long)]
    pub xb: Option<f64>,
    #[arg(long, default_value_t = 2.0)]
    pub width: f64,
    /// Sample times start:stop:step; default spans twice the collision time.
    #[arg(long)]
    pub times: Option<Range>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(long)]
    pub config: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Factors(pub usize, pub usize);

impl FromStr for Factors {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 2 {
            return Err(format!("expected k1,k2, got {s:?}"));
        }
        let k = |p: &str| p.trim().parse::<usize>().map_err(|e| format!("bad factor {p:?}: {e}"));
        let (k1, k2) = (k(parts[0])?, k(parts[1])?);
        if k1 < 2 || k2 < 2 {
            return Err(format!("factors must be at least 2, got {k1},{k2}"));
        }
        Ok(Factors(k1, k2))
    }
}

const MAX_RANGE_POINTS: usize = 1_000_000;

/// `start:stop:step` with the stop value included when it lands on the grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl Range {
    pub fn len(&self) -> usize {
        ((self.stop - self.start) / self.step + 1e-9).floor() as usize + 1
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.start + i as f64 * self.step).collect()
    }
}

impl FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("expected start:stop:step, got {s:?}"));
        }
        let num = |p: &str| p.trim().parse::<f64>().map_err(|e| format!("bad number {p:?}: {e}"));
        let r = Range { start: num(parts[0])?, stop: num(parts[1])?, step: num(parts[2])? };
        if ![r.start, r.stop, r.step].iter().all(|x| x.is_finite()) {
            return Err("range values must be finite".into());
        }
        if r.step <= 0.0 {
            return Err(format!("step must be positive, got {}", r.step));
        }
        if r.stop < r.start {
            return Err(format!("stop {} is below start {}", r.stop, r.start));
        }
        if (r.stop - r.start) / r.step >= MAX_RANGE_POINTS as f64 {
            return Err(format!("range has more than {MAX_RANGE_POINTS} points"));
        }
        Ok(r)
    }
}
