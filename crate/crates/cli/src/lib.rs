//! The `tpslab` command-line program.
//!
//! Exit codes: 0 on success, 2 on usage errors, 1 on computation or I/O
//! errors. Computation errors print one JSON line on stderr,
//! `{"error":"<kind>","message":"..."}`.

mod args;
mod commands;
mod config;
mod report;

use std::ffi::OsString;

use clap::Parser;

pub use args::{Cli, Command};
pub use config::ExperimentConfig;
pub use report::num as format_number;

pub const THREADS_ENV: &str = "TPSLAB_THREADS";

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Compute(tpslab::Error),
    Io(String),
}

impl From<tpslab::Error> for Failure {
    fn from(e: tpslab::Error) -> Self {
        Failure::Compute(e)
    }
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Compute(_) | Failure::Io(_) => 1,
        }
    }

    fn report(&self) {
        match self {
            Failure::Usage(msg) => eprintln!("usage error: {msg}"),
            Failure::Compute(e) => {
                eprintln!("{}", serde_json::json!({ "error": e.kind(), "message": e.to_string() }))
            }
            Failure::Io(msg) => eprintln!("{}", serde_json::json!({ "error": "io", "message": msg })),
        }
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Usage(format!("{THREADS_ENV} must be a positive integer, got {raw:?}")))?;
    // A second call in the same process keeps the first pool.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn dispatch(cli: Cli) -> Result<(), Failure> {
    let ctx = commands::Ctx { bits: cli.bits };
    match &cli.command {
        Command::Tailor(a) => commands::tailor(&ctx, a),
        Command::Zanardi(a) => commands::zanardi(a),
        Command::Gaussian(c) => commands::gaussian(&ctx, c),
        Command::Twobody(c) => commands::twobody(&ctx, c),
        Command::Scatter(a) => commands::scatter(&ctx, a),
        Command::Run(a) => {
            let text = std::fs::read_to_string(&a.config)
                .map_err(|e| Failure::Usage(format!("{}: {e}", a.config.display())))?;
            let config = ExperimentConfig::parse(&text).map_err(Failure::Usage)?;
            let mut argv: Vec<OsString> = vec!["tpslab".into()];
            argv.extend(config.to_args(cli.bits).map_err(Failure::Usage)?);
            let inner = Cli::try_parse_from(argv).map_err(|e| Failure::Usage(e.to_string()))?;
            if matches!(inner.command, Command::Run(_)) {
                return Err(Failure::Usage("configs cannot nest run".into()));
            }
            dispatch(inner)
        }
    }
}

/// Runs the program on `argv` (including the program name) and returns the exit code.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match configure_threads().and_then(|()| dispatch(cli)) {
        Ok(()) => 0,
        Err(f) => {
            f.report();
            f.exit_code()
        }
    }
}
