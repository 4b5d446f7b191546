//! `run --config`: a JSON description of one command invocation.
//!
//! ```json
//! {"command": "twobody", "parameters": {"action": "sweep", "kappa": "0:4:1"}, "output": "sweep.csv"}
//! ```
//!
//! Parameters become `--key value` flags (underscores turn into hyphens,
//! arrays are comma-joined, `true` is a bare flag). `gaussian` and `twobody`
//! take their subcommand from `action`.

use std::collections::BTreeMap;
use std::ffi::OsString;

use serde::Deserialize;
use serde_json::Value;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub command: String,
    #[serde(default)]
    pub parameters: BTreeMap<String, Value>,
    pub seed: Option<u64>,
    pub output: Option<String>,
}

const COMMANDS: [&str; 5] = ["tailor", "zanardi", "gaussian", "twobody", "scatter"];

fn scalar(v: &Value) -> Result<String, String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        other => Err(format!("unsupported parameter value {other}")),
    }
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self, String> {
        serde_json::from_str(text).map_err(|e| format!("invalid config: {e}"))
    }

    /// Equivalent command line, without the program name.
    pub fn to_args(&self, bits: bool) -> Result<Vec<OsString>, String> {
        if !COMMANDS.contains(&self.command.as_str()) {
            return Err(format!("unknown command {:?}, expected one of {}", self.command, COMMANDS.join(", ")));
        }
        let mut args: Vec<OsString> = vec![self.command.clone().into()];
        let mut params = self.parameters.clone();
        if matches!(self.command.as_str(), "gaussian" | "twobody") {
            match params.remove("action") {
                Some(Value::String(a)) => args.push(a.into()),
                _ => return Err(format!("{} needs a string \"action\" parameter", self.command)),
            }
        }
        for (key, value) in &params {
            let flag = format!("--{}", key.replace('_', "-"));
            match value {
                Value::Bool(true) => args.push(flag.into()),
                Value::Bool(false) => {}
                Value::Array(items) => {
                    let joined = items.iter().map(scalar).collect::<Result<Vec<_>, _>>()?.join(",");
                    args.push(format!("{flag}={joined}").into());
                }
                other => args.push(format!("{flag}={}", scalar(other)?).into()),
            }
        }
        if let Some(seed) = self.seed {
            args.push(format!("--seed={seed}").into());
        }
        if let Some(out) = &self.output {
            args.push("--out".into());
            args.push(out.into());
        }
        if bits {
            args.push("--bits".into());
        }
        Ok(args)
    }
}
