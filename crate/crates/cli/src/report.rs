//! Deterministic text, CSV and file output.

use std::io::Write;
use std::path::Path;

/// Decimal with 12 significant digits; scientific outside `[1e-5, 1e15)`.
pub fn num(x: f64) -> String {
    let x = x + 0.0;
    if x == 0.0 {
        return format!("{:.11}", 0.0);
    }
    if !x.is_finite() {
        return x.to_string();
    }
    // Exponent after rounding to 12 digits, so 0.99999999999999 counts as 1.
    let sci = format!("{:.11e}", x);
    let exp: i32 = sci[sci.find('e').unwrap() + 1..].parse().unwrap();
    if (-5..15).contains(&exp) {
        format!("{:.*}", (11 - exp).max(0) as usize, x)
    } else {
        sci
    }
}

pub fn list(xs: &[f64]) -> String {
    xs.iter().map(|&x| num(x)).collect::<Vec<_>>().join(",")
}

pub fn bits(nats: f64) -> f64 {
    nats / std::f64::consts::LN_2
}

pub struct Csv {
    text: String,
}

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        Self { text: format!("{}\n", header.join(",")) }
    }

    pub fn row(&mut self, values: &[f64]) {
        self.text.push_str(&list(values));
        self.text.push('\n');
    }

    pub fn finish(self) -> String {
        self.text
    }
}

/// Writes through a temporary file in the same directory, then renames.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
