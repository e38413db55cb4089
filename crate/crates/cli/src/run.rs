//! Shared plumbing: run configuration with manifest output, failure kinds
//! mapped to exit codes, and flag parsing helpers.

use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use wavreg_core::jsonio;

/// Failure classes of a command, mapped to process exit codes: parameter,
/// file, or format problems exit with 2; a verification suite that ran but
/// failed its hard checks exits with 3.
#[derive(Debug)]
pub enum Fail {
    Precondition(String),
    SuiteFailure(String),
}

impl Fail {
    pub fn exit_code(&self) -> i32 {
        match self {
            Fail::Precondition(_) => 2,
            Fail::SuiteFailure(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Fail::Precondition(m) | Fail::SuiteFailure(m) => m,
        }
    }
}

impl From<wavreg_core::Error> for Fail {
    fn from(e: wavreg_core::Error) -> Self {
        Fail::Precondition(e.to_string())
    }
}

pub type CmdResult = Result<(), Fail>;

/// One resolved run: the command name, the seed, and every parameter that
/// determines the outputs. Writing the manifest next to the primary output
/// makes each artifact reproducible from the manifest alone.
pub struct RunConfig {
    pub command: &'static str,
    pub seed: u64,
    pub params: Value,
}

impl RunConfig {
    /// Write `<out stem>.manifest.json` next to the primary output, echoing
    /// the resolved parameters, the seed, the library version, and the list
    /// of files the run produced.
    pub fn write_manifest(&self, primary_out: &Path, outputs: &[&Path]) -> CmdResult {
        let manifest = json!({
            "command": self.command,
            "library": {"name": "wavreg-core", "version": wavreg_core::VERSION},
            "cli_version": env!("CARGO_PKG_VERSION"),
            "seed": self.seed,
            "params": self.params,
            "outputs": outputs.iter().map(|p| p.display().to_string()).collect::<Vec<_>>(),
        });
        let path = manifest_path(primary_out);
        jsonio::write_atomic(&path, jsonio::to_string_17(&manifest).as_bytes())
            .map_err(Fail::from)
    }
}

/// `fig.csv` -> `fig.manifest.json`.
pub fn manifest_path(out: &Path) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    out.with_file_name(format!("{stem}.manifest.json"))
}

/// Parse `"2"` into one value or `"1:5:0.01"` into an inclusive grid.
pub fn parse_grid_1d(s: &str) -> Result<Vec<f64>, Fail> {
    if !s.contains(':') {
        let v: f64 = s
            .parse()
            .map_err(|_| Fail::Precondition(format!("cannot parse '{s}' as a number")))?;
        return Ok(vec![v]);
    }
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(Fail::Precondition(format!(
            "range must be start:end:step, got '{s}'"
        )));
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|t| {
            t.parse::<f64>()
                .map_err(|_| Fail::Precondition(format!("cannot parse '{t}' as a number")))
        })
        .collect::<Result<_, _>>()?;
    let (start, end, step) = (nums[0], nums[1], nums[2]);
    if !(step > 0.0) || end < start {
        return Err(Fail::Precondition(format!(
            "range needs end >= start and step > 0, got '{s}'"
        )));
    }
    let count = ((end - start) / step).round() as usize;
    if count > 1_000_000 {
        return Err(Fail::Precondition(format!("range '{s}' has more than 10^6 points")));
    }
    // Index-based evaluation keeps the grid free of accumulated rounding.
    let mut grid: Vec<f64> = (0..=count).map(|i| start + i as f64 * step).collect();
    if let Some(last) = grid.last_mut() {
        if (*last - end).abs() <= step * 1e-9 {
            *last = end;
        }
    }
    grid.retain(|&v| v <= end + step * 1e-9);
    Ok(grid)
}

/// Parse a comma-separated list of floats.
pub fn parse_f64_list(s: &str) -> Result<Vec<f64>, Fail> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Fail::Precondition(format!("cannot parse '{t}' as a number")))
        })
        .collect()
}

/// Parse a comma-separated list of budgets.
pub fn parse_usize_list(s: &str) -> Result<Vec<usize>, Fail> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Fail::Precondition(format!("cannot parse '{t}' as a budget")))
        })
        .collect()
}

/// Write text atomically, mapping errors to precondition failures.
pub fn write_text(path: &Path, text: &str) -> CmdResult {
    jsonio::write_atomic(path, text.as_bytes()).map_err(Fail::from)
}
