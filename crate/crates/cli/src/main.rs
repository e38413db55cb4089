//! Command-line front end for the wavreg toolkit: closed-form regularity
//! bound tables, model-grid generation, wavelet-based function analysis,
//! n-term approximation studies, and the verification suites.
//!
//! Outputs are data-only (CSV/JSON), written atomically, with every float
//! at 17 significant digits; identical invocations produce byte-identical
//! files. Each run writes a `<out stem>.manifest.json` echoing the resolved
//! parameters and library version, so any artifact can be regenerated from
//! its manifest alone. Exit codes: 0 success, 2 precondition violation,
//! 3 numerical-suite failure.

mod analyze_cmd;
mod bounds_cmd;
mod grid_cmd;
mod nterm_cmd;
mod run;
mod verify_cmd;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "wavreg", version, about = "Wavelet-based Besov regularity toolkit")]
struct Cli {
    /// Seed for any subsampled oracle (Hoelder pair sampling).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Closed-form regularity bounds over p: CSV profile plus a summary
    /// with branch-change annotations.
    Bounds {
        /// Single value "2" or inclusive range "1:5:0.01"; uncovered grid
        /// points are skipped in ranges.
        #[arg(long)]
        p: String,
        /// Integrability of the right-hand side: a number or "inf".
        #[arg(long)]
        q: String,
        /// Domain class: "lipschitz" or "polygonal".
        #[arg(long)]
        domain: String,
        /// Output CSV path (summary JSON lands next to it).
        #[arg(long)]
        out: PathBuf,
    },
    /// Sample a closed-form model solution to a grid file.
    Grid {
        /// Model: "bump", "flat", or "corner".
        #[arg(long)]
        model: String,
        /// Dyadic refinement level J (2^J cells per side).
        #[arg(long)]
        level: u32,
        /// Exponent of the flat model's p-Poisson equation.
        #[arg(long, default_value_t = 4.0)]
        p: f64,
        /// Interior angle of the corner model in radians.
        #[arg(long, default_value_t = 1.5 * std::f64::consts::PI)]
        omega: f64,
        /// Output grid header path (samples land in a .bin sidecar).
        #[arg(long)]
        out: PathBuf,
    },
    /// Wavelet-analyze a grid file: classification, quasi-norms with
    /// per-level profiles, optional Hoelder oracles.
    Analyze {
        /// Grid file produced by `wavreg grid` (or compatible).
        #[arg(long)]
        grid: PathBuf,
        /// Vanishing moments of the Daubechies system.
        #[arg(long, default_value_t = 3)]
        m: usize,
        /// Coarsest decomposition level.
        #[arg(long, default_value_t = 2)]
        j0: u32,
        /// Ambient integrability p for renormalization and norms.
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        /// Comma-separated sigma values on the adaptivity scale.
        #[arg(long)]
        sigma: Option<String>,
        /// Comma-separated s values for B^s_p wavelet norms.
        #[arg(long)]
        s: Option<String>,
        /// Split adaptivity norms into boundary/interior contributions.
        #[arg(long)]
        split: bool,
        /// Distance-band family ratio c > 1.
        #[arg(long, default_value_t = 2.0)]
        c: f64,
        /// Compute the Hoelder semi-norm oracle on the bounding cube.
        #[arg(long)]
        holder: bool,
        /// Hoelder smoothness integer part.
        #[arg(long, default_value_t = 1)]
        ell: u32,
        /// Hoelder smoothness fractional part in (0, 1].
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        /// Weight exponent: adds the weighted Hoelder semi-norm.
        #[arg(long)]
        gamma: Option<f64>,
        /// Optional CSV dump of all retained coefficients with band labels.
        #[arg(long)]
        coeffs: Option<PathBuf>,
        /// Output report JSON path.
        #[arg(long)]
        out: PathBuf,
    },
    /// Best n-term vs uniform approximation error curves with decay slopes.
    Nterm {
        /// Grid file produced by `wavreg grid` (or compatible).
        #[arg(long)]
        grid: PathBuf,
        /// Vanishing moments of the Daubechies system.
        #[arg(long, default_value_t = 3)]
        m: usize,
        /// Coarsest decomposition level.
        #[arg(long, default_value_t = 2)]
        j0: u32,
        /// Error norm exponent p.
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        /// Comma-separated budgets for an adaptive-only curve; default is
        /// the matched-budget adaptive vs uniform comparison.
        #[arg(long)]
        budgets: Option<String>,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
        /// Output JSON path (default: CSV path with .json).
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Run a named verification suite: tables, wavelet-core,
    /// seminorm-oracles, or embedding.
    Verify {
        /// Suite name.
        suite: String,
        /// Report JSON path (default: verify-<suite>.json).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() {
    let cli = Cli::parse();
    let seed = cli.seed;
    let result = match cli.command {
        Cmd::Bounds { p, q, domain, out } => {
            bounds_cmd::cmd_bounds(bounds_cmd::BoundsArgs { p, q, domain, out, seed })
        }
        Cmd::Grid { model, level, p, omega, out } => {
            grid_cmd::cmd_grid(grid_cmd::GridArgs { model, level, p, omega, out, seed })
        }
        Cmd::Analyze {
            grid,
            m,
            j0,
            p,
            sigma,
            s,
            split,
            c,
            holder,
            ell,
            alpha,
            gamma,
            coeffs,
            out,
        } => analyze_cmd::cmd_analyze(analyze_cmd::AnalyzeArgs {
            grid,
            m,
            j0,
            p,
            sigma,
            s,
            split,
            c,
            holder,
            ell,
            alpha,
            gamma,
            coeffs_out: coeffs,
            out,
            seed,
        }),
        Cmd::Nterm { grid, m, j0, p, budgets, out, json } => {
            nterm_cmd::cmd_nterm(nterm_cmd::NtermArgs {
                grid,
                m,
                j0,
                p,
                budgets,
                out,
                json_out: json,
                seed,
            })
        }
        Cmd::Verify { suite, out } => {
            verify_cmd::cmd_verify(verify_cmd::VerifyArgs { suite, out, seed })
        }
    };
    if let Err(fail) = result {
        eprintln!("error: {}", fail.message());
        std::process::exit(fail.exit_code());
    }
}
