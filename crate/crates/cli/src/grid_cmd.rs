//! `wavreg grid`: sample a closed-form model solution to a grid file that
//! `analyze` and `nterm` can consume.

use std::path::PathBuf;

use serde_json::json;
use wavreg_core::{corner_singularity, flat_singularity, smooth_bump, Ball, DomainSpec};

use crate::run::{CmdResult, Fail, RunConfig};

pub struct GridArgs {
    pub model: String,
    pub level: u32,
    pub p: f64,
    pub omega: f64,
    pub out: PathBuf,
    pub seed: u64,
}

pub fn cmd_grid(args: GridArgs) -> CmdResult {
    let g = match args.model.as_str() {
        "bump" => smooth_bump(
            &DomainSpec::UnitSquare,
            args.level,
            Ball { center: [0.5, 0.5], radius: 0.25, delta: 0.0 },
        )?,
        "flat" => flat_singularity(
            args.p,
            &DomainSpec::ScaledCube { origin: [-1.0, -1.0], side: 2.0 },
            args.level,
        )?,
        "corner" => corner_singularity(args.omega, args.level)?,
        other => {
            return Err(Fail::Precondition(format!(
                "unknown model '{other}'; expected bump, flat, or corner"
            )))
        }
    };
    g.save(&args.out)?;
    let sidecar = args.out.with_extension("bin");
    println!(
        "{} at level {} ({} samples) -> {}",
        args.model,
        args.level,
        g.samples.len(),
        args.out.display()
    );
    RunConfig {
        command: "grid",
        seed: args.seed,
        params: json!({
            "model": args.model,
            "level": args.level,
            "p": args.p,
            "omega": args.omega,
            "out": args.out.display().to_string(),
        }),
    }
    .write_manifest(&args.out, &[&args.out, &sidecar])
}
