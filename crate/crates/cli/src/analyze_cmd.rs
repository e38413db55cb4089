//! `wavreg analyze`: wavelet transform of a grid file with boundary-band
//! classification, requested quasi-norms with per-level profiles, and
//! optional Hoelder oracles.

use std::path::PathBuf;

use serde_json::{json, Value};
use wavreg_core::domain::{GridFunction, Lp};
use wavreg_core::jsonio;
use wavreg_core::quasinorm::{
    adaptivity_level_sums, adaptivity_quasinorm, besov_level_sums, besov_quasinorm_wavelet,
    split_norm_contributions, tau_from_sigma,
};
use wavreg_core::seminorms::{
    hoelder_seminorm_seeded, weighted_hoelder_seminorm, HolderParams, Region,
};
use wavreg_core::wavelet::{analyze, classify, coefficients_csv, BandClass};

use crate::run::{parse_f64_list, write_text, CmdResult, RunConfig};

pub struct AnalyzeArgs {
    pub grid: PathBuf,
    pub m: usize,
    pub j0: u32,
    pub p: f64,
    pub sigma: Option<String>,
    pub s: Option<String>,
    pub split: bool,
    pub c: f64,
    pub holder: bool,
    pub ell: u32,
    pub alpha: f64,
    pub gamma: Option<f64>,
    pub coeffs_out: Option<PathBuf>,
    pub out: PathBuf,
    pub seed: u64,
}

pub fn cmd_analyze(args: AnalyzeArgs) -> CmdResult {
    let g = GridFunction::load(&args.grid)?;
    let coeffs = analyze(&g, args.m, args.j0, args.p)?;
    let cls = classify(&coeffs, &g.domain, args.c)?;

    let mut per_level = Vec::new();
    for lev in &cls.levels {
        let mut boundary = 0usize;
        let mut interior = 0usize;
        let mut dropped = 0usize;
        for lab in &lev.labels {
            match lab {
                Some(l) if l.class == BandClass::Boundary => boundary += 1,
                Some(_) => interior += 1,
                None => dropped += 1,
            }
        }
        per_level.push(json!({
            "j": lev.j,
            "boundary": boundary,
            "interior": interior,
            "dropped": dropped,
        }));
    }

    let mut report = json!({
        "grid": {
            "file": args.grid.display().to_string(),
            "d": g.d,
            "level": g.level,
            "domain": serde_json::to_value(&g.domain).map_err(wavreg_core::Error::from)?,
            "samples": g.samples.len(),
        },
        "transform": {
            "m": coeffs.m,
            "j0": coeffs.j0,
            "level": coeffs.level,
            "p_norm": coeffs.p_norm,
        },
        "classification": {
            "c": cls.c,
            "c0": cls.c0,
            "per_level": per_level,
        },
        "lp_norm": {
            "p": args.p,
            "domain": g.lp_norm(Lp::P(args.p), true),
            "cube": g.lp_norm(Lp::P(args.p), false),
        },
    });

    if let Some(list) = &args.sigma {
        let mut entries = Vec::new();
        for sigma in parse_f64_list(list)? {
            let tau = tau_from_sigma(sigma, 2, args.p)?;
            let sums = adaptivity_level_sums(&coeffs, sigma, args.p)?;
            let value = adaptivity_quasinorm(&coeffs, sigma, args.p)?;
            let mut entry = json!({
                "sigma": sigma,
                "tau": tau,
                "quasinorm": value,
                "per_level": sums.iter().map(|&(j, v)| json!([j, v])).collect::<Vec<_>>(),
            });
            if args.split {
                let split = split_norm_contributions(&coeffs, &g.domain, sigma, args.p, args.c)?;
                entry["split"] = split.to_json();
            }
            entries.push(entry);
        }
        report["adaptivity"] = Value::Array(entries);
    }

    if let Some(list) = &args.s {
        let mut entries = Vec::new();
        for s in parse_f64_list(list)? {
            let sums = besov_level_sums(&coeffs, s, args.p)?;
            let value = besov_quasinorm_wavelet(&coeffs, s, args.p)?;
            entries.push(json!({
                "s": s,
                "p": args.p,
                "quasinorm": value,
                "per_level": sums.iter().map(|&(j, v)| json!([j, v])).collect::<Vec<_>>(),
            }));
        }
        report["besov"] = Value::Array(entries);
    }

    if args.holder {
        let region = Region::cube(g.bbox.origin, g.bbox.side);
        let prm = HolderParams::new(args.ell, args.alpha);
        let value = hoelder_seminorm_seeded(&g, &region, &prm, args.seed)?;
        let mut entry = json!({
            "ell": args.ell,
            "alpha": args.alpha,
            "seminorm": value,
        });
        if let Some(gamma) = args.gamma {
            let wp = HolderParams::weighted(args.ell, args.alpha, gamma);
            entry["weighted"] = json!({
                "gamma": gamma,
                "seminorm": weighted_hoelder_seminorm(&g, &g.domain.clone(), &wp, args.c)?,
            });
        }
        report["hoelder"] = entry;
    }

    write_text(&args.out, &jsonio::to_string_17(&report))?;
    let mut outputs: Vec<&std::path::Path> = vec![&args.out];
    if let Some(cpath) = &args.coeffs_out {
        write_text(cpath, &coefficients_csv(&coeffs, &cls))?;
        outputs.push(cpath);
    }
    println!("report -> {}", args.out.display());

    RunConfig {
        command: "analyze",
        seed: args.seed,
        params: json!({
            "grid": args.grid.display().to_string(),
            "m": args.m,
            "j0": args.j0,
            "p": args.p,
            "sigma": args.sigma,
            "s": args.s,
            "split": args.split,
            "c": args.c,
            "holder": args.holder,
            "ell": args.ell,
            "alpha": args.alpha,
            "gamma": args.gamma,
            "coeffs_out": args.coeffs_out.as_ref().map(|p| p.display().to_string()),
            "out": args.out.display().to_string(),
        }),
    }
    .write_manifest(&args.out, &outputs)
}
