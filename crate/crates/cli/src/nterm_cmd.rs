//! `wavreg nterm`: best n-term and uniform approximation error curves with
//! decay slopes. Slopes are reported as null, with a reason flag, when the
//! curve is exact or sits at the quadrature floor.

use std::path::PathBuf;

use serde_json::{json, Value};
use wavreg_core::approx::{adaptive_rows, comparison_rows, decay_slope, default_window, fit_points};
use wavreg_core::domain::GridFunction;
use wavreg_core::jsonio;
use wavreg_core::wavelet::analyze;

use crate::run::{parse_usize_list, write_text, CmdResult, RunConfig};

pub struct NtermArgs {
    pub grid: PathBuf,
    pub m: usize,
    pub j0: u32,
    pub p: f64,
    pub budgets: Option<String>,
    pub out: PathBuf,
    pub json_out: Option<PathBuf>,
    pub seed: u64,
}

/// Slope diagnostics of one error curve: the fitted slope when defined,
/// the first budget where the curve hits exactly zero, and whether points
/// had to be discarded at the rounding/quadrature floor.
fn curve_summary(points: &[(f64, f64)], window: (f64, f64)) -> Value {
    let usable = fit_points(points);
    let exact_at = points.iter().find(|&&(_, e)| e == 0.0).map(|&(n, _)| n as u64);
    let positive = points.iter().filter(|&&(_, e)| e > 0.0).count();
    let floor_limited = usable.len() < positive || exact_at.is_some();
    let slope = decay_slope(&usable, window).ok();
    json!({
        "slope": slope,
        "exact_at": exact_at,
        "floor_limited": floor_limited,
    })
}

pub fn cmd_nterm(args: NtermArgs) -> CmdResult {
    let g = GridFunction::load(&args.grid)?;
    let coeffs = analyze(&g, args.m, args.j0, args.p)?;
    let json_path =
        args.json_out.clone().unwrap_or_else(|| args.out.with_extension("json"));

    let summary = if let Some(list) = &args.budgets {
        let budgets = parse_usize_list(list)?;
        let (budgets, errors) = adaptive_rows(&coeffs, &budgets, args.p)?;
        let mut csv = String::from("n,error\n");
        for (&n, &e) in budgets.iter().zip(&errors) {
            csv.push_str(&format!("{n},{}\n", jsonio::fmt_f64(e)));
        }
        write_text(&args.out, &csv)?;
        let pts: Vec<(f64, f64)> =
            budgets.iter().zip(&errors).map(|(&n, &e)| (n as f64, e)).collect();
        let window = default_window(&fit_points(&pts));
        json!({
            "mode": "adaptive",
            "window": [window.0, window.1],
            "adaptive": curve_summary(&pts, window),
        })
    } else {
        let rows = comparison_rows(&coeffs, args.p)?;
        let mut csv = String::from("n,error_adaptive,error_uniform\n");
        for &(n, ea, eu) in &rows {
            csv.push_str(&format!(
                "{n},{},{}\n",
                jsonio::fmt_f64(ea),
                jsonio::fmt_f64(eu)
            ));
        }
        write_text(&args.out, &csv)?;
        let pts_a: Vec<(f64, f64)> = rows.iter().map(|&(n, ea, _)| (n as f64, ea)).collect();
        let pts_u: Vec<(f64, f64)> = rows.iter().map(|&(n, _, eu)| (n as f64, eu)).collect();
        // Shared fit window over budgets where both curves are above floor.
        let good_a = fit_points(&pts_a);
        let good_u = fit_points(&pts_u);
        let shared: Vec<(f64, f64)> = good_a
            .iter()
            .copied()
            .filter(|&(n, _)| good_u.iter().any(|&(nu, _)| nu == n))
            .collect();
        let window = default_window(&shared);
        json!({
            "mode": "comparison",
            "window": [window.0, window.1],
            "adaptive": curve_summary(&pts_a, window),
            "uniform": curve_summary(&pts_u, window),
        })
    };
    write_text(&json_path, &jsonio::to_string_17(&summary))?;

    let show = |v: &Value| match v {
        Value::Null => "null (flagged)".to_string(),
        v => jsonio::fmt_f64(v.as_f64().unwrap_or(f64::NAN)),
    };
    match summary["mode"].as_str() {
        Some("comparison") => println!(
            "slope_adaptive = {}, slope_uniform = {}",
            show(&summary["adaptive"]["slope"]),
            show(&summary["uniform"]["slope"])
        ),
        _ => println!("slope = {}", show(&summary["adaptive"]["slope"])),
    }

    RunConfig {
        command: "nterm",
        seed: args.seed,
        params: json!({
            "grid": args.grid.display().to_string(),
            "m": args.m,
            "j0": args.j0,
            "p": args.p,
            "budgets": args.budgets,
            "out": args.out.display().to_string(),
            "json": json_path.display().to_string(),
        }),
    }
    .write_manifest(&args.out, &[&args.out, &json_path])
}
