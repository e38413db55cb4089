//! `wavreg bounds`: closed-form regularity bound profiles over p, with
//! branch-change annotations.

use std::path::PathBuf;
use std::str::FromStr;

use serde_json::json;
use wavreg_core::bounds::{figure1_csv, figure1_data, s_star, sigma_bar, DomainClass, Integrability};
use wavreg_core::jsonio;

use crate::run::{parse_grid_1d, write_text, CmdResult, Fail, RunConfig};

pub struct BoundsArgs {
    pub p: String,
    pub q: String,
    pub domain: String,
    pub out: PathBuf,
    pub seed: u64,
}

pub fn cmd_bounds(args: BoundsArgs) -> CmdResult {
    let class = DomainClass::from_str(&args.domain).map_err(Fail::from)?;
    let q = Integrability::from_str(&args.q).map_err(Fail::from)?;
    let p_grid = parse_grid_1d(&args.p)?;
    let sweep = p_grid.len() > 1;

    // Sweeps skip uncovered grid points; a single uncovered point is an error.
    let covered: Vec<f64> = if sweep {
        p_grid.iter().copied().filter(|&p| sigma_bar(class, p, q).is_ok()).collect()
    } else {
        sigma_bar(class, p_grid[0], q).map_err(Fail::from)?;
        p_grid.clone()
    };
    if covered.is_empty() {
        return Err(Fail::Precondition(format!(
            "no point of the p-range '{}' is covered by the {} table at q = {}",
            args.p,
            class.label(),
            args.q
        )));
    }
    let rows = figure1_data(&covered, q, class).map_err(Fail::from)?;
    write_text(&args.out, &figure1_csv(&rows))?;

    // Branch-change annotations between consecutive grid points.
    let mut changes = Vec::new();
    for w in rows.windows(2) {
        if w[0].branch != w[1].branch {
            changes.push(json!({
                "p_left": w[0].p,
                "p_right": w[1].p,
                "from": w[0].branch,
                "to": w[1].branch,
            }));
        }
    }
    let mut summary = json!({
        "domain": class.label(),
        "q": args.q,
        "rows": rows.len(),
        "skipped": p_grid.len() - covered.len(),
        "branch_changes": changes,
    });
    if !sweep {
        let b = sigma_bar(class, covered[0], q).map_err(Fail::from)?;
        let star = s_star(covered[0]).map_err(Fail::from)?;
        summary["point"] = json!({
            "p": covered[0],
            "sigma_bar": b.to_json(),
            "s_star": star,
        });
        println!(
            "sigma_bar = {} via {}; s_star = {}",
            b.value,
            b.branch,
            jsonio::fmt_f64(star)
        );
        if let Some(c) = &b.caveat {
            println!("caveat: {c}");
        }
    } else {
        println!(
            "{} rows ({} skipped), {} branch changes",
            rows.len(),
            p_grid.len() - covered.len(),
            summary["branch_changes"].as_array().map(|a| a.len()).unwrap_or(0)
        );
    }
    let summary_path = args.out.with_extension("summary.json");
    write_text(&summary_path, &jsonio::to_string_17(&summary))?;

    RunConfig {
        command: "bounds",
        seed: args.seed,
        params: json!({
            "p": args.p,
            "q": args.q,
            "domain": class.label(),
            "out": args.out.display().to_string(),
        }),
    }
    .write_manifest(&args.out, &[&args.out, &summary_path])
}
