//! `wavreg verify`: run one named invariant suite; exit 0 iff every hard
//! check passes, 3 on suite failure.

use std::path::PathBuf;

use serde_json::json;
use wavreg_core::jsonio;
use wavreg_core::suites::run_suite;

use crate::run::{write_text, CmdResult, Fail, RunConfig};

pub struct VerifyArgs {
    pub suite: String,
    pub out: Option<PathBuf>,
    pub seed: u64,
}

pub fn cmd_verify(args: VerifyArgs) -> CmdResult {
    let report = run_suite(&args.suite)?;
    for c in &report.checks {
        println!("[{}] {}: {}", if c.passed { "ok" } else { "FAIL" }, c.name, c.detail);
    }
    for n in &report.soft_notes {
        println!("note: {n}");
    }
    println!("suite {}: {}", report.suite, if report.passed() { "PASS" } else { "FAIL" });

    let out = args
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from(format!("verify-{}.json", args.suite)));
    write_text(&out, &jsonio::to_string_17(&report.to_json()))?;
    RunConfig {
        command: "verify",
        seed: args.seed,
        params: json!({
            "suite": args.suite,
            "out": out.display().to_string(),
        }),
    }
    .write_manifest(&out, &[&out])?;

    if report.passed() {
        Ok(())
    } else {
        Err(Fail::SuiteFailure(format!("suite {} failed hard checks", report.suite)))
    }
}
