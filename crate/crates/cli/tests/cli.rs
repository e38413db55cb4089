//! End-to-end tests of the command-line contract: exit codes, deterministic
//! byte-identical outputs, manifest completeness, and report shapes.

use std::path::Path;
use std::process::{Command, Output};

fn wavreg(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wavreg"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn read_json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn bounds_single_point_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = wavreg(dir.path(), &["bounds", "--p", "2", "--q", "3", "--domain", "lipschitz", "--out", "pt.csv"]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("sigma_bar = 1.5"), "{stdout}");
    let summary = read_json(&dir.path().join("pt.summary.json"));
    assert_eq!(summary["point"]["sigma_bar"]["value"], 1.5);
    assert_eq!(summary["point"]["s_star"], 1.5);

    // Uncovered parameters: precondition exit code with a condition message.
    let out = wavreg(dir.path(), &["bounds", "--p", "1.1", "--q", "3", "--domain", "lipschitz", "--out", "x.csv"]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("q >= p'"), "{stderr}");
}

#[test]
fn bounds_sweep_row_count_and_annotations() {
    let dir = tempfile::tempdir().unwrap();
    let out = wavreg(
        dir.path(),
        &["bounds", "--domain", "polygonal", "--q", "inf", "--p", "1:5:0.01", "--out", "fig.csv"],
    );
    assert!(out.status.success());
    let text = std::fs::read_to_string(dir.path().join("fig.csv")).unwrap();
    // Header plus 400 covered points: p = 1.00 is outside the table.
    assert_eq!(text.lines().count(), 401);
    assert!(text.starts_with("p,sigma_bar,s_star,branch\n"));
    let summary = read_json(&dir.path().join("fig.summary.json"));
    assert_eq!(summary["rows"], 400);
    assert_eq!(summary["skipped"], 1);
    assert!(!summary["branch_changes"].as_array().unwrap().is_empty());

    // An entirely uncovered range is a precondition failure.
    let out = wavreg(
        dir.path(),
        &["bounds", "--domain", "polygonal", "--q", "1.5", "--p", "3:5:0.5", "--out", "y.csv"],
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn grid_analyze_nterm_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = wavreg(dir.path(), &["grid", "--model", "corner", "--level", "7", "--out", "c.json"]);
    assert!(out.status.success());
    assert!(dir.path().join("c.bin").is_file());

    let out = wavreg(
        dir.path(),
        &[
            "analyze", "--grid", "c.json", "--sigma", "1.0", "--s", "0.6", "--split",
            "--holder", "--ell", "0", "--alpha", "0.66", "--coeffs", "coef.csv",
            "--out", "report.json",
        ],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report = read_json(&dir.path().join("report.json"));
    assert_eq!(report["transform"]["m"], 3);
    assert_eq!(report["grid"]["level"], 7);
    assert!(report["adaptivity"][0]["quasinorm"].as_f64().unwrap() > 0.0);
    assert!(report["adaptivity"][0]["split"]["boundary"].as_f64().unwrap() > 0.0);
    assert!(report["besov"][0]["quasinorm"].as_f64().unwrap() > 0.0);
    assert!(report["hoelder"]["seminorm"].as_f64().unwrap() > 0.0);
    assert!(!report["classification"]["per_level"].as_array().unwrap().is_empty());
    let coefs = std::fs::read_to_string(dir.path().join("coef.csv")).unwrap();
    assert!(coefs.lines().count() > 10);

    let out = wavreg(dir.path(), &["nterm", "--grid", "c.json", "--out", "curve.csv"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let curve = read_json(&dir.path().join("curve.json"));
    assert!(curve["adaptive"]["slope"].as_f64().unwrap() > curve["uniform"]["slope"].as_f64().unwrap());

    // Missing grid file: precondition exit.
    let out = wavreg(dir.path(), &["analyze", "--grid", "nope.json", "--out", "z.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    assert!(wavreg(dir.path(), &["grid", "--model", "flat", "--level", "7", "--p", "4", "--out", "f.json"])
        .status
        .success());
    for args in [
        vec!["analyze", "--grid", "f.json", "--p", "4", "--sigma", "0.9,1.4", "--s", "1.15,1.35", "--split", "--out", "r.json"],
        vec!["nterm", "--grid", "f.json", "--p", "4", "--out", "n.csv"],
    ] {
        let run = |out_tag: &str| {
            let mut a: Vec<String> = args.iter().map(|s| s.to_string()).collect();
            for v in a.iter_mut() {
                if v == "r.json" || v == "n.csv" {
                    *v = format!("{out_tag}-{v}");
                }
            }
            let refs: Vec<&str> = a.iter().map(|s| s.as_str()).collect();
            assert!(wavreg(dir.path(), &refs).status.success());
            a.last().unwrap().clone()
        };
        let first = run("one");
        let second = run("two");
        let a = std::fs::read(dir.path().join(&first)).unwrap();
        let b = std::fs::read(dir.path().join(&second)).unwrap();
        assert_eq!(a, b, "outputs differ between identical runs of {args:?}");
    }
}

#[test]
fn manifest_echoes_resolved_parameters() {
    let dir = tempfile::tempdir().unwrap();
    assert!(wavreg(dir.path(), &["grid", "--model", "bump", "--level", "5", "--out", "b.json"])
        .status
        .success());
    let manifest = read_json(&dir.path().join("b.manifest.json"));
    assert_eq!(manifest["command"], "grid");
    assert_eq!(manifest["params"]["model"], "bump");
    assert_eq!(manifest["params"]["level"], 5);
    assert_eq!(manifest["seed"], 0);
    assert_eq!(manifest["library"]["name"], "wavreg-core");
    assert!(manifest["library"]["version"].as_str().unwrap().contains('.'));
    let outputs: Vec<String> = manifest["outputs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap().to_string())
        .collect();
    assert_eq!(outputs, vec!["b.json".to_string(), "b.bin".to_string()]);

    // The manifest alone regenerates the artifact.
    let model = manifest["params"]["model"].as_str().unwrap().to_string();
    let level = manifest["params"]["level"].as_u64().unwrap().to_string();
    assert!(wavreg(dir.path(), &["grid", "--model", &model, "--level", &level, "--out", "b2.json"])
        .status
        .success());
    let a = std::fs::read(dir.path().join("b.bin")).unwrap();
    let b = std::fs::read(dir.path().join("b2.bin")).unwrap();
    assert_eq!(a, b);
}

#[test]
fn verify_exit_codes_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = wavreg(dir.path(), &["verify", "tables", "--out", "vt.json"]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("suite tables: PASS"), "{stdout}");
    let report = read_json(&dir.path().join("vt.json"));
    assert_eq!(report["passed"], true);
    assert!(report["checks"].as_array().unwrap().len() >= 5);
    assert!(dir.path().join("vt.manifest.json").is_file());

    let out = wavreg(dir.path(), &["verify", "no-such-suite"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn nterm_budgets_mode_flags_exact_tail() {
    let dir = tempfile::tempdir().unwrap();
    assert!(wavreg(dir.path(), &["grid", "--model", "bump", "--level", "6", "--out", "b.json"])
        .status
        .success());
    let out = wavreg(
        dir.path(),
        &["nterm", "--grid", "b.json", "--budgets", "4,16,64,256,1024,4092", "--out", "a.csv"],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(dir.path().join("a.csv")).unwrap();
    assert!(text.starts_with("n,error\n"));
    assert_eq!(text.lines().count(), 7);
    let j = read_json(&dir.path().join("a.json"));
    assert_eq!(j["mode"], "adaptive");
    // At level 6 the bump keeps 4092 of the 4092 details: exact tail.
    assert_eq!(j["adaptive"]["exact_at"], 4092);
    assert_eq!(j["adaptive"]["floor_limited"], true);
}
