use std::path::{Path, PathBuf};

use gcyclic::cli::{run_command, EXIT_FAIL, EXIT_PASS, EXIT_USAGE};
use serde_json::Value;

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .display()
        .to_string()
}

fn shipped(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("scenarios")
        .join(name)
        .display()
        .to_string()
}

fn schema() -> Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/report.schema.json");
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// Checks the top-level shape declared by the shipped schema: required keys,
/// no extra keys, field types and witness layout.
fn assert_matches_schema(report: &Value) {
    let schema = schema();
    let obj = report.as_object().expect("report is an object");
    let required: Vec<&str> = schema["required"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();
    for key in &required {
        assert!(obj.contains_key(*key), "missing `{key}`");
    }
    for key in obj.keys() {
        assert!(schema["properties"].get(key).is_some(), "unexpected `{key}`");
    }
    let commands = schema["properties"]["command"]["enum"].as_array().unwrap();
    assert!(commands.contains(&report["command"]));
    assert!(report["scenario_id"].is_string() || report["scenario_id"].is_null());
    assert!(report["seed"].is_u64());
    assert!(report["pass"].is_boolean());
    assert!(report["details"].is_object());
    assert!(report["timings"].is_null() || report["timings"]["total_ms"].is_number());
    for w in report["witnesses"].as_array().unwrap() {
        assert!(w["check"].is_string());
        assert!(w["value"].is_number() || w["value"].is_null());
        for p in w["points"].as_array().unwrap() {
            assert!(p.as_array().unwrap().iter().all(|c| c.is_number() || c.is_null()));
        }
    }
    let errored = report["details"].get("error").is_some();
    if report["pass"] == false && !errored {
        assert!(!report["witnesses"].as_array().unwrap().is_empty(), "failing report without witness");
    }
}

fn run(args: &[&str]) -> (i32, Value) {
    let r = run_command(args.iter().copied());
    let report = r.report.unwrap_or_else(|| panic!("no report: {}", r.rendered));
    assert_matches_schema(&report);
    let parsed: Value = serde_json::from_str(&r.rendered).expect("json output");
    assert_eq!(parsed, report);
    (r.exit_code, report)
}

#[test]
fn solve_reports_fixed_point_and_bound() {
    let (code, rep) = run(&["solve", "--scenario", "example32", "--x0", "1", "--tol", "1e-8"]);
    assert_eq!(code, EXIT_PASS);
    let d = &rep["details"];
    assert!(d["fixed_point"][0].as_f64().unwrap().abs() <= 1e-8);
    let steps = d["iterations"].as_u64().unwrap();
    let bound = d["a_priori_iterations"].as_u64().unwrap();
    assert!(steps <= bound);
    // oracle: κ = ½ / (1 − ⅓)
    assert!((d["kappa"].as_f64().unwrap() - 0.5 / (1.0 - 1.0 / 3.0)).abs() <= 1e-15);
}

#[test]
fn certify_example32_seed_7() {
    let (code, rep) = run(&["certify", "--scenario", "example32", "--samples", "10000", "--seed", "7"]);
    assert_eq!(code, EXIT_PASS);
    assert!(rep["details"]["min_gap"].as_f64().unwrap() > 0.0);
    assert_eq!(rep["seed"], 7);
}

#[test]
fn corrupted_g_fixture_fails_g4_with_witness() {
    let r = run_command(["check-axioms", "--scenario", &fixture("example32_corrupt_g.toml"), "--format", "text"]);
    assert_eq!(r.exit_code, EXIT_FAIL);
    assert!(r.rendered.lines().any(|l| l.starts_with("witnesses.0.check") && l.ends_with("G4")));
    let (code, rep) = run(&["check-axioms", "--scenario", &fixture("example32_corrupt_g.toml")]);
    assert_eq!(code, EXIT_FAIL);
    let w = rep["witnesses"].as_array().unwrap();
    let g4 = w.iter().find(|w| w["check"] == "G4").expect("G4 witness");
    let pts: Vec<f64> = g4["points"].as_array().unwrap().iter().map(|p| p[0].as_f64().unwrap()).collect();
    // oracle: recompute the permutation spread of the corrupted G by hand
    let f = |a: f64, b: f64, c: f64| (a - b).abs() + (b - c).abs();
    let (x, y, z) = (pts[0], pts[1], pts[2]);
    let vals = [f(x, y, z), f(x, z, y), f(y, x, z), f(y, z, x), f(z, x, y), f(z, y, x)];
    let spread = vals.iter().cloned().fold(f64::MIN, f64::max) - vals.iter().cloned().fold(f64::MAX, f64::min);
    assert!(spread > 1e-12);
}

#[test]
fn shipped_scenario_file_runs_every_command() {
    let file = shipped("example32.toml");
    for cmd in ["check-axioms", "check-cyclic", "certify"] {
        let (code, rep) = run(&[cmd, "--scenario", &file, "--samples", "500"]);
        assert_eq!(code, EXIT_PASS, "{cmd}: {rep}");
        assert_eq!(rep["scenario_id"], "example32");
    }
    let (code, rep) = run(&["estimate", "--scenario", &file, "--samples", "300", "--resolution", "4"]);
    assert_eq!(code, EXIT_PASS);
    assert!(rep["details"]["kappa"].as_f64().unwrap() <= 0.75);
    let (code, _) = run(&["verify", "--scenario", &file, "--x0", "0"]);
    assert_eq!(code, EXIT_PASS);
    let (code, rep) = run(&["report", "--scenario", &file, "--samples", "300", "--x0", "-0.004"]);
    assert_eq!(code, EXIT_PASS);
    for section in ["axioms", "cyclic", "control", "certify", "solve"] {
        assert_eq!(rep["details"][section]["pass"], true, "{section}");
    }
}

#[test]
fn failing_checks_carry_witnesses() {
    for args in [
        &["check-cyclic", "--scenario", "identity-negative", "--samples", "100"][..],
        &["certify", "--scenario", "identity-negative", "--samples", "100"][..],
        &["estimate", "--scenario", "identity-negative", "--samples", "50", "--resolution", "2"][..],
        &["verify", "--scenario", "example32", "--x0", "0.5"][..],
        &["solve", "--scenario", "example32", "--x0", "1", "--tol", "1e-300", "--max-iter", "2"][..],
    ] {
        let (code, rep) = run(args);
        assert_eq!(code, EXIT_FAIL, "{args:?}");
        assert!(!rep["witnesses"].as_array().unwrap().is_empty(), "{args:?}");
    }
}

#[test]
fn config_and_usage_errors() {
    let (code, rep) = run(&["certify", "--scenario", &fixture("example32_gamma_one.toml")]);
    assert_eq!(code, EXIT_USAGE);
    assert!(rep["details"]["error"]["message"].as_str().unwrap().contains("0≤γ<1"));
    let r = run_command(["certify", "--scenario", "example32", "--format", "yaml"]);
    assert_eq!(r.exit_code, EXIT_USAGE);
    assert!(r.report.is_none());
    let r = run_command(["solve", "--scenario", "example32"]);
    assert_eq!(r.exit_code, EXIT_USAGE);
    for tol in ["0", "-1e-8", "nan"] {
        let r = run_command(["solve", "--scenario", "example32", "--x0", "1", "--tol", tol]);
        assert_eq!(r.exit_code, EXIT_USAGE, "tol {tol}");
    }
}

#[test]
fn out_and_trace_files() {
    let dir = tempfile::tempdir().unwrap();
    let out: PathBuf = dir.path().join("solve.json");
    let r = run_command([
        "solve",
        "--scenario",
        "example32",
        "--x0",
        "1",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(r.exit_code, EXIT_PASS);
    assert_eq!(r.stdout(), "");
    let written = std::fs::read_to_string(&out).unwrap();
    assert_eq!(written, r.rendered);
    let trace = r.trace_csv.expect("trace path");
    let csv = std::fs::read_to_string(trace).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("n,x_0,residual,subset_indices"));
    let first: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(first[0], "0");
    assert_eq!(first[1].parse::<f64>().unwrap(), 1.0);
    // 17 significant digits: one leading digit and 16 decimals
    let mantissa = first[2].split('e').next().unwrap();
    assert_eq!(mantissa.replace(['.', '-'], "").len(), 17);
}

#[test]
fn timings_are_opt_in() {
    let (_, rep) = run(&["verify", "--scenario", "example32", "--x0", "0"]);
    assert!(rep["timings"].is_null());
    let (_, rep) = run(&["verify", "--scenario", "example32", "--x0", "0", "--timings"]);
    assert!(rep["timings"]["total_ms"].as_f64().unwrap() >= 0.0);
}
