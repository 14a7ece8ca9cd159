//! Command-line front end.
//!
//! Every command prints one report
//! `{command, scenario_id, seed, pass, details, witnesses, timings}`.
//! Exit codes: 0 pass, 1 a check failed, 2 usage or configuration error,
//! 3 runtime error.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::config::scenario::{load_scenario_file, SolverDefaults};
use crate::contraction::{certify, estimate_constants, Certificate, CertifyOptions, Scenario};
use crate::control::{check_control_pair, uniform_grid};
use crate::corpus::corpus_entry;
use crate::cyclic::validate_cyclic_cover;
use crate::error::{Error, Result};
use crate::gmetric::{check_g_axioms_seeded, estimate_g_diameter, Point};
use crate::solver::{a_priori_iterations, check_trace_properties, picard, verify_fixed_point, PicardOptions};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RUNTIME: i32 = 3;

const DEFAULT_CHECK_TOL: f64 = 1e-12;
const CONTROL_GRID: usize = 1_000;

#[derive(Parser, Debug)]
#[command(name = "gcyclic", version, about = "Check and solve G-cyclic contraction scenarios")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample the G-metric axioms G1-G5.
    CheckAxioms(CommonArgs),
    /// Check T(A_i) ⊆ A_{i+1} on sampled points.
    CheckCyclic(CommonArgs),
    /// Certify the contraction inequality on sampled adjacent tuples.
    Certify(CommonArgs),
    /// Search the constant grid for the smallest certified contraction factor.
    Estimate(CommonArgs),
    /// Run Picard iteration and compare with the a-priori bound.
    Solve(CommonArgs),
    /// Verify that --x0 is a fixed point lying in every subset.
    Verify(CommonArgs),
    /// Run every check and, given a start point, the solver.
    Report(CommonArgs),
}

fn positive_f64(s: &str) -> std::result::Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        Ok(v) => Err(format!("must be a finite number > 0, got {v}")),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Args, Debug, Clone)]
struct CommonArgs {
    /// Scenario file, or a built-in corpus id such as `example32`.
    #[arg(long)]
    scenario: String,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, allow_negative_numbers = true, value_parser = positive_f64)]
    tol: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long = "max-iter")]
    max_iter: Option<usize>,
    /// Start point (solve) or candidate (verify), comma separated.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    x0: Option<Vec<f64>>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Trace CSV destination for solve; defaults to `<out>.trace.csv` when --out is given.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Constant grid steps per unit interval (estimate).
    #[arg(long, default_value_t = 20)]
    resolution: usize,
    /// Also sample tuples with an independent third point (certify).
    #[arg(long)]
    three_point: bool,
    /// Record wall-clock timings (makes the report run-dependent).
    #[arg(long)]
    timings: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
    Text,
}

/// Result of one invocation.
#[derive(Clone, Debug)]
pub struct CommandResult {
    pub exit_code: i32,
    /// `None` only for usage errors.
    pub report: Option<Value>,
    /// Report in the requested format, or the usage text.
    pub rendered: String,
    /// Where the rendered report was written, if not to stdout.
    pub out_path: Option<PathBuf>,
    pub trace_csv: Option<PathBuf>,
}

impl CommandResult {
    /// Text meant for the terminal: empty when the report went to a file.
    pub fn stdout(&self) -> &str {
        if self.out_path.is_some() {
            ""
        } else {
            &self.rendered
        }
    }
}

struct Outcome {
    pass: bool,
    details: Value,
    witnesses: Vec<Value>,
    trace_csv: Option<String>,
}

enum Failure {
    Config(Error),
    Runtime(Error),
}

fn is_config_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Config { .. } | Error::ConfigExpr { .. } | Error::InvalidConstants(_) | Error::InvalidDomain(_)
    )
}

/// Parses `args` (without the program name), runs the command and renders
/// its report.
pub fn run_command<I, T>(args: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<String>,
{
    let argv = std::iter::once("gcyclic".to_string()).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_PASS,
                _ => EXIT_USAGE,
            };
            return CommandResult {
                exit_code: code,
                report: None,
                rendered: e.render().to_string(),
                out_path: None,
                trace_csv: None,
            };
        }
    };
    let (name, args) = match &cli.command {
        Command::CheckAxioms(a) => ("check-axioms", a),
        Command::CheckCyclic(a) => ("check-cyclic", a),
        Command::Certify(a) => ("certify", a),
        Command::Estimate(a) => ("estimate", a),
        Command::Solve(a) => ("solve", a),
        Command::Verify(a) => ("verify", a),
        Command::Report(a) => ("report", a),
    };
    let started = Instant::now();

    let (scenario, defaults) = match resolve_scenario(&args.scenario) {
        Ok(v) => v,
        Err(e) => return finish(name, args, None, defaults_seed(args, None), Err(Failure::Config(e)), started),
    };
    let seed = defaults_seed(args, Some(&defaults));
    let run = Run {
        s: &scenario,
        defaults: &defaults,
        args,
        seed,
    };
    let outcome = match name {
        "check-axioms" => run.check_axioms(),
        "check-cyclic" => run.check_cyclic(),
        "certify" => run.certify(),
        "estimate" => run.estimate(),
        "solve" => run.solve(),
        "verify" => run.verify(),
        _ => run.report(),
    }
    .map_err(|e| if is_config_error(&e) { Failure::Config(e) } else { Failure::Runtime(e) });
    finish(name, args, Some(scenario.id()), seed, outcome, started)
}

fn defaults_seed(args: &CommonArgs, defaults: Option<&SolverDefaults>) -> u64 {
    args.seed.or(defaults.map(|d| d.seed)).unwrap_or(0)
}

/// Corpus id first, then a file path.
fn resolve_scenario(name: &str) -> Result<(Scenario<f64>, SolverDefaults)> {
    if let Some(entry) = corpus_entry(name) {
        return Ok((entry.scenario, SolverDefaults::default()));
    }
    let path = Path::new(name);
    if !path.exists() {
        return Err(Error::config(
            "--scenario",
            format!("`{name}` is neither a corpus id nor an existing file"),
        ));
    }
    let loaded = load_scenario_file(path)?;
    Ok((loaded.scenario, loaded.solver))
}

fn finish(
    command: &str,
    args: &CommonArgs,
    scenario_id: Option<&str>,
    seed: u64,
    outcome: std::result::Result<Outcome, Failure>,
    started: Instant,
) -> CommandResult {
    let (exit_code, pass, details, witnesses, trace) = match outcome {
        Ok(o) => (
            if o.pass { EXIT_PASS } else { EXIT_FAIL },
            o.pass,
            o.details,
            o.witnesses,
            o.trace_csv,
        ),
        Err(f) => {
            let (code, kind, e) = match f {
                Failure::Config(e) => (EXIT_USAGE, "config", e),
                Failure::Runtime(e) => (EXIT_RUNTIME, "runtime", e),
            };
            let details = json!({ "error": { "kind": kind, "message": e.to_string() } });
            (code, false, details, Vec::new(), None)
        }
    };
    let timings = if args.timings {
        json!({ "total_ms": started.elapsed().as_secs_f64() * 1e3 })
    } else {
        Value::Null
    };
    let report = json!({
        "command": command,
        "scenario_id": scenario_id,
        "seed": seed,
        "pass": pass,
        "details": details,
        "witnesses": witnesses,
        "timings": timings,
    });

    let mut result = CommandResult {
        exit_code,
        rendered: String::new(),
        report: None,
        out_path: None,
        trace_csv: None,
    };
    if let Some(csv) = &trace {
        let path = args
            .trace
            .clone()
            .or_else(|| args.out.as_ref().map(|o| o.with_extension("trace.csv")));
        if let Some(path) = path {
            if let Err(e) = std::fs::write(&path, csv) {
                return io_failure(command, &path, e);
            }
            result.trace_csv = Some(path);
        }
    }
    result.rendered = match args.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => render_text(&report),
        Format::Csv => match trace.filter(|_| exit_code <= EXIT_FAIL) {
            Some(csv) => csv,
            None => render_csv(&report),
        },
    };
    if let Some(out) = &args.out {
        if let Err(e) = std::fs::write(out, &result.rendered) {
            return io_failure(command, out, e);
        }
        result.out_path = Some(out.clone());
    }
    result.report = Some(report);
    result
}

fn io_failure(command: &str, path: &Path, e: std::io::Error) -> CommandResult {
    CommandResult {
        exit_code: EXIT_RUNTIME,
        report: None,
        rendered: format!("{command}: cannot write {}: {e}\n", path.display()),
        out_path: None,
        trace_csv: None,
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(m) => m.iter().for_each(|(k, v)| flatten(&key(k), v, out)),
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let parts: Vec<String> = a.iter().map(scalar_text).collect();
            out.push((prefix.to_string(), format!("[{}]", parts.join(", "))));
        }
        Value::Array(a) => a
            .iter()
            .enumerate()
            .for_each(|(i, v)| flatten(&key(&i.to_string()), v, out)),
        v => out.push((prefix.to_string(), scalar_text(v))),
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        v => v.to_string(),
    }
}

fn render_text(report: &Value) -> String {
    let mut rows = Vec::new();
    flatten("", report, &mut rows);
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.iter().map(|(k, v)| format!("{k:<width$}  {v}\n")).collect()
}

fn render_csv(report: &Value) -> String {
    let mut rows = Vec::new();
    flatten("", report, &mut rows);
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["key", "value"]).expect("in-memory write");
    for (k, v) in rows {
        w.write_record([k, v]).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

fn pt(p: &Point<f64>) -> Value {
    json!(p.coords())
}

fn opt(v: Option<f64>) -> Value {
    v.map_or(Value::Null, |v| json!(v))
}

struct Run<'a> {
    s: &'a Scenario<f64>,
    defaults: &'a SolverDefaults,
    args: &'a CommonArgs,
    seed: u64,
}

impl Run<'_> {
    fn samples(&self) -> usize {
        self.args.samples.unwrap_or(self.defaults.samples)
    }

    fn check_tol(&self) -> f64 {
        self.args.tol.unwrap_or(DEFAULT_CHECK_TOL)
    }

    fn x0(&self) -> Result<Option<Point<f64>>> {
        match self.args.x0.as_ref().or(self.defaults.x0.as_ref()) {
            None => Ok(None),
            Some(v) => {
                let p = Point::new(v.clone()).map_err(|e| Error::config("--x0", e.to_string()))?;
                if p.dim() != self.s.dim() {
                    return Err(Error::config(
                        "--x0",
                        format!("expected {} coordinate(s), got {}", self.s.dim(), p.dim()),
                    ));
                }
                Ok(Some(p))
            }
        }
    }

    fn required_x0(&self) -> Result<Point<f64>> {
        self.x0()?
            .ok_or_else(|| Error::config("--x0", "a start point is required (flag or solver.x0)"))
    }

    fn check_axioms(&self) -> Result<Outcome> {
        let r = check_g_axioms_seeded(self.s.gmetric(), self.samples(), self.check_tol(), self.seed)?;
        let axioms: Vec<Value> = r
            .outcomes
            .iter()
            .map(|o| {
                json!({
                    "axiom": o.axiom.name(),
                    "description": o.axiom.description(),
                    "pass": o.pass,
                    "tested": o.tested,
                    "violations": o.violations,
                    "worst_violation": o.worst_violation,
                })
            })
            .collect();
        let witnesses = r
            .failing()
            .filter_map(|o| {
                o.witness.as_ref().map(|w| {
                    json!({
                        "check": o.axiom.name(),
                        "points": w.iter().map(pt).collect::<Vec<_>>(),
                        "value": o.worst_violation,
                    })
                })
            })
            .collect();
        Ok(Outcome {
            pass: r.pass(),
            details: json!({
                "gmetric": r.gmetric,
                "samples": r.samples_used,
                "tolerance": r.tolerance,
                "tol_strict": r.tol_strict,
                "axioms": axioms,
            }),
            witnesses,
            trace_csv: None,
        })
    }

    fn check_cyclic(&self) -> Result<Outcome> {
        let r = validate_cyclic_cover(self.s.cover(), self.s.map(), self.samples(), self.seed)?;
        let subsets: Vec<Value> = r
            .subsets
            .iter()
            .map(|c| {
                json!({
                    "label": c.label,
                    "target": c.target,
                    "samples": c.samples,
                    "violations": c.violations,
                })
            })
            .collect();
        let witnesses = r
            .subsets
            .iter()
            .filter_map(|c| {
                c.witness.as_ref().map(|(x, tx)| {
                    json!({
                        "check": format!("T(A_{}) in A_{}", c.label, c.target),
                        "points": [pt(x), pt(tx)],
                        "value": c.violations,
                    })
                })
            })
            .collect();
        Ok(Outcome {
            pass: r.pass,
            details: json!({ "p": self.s.cover().p(), "subsets": subsets }),
            witnesses,
            trace_csv: None,
        })
    }

    fn certificate_json(c: &Certificate<f64>) -> Value {
        json!({
            "kind": c.kind.name(),
            "alpha": c.alpha,
            "gamma": c.gamma,
            "kappa": opt(c.kappa),
            "tuples": c.samples,
            "min_gap": c.min_gap,
            "tol": c.tol,
            "three_point": c.three_point,
            "pass": c.pass,
        })
    }

    fn gap_witness(c: &Certificate<f64>) -> Option<Value> {
        c.witness.as_ref().map(|w| {
            json!({
                "check": format!("{} inequality from A_{}", c.kind.name(), w.from),
                "points": [pt(&w.x), pt(&w.y), pt(&w.z)],
                "value": w.gap,
            })
        })
    }

    fn run_certify(&self) -> Result<Certificate<f64>> {
        let opts = CertifyOptions {
            three_point: self.args.three_point,
        };
        certify(self.s, self.samples(), self.check_tol(), self.seed, opts)
    }

    fn certify(&self) -> Result<Outcome> {
        let c = self.run_certify()?;
        let mut details = Self::certificate_json(&c);
        details["min_gap_tuple"] = Self::gap_witness(&c).unwrap_or(Value::Null);
        Ok(Outcome {
            pass: c.pass,
            details,
            witnesses: if c.pass { vec![] } else { Self::gap_witness(&c).into_iter().collect() },
            trace_csv: None,
        })
    }

    fn estimate(&self) -> Result<Outcome> {
        let e = estimate_constants(self.s, self.samples(), self.args.resolution, self.seed)?;
        let mut witnesses = Vec::new();
        if !e.feasible {
            let c = self.run_certify()?;
            witnesses.extend(Self::gap_witness(&c));
        }
        Ok(Outcome {
            pass: e.feasible,
            details: json!({
                "kind": self.s.kind().name(),
                "resolution": self.args.resolution,
                "grid_size": e.grid_size,
                "candidates_tried": e.candidates_tried,
                "feasible": e.feasible,
                "alpha": opt(e.alpha),
                "gamma": opt(e.gamma),
                "kappa": opt(e.kappa),
                "min_gap": opt(e.certificate.as_ref().map(|c| c.min_gap)),
            }),
            witnesses,
            trace_csv: None,
        })
    }

    fn solve_details(&self, x0: &Point<f64>) -> Result<Outcome> {
        let tol = self.args.tol.unwrap_or(self.defaults.tol);
        let max_iter = self.args.max_iter.unwrap_or(self.defaults.max_iter);
        let trace = picard(self.s, x0, PicardOptions::new(tol, max_iter))?;
        let kappa = self.s.kappa()?;
        let r0 = trace.residuals().first().copied();
        let bound = match (kappa, r0) {
            (Some(k), Some(r0)) => Some(a_priori_iterations(k, r0, tol)?),
            _ => None,
        };
        let steps = trace.steps();
        let converged = trace.outcome() == crate::solver::Outcome::Converged;
        let within_bound = bound.is_none_or(|b| steps as u64 <= b);
        let props = check_trace_properties(&trace, self.s, tol)?;
        let fp = verify_fixed_point(self.s, trace.last(), tol)?;
        let pass = converged && within_bound;

        let mut witnesses = Vec::new();
        if !converged {
            witnesses.push(json!({
                "check": format!("picard {}", trace.outcome().name()),
                "points": [pt(trace.last())],
                "value": trace.residuals().last().copied().unwrap_or(0.0),
            }));
        } else if !within_bound {
            witnesses.push(json!({
                "check": "a-priori bound",
                "points": [pt(x0)],
                "value": steps,
            }));
        }
        Ok(Outcome {
            pass,
            details: json!({
                "x0": pt(x0),
                "tol": tol,
                "max_iter": max_iter,
                "outcome": trace.outcome().name(),
                "iterations": steps,
                "fixed_point": pt(trace.last()),
                "final_residual": trace.residuals().last().copied(),
                "r0": r0,
                "kappa": opt(kappa),
                "a_priori_iterations": bound,
                "within_a_priori_bound": within_bound,
                "fixed_point_defect": fp.defect,
                "fixed_point_membership": fp.membership,
                "trace_properties": {
                    "monotone": props.monotone.pass,
                    "geometric": props.geometric.as_ref().map(|g| g.pass),
                    "tail_convergence": props.tail.as_ref().map(|t| t.convergence_pass),
                    "tail_cauchy": props.tail.as_ref().map(|t| t.cauchy_pass),
                    "notes": props.notes,
                },
            }),
            witnesses,
            trace_csv: Some(trace.to_csv_string()?),
        })
    }

    fn solve(&self) -> Result<Outcome> {
        let x0 = self.required_x0()?;
        self.solve_details(&x0)
    }

    fn verify(&self) -> Result<Outcome> {
        let u = self.required_x0()?;
        let r = verify_fixed_point(self.s, &u, self.check_tol())?;
        let witnesses = if r.pass {
            vec![]
        } else {
            vec![json!({
                "check": "fixed point",
                "points": [pt(&r.candidate), pt(&r.image)],
                "value": r.defect,
            })]
        };
        Ok(Outcome {
            pass: r.pass,
            details: json!({
                "candidate": pt(&r.candidate),
                "image": pt(&r.image),
                "defect": r.defect,
                "tol": r.tol,
                "membership": r.membership,
                "missing": r.missing,
            }),
            witnesses,
            trace_csv: None,
        })
    }

    fn report(&self) -> Result<Outcome> {
        let mut details = Map::new();
        let mut witnesses = Vec::new();
        let mut pass = true;
        let mut section = |name: &str, o: Outcome| {
            pass &= o.pass;
            witnesses.extend(o.witnesses);
            details.insert(name.into(), json!({ "pass": o.pass, "details": o.details }));
        };
        section("axioms", self.check_axioms()?);
        section("cyclic", self.check_cyclic()?);
        section("control", self.control()?);
        section("certify", self.certify()?);
        if let Some(x0) = self.x0()? {
            let mut o = self.solve_details(&x0)?;
            o.trace_csv = None;
            section("solve", o);
        }
        Ok(Outcome {
            pass,
            details: Value::Object(details),
            witnesses,
            trace_csv: None,
        })
    }

    fn control(&self) -> Result<Outcome> {
        let t_max = estimate_g_diameter(self.s.gmetric(), 1_000, self.seed)?.max(1.0);
        let grid = uniform_grid(t_max, CONTROL_GRID);
        let r = check_control_pair(self.s.phi(), self.s.psi(), &grid, self.check_tol(), self.s.psi_mode())?;
        let mut witnesses = Vec::new();
        for (name, c) in [
            ("phi monotone", &r.phi_monotone),
            ("phi positive", &r.phi_positive),
            ("psi positive", &r.psi_positive),
        ] {
            if !c.pass {
                witnesses.push(json!({
                    "check": name,
                    "points": c.witness.iter().map(|w| json!(w)).collect::<Vec<_>>(),
                    "value": c.worst_violation,
                }));
            }
        }
        Ok(Outcome {
            pass: r.pass,
            details: json!({
                "phi": self.s.phi().name(),
                "psi": self.s.psi().name(),
                "grid_points": r.grid_points,
                "grid_max": r.grid_max,
                "phi_zero_at_zero": r.phi_zero_at_zero,
                "phi_monotone": r.phi_monotone.pass,
                "phi_positive": r.phi_positive.pass,
                "psi_zero_at_zero": r.psi_zero_at_zero,
                "psi_positive": r.psi_positive.pass,
                "psi_degenerate": r.psi_degenerate,
                "max_oscillation": r.max_oscillation,
            }),
            witnesses,
            trace_csv: None,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_command(["frobnicate"]).exit_code, EXIT_USAGE);
        assert_eq!(run_command(["solve"]).exit_code, EXIT_USAGE);
        assert_eq!(
            run_command(["certify", "--scenario", "example32", "--bogus"]).exit_code,
            EXIT_USAGE
        );
        let r = run_command(["certify", "--scenario", "no-such-thing"]);
        assert_eq!(r.exit_code, EXIT_USAGE);
        assert_eq!(r.report.unwrap()["details"]["error"]["kind"], "config");
    }

    #[test]
    fn solve_example32() {
        let r = run_command(["solve", "--scenario", "example32", "--x0", "1", "--tol", "1e-8"]);
        assert_eq!(r.exit_code, EXIT_PASS, "{}", r.rendered);
        let rep = r.report.unwrap();
        let d = &rep["details"];
        assert!(d["fixed_point"][0].as_f64().unwrap().abs() <= 1e-8);
        assert!(d["iterations"].as_u64().unwrap() <= d["a_priori_iterations"].as_u64().unwrap());
        assert!((d["kappa"].as_f64().unwrap() - 0.75).abs() <= 1e-15);
    }

    #[test]
    fn negative_start_parses() {
        let r = run_command(["solve", "--scenario", "example32", "--x0", "-1"]);
        assert_eq!(r.exit_code, EXIT_PASS, "{}", r.rendered);
        let r = run_command(["solve", "--scenario", "example32", "--x0", "1,2"]);
        assert_eq!(r.exit_code, EXIT_USAGE);
    }

    #[test]
    fn failing_check_exits_1_with_witness() {
        let r = run_command(["check-cyclic", "--scenario", "identity-negative", "--samples", "200"]);
        assert_eq!(r.exit_code, EXIT_FAIL);
        assert!(!r.report.unwrap()["witnesses"].as_array().unwrap().is_empty());
        let r = run_command(["verify", "--scenario", "example32", "--x0", "0.5"]);
        assert_eq!(r.exit_code, EXIT_FAIL);
    }

    #[test]
    fn text_and_csv_formats() {
        let r = run_command(["verify", "--scenario", "example32", "--x0", "0", "--format", "text"]);
        assert_eq!(r.exit_code, EXIT_PASS);
        assert!(r.rendered.contains("details.defect"));
        let r = run_command(["solve", "--scenario", "example32", "--x0", "1", "--format", "csv"]);
        assert!(r.rendered.starts_with("n,x_0,residual,subset_indices\n"));
        let r = run_command(["verify", "--scenario", "example32", "--x0", "0", "--format", "csv"]);
        assert!(r.rendered.starts_with("key,value\n"));
    }
}
