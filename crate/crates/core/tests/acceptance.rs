//! Acceptance suite. Runs without the libtest harness so every criterion
//! prints exactly one PASS/FAIL line; exits non-zero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use gcyclic::cli::run_command;
use gcyclic::contraction::{chatterjea_gap, kannan_gap};
use gcyclic::corpus::{corpus_entry, Example31Variant};
use gcyclic::gmetric::check_g_axioms_seeded;
use gcyclic::sampling::stream_rng;
use gcyclic::solver::check_trace_properties;
use gcyclic::*;
use rand::Rng;
use serde_json::Value;

type Check = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

const STARTS: [&str; 4] = ["1", "-1", "0.37", "-0.004"];

fn ensure(cond: bool, msg: impl Into<String>) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn p(v: f64) -> Point64 {
    Point::scalar(v).unwrap()
}

fn solve_trace(s: &Scenario64, x0: f64, tol: f64) -> std::result::Result<IterationTrace64, String> {
    picard(s, &p(x0), PicardOptions::new(tol, 200)).map_err(err)
}

fn c1_example_reproduction() -> Check {
    let mut slowest = Duration::ZERO;
    for x0 in STARTS {
        let t = Instant::now();
        let r = run_command([
            "solve", "--scenario", "example32", "--x0", x0, "--tol", "1e-8", "--max-iter", "200",
        ]);
        slowest = slowest.max(t.elapsed());
        ensure(r.exit_code == 0, format!("x0 = {x0}: exit {}", r.exit_code))?;
        let rep = r.report.unwrap();
        let d = &rep["details"];
        ensure(d["outcome"] == "converged", format!("x0 = {x0}: {}", d["outcome"]))?;
        let u = d["fixed_point"][0].as_f64().unwrap();
        ensure(u.abs() <= 1e-8, format!("x0 = {x0}: final iterate {u:e}"))?;
    }
    ensure(slowest < Duration::from_secs(1), format!("slowest solve took {slowest:?}"))?;
    let s = build_example32_scenario::<f64>();
    let v = verify_fixed_point(&s, &p(0.0), 1e-12).map_err(err)?;
    ensure(v.pass && v.defect <= 1e-12, format!("defect {:e}", v.defect))?;
    ensure(v.membership == vec![1, 2], format!("membership {:?}", v.membership))?;
    Ok(format!(
        "4 starts converge to |u| <= 1e-8, defect(0) = {:e}, membership {{1,2}}, slowest {slowest:?}",
        v.defect
    ))
}

/// Independent evaluation of the two-point inequality with φ = id, ψ = 0 and
/// G(a, b, b) = 2|a − b| for the sum construction of |·|.
fn oracle_kannan_gap(x: f64, y: f64) -> f64 {
    let (tx, ty) = (example32_map(x).unwrap(), example32_map(y).unwrap());
    0.5 * (2.0 * (x - tx).abs()) + (1.0 / 3.0) * (2.0 * (y - ty).abs()) - 2.0 * (tx - ty).abs()
}

fn c2_certification() -> Check {
    let s = build_example32_scenario::<f64>();
    let t = Instant::now();
    let c = certify(&s, 10_000, 1e-12, 7, CertifyOptions::default()).map_err(err)?;
    let elapsed = t.elapsed();
    ensure(c.samples == 20_000, format!("{} tuples, both orderings expected", c.samples))?;
    ensure(c.pass && c.min_gap >= -1e-12, format!("min_gap {:e}", c.min_gap))?;
    ensure(elapsed < Duration::from_secs(5), format!("took {elapsed:?}"))?;
    let w = c.witness.as_ref().ok_or("no minimising tuple reported")?;
    let oracle = oracle_kannan_gap(w.x.coords()[0], w.y.coords()[0]);
    ensure(
        (oracle - c.min_gap).abs() <= 1e-15 * oracle.abs().max(1.0),
        format!("oracle {oracle:e} vs min_gap {:e}", c.min_gap),
    )?;
    let mut rng = stream_rng(11, 0);
    let mut oracle_min = f64::INFINITY;
    for _ in 0..10_000 {
        let (a, b): (f64, f64) = (rng.gen_range(0.0..=1.0), rng.gen_range(-1.0..=0.0));
        oracle_min = oracle_min.min(oracle_kannan_gap(a, b)).min(oracle_kannan_gap(b, a));
    }
    ensure(oracle_min >= -1e-12, format!("independent sampling found {oracle_min:e}"))?;
    Ok(format!(
        "min_gap = {:.6e} over {} tuples in {elapsed:?}; independent min {oracle_min:.6e}",
        c.min_gap, c.samples
    ))
}

fn c3_axioms() -> Check {
    let d = MetricFn::abs(BoxDomain::interval(-1.0, 1.0).map_err(err)?);
    for g in [g_sum_from_metric(&d), g_max_from_metric(&d)] {
        let r = check_g_axioms_seeded(&g, 10_000, 1e-12, 5).map_err(err)?;
        for o in &r.outcomes {
            ensure(
                o.pass && o.violations == 0,
                format!("{} {}: {} violations", g.name(), o.axiom.name(), o.violations),
            )?;
        }
    }
    let mutated = GMetricFn::new("dropped d(x,z)", d.domain().clone(), |x: &[f64], y: &[f64], z: &[f64]| {
        Ok((x[0] - y[0]).abs() + (y[0] - z[0]).abs())
    });
    let r = check_g_axioms_seeded(&mutated, 10_000, 1e-12, 5).map_err(err)?;
    let failed: Vec<_> = r
        .failing()
        .filter(|o| matches!(o.axiom, Axiom::G4 | Axiom::G5))
        .collect();
    let o = failed.first().ok_or("mutated G passed G4 and G5")?;
    let w = o.witness.as_ref().ok_or("failing axiom has no witness")?;
    let v: Vec<f64> = w.iter().map(|q| q.coords()[0]).collect();
    let f = |a: f64, b: f64, c: f64| (a - b).abs() + (b - c).abs();
    let concrete = match o.axiom {
        Axiom::G4 => {
            let perms = [
                f(v[0], v[1], v[2]),
                f(v[0], v[2], v[1]),
                f(v[1], v[0], v[2]),
                f(v[1], v[2], v[0]),
                f(v[2], v[0], v[1]),
                f(v[2], v[1], v[0]),
            ];
            perms.iter().cloned().fold(f64::MIN, f64::max) - perms.iter().cloned().fold(f64::MAX, f64::min)
        }
        _ => f(v[0], v[1], v[2]) - f(v[0], v[3], v[3]) - f(v[3], v[1], v[2]),
    };
    ensure(concrete > 1e-12, format!("witness {v:?} does not violate {}", o.axiom.name()))?;
    Ok(format!(
        "g_sum and g_max: 0 violations on 10^4 samples; mutated G fails {} at {v:?} by {concrete:.3e}",
        o.axiom.name()
    ))
}

fn c4_geometric_decay() -> Check {
    let s = build_example32_scenario::<f64>();
    let mut worst = f64::NEG_INFINITY;
    for x0 in STARTS {
        let x0: f64 = x0.parse().unwrap();
        let t = solve_trace(&s, x0, 1e-8)?;
        let r = t.residuals();
        let rate: f64 = 0.75 + 1e-9;
        for (n, &rn) in r.iter().enumerate() {
            let bound = rate.powi(n as i32) * r[0];
            ensure(rn <= bound, format!("x0 = {x0}: r_{n} = {rn:e} > {bound:e}"))?;
            if r[0] > 0.0 && n > 0 {
                worst = worst.max(rn / bound);
            }
        }
        for (n, w) in r.windows(2).enumerate() {
            ensure(w[1] <= w[0], format!("x0 = {x0}: r_{} > r_{n}", n + 1))?;
        }
    }
    Ok(format!("bound and monotonicity hold from 4 starts; max r_n/bound = {worst:.3e}"))
}

fn c5_a_priori() -> Check {
    let s = build_example32_scenario::<f64>();
    let mut pairs = Vec::new();
    for x0 in STARTS {
        let x0: f64 = x0.parse().unwrap();
        let t = solve_trace(&s, x0, 1e-8)?;
        let bound = a_priori_iterations(0.75, t.residuals()[0], 1e-8).map_err(err)?;
        ensure(bound >= t.steps() as u64, format!("x0 = {x0}: bound {bound} < {} steps", t.steps()))?;
        pairs.push((t.steps(), bound));
    }
    let analytic = a_priori_iterations(0.75, 1.0, 1e-6).map_err(err)?;
    let oracle = (1e-6f64.ln() / 0.75f64.ln()).ceil() as u64;
    ensure(analytic == 49 && oracle == 49, format!("got {analytic}, oracle {oracle}"))?;
    Ok(format!("(steps, bound) = {pairs:?}; n(r0=1, tol=1e-6) = {analytic}"))
}

fn c6_integral_reduction() -> Check {
    let plain = build_example32_scenario::<f64>();
    let unit = build_example31_scenario(DensityFn::constant(1.0), 0.5, 1.0 / 3.0, Example31Variant::Kannan, None)
        .map_err(err)?;
    let o = CertifyOptions::default();
    let (a, b) = (
        certify(&plain, 10_000, 1e-12, 7, o).map_err(err)?,
        certify(&unit, 10_000, 1e-12, 7, o).map_err(err)?,
    );
    ensure(a.pass == b.pass && a.pass, format!("certify pass {} vs {}", a.pass, b.pass))?;
    let mut worst = 0.0f64;
    for x0 in STARTS {
        let x0: f64 = x0.parse().unwrap();
        let (ta, tb) = (solve_trace(&plain, x0, 1e-8)?, solve_trace(&unit, x0, 1e-8)?);
        ensure(ta.outcome() == tb.outcome(), format!("x0 = {x0}: outcomes differ"))?;
        let diff = (ta.last().coords()[0] - tb.last().coords()[0]).abs();
        ensure(diff <= 1e-8, format!("x0 = {x0}: fixed points differ by {diff:e}"))?;
        worst = worst.max(diff);
    }
    Ok(format!(
        "certify pass on both (min_gap {:.6e} vs {:.6e}); fixed points agree to {worst:e}",
        a.min_gap, b.min_gap
    ))
}

fn c7_reduction_consistency() -> Check {
    let kannan = build_example32_scenario::<f64>();
    let chatterjea = corpus_entry("example32-chatterjea").ok_or("missing corpus entry")?.scenario;
    let cover = kannan.cover();
    let mut worst = 0.0f64;
    for (i, j) in [(1usize, 2usize), (2, 1)] {
        let xs = cover.subset(i).sample(500, 21, i as u64).map_err(err)?;
        let ys = cover.subset(j).sample(500, 21, 10 + j as u64).map_err(err)?;
        for (x, y) in xs.iter().zip(&ys) {
            let k = (kannan_gap(&kannan, x, y, y).map_err(err)? - kannan_gap_pair(&kannan, x, y).map_err(err)?).abs();
            let c = (chatterjea_gap(&chatterjea, x, y, y).map_err(err)?
                - chatterjea_gap_pair(&chatterjea, x, y).map_err(err)?)
            .abs();
            worst = worst.max(k).max(c);
        }
    }
    ensure(worst <= 1e-15, format!("max |three − two| = {worst:e}"))?;
    Ok(format!("1000 adjacent pairs, both kinds, max |three − two| = {worst:e}"))
}

fn c8_convergence_equivalences() -> Check {
    let s = build_example32_scenario::<f64>();
    let t = solve_trace(&s, 1.0, 1e-8)?;
    let report = check_trace_properties(&t, &s, 1e-8).map_err(err)?;
    let tail = report.tail.as_ref().ok_or("trace did not converge")?;
    let xs = &t.iterates()[tail.start..];
    let u = t.last();
    let g = |a: &Point64, b: &Point64, c: &Point64| s.g(a, b, c).unwrap();
    let (mut c1, mut c2, mut c3, mut c4, mut cauchy) = (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for xn in xs {
        c2 = c2.max(g(xn, xn, u));
        c3 = c3.max(g(xn, u, u));
        for xm in xs {
            c1 = c1.max(g(u, xn, xm));
            c4 = c4.max(g(xn, xm, u));
            cauchy = cauchy.max(g(xn, xm, xm));
        }
    }
    let all = [c1, c2, c3, c4, cauchy];
    ensure(all.iter().all(|&v| v < 1e-6), format!("tail maxima {all:?}"))?;
    ensure(tail.convergence_pass && tail.cauchy_pass, "trace report disagrees")?;
    Ok(format!("tail of {} iterates: maxima {all:?}", xs.len()))
}

fn c9_zamfirescu() -> Check {
    let d = MetricFn::abs(BoxDomain::interval(-1.0, 1.0).map_err(err)?);
    let half = Operator::scalar("x/2", |x: f64| Ok(x / 2.0));
    let (alpha, beta, gamma) = (0.5, 0.4, 0.3);
    let mut rng = stream_rng(9, 0);
    let mut worst = 0.0f64;
    for _ in 0..1_000 {
        let (x, y): (f64, f64) = (rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0));
        let (px, py) = (p(x), p(y));
        let z = zamfirescu_check(&d, &half, alpha, beta, gamma, &px, &py, 0.0).map_err(err)?;
        let k = classic_kannan_gap(&d, &half, beta, &px, &py).map_err(err)?;
        let c = classic_chatterjea_gap(&d, &half, gamma, &px, &py).map_err(err)?;
        let (tx, ty) = (x / 2.0, y / 2.0);
        let k_hand = beta * ((x - tx).abs() + (y - ty).abs()) - (tx - ty).abs();
        let c_hand = gamma * ((x - ty).abs() + (y - tx).abs()) - (tx - ty).abs();
        for diff in [z.kannan - k, z.chatterjea - c, k - k_hand, c - c_hand] {
            worst = worst.max(diff.abs());
        }
        ensure(z.any, format!("no alternative holds at ({x}, {y})"))?;
    }
    ensure(worst <= 1e-15, format!("max deviation {worst:e}"))?;
    Ok(format!("1000 pairs, max deviation {worst:e}"))
}

fn c10_determinism() -> Check {
    let argvs: [&[&str]; 2] = [
        &["certify", "--scenario", "example32", "--samples", "10000", "--seed", "7"],
        &["check-axioms", "--scenario", "example32", "--samples", "10000", "--seed", "7"],
    ];
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().map_err(err)?;
    for argv in argvs {
        let a = run_command(argv.iter().copied());
        let b = run_command(argv.iter().copied());
        let c = single.install(|| run_command(argv.iter().copied()));
        ensure(a.exit_code == 0, format!("{}: exit {}", argv[0], a.exit_code))?;
        ensure(a.rendered == b.rendered, format!("{}: repeated runs differ", argv[0]))?;
        ensure(a.rendered == c.rendered, format!("{}: single-thread run differs", argv[0]))?;
        let v: Value = serde_json::from_str(&a.rendered).map_err(err)?;
        ensure(v["seed"] == 7, "seed not recorded")?;
    }
    Ok("certify and check-axioms reports byte-identical across 3 runs (incl. 1 thread)".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("piecewise map reproduction", c1_example_reproduction),
        ("piecewise map certification", c2_certification),
        ("axiom suite", c3_axioms),
        ("geometric decay", c4_geometric_decay),
        ("a-priori bound", c5_a_priori),
        ("integral-type reduction", c6_integral_reduction),
        ("reduction consistency", c7_reduction_consistency),
        ("convergence equivalences", c8_convergence_equivalences),
        ("zamfirescu consistency", c9_zamfirescu),
        ("determinism", c10_determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(msg) => println!("criterion {:>2} PASS  {name}: {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {msg}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
