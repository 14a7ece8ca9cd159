use gcyclic::config::scenario::load_scenario_file;
use gcyclic::*;

fn shipped() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios/example32.toml")
}

#[test]
fn shipped_file_reproduces_builtin_scenario() {
    let loaded = load_scenario_file(shipped()).unwrap();
    let (file, builtin) = (loaded.scenario, build_example32_scenario::<f64>());
    let o = CertifyOptions { three_point: true };
    for seed in [1, 7, 42] {
        let (a, b) = (
            certify(&file, 3_000, 1e-12, seed, o).unwrap(),
            certify(&builtin, 3_000, 1e-12, seed, o).unwrap(),
        );
        assert_eq!(a.min_gap, b.min_gap);
        assert_eq!(a.witness, b.witness);
    }
    for x0 in [1.0, -1.0, 0.37, -0.004] {
        let x0 = Point::scalar(x0).unwrap();
        let opts = PicardOptions::new(1e-12, 200);
        let (ta, tb) = (picard(&file, &x0, opts).unwrap(), picard(&builtin, &x0, opts).unwrap());
        assert_eq!(ta.iterates(), tb.iterates());
        assert_eq!(ta.residuals(), tb.residuals());
    }
}

#[test]
fn expression_map_matches_builtin_on_a_grid() {
    let file = load_scenario_file(shipped()).unwrap().scenario;
    for i in 0..=2000 {
        let x = Point::scalar(-1.0 + i as f64 / 1000.0).unwrap();
        let (a, b) = (file.apply(&x).unwrap(), example32_map(x.coords()[0]).unwrap());
        assert!((a.coords()[0] - b).abs() <= 1e-15);
    }
}

#[test]
fn raw_gmetric_and_psi_expressions() {
    let doc = r#"
        id = "raw"
        dimension = 1
        kind = "chatterjea"
        alpha = 0.25
        gamma = 0.25
        map = ["x / 4"]
        domain = { lower = [-1.0], upper = [1.0] }
        gmetric = { construction = "raw", expression = "max(abs(x - y), max(abs(y - z), abs(x - z)))" }
        subsets = [{ predicate = "x >= -1 and x <= 1" }]
        phi = { kind = "expression", expression = "t + t^2" }
        psi = { kind = "expression", expression = "(x + y + z) / 100" }
    "#;
    let s = load_scenario(doc).unwrap();
    assert_eq!(s.kind(), ContractionKind::ChatterjeaG);
    assert_eq!(s.psi_mode(), PsiMode::Strict);
    assert_eq!(s.phi().eval(2.0).unwrap(), 6.0);
    assert_eq!(s.psi().eval(1.0, 2.0, 3.0).unwrap(), 0.06);
    let r = check_g_axioms_seeded(s.gmetric(), 2_000, 1e-12, 1).unwrap();
    assert!(r.pass());
    let c = certify(&s, 1_000, 1e-12, 1, CertifyOptions::default()).unwrap();
    assert!(c.pass, "min gap {}", c.min_gap);
}

#[test]
fn schema_errors_name_the_field() {
    let doc = r#"
        id = "bad"
        dimension = 1
        kind = "kannan"
        alpha = 0.5
        gamma = 0.25
        map = ["x / 2"]
        domain = { lower = [-1.0], upper = [1.0] }
        gmetric = { construction = "sum", metric = "abs(x - y)" }
        subsets = [{ boxes = [{ lower = [-1.0], upper = [1.0] }], predicate = "x > 0" }]
    "#;
    match load_scenario(doc) {
        Err(Error::Config { path, .. }) => assert_eq!(path, "subsets[0]"),
        other => panic!("{other:?}"),
    }
    let doc = doc.replace(", predicate = \"x > 0\"", "").replace("kind = \"kannan\"", "kind = \"banach\"");
    assert!(matches!(load_scenario(&doc), Err(Error::Config { .. })));
}
