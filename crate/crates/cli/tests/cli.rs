use std::path::PathBuf;
use std::process::{Command, Output};

use equiconf::confring::ConfElement;
use equiconf::equieven::PageElement;
use equiconf::equiodd::EquiElement;
use equiconf::specseq::FilteredComplex;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_equiconf")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    serde_json::from_str(&stdout(&a)).expect("valid JSON")
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn poincare_of_three_points_in_r3() {
    assert_eq!(stdout(&["conf", "poincare", "--points", "3", "--dim", "3"]), "1 + 3*t^2 + 2*t^4\n");
    let v = json(&["conf", "poincare", "--points", "3", "--dim", "3"]);
    assert_eq!(v["coefficients"], serde_json::json!(["1", "0", "3", "0", "2"]));
}

#[test]
fn so3_hilbert_series() {
    let out = stdout(&["equi", "hilbert", "--points", "2", "--halfdim", "1", "--group", "so", "--max-degree", "8"]);
    assert_eq!(out, "degrees: 0,2,4,6,8\ndims: 1,1,1,1,1\n");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["conf", "poincare", "--points", "3", "--dim", "3", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["conf", "poincare", "--points", "3", "--dim", "1"]).status.code(), Some(2));
    assert_eq!(
        run(&["equi", "hilbert", "--points", "2", "--halfdim", "1", "--group", "u", "--max-degree", "4"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["conf", "poincare", "--points", "3", "--dim", "3", "--format", "dot"]).status.code(), Some(2));
    assert_eq!(run(&["ss", "page", "--input", "/nonexistent.json"]).status.code(), Some(2));
    let usage = run(&["conf", "poincare", "--wat"]);
    assert!(String::from_utf8_lossy(&usage.stderr).contains("Usage"));
}

#[test]
fn purity_violation_exits_one_with_a_report() {
    // φ = 3 on A^0 = ℚ; with ξ = 2 the weight-0 eigenvalue must be 1.
    let path = scratch("impure.json");
    std::fs::write(&path, r#"{"degrees":{"0":1},"phi":{"0":[["3"]]}}"#).unwrap();
    let out = run(&["ss", "purity", "--input", path.to_str().unwrap(), "--xi", "2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["outcome"], "violation");
    assert_eq!(report["factor"], "(t - 3)");
}

#[test]
fn decalage_of_a_zero_differential_complex() {
    let path = scratch("trivial.json");
    std::fs::write(&path, r#"{"degrees":{"0":1,"1":2},"d":{"0":[["0"],["0"]]}}"#).unwrap();
    let v = json(&["ss", "decalage", "--input", path.to_str().unwrap()]);
    let dec: FilteredComplex = serde_json::from_value(v).unwrap();
    // Dec W_i A^n = W_{i−n} A^n when d = 0: degree n moves up to level n.
    assert_eq!(dec.w(0, 0).dim(), 1);
    assert_eq!(dec.w(1, 0).dim(), 0);
    assert_eq!(dec.w(1, 1).dim(), 2);
}

#[test]
fn verify_suites_pass_and_are_deterministic() {
    let a = stdout(&["verify", "--suite", "arnold", "--seed", "7"]);
    let b = stdout(&["verify", "--suite", "arnold", "--seed", "7"]);
    assert_eq!(a, b);
    let report = json(&["verify", "--seed", "3"]);
    assert_eq!(report["passed"], true);
    assert_eq!(report["suites"].as_array().unwrap().len(), 6);
    let even = stdout(&["verify", "--suite", "even-page"]);
    assert!(even.contains("PASS  even-page/conf2-r4-torus"), "{even}");
    let weyl = stdout(&["verify", "--suite", "weyl"]);
    assert!(weyl.contains("PASS  weyl/o4-d4-vanishes"), "{weyl}");
}

#[test]
fn random_complexes_are_deterministic() {
    let a = stdout(&["ss", "random", "--seed", "11", "--format", "json"]);
    assert_eq!(a, stdout(&["ss", "random", "--seed", "11", "--format", "json"]));
    assert_ne!(a, stdout(&["ss", "random", "--seed", "12", "--format", "json"]));
}

#[test]
fn emitted_json_round_trips() {
    let conf = json(&["conf", "normal-form", "--points", "3", "--dim", "3", "1,3;2,3"]);
    let a: ConfElement = serde_json::from_value(conf.clone()).unwrap();
    assert_eq!(serde_json::to_value(&a).unwrap(), conf);

    let equi = json(&["equi", "normal-form", "--points", "3", "--halfdim", "2", "1,2;2,3"]);
    let b: EquiElement = serde_json::from_value(equi.clone()).unwrap();
    assert_eq!(serde_json::to_value(&b).unwrap(), equi);

    let model = json(&["even", "model", "--points", "3", "--halfdim", "2", "--group", "so", "--max-degree", "8"]);
    for els in model["basis"].as_object().unwrap().values() {
        for el in els.as_array().unwrap() {
            let p: PageElement = serde_json::from_value(el.clone()).unwrap();
            assert_eq!(&serde_json::to_value(&p).unwrap(), el);
        }
    }

    for seed in 0..8 {
        let path = scratch(&format!("random-{seed}.json"));
        let s = seed.to_string();
        stdout(&["ss", "random", "--seed", &s, "--format", "json", "--output", path.to_str().unwrap()]);
        let raw = std::fs::read_to_string(&path).unwrap();
        let c: FilteredComplex = serde_json::from_str(&raw).unwrap();
        assert_eq!(serde_json::to_value(&c).unwrap(), serde_json::from_str::<Value>(&raw).unwrap());
        let dec = json(&["ss", "decalage", "--input", path.to_str().unwrap()]);
        let d: FilteredComplex = serde_json::from_value(dec.clone()).unwrap();
        assert_eq!(serde_json::to_value(&d).unwrap(), dec);
        assert_eq!(json(&["render", "--input", path.to_str().unwrap()]), serde_json::to_value(&c).unwrap());
    }
}

#[test]
fn dot_output_draws_one_graph_per_monomial() {
    let dot = stdout(&["conf", "normal-form", "--points", "3", "--dim", "3", "1,3;2,3", "--format", "dot"]);
    assert_eq!(dot.matches("graph m").count(), 2);
    assert!(dot.contains("label=\"-1\"") && dot.contains("1 -- 3"), "{dot}");
    let dot = stdout(&["equi", "basis", "--points", "2", "--halfdim", "1", "--degree", "4", "--format", "dot"]);
    assert_eq!(dot.matches("graph m").count(), 2);
    assert!(dot.contains("label=\"q1\""), "{dot}");
}

#[test]
fn even_page_matches_model() {
    let out = stdout(&["even", "page", "--points", "2", "--halfdim", "2", "--group", "o", "--max-degree", "12"]);
    assert!(out.contains("matches: true"), "{out}");
    let torus = stdout(&["even", "model", "--points", "2", "--halfdim", "2", "--group", "torus", "--max-degree", "8"]);
    assert!(torus.starts_with("dims: 1,0,2,0,2,0,2,0,2\n"), "{torus}");
}
