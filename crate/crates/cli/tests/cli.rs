use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn greenseq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_greenseq"))
        .args(args)
        .env_remove("GREENSEQ_JOBS")
        .output()
        .unwrap()
}

fn run_ok(args: &[&str]) -> String {
    let out = greenseq(args);
    assert!(
        out.status.success(),
        "{args:?} exited {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn path(name: &str) -> String {
    data(name).to_str().unwrap().to_string()
}

#[test]
fn explore_a2_reports_pentagon() {
    let out = run_ok(&["explore", &path("a2.json")]);
    assert!(out.contains("classes: 5\n"), "{out}");
    assert!(out.contains("edges: 5\n"));
    assert!(out.contains("source: 1 (framed)\n"));
    assert!(out.contains("sink: 5 (coframed)\n"));
}

#[test]
fn explore_json_matches_graph_schema() {
    let v: Value = serde_json::from_str(&run_ok(&["explore", "--json", &path("a3.json")])).unwrap();
    assert_eq!(v["vertices"].as_array().unwrap().len(), 14);
    assert_eq!(v["complete"], json!(true));
    assert_eq!(v["rank"], json!(3));
    assert_eq!(v["v"], json!(1));
}

#[test]
fn green_seqs_a2() {
    let out = run_ok(&["green-seqs", &path("a2.json")]);
    let lines: Vec<&str> = out.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(lines, ["1 2 1", "2 1"]);
}

#[test]
fn green_seqs_kronecker_is_bounded() {
    let out = run_ok(&["green-seqs", "--json", "--max-len", "12", "--max-entry", "64", &path("kronecker.json")]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["sequences"], json!([[2, 1]]));
    assert_eq!(v["exhausted"], json!(false));
    assert_eq!(v["frontier_remaining"], json!(1));
}

#[test]
fn out_of_range_vertex_is_a_usage_error() {
    let out = greenseq(&["mutate", "-k", "3", &path("a2.json")]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.starts_with("error[usage]:"), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn bad_flags_are_usage_errors() {
    for args in [
        vec!["explore", "--max-depth", "0", "x.json"],
        vec!["frobnicate"],
        vec!["green-seqs", "--max-entry", "-3", "x.json"],
    ] {
        let out = greenseq(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8(out.stderr).unwrap().starts_with("error[usage]:"));
    }
    let out = Command::new(env!("CARGO_BIN_EXE_greenseq"))
        .args(["explore", &path("a2.json")])
        .env("GREENSEQ_JOBS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn domain_and_input_errors_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"n":2,"m":0,"b":[[0,1],[1,0]]}"#).unwrap();
    let out = greenseq(&["explore", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.starts_with("error[input]:") && err.contains("/b/"), "{err}");

    let framed = dir.path().join("framed.json");
    std::fs::write(&framed, r#"{"n":2,"m":2,"b":[[0,1],[-1,0],[1,0],[0,1]]}"#).unwrap();
    let out = greenseq(&["explore", framed.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr).unwrap().starts_with("error[domain]:"));

    let out = greenseq(&["explore", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr).unwrap().starts_with("error[io]:"));
}

#[test]
fn mutate_outputs_quiver() {
    let out = run_ok(&["mutate", "--json", "-k", "1", &path("a2.json")]);
    assert_eq!(out, "{\"b\":[[0,-1],[1,0]],\"m\":0,\"n\":2,\"v\":1}\n");
    let dot = run_ok(&["mutate", "--dot", "-k", "1,2", &path("a3.json")]);
    assert!(dot.starts_with("digraph quiver {"));
}

#[test]
fn c_and_g_matrices_along_a_sequence() {
    let c: Value = serde_json::from_str(&run_ok(&["cmat", "--json", "-s", "1,2,1", &path("a2.json")])).unwrap();
    assert_eq!(
        c["matrices"],
        json!([[[1, 0], [0, 1]], [[-1, 1], [0, 1]], [[0, -1], [1, -1]], [[0, -1], [-1, 0]]])
    );
    let g: Value = serde_json::from_str(&run_ok(&["gmat", "--json", "-s", "1,2,1", &path("a2.json")])).unwrap();
    assert_eq!(
        g["matrices"],
        json!([[[1, 0], [0, 1]], [[-1, 0], [1, 1]], [[-1, -1], [1, 0]], [[0, -1], [-1, 0]]])
    );
    let text = run_ok(&["cmat", "-s", "1", &path("a2.json")]);
    assert_eq!(text, "initial\n[1 0]\n[0 1]\nafter 1 (mutated at 1)\n[-1  1]\n[ 0  1]\n");
}

#[test]
fn clusters_a2() {
    let out = run_ok(&["clusters", &path("a2.json")]);
    assert!(out.starts_with("clusters: 5\ncomplete: true\n"), "{out}");
    for v in ["(x2+x3)/x1", "(x2+x3+x1*x3*x4)/(x1*x2)", "(1+x1*x4)/x2"] {
        assert!(out.contains(v), "{v} missing from {out}");
    }
}

#[test]
fn ginzburg_outputs() {
    let out = run_ok(&["ginzburg", &path("a2-potential.json")]);
    assert!(out.contains("t1: 1 -> 1, degree -2, d = -1*alpha*.alpha\n"), "{out}");
    assert!(out.contains("t2: 2 -> 2, degree -2, d = +1*alpha.alpha*\n"));
    let v: Value = serde_json::from_str(&run_ok(&["ginzburg", "--json", &path("three-cycle-potential.json")])).unwrap();
    let rel: Vec<String> = v["relations"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["relation"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(rel, ["+1*c.b", "+1*a.c", "+1*b.a"]);
}

#[test]
fn verify_passes_on_finite_type() {
    let out = run_ok(&["verify", "--trials", "30", &path("a3.json")]);
    for name in ["regular", "acyclic", "unique-source", "at-most-one-sink", "duality", "separation"] {
        assert!(out.contains(&format!("PASS {name}")), "{name}: {out}");
    }
    let out = run_ok(&["verify", "--trials", "10", "--depth", "4", "--max-vertices", "50", &path("markov.json")]);
    assert!(out.starts_with("SKIP axioms"), "{out}");
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["explore", "--json"],
        vec!["green-seqs"],
        vec!["clusters", "--json"],
        vec!["verify", "--json"],
    ] {
        let mut a = args.clone();
        let p = path("a3.json");
        a.push(&p);
        let first = run_ok(&a);
        let out = Command::new(env!("CARGO_BIN_EXE_greenseq"))
            .args(&a)
            .env("GREENSEQ_JOBS", "1")
            .output()
            .unwrap();
        assert_eq!(String::from_utf8(out.stdout).unwrap(), first, "{args:?}");
    }
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("graph.dot");
    let out = run_ok(&["explore", "--dot", "-o", target.to_str().unwrap(), &path("a2.json")]);
    assert!(out.is_empty());
    let dot = std::fs::read_to_string(target).unwrap();
    assert!(dot.starts_with("digraph exchange {"));
    assert_eq!(dot.matches(" -> ").count(), 5);
}
