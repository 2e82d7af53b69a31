use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_fgl-cobord"));
    c.env_remove("FGL_COBORD_CACHE");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("fgl-cobord-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn lazard_small_truncations() {
    let v = json(&["lazard", "--max-weight", "1"]);
    assert_eq!(v["schema"], "fgl-cobord/1");
    assert_eq!(v["generators"], serde_json::json!(["a11"]));
    assert_eq!(v["ranks"], serde_json::json!([1, 1]));

    let v = json(&["lazard", "--max-weight", "4", "--emit", "json"]);
    let ranks: Vec<u64> = v["components"].as_array().unwrap().iter().map(|c| c["rank"].as_u64().unwrap()).collect();
    assert_eq!(ranks, vec![1, 1, 2, 3, 5]);
    assert!(v["components"].as_array().unwrap().iter().all(|c| c["torsion"].as_array().unwrap().is_empty()));
}

#[test]
fn empty_truncation_is_a_usage_error() {
    let out = run(&["lazard", "--max-weight", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("empty truncation"));
}

#[test]
fn bad_flags_exit_two() {
    assert_eq!(run(&["verify", "no-such-check"]).status.code(), Some(2));
    assert_eq!(run(&["lazard", "--emit", "xml"]).status.code(), Some(2));
    assert_eq!(run(&["lbmul", "1"]).status.code(), Some(2));
    assert_eq!(run(&["lbmul", "4", "4"]).status.code(), Some(2));
    assert_eq!(run(&["wpbf", "compose", "--n", "2", "[1, 2]"]).status.code(), Some(2));
    assert_eq!(run(&["wpbf", "decompose", "--n", "2", "q^2"]).status.code(), Some(2));
}

#[test]
fn verify_examples_pass() {
    for args in [
        vec!["verify", "inverse-identity", "--cap", "6"],
        vec!["verify", "fgl-roundtrip", "--caps", "6", "6"],
        vec!["verify", "psi-biorthogonality", "--depth", "6"],
        vec!["verify", "dpc-split"],
        vec!["verify", "wpbf-roundtrip", "--depth", "4"],
    ] {
        let v = json(&args);
        assert_eq!(v["passed"], true, "{args:?}");
        let check = &v["checks"][0];
        assert_eq!(check["status"], "PASS");
        assert!(check["residual"].as_str().unwrap().ends_with('0'));
    }
    let out = run(&["verify", "all", "--emit", "table"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 5);
    assert!(text.lines().all(|l| l.starts_with("PASS")));
}

#[test]
fn lbmul_examples() {
    let v = json(&["lbmul", "0", "3"]);
    assert_eq!(v["display"], "e3");
    let v = json(&["lbmul", "1", "2", "--specialize", "additive"]);
    assert_eq!(v["display"], "3*e3");
    let v = json(&["lbmul", "1", "1"]);
    // -p_1 = a11 and 2p_1^2 - 2p_2 = 2*a12
    assert_eq!(v["display"], "2*e2 + a11*e1 + 2*a12*e0");
    assert_eq!(v["product"]["basis"], "e");
    let v = json(&["lbmul", "1", "1", "--specialize", "multiplicative"]);
    assert_eq!(v["display"], "2*e2 - beta*e1");
}

#[test]
fn wpbf_examples_and_round_trip() {
    let v = json(&["wpbf", "compose", "--n", "2", r#"["0", "1", "0"]"#]);
    assert_eq!(v["series"], "t");
    let v = json(&["wpbf", "decompose", "--n", "2", "t"]);
    assert_eq!(v["n"], 2);
    assert_eq!(v["display"], serde_json::json!(["0", "1", "0"]));

    for alphas in [
        r#"["-2", "3", "a11", "0"]"#,
        r#"["a11^2 - a12", "a13", "0", "a11*a12 + 5"]"#,
        r#"{"n": 3, "alphas": ["1", "-1", "1", "-1"]}"#,
    ] {
        let composed = run(&["wpbf", "compose", "--n", "3", alphas]);
        assert!(composed.status.success());
        let dir = scratch("roundtrip");
        let path = dir.join("composed.json");
        std::fs::write(&path, &composed.stdout).unwrap();
        let arg = format!("@{}", path.display());
        let back = json(&["wpbf", "decompose", "--n", "3", &arg]);
        let first: Value = serde_json::from_slice(&composed.stdout).unwrap();
        assert_eq!(back["alphas"], first["alphas"]);
        assert_eq!(back["display"], first["display"]);
    }
}

#[test]
fn output_is_deterministic() {
    for args in [vec!["lazard"], vec!["lbmul", "2", "3"], vec!["verify", "all"], vec!["mishchenko"]] {
        let a = run(&args);
        let b = run(&args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn output_flag_writes_file() {
    let dir = scratch("output");
    let path = dir.join("lazard.json");
    let out = run(&["lazard", "--max-weight", "3", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["max_weight"], 3);
}

#[test]
fn presentation_cache_is_reused() {
    let dir = scratch("cache");
    let first = bin().env("FGL_COBORD_CACHE", &dir).args(["lazard", "--max-weight", "5"]).output().unwrap();
    assert!(first.status.success());
    let file = dir.join("lazard-5.json");
    assert!(file.exists());
    let second = bin().env("FGL_COBORD_CACHE", &dir).args(["lazard", "--max-weight", "5"]).output().unwrap();
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(first.stdout, run(&["lazard", "--max-weight", "5"]).stdout);

    std::fs::write(&file, "not json").unwrap();
    let third = bin().env("FGL_COBORD_CACHE", &dir).args(["lazard", "--max-weight", "5"]).output().unwrap();
    assert!(third.status.success());
    assert_eq!(first.stdout, third.stdout);
    assert!(String::from_utf8_lossy(&third.stderr).contains("ignoring"));
}

#[test]
fn integral_mode_refuses_rational_classes() {
    let dir = scratch("morphism");
    let path = dir.join("third.json");
    let morphism = r#"{"target": {"vars": ["b"], "weights": [1], "max_weight": 1}, "images": {"a11": "-2/3*b"}}"#;
    std::fs::write(&path, morphism).unwrap();
    let p = path.to_str().unwrap();

    let out = run(&["lbmul", "0", "1", "--max-weight", "1", "--specialize", p]);
    assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&["lbmul", "0", "1", "--max-weight", "1", "--specialize", p, "--mode", "rational"]);
    assert_eq!(v["display"], "e1");
    let v = json(&["specialize", p, "--max-weight", "1"]);
    assert_eq!(v["law"], "x + y - 2/3*b*x*y");
}

#[test]
fn mishchenko_and_specialize_tables() {
    let v = json(&["mishchenko", "--depth", "3"]);
    assert_eq!(v["display"], serde_json::json!(["1", "-a11", "a11^2 - a12", "-a11^3 - 4*a13 + 2*a22"]));
    assert!(v["elements"].as_array().unwrap().iter().all(|e| !e["certificate"].is_null()));
    let out = run(&["specialize", "multiplicative", "--emit", "table"]);
    assert_eq!(stdout(&out), "F(x, y) = x + y - beta*x*y\n");
}
