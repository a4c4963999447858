use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn tetra(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tetra"))
        .args(args)
        .env_remove("TETRA_THREADS")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("certificate is JSON")
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

/// Compares against a stored table; `TETRA_BLESS=1` rewrites it.
fn assert_golden(name: &str, args: &[&str]) {
    let out = tetra(args);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let path = golden(name);
    if std::env::var_os("TETRA_BLESS").is_some() {
        std::fs::write(&path, &out.stdout).unwrap();
    }
    let expected = std::fs::read_to_string(&path).unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), expected, "{name} drifted");
}

#[test]
fn passing_verification_exits_zero() {
    let out = tetra(&["verify", "tetrahedron", "--N", "1"]);
    assert_eq!(code(&out), 0);
    let c = json(&out);
    assert_eq!(c["pass"], true);
    assert_eq!(c["results"][0]["states_checked"], 64);
    assert_eq!(c["config"]["command"], "tetrahedron");
    assert_eq!(c["schema_version"], 1);
}

#[test]
fn failing_check_exits_one_with_witnesses() {
    // A tolerance no floating-point evaluation can meet.
    let out = tetra(&["dilog", "check", "--identity", "difference", "--tol", "1e-300", "--samples", "12"]);
    assert_eq!(code(&out), 1);
    let c = json(&out);
    assert_eq!(c["pass"], false);
    let r = &c["results"][0];
    assert!(r["failures"].as_u64().unwrap() > 10);
    assert_eq!(r["witnesses"].as_array().unwrap().len(), 10);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["verify", "uq", "--s", "3", "--t", "1"][..],
        &["verify", "ybe", "--orders", "2..1"],
        &["verify", "symmetry", "--orders", "1..3"],
        &["verify", "uq", "--s", "1"],
        &["verify", "uq", "--cyclic", "--n", "2"],
        &["verify", "involution", "--threads", "0"],
        &["dilog", "check", "--identity", "no-such-identity"],
        &["dilog", "check", "--b-re", "-1", "--b-im", "0.2"],
        &["dilog", "check", "--lambda", "0"],
        &["dilog", "check", "--samples", "0"],
        &["dilog", "check", "--identity", "unitarity", "--b-re", "0.8", "--b-im", "0.3"],
        &["dilog", "check", "--identity", "product-routes", "--b-re", "1", "--b-im", "0"],
        &["gen", "algebra", "--cyclic", "--n", "1"],
        &["frobnicate"],
    ] {
        let out = tetra(args);
        assert_eq!(code(&out), 2, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn certificates_are_deterministic_up_to_timing() {
    let dir = tempfile::tempdir().unwrap();
    let mut bodies = Vec::new();
    for k in 0..2 {
        let path = dir.path().join(format!("c{k}.json"));
        let out = Command::new(env!("CARGO_BIN_EXE_tetra"))
            .args(["verify", "intertwining", "--N", "2", "-o"])
            .arg(&path)
            .env("TETRA_THREADS", "1")
            .output()
            .unwrap();
        assert_eq!(code(&out), 0);
        assert!(out.stdout.is_empty());
        let mut c: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert!(c["timing"]["elapsed_seconds"].is_number());
        c.as_object_mut().unwrap().remove("timing");
        bodies.push(serde_json::to_string(&c).unwrap());
    }
    assert_eq!(bodies[0], bodies[1]);
}

#[test]
fn numeric_certificates_do_not_depend_on_thread_count() {
    let run = |threads: &str| {
        let mut c = json(&tetra(&["dilog", "check", "--identity", "chi-swap", "--threads", threads]));
        c["config"].as_object_mut().unwrap().remove("threads");
        c.as_object_mut().unwrap().remove("timing");
        c.as_object_mut().unwrap().remove("content_hash");
        c
    };
    assert_eq!(run("1"), run("3"));
}

#[test]
fn thread_count_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_tetra"))
        .args(["verify", "qosc"])
        .env("TETRA_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["config"]["threads"], 2);
}

#[test]
fn dilog_report_has_the_documented_keys() {
    let out = tetra(&["dilog", "check", "--identity", "fourier-chi-squared", "--lambda", "0.1"]);
    assert_eq!(code(&out), 0);
    let r = &json(&out)["results"][0];
    assert_eq!(r["identity"], "fourier-chi-squared");
    assert!(r["samples"].as_u64().unwrap() >= 1);
    assert!(r["max_residual"].as_f64().unwrap() < 1e-6);
    assert_eq!(r["pass"], true);
}

#[test]
fn inapplicable_identities_are_skipped_in_a_full_run() {
    let out = tetra(&["dilog", "check", "--b-re", "1", "--b-im", "0", "--samples", "2"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let c = json(&out);
    let kinds: Vec<&str> = c["results"].as_array().unwrap().iter().map(|r| r["kind"].as_str().unwrap()).collect();
    assert_eq!(kinds.iter().filter(|k| **k == "skipped").count(), 1);
    assert_eq!(kinds.len(), 12);
}

#[test]
fn rmatrix_spot_values() {
    let out = tetra(&["gen", "rmatrix", "--orders", "0..1"]);
    let table = json(&out);
    let vacuum = |order: u64| {
        table["S"]
            .as_array()
            .unwrap()
            .iter()
            .find(|e| e["z_order"] == order && e["in_state"] == serde_json::json!([0, 0]) && e["out_state"] == serde_json::json!([0, 0]))
            .map(|e| e["coeff"].as_str().unwrap().to_string())
    };
    // u = q^{1/2}
    assert_eq!(vacuum(0).as_deref(), Some("(1)/(1)"));
    assert_eq!(vacuum(1).as_deref(), Some("(1 + u^2)/(1 - u^2)"));

    let odd = json(&tetra(&["gen", "rmatrix", "--s", "2", "--orders", "1..1"]));
    assert!(odd["S"].as_array().unwrap().is_empty());
    assert!(odd["S_hat"].as_array().unwrap().is_empty());
}

#[test]
fn golden_tables() {
    assert_golden("rmatrix_s1_t1_n1_orders0-2.csv", &["gen", "rmatrix", "--format", "csv"]);
    assert_golden("rmatrix_s1_t1_n1_orders0-2.json", &["gen", "rmatrix"]);
    assert_golden("rmatrix_s2_t1_n1_orders0-2.csv", &["gen", "rmatrix", "--s", "2", "--t", "1", "--format", "csv"]);
    assert_golden("r3d_N1.csv", &["gen", "r3d", "--N", "1"]);
    assert_golden("algebra_s1_t2_n1.json", &["gen", "algebra", "--s", "1", "--t", "2"]);
}

#[test]
fn csv_tables_hold_both_operators() {
    let text = std::fs::read_to_string(golden("rmatrix_s1_t1_n1_orders0-2.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("operator,z_order,in_state,out_state,coeff"));
    let ops: Vec<&str> = lines.map(|l| l.split(',').next().unwrap()).collect();
    assert!(ops.contains(&"S") && ops.contains(&"S_hat"));
    assert_eq!(ops.iter().filter(|o| **o == "S").count(), ops.len() / 2);
}
