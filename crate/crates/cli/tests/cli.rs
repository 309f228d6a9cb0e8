//! End-to-end tests of the hallcross binary: golden outputs, file formats,
//! exit codes, and byte-identical output across job counts.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hallcross"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

fn write_tmp(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("hallcross-tests");
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    fs::write(&path, contents).unwrap();
    path
}

fn vect_file() -> PathBuf {
    write_tmp("vect.json", r#"{"vertices": ["1"], "arrows": []}"#)
}

fn a2_file() -> PathBuf {
    write_tmp(
        "a2.json",
        r#"{"vertices": ["1", "2"], "arrows": [["1", "2"]]}"#,
    )
}

#[test]
fn quiver_dt_vect_two() {
    let q = vect_file();
    let out = run(&[
        "quiver-dt",
        "--quiver",
        q.to_str().unwrap(),
        "--theta",
        "0",
        "--dim",
        "2",
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["dt"], "-1/4");
    assert_eq!(v["regular_at_one"], true);
    assert_eq!(v["delta"]["text"], "q^-1/(q^2-1)");
    assert_eq!(v["epsilon"]["text"], "-1/2*q^-1/(q+1)");
    // serialized triples carry [exponent, numerator, denominator]
    assert_eq!(v["epsilon"]["num"][0][0], -1);
    assert_eq!(v["epsilon"]["num"][0][1], -1);
    assert_eq!(v["epsilon"]["num"][0][2], 2);
}

#[test]
fn quiver_dt_vect_one_and_a2() {
    let q = vect_file();
    let out = run(&[
        "quiver-dt",
        "--quiver",
        q.to_str().unwrap(),
        "--theta",
        "0",
        "--dim",
        "1",
    ]);
    assert_eq!(stdout_json(&out)["dt"], "1");

    let a2 = a2_file();
    let out = run(&[
        "quiver-dt",
        "--quiver",
        a2.to_str().unwrap(),
        "--theta",
        "1,0",
        "--kappa",
        "1,1",
        "--dim",
        "1,1",
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["dt"], "1");
    assert_eq!(v["delta"]["text"], "1");
}

#[test]
fn exit_code_three_on_pole() {
    let q = vect_file();
    let out = run(&[
        "quiver-dt",
        "--quiver",
        q.to_str().unwrap(),
        "--theta",
        "0",
        "--dim",
        "2",
        "--q-at",
        "-1",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["kind"], "pole_at_one");
}

#[test]
fn exit_code_two_on_input_errors() {
    let out = run(&["residue", "--f", "1/(u+2)"]);
    assert_eq!(out.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["kind"], "input");

    let out = run(&[
        "quiver-dt",
        "--quiver",
        "/no/such/file",
        "--theta",
        "0",
        "--dim",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(2));

    // cyclic quiver rejected
    let cyc = write_tmp(
        "cyclic.json",
        r#"{"vertices": ["1", "2"], "arrows": [["1", "2"], ["2", "1"]]}"#,
    );
    let out = run(&[
        "quiver-dt",
        "--quiver",
        cyc.to_str().unwrap(),
        "--theta",
        "0,0",
        "--dim",
        "1,1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn residue_and_weyl_golden() {
    let out = run(&["residue", "--f", "1/(1-u)"]);
    let v = stdout_json(&out);
    assert_eq!(v["residue"], "-1");
    assert_eq!(v["residue_partial_fractions"], "-1");

    let out = run(&["weyl", "--n", "3", "--lambda", "0,0,0"]);
    let v = stdout_json(&out);
    assert_eq!(v["constant_term"], "6");
    assert_eq!(v["invariant_dim"], "1");

    let out = run(&["weyl", "--n", "2", "--lambda", "1,-1"]);
    assert_eq!(stdout_json(&out)["constant_term"], "0");
}

#[test]
fn vect_subcommand_golden() {
    let out = run(&["vect", "--op", "epsilon", "--n", "2", "--char", "s[1,-1]"]);
    assert_eq!(stdout_json(&out)["value"], "0");

    let out = run(&[
        "vect",
        "--op",
        "delta",
        "--n",
        "2",
        "--char",
        "s[1,-1]^2 - 2*s[0,0]",
    ]);
    // adjoint⊗adjoint contains one trivial; the constant shifts by −2.
    assert_eq!(stdout_json(&out)["value"], "-1");

    let out = run(&[
        "vect",
        "--op",
        "product",
        "--n",
        "2",
        "--char",
        "s[1,-1] - 3*s[0,0]",
        "--blocks",
        "1,1",
    ]);
    assert_eq!(stdout_json(&out)["value"], "-6");
}

#[test]
fn parse_round_trip_and_series() {
    let out = run(&["parse", "--f", "1/(q*(q^2-1))"]);
    let v = stdout_json(&out);
    assert_eq!(v["text"], "q^-1/(q^2-1)");
    let text = v["text"].as_str().unwrap();
    let again = run(&["parse", "--f", text]);
    assert_eq!(stdout_json(&again)["text"], text);

    let out = run(&[
        "parse",
        "--f",
        "1/(1-u)",
        "--expand",
        "zero",
        "--max-order",
        "3",
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["series"]["text"], "1+u+u^2+u^3");
    assert_eq!(
        v["series"]["coeffs"],
        serde_json::json!(["1", "1", "1", "1"])
    );

    let out = run(&["parse", "--f", "u", "--expand", "one", "--max-order", "2"]);
    assert_eq!(stdout_json(&out)["series"]["text"], "1-(1-u)");
}

#[test]
fn hn_check_and_wallcross_check() {
    let a2 = a2_file();
    let out = run(&[
        "hn-check",
        "--quiver",
        a2.to_str().unwrap(),
        "--dim",
        "1,1",
        "--theta",
        "1,0",
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["ok"], true);
    assert_eq!(v["poincare"]["text"], "q/(q-1)");
    assert_eq!(v["hn_types"].as_array().unwrap().len(), 2);

    let out = run(&[
        "wallcross-check",
        "--quiver",
        a2.to_str().unwrap(),
        "--dim",
        "1,1",
        "--wall-theta",
        "1,1",
        "--theta",
        "1,0",
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["equal"], true);
    assert_eq!(v["wall_delta"]["text"], "q/(q-1)");

    // Non-dominating pair is rejected as an input error.
    let out = run(&[
        "wallcross-check",
        "--quiver",
        a2.to_str().unwrap(),
        "--dim",
        "1,1",
        "--wall-theta",
        "1,0",
        "--theta",
        "0,1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn coeffs_simple_wall() {
    let path = write_tmp(
        "wall.json",
        r#"{"hops": [{"wall": {"theta": [1, 1]}, "side": {"theta": [1, 0]}}], "bound": [1, 1]}"#,
    );
    let out = run(&["coeffs", "--path", path.to_str().unwrap()]);
    let v = stdout_json(&out);
    assert_eq!(v["utilde_unique"], false);
    let u = v["u"].as_array().unwrap();
    let entry = |tuple: serde_json::Value| {
        u.iter()
            .find(|e| e["tuple"] == tuple)
            .map(|e| e["value"].clone())
    };
    assert_eq!(
        entry(serde_json::json!([[1, 0], [0, 1]])),
        Some(serde_json::json!("1/2"))
    );
    assert_eq!(
        entry(serde_json::json!([[0, 1], [1, 0]])),
        Some(serde_json::json!("-1/2"))
    );
    assert_eq!(
        entry(serde_json::json!([[1, 1]])),
        Some(serde_json::json!("1"))
    );
}

#[test]
fn output_is_deterministic_across_jobs_and_runs() {
    let args = [
        "vect",
        "--op",
        "epsilon",
        "--n",
        "4",
        "--char",
        "s[1,0,0,-1]^2",
    ];
    let base = run(&args);
    assert!(base.status.success());
    for jobs in ["1", "2", "5"] {
        let out = bin().args(args).args(["--jobs", jobs]).output().unwrap();
        assert_eq!(out.stdout, base.stdout, "jobs = {jobs}");
    }
    let again = run(&args);
    assert_eq!(again.stdout, base.stdout);

    let w = ["weyl", "--n", "4", "--lambda", "2,1,-1,-2"];
    let base = run(&w);
    for jobs in ["1", "3"] {
        let out = bin().args(w).args(["--jobs", jobs]).output().unwrap();
        assert_eq!(out.stdout, base.stdout, "jobs = {jobs}");
    }
}

#[test]
fn output_to_file() {
    let target = std::env::temp_dir()
        .join("hallcross-tests")
        .join("out.json");
    let _ = fs::remove_file(&target);
    let out = bin()
        .args(["residue", "--f", "7", "--output", target.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&target).unwrap()).unwrap();
    assert_eq!(v["residue"], "0");
}
