use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn ambig(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ambig")).args(args).output().unwrap()
}

fn ambig_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_ambig"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn payload_without_timing(out: &Output) -> Value {
    let mut v = json(out);
    v.as_object_mut().unwrap().remove("elapsed_ms");
    v
}

#[test]
fn group_decide_z8() {
    let out = ambig(&["group-decide", "Z8"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["status"], "ok");
    assert_eq!(v["payload"]["exists"], false);
    assert_eq!(v["payload"]["non_s_count"], 6);
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
}

#[test]
fn curve_decide_example() {
    let out = ambig(&["curve-decide", "E(7;a=1,b=0)"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["payload"]["exists"], false);
    assert_eq!(v["payload"]["nq"], 3);
    assert_eq!(v["payload"]["total"], 8);
}

#[test]
fn identity_table_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"group":"Z5","table":[0,1,2,3,4],"meta":{"generator":"manual","seed":null}}"#).unwrap();
    let out = ambig(&["group-verify", "Z5", "--witness", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["status"], "fail");
    assert_eq!(v["payload"]["counterexample"], 1);
    assert_eq!(v["payload"]["failed_law"], "square_is_inverse");
}

#[test]
fn construct_then_verify_round_trips() {
    for spec in ["Z5", "Z2xZ4", "D6", "A4", "Z3xZ3", "V(3^2,2)", "E(5;a=-1,b=0)", "Z2xZ2xZ3"] {
        let built = ambig(&["group-construct", spec]);
        assert_eq!(built.status.code(), Some(0), "{spec}");
        let v = json(&built);
        assert_eq!(v["payload"]["exists"], true, "{spec}");
        assert_eq!(v["payload"]["witness"]["meta"]["generator"], "greedy-v1");
        assert!(v["payload"]["witness"]["meta"]["seed"].is_null());
        // whole report on stdin
        let checked = ambig_stdin(&["group-verify"], &built.stdout);
        assert_eq!(checked.status.code(), Some(0), "{spec}: {}", String::from_utf8_lossy(&checked.stdout));
        // bare witness from a file
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("w.json");
        std::fs::write(&path, serde_json::to_string(&v["payload"]["witness"]).unwrap()).unwrap();
        let checked = ambig(&["group-verify", spec, "--witness", path.to_str().unwrap()]);
        assert_eq!(json(&checked)["payload"]["passed"], true, "{spec}");
    }
}

#[test]
fn construct_reports_absence() {
    let v = json(&ambig(&["group-construct", "Z8"]));
    assert_eq!(v["status"], "ok");
    assert_eq!(v["payload"]["exists"], false);
    assert!(v["payload"]["witness"].is_null());
}

#[test]
fn cayley_csv_group() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("z5.csv");
    let rows: Vec<String> = (0..5)
        .map(|i| (0..5).map(|j| ((i + j) % 5).to_string()).collect::<Vec<_>>().join(","))
        .collect();
    std::fs::write(&path, rows.join("\n")).unwrap();
    let spec = format!("cayley:{}", path.display());
    let built = ambig(&["group-construct", &spec]);
    assert_eq!(json(&built)["payload"]["exists"], true);
    let checked = ambig_stdin(&["group-verify"], &built.stdout);
    assert_eq!(checked.status.code(), Some(0));
}

#[test]
fn bad_input_exits_2() {
    for args in [
        vec!["group-decide", "K4"],
        vec!["curve-decide", "E(5;a=0,b=0)"],
        vec!["curve-scan", "--a", "1", "--b", "0", "--q", "9"],
        vec!["cont-check", "gl-pingpong", "--n", "4"],
        vec!["registry", "Klein bottle"],
    ] {
        let out = ambig(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert_eq!(json(&out)["status"], "error", "{args:?}");
        assert!(!out.stderr.is_empty());
    }
    let out = ambig_stdin(&["group-verify", "Z5"], b"not json");
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(ambig(&["no-such-verb"]).status.code(), Some(2));
}

#[test]
fn curve_scan_csv() {
    let out = ambig(&["curve-scan", "--a", "1", "--b", "0", "--q", "7,11,19,23,31,43,47,5,13,17,49,121"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("q,a,b,total,roots,nq,exists"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    let qs: Vec<u64> = rows.iter().map(|r| r[0].parse().unwrap()).collect();
    assert_eq!(qs, [5, 7, 11, 13, 17, 19, 23, 31, 43, 47, 49, 121]);
    for r in &rows {
        let q: u64 = r[0].parse().unwrap();
        let expect = !matches!(q, 7 | 11 | 19 | 23 | 31 | 43 | 47);
        assert_eq!(r[6], expect.to_string(), "q = {q}");
    }
}

#[test]
fn curve_scan_negative_coefficients_and_empty_range() {
    let out = ambig(&["curve-scan", "--a", "-1", "--b", "0", "--qmin", "5", "--qmax", "199"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().skip(1).all(|l| l.ends_with(",true") && l.contains(",-1,0,")));
    assert!(text.lines().count() > 40);
    let out = ambig(&["curve-scan", "--a=-1", "--b", "0", "--qmin", "50", "--qmax", "48"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "q,a,b,total,roots,nq,exists\n");
}

#[test]
fn curve_scan_json_and_table() {
    let v = json(&ambig(&["curve-scan", "--a", "-1", "--b", "0", "--qmax", "13", "--format", "json"]));
    assert_eq!(v["payload"]["rows"].as_array().unwrap().len(), 4);
    let out = ambig(&["curve-scan", "--a", "-1", "--b", "0", "--qmax", "13", "--format", "table"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().next().unwrap().contains("exists"));
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in [
        vec!["cont", "check", "gl-pingpong", "--n", "3", "--samples", "2000", "--seed", "42", "--tol", "1e-6"],
        vec!["cont-check", "lattice", "--samples", "500", "--seed", "7"],
        vec!["group-construct", "S4"],
        vec!["curve-census", "E(5^2;a=1,b=0)"],
        vec!["registry"],
    ] {
        let a = payload_without_timing(&ambig(&args));
        let b = payload_without_timing(&ambig(&args));
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap(), "{args:?}");
    }
}

#[test]
fn cont_check_reports_fields() {
    let v = json(&ambig(&["cont-check", "gl-pingpong", "--n", "3", "--samples", "1000", "--seed", "42"]));
    let p = &v["payload"];
    for key in ["passed", "max_error", "worst_input", "samples", "seed"] {
        assert!(!p[key].is_null(), "{key}");
    }
    assert_eq!(p["samples"], 1000);
    assert_eq!(p["seed"], 42);
    assert_eq!(p["passed"], true);
    // a tolerance below rounding makes the fourth-power check fail
    let out = ambig(&["cont-check", "gl-pingpong", "--samples", "1000", "--tol", "1e-30"]);
    assert_eq!(out.status.code(), Some(1));
    let d = json(&ambig(&["cont-check", "inversion-differential", "--n", "2", "--h", "1e-6"]));
    assert_eq!(d["payload"]["passed"], true);
}

#[test]
fn registry_queries() {
    for (q, verdict) in [("SO(2)", "no"), ("S³", "no"), ("SL_4(R)", "no"), ("T³", "no"), ("T⁴", "yes"), ("E over C", "yes")] {
        let v = json(&ambig(&["registry", q]));
        assert_eq!(v["payload"]["verdict"], verdict, "{q}");
        assert!(v["payload"]["entry"]["anchor"].as_str().unwrap().len() > 20);
    }
    let all = json(&ambig(&["registry"]));
    assert!(all["payload"]["entries"].as_array().unwrap().len() >= 15);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = ambig(&["group-decide", "Z12", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["payload"]["group"], "Z12");
}
