//! End-to-end runs of the binary: round trips, exit codes, determinism.

use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_p1dyn"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn failed")
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("invalid json on stdout")
}

fn tmp_file(name: &str, contents: &str) -> PathBuf {
    let mut path = std::env::temp_dir();
    path.push(format!("p1dyn-test-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

fn coeff(div: &Value, kind: &str, data: &str) -> i64 {
    div.as_array()
        .unwrap()
        .iter()
        .find(|e| e["place"]["kind"] == kind && e["place"]["data"] == data)
        .map_or(0, |e| e["coeff"].as_i64().unwrap())
}

#[test]
fn family_round_trip_through_analyze() {
    let out = run(&["family", "ex2", "--N", "3", "--a", "2", "--b", "3"]);
    let desc = stdout_json(&out);
    assert_eq!(desc["family"]["bprime"], "-3/4");
    let path = tmp_file("ex2.json", &out.stdout.iter().map(|&b| b as char).collect::<String>());

    let report = stdout_json(&run(&["analyze", path.to_str().unwrap()]));
    assert_eq!(report["field"], "ratfunc");
    assert_eq!(report["semistable"], true);
    let mr = &report["minimal_resultant"];
    assert_eq!(coeff(&mr["divisor"], "finite", "t"), 6);
    assert_eq!(coeff(&mr["divisor"], "infinity", ""), 6);
    assert_eq!(mr["all_certified"], true);
    assert_eq!(mr["degrees"]["conductor"], 2);
    assert_eq!(report["critical"]["degree"], 2);
}

#[test]
fn power_map_is_everywhere_good() {
    let path = tmp_file(
        "power.json",
        r#"{"field":"ratfunc","degree":2,"a":["1","0","0"],"b":["0","0","1"]}"#,
    );
    let report = stdout_json(&run(&["analyze", path.to_str().unwrap()]));
    assert_eq!(report["resultant_divisor"].as_array().unwrap().len(), 0);
    assert_eq!(
        report["minimal_resultant"]["divisor"].as_array().unwrap().len(),
        0
    );
    assert_eq!(
        report["critical"]["conductor"].as_array().unwrap().len(),
        0
    );
}

#[test]
fn malformed_coefficient_exits_2() {
    let path = tmp_file(
        "bad.json",
        r#"{"field":"ratfunc","degree":2,"a":["t^^","0","1"],"b":["0","0","1"]}"#,
    );
    let out = run(&["analyze", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("position"), "{err}");
}

#[test]
fn degenerate_map_exits_3() {
    let path = tmp_file(
        "degen.json",
        r#"{"field":"rational","degree":2,"a":["1","0","0"],"b":["2","0","0"]}"#,
    );
    let out = run(&["analyze", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn family_constraints_are_enforced() {
    let out = run(&["family", "ex2", "--N", "3", "--a", "1", "--b", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("a must differ"));
    // b = -a² forces b' = -b/a² = 1
    let out = run(&["family", "ex2", "--N", "3", "--a", "2", "--b", "-4"]);
    assert_eq!(out.status.code(), Some(2), "b' = 1 must be rejected");
}

#[test]
fn lattes_reports_and_rejections() {
    let rep = stdout_json(&run(&["lattes", "--A", "0", "--B", "1", "--n", "2"]));
    assert_eq!(rep["resultant"], "186624");
    assert_eq!(rep["doubling_check"]["pass"], true);

    let rep = stdout_json(&run(&["lattes", "--A", "1", "--B", "1", "--n", "3"]));
    assert_eq!(rep["degree"], 9);

    let out = run(&["lattes", "--A", "-3", "--B", "2"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn number_field_family_analyzes_over_q() {
    let out = run(&[
        "family", "nf", "--N", "1", "--a", "2", "--b", "3", "--p", "5",
    ]);
    let path = tmp_file("nf.json", &String::from_utf8_lossy(&out.stdout));
    let report = stdout_json(&run(&["analyze", path.to_str().unwrap(), "--skip-critical"]));
    assert_eq!(report["field"], "rational");
    assert_eq!(
        coeff(&report["minimal_resultant"]["divisor"], "prime", "5"),
        2
    );

    let out = run(&[
        "family", "nf", "--N", "1", "--a", "2", "--b", "3", "--p", "6",
    ]);
    assert_eq!(out.status.code(), Some(2), "composite p must be rejected");
}

#[test]
fn paper_check_tsv_statuses() {
    let out = run(&["paper-check", "--format", "tsv", "--section", "lattes"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "id\tlocation\tcomputed\texpected\tstatus"
    );
    for line in lines {
        let status = line.rsplit('\t').next().unwrap();
        assert!(
            status == "pass" || status == "discrepancy-documented",
            "unexpected status in: {line}"
        );
    }
    assert!(text.contains("discrepancy-documented"));
}

#[test]
fn output_is_deterministic() {
    let path = tmp_file(
        "det.json",
        r#"{"field":"ratfunc","degree":2,"a":["t^2","0","1"],"b":["0","0","t^2"]}"#,
    );
    let a = run(&["analyze", path.to_str().unwrap()]);
    let b = run(&["analyze", path.to_str().unwrap()]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let a = run(&["paper-check", "--section", "critical"]);
    let b = run(&["paper-check", "--section", "critical"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn tsv_is_rejected_outside_paper_check() {
    let path = tmp_file(
        "fmt.json",
        r#"{"field":"rational","degree":2,"a":["1","0","0"],"b":["0","0","1"]}"#,
    );
    let out = run(&["analyze", path.to_str().unwrap(), "--format", "tsv"]);
    assert_eq!(out.status.code(), Some(2));
}
