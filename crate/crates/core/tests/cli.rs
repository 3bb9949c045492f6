//! End-to-end runs of the `lagmul` binary.

use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

const CIRCLE: &str = "field 0\nvars x1 x2\nobjective x1\nconstraint x1^2 + x2^2 - 1\n";
const PARABOLA: &str = "field 0\nvars x1 x2\nobjective x2\nconstraint x2 - x1^2\n";

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_lagmul"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &[u8]) -> Value {
    serde_json::from_slice(out).unwrap()
}

#[test]
fn milnor_on_circle() {
    let out = run(&["milnor", "-"], CIRCLE);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out.stdout);
    assert_eq!(v["status"], "ok");
    assert_eq!(v["milnor_sum"]["value"], 2);
    assert_eq!(v["lagrange_jacobian_dimension"]["value"], 2);
    assert_eq!(v["predicted_milnor_sum"], 2);
    assert_eq!(v["agreement"]["agree"], true);
}

#[test]
fn output_is_byte_deterministic() {
    let a = run(&["milnor", "-"], CIRCLE);
    let b = run(&["milnor", "-"], CIRCLE);
    assert_eq!(a.stdout, b.stdout);
    assert!(json(&a.stdout).get("timings_ms").is_none());
    let timed = json(&run(&["--timings", "milnor", "-"], CIRCLE).stdout);
    assert!(timed["timings_ms"].is_object());
}

#[test]
fn single_methods() {
    for (method, key) in [("grobner", "milnor_sum"), ("jacobian", "lagrange_jacobian_dimension")] {
        let out = run(&["milnor", "--method", method, "-"], CIRCLE);
        assert_eq!(out.status.code(), Some(0), "{method}");
        assert_eq!(json(&out.stdout)[key]["value"], 2, "{method}");
    }
    let out = run(&["milnor", "--method", "formula", "-"], CIRCLE);
    assert_eq!(json(&out.stdout)["predicted_milnor_sum"], 2);
}

#[test]
fn failed_hypotheses_are_warnings() {
    let out = run(&["milnor", "-"], PARABOLA);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out.stdout);
    assert_eq!(v["status"], "computed_with_warnings");
    assert_eq!(v["milnor_sum"]["value"], 1);
    assert_eq!(v["predicted_milnor_sum"], 2);
    assert_eq!(v["formula_applicable"], false);

    let check = json(&run(&["check", "-"], PARABOLA).stdout);
    assert_eq!(check["hypotheses"]["h2"]["passed"], false);
    assert_eq!(check["hypotheses"]["all_pass"], false);
}

#[test]
fn parse_errors_exit_2() {
    let out = run(&["milnor", "-"], "field 0\nvars x1 x2\nobjective 2x1\nconstraint x1\n");
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    let v = json(&out.stderr);
    assert_eq!(v["status"], "error");
    assert!(v["error"].as_str().unwrap().contains("line 3"));

    let reserved = run(&["check", "-"], "field 0\nvars x0 x1\nobjective x1\nconstraint x0\n");
    assert_eq!(reserved.status.code(), Some(2));
    let too_many = run(&["check", "-"], "field 0\nvars x1 x2\nobjective x1\nconstraint x1\nconstraint x2\n");
    assert_eq!(too_many.status.code(), Some(2));
    let not_prime = run(&["check", "-"], "field 9\nvars x1 x2\nobjective x1\nconstraint x2\n");
    assert_eq!(not_prime.status.code(), Some(2));
}

#[test]
fn missing_file_exits_2() {
    let out = run(&["milnor", "/nonexistent/problem.txt"], "");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn complexes_on_circle() {
    let out = run(&["en", "-"], CIRCLE);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out.stdout);
    assert_eq!(v["status"], "ok");
    assert!(v["complexes"].is_object());

    let dump = run(&["en", "--dump", "-"], CIRCLE);
    assert_eq!(dump.status.code(), Some(0));
    assert!(!String::from_utf8(dump.stdout).unwrap().trim().is_empty());
}

#[test]
fn random_harness_is_reproducible() {
    let args = ["random", "--n", "3", "--r", "1", "--dmax", "2", "--char", "32003", "--count", "6", "--seed", "7"];
    let a = run(&args, "");
    let b = run(&args, "");
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a.stdout);
    assert_eq!(v["generated"], 6);
    assert_eq!(v["disagreements"], 0);
}
