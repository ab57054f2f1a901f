use std::io::Write;
use std::process::{Command, Stdio};

fn run(args: &[&str], stdin: &str) -> (i32, String, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_bbcharpoly"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

const DIAG112: &str = "3 3 M\n1 1 1\n2 2 1\n3 3 2\n0 0 0\n";

#[test]
fn diag112_factored_over_z() {
    let (code, out, _) = run(&["charpoly", "--integer", "-", "--output", "factored"], DIAG112);
    assert_eq!(code, 0);
    assert_eq!(out, "(X-1)^2*(X-2)\n");
}

#[test]
fn coefficient_and_multiplicity_output() {
    let (_, out, _) = run(&["charpoly", "--field", "101", "-"], DIAG112);
    assert_eq!(out, "-2 + 5*X - 4*X^2 + X^3\n");
    // field coefficients print as symmetric representatives
    let (_, out, _) = run(&["charpoly", "--field", "7", "-"], DIAG112);
    assert_eq!(out, "-2 - 2*X + 3*X^2 + X^3\n");
    let (_, out, _) = run(&["multiplicities", "--field", "101", "-"], DIAG112);
    assert_eq!(out, "X-1 1 2\nX-2 1 1\n");
    let (_, out, _) = run(&["minpoly", "--integer", "-"], DIAG112);
    assert_eq!(out, "2 - 3*X + X^2\n");
}

#[test]
fn json_output_parses() {
    let (code, out, _) = run(&["charpoly", "--integer", "-", "--output", "json", "--verify"], DIAG112);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["charpoly"]["coeffs"], serde_json::json!(["-2", "5", "-4", "1"]));
    assert_eq!(v["factors"][0]["multiplicity"], 2);
    assert_eq!(v["verified"]["primes"].as_array().unwrap().len(), 3);
}

#[test]
fn explain_goes_to_stderr_as_json_lines() {
    let (code, out, err) = run(&["charpoly", "--field", "101", "-", "--explain"], DIAG112);
    assert_eq!(code, 0);
    assert!(!out.contains("event"));
    let events: Vec<serde_json::Value> = err.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert!(events.iter().any(|e| e["event"] == "method"));
}

#[test]
fn sympower_of_a_path() {
    let path = "3 3 M\n1 2 1\n2 1 1\n2 3 1\n3 2 1\n0 0 0\n";
    let (code, out, _) = run(&["sympower", "--k", "2", "-"], path);
    assert_eq!(code, 0);
    assert_eq!(out, path);
}

#[test]
fn exit_codes() {
    // malformed input
    let (code, _, err) = run(&["charpoly", "--field", "101", "-"], "2 2 M\n1 1 x\n0 0 0\n");
    assert_eq!(code, 2);
    assert!(err.contains("line 2"));
    // conflicting or missing domain flags
    assert_eq!(run(&["charpoly", "--field", "101", "--integer", "-"], DIAG112).0, 2);
    assert_eq!(run(&["charpoly", "-"], DIAG112).0, 2);
    // composite modulus
    assert_eq!(run(&["charpoly", "--field", "91", "-"], DIAG112).0, 2);
    // oracle refuses large inputs unless the limit is raised
    let (code, _, err) = run(&["verify", "--field", "101", "--verify-limit", "2", "-"], DIAG112);
    assert_eq!(code, 2);
    assert!(err.contains("limit"));
    // index calculus cannot run on GF(101) once n exceeds 5
    let big = "6 6 M\n1 1 1\n2 2 1\n3 3 1\n4 4 2\n5 5 2\n6 6 3\n0 0 0\n";
    assert_eq!(run(&["charpoly", "--field", "101", "--method", "index", "-"], big).0, 3);
}

#[test]
fn verify_subcommand() {
    let (code, out, _) = run(&["verify", "--field", "10007", "--method", "invfact", "-"], DIAG112);
    assert_eq!(code, 0);
    assert!(out.starts_with("ok: charpoly of degree 3"));
}

#[test]
fn padded_input() {
    let (code, out, _) = run(&["charpoly", "--integer", "-"], "3 2 M\n1 1 4\n3 2 -1\n0 0 0\n");
    assert_eq!(code, 0);
    // [[4,0,0],[0,0,0],[0,-1,0]] has charpoly X^2 (X - 4)
    assert_eq!(out, "-4*X^2 + X^3\n");
}
