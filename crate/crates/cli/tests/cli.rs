//! End-to-end checks of the command-line interface.

use std::process::Command;

fn run(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_simplex-moments"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
        out.status.code().unwrap_or(-1),
    )
}

#[test]
fn even_moment_is_exact_rational() {
    let (stdout, _, code) = run(&["even-moment", "T2", "-k", "2"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "1/72");
}

#[test]
fn ball_mean_closed_form() {
    let (stdout, _, code) = run(&["ball", "-d", "3", "-k", "1"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "9/715");
}

#[test]
fn configs_json_octahedron() {
    let (stdout, _, code) = run(&["configs", "O3", "--json"]);
    assert_eq!(code, 0);
    let rows: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 3);
    let weights: Vec<&str> = rows.iter().map(|r| r["weight"].as_str().unwrap()).collect();
    assert_eq!(weights, ["6", "12", "4"]);
}

#[test]
fn parity_mismatch_is_an_error_with_hint() {
    let (_, stderr, code) = run(&["even-moment", "T2", "-k", "3"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("odd-moment"), "stderr: {stderr}");
}

#[test]
fn unknown_solid_lists_catalog() {
    let (_, stderr, code) = run(&["configs", "does-not-exist"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("available solids"), "stderr: {stderr}");
}

#[test]
fn genealogy_dot_to_stdout() {
    let (stdout, _, code) = run(&["genealogy", "T3", "--dot", "-"]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("digraph"));
    assert!(stdout.contains("\"N\""));
}

#[test]
fn verify_exact_suite_passes() {
    let (stdout, _, code) = run(&["verify", "even-exact", "--csv"]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("name,key,computed"));
}

#[test]
fn export_roundtrip_schema() {
    let (stdout, _, code) = run(&["export", "T2"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["dim"], 2);
    assert_eq!(v["vertices"].as_array().unwrap().len(), 3);
}
