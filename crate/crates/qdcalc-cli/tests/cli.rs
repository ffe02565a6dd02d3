//! Exit-code contract and output-shape checks for the binary.

use std::process::Command;

fn run(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_qdcalc"))
        .args(args)
        .output()
        .expect("spawn CLI");
    (
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
        out.status.code().expect("exit code"),
    )
}

#[test]
fn diff_linear_trivial() {
    let (stdout, _, code) = run(&["diff", "--expr", "x", "--at", "1"]);
    assert_eq!(code, 0);
    let row = stdout.lines().nth(1).unwrap();
    let fields: Vec<&str> = row.split(',').collect();
    assert_eq!(fields[2], "1.0000000000000000e0");
    assert_eq!(fields[4], "2");
}

#[test]
fn diff_inadmissible_point_is_usage_error() {
    let (_, stderr, code) = run(&["diff", "--expr", "1/x", "--at", "0"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("inadmissible"), "stderr: {stderr}");
}

#[test]
fn diff_bad_expression_is_usage_error() {
    let (_, _, code) = run(&["diff", "--expr", "x +", "--at", "1"]);
    assert_eq!(code, 2);
}

#[test]
fn diff_unknown_scheme_is_usage_error() {
    let (_, _, code) = run(&["diff", "--expr", "x", "--at", "1", "--scheme", "zz"]);
    assert_eq!(code, 2);
}

#[test]
fn taylor_diff_out_of_radius_is_usage_error() {
    let (_, _, code) = run(&[
        "taylor-diff", "--expr", "sin(x)", "--center", "0", "--order", "3", "--radius", "0.5",
        "--at", "2",
    ]);
    assert_eq!(code, 2);
}

#[test]
fn taylor_diff_order_zero_gives_zero_derivative() {
    let (stdout, _, code) = run(&[
        "taylor-diff", "--expr", "sin(x)", "--center", "0", "--order", "0", "--at", "0.5",
    ]);
    assert_eq!(code, 0);
    let row = stdout.lines().last().unwrap();
    assert!(row.starts_with("derivative,"));
    assert_eq!(row.split(',').nth(2).unwrap(), "0.0000000000000000e0");
}

#[test]
fn interp_uniform_reproduces_square() {
    let (stdout, _, code) = run(&[
        "interp", "--expr", "x^2", "--grid", "uniform", "--grid-a", "0", "--nodes", "2",
        "--at", "2.5",
    ]);
    assert_eq!(code, 0);
    let row = stdout.lines().nth(1).unwrap();
    let fields: Vec<&str> = row.split(',').collect();
    assert_eq!(fields[1], "6.2500000000000000e0");
    assert_eq!(fields[3], "0.0000000000000000e0");
}

#[test]
fn interp_unit_ratio_is_usage_error() {
    let (_, _, code) = run(&[
        "interp", "--expr", "x", "--grid", "geometric", "--grid-q", "1", "--nodes", "2",
        "--at", "3",
    ]);
    assert_eq!(code, 2);
}

#[test]
fn verify_minimal_sweep_passes() {
    let (stdout, _, code) = run(&[
        "verify", "--x-min", "1", "--x-max", "1", "--n-min", "1", "--n-max", "1",
    ]);
    assert_eq!(code, 0);
    assert!(!stdout.contains(",false"));
}

#[test]
fn table_single_cell() {
    let (stdout, _, code) = run(&["table", "--x", "1", "--n", "5"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "k,term\n0,1\nTOTAL,1\n");
}

#[test]
fn table_rejects_zero_x() {
    let (_, _, code) = run(&["table", "--x", "0", "--n", "3"]);
    assert_eq!(code, 2);
}

#[test]
fn output_file_matches_stdout() {
    let dir = std::env::temp_dir().join("qdcalc-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("table.csv");
    let (stdout, _, _) = run(&["table", "--x", "4", "--n", "2"]);
    let (_, _, code) = run(&["table", "--x", "4", "--n", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), stdout);
}
