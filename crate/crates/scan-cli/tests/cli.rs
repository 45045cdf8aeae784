//! Binary-level behavior: exit codes, output schemas, usage errors.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rotor-scan"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

#[test]
fn verify_passes_with_exit_zero() {
    let out = run(&["verify", "--l-max", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("check_name,status,worst_deviation,context\n"));
    assert!(text.lines().skip(1).all(|line| line.contains(",pass,")));
}

#[test]
fn verify_degenerate_space_passes() {
    let out = run(&["verify", "--l-max", "0"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn corrupted_tolerance_fails_with_exit_one() {
    let out = run(&["verify", "--l-max", "1", "--tol", "1e-20"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("finite_shift_unitarity,fail,"));
}

#[test]
fn missing_required_label_is_a_usage_error() {
    let out = run(&["finite-limit", "--l", "3", "--n", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn label_out_of_range_is_a_usage_error_naming_l() {
    let out = run(&["finite-limit", "--l", "2", "--n", "0", "--k", "5"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("for l = 2"), "stderr: {err}");
}

#[test]
fn bad_schedule_start_is_a_usage_error() {
    let out = run(&[
        "finite-limit",
        "--l",
        "2",
        "--n",
        "0",
        "--k",
        "0",
        "--s-start",
        "2.0",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn finite_limit_row_count_and_header() {
    let out = run(&[
        "finite-limit",
        "--l",
        "1,3",
        "--n",
        "0",
        "--k",
        "0",
        "--s-steps",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "route,l,s,sigma,n,k,element_re,element_im,normalized_re,normalized_im"
    );
    // (5 schedule points + 1 limit row) per l
    assert_eq!(lines.count(), 12);
}

#[test]
fn finite_limit_diagonal_converges_to_i() {
    let out = run(&["finite-limit", "--l", "3", "--n", "0", "--k", "0"]);
    let text = stdout(&out);
    let fields: Vec<&str> = text.lines().last().unwrap().split(',').collect();
    let re: f64 = fields[8].parse().unwrap();
    let im: f64 = fields[9].parse().unwrap();
    assert!(re.abs() < 1e-6 && (im - 1.0).abs() < 1e-6);
}

#[test]
fn negative_labels_parse() {
    let out = run(&[
        "finite-limit",
        "--l",
        "2",
        "--n",
        "-1",
        "--k",
        "-2",
        "--s-steps",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).lines().nth(1).unwrap().contains(",-1,-2,"));
}

#[test]
fn infinite_limit_converges_to_i_on_diagonal() {
    let out = run(&["infinite-limit", "--n", "2", "--k", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let limit_line = text.lines().last().unwrap();
    let fields: Vec<&str> = limit_line.split(',').collect();
    let re: f64 = fields[8].parse().unwrap();
    let im: f64 = fields[9].parse().unwrap();
    assert!(re.abs() < 1e-9 && (im - 1.0).abs() < 1e-9, "{limit_line}");
}

#[test]
fn json_format_parses_and_mirrors_schema() {
    let out = run(&[
        "infinite-limit",
        "--n",
        "0",
        "--k",
        "1",
        "--s-steps",
        "4",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = parsed.as_array().unwrap();
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[0]["route"], "infinite");
    assert!(rows[0]["l"].is_null());
    assert!(rows[0]["sigma"].is_null());
}

#[test]
fn commutator_table_shapes() {
    let out = run(&["commutator", "--l", "0"]);
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 2);
    assert_eq!(
        text.lines().nth(1).unwrap(),
        "0,0,0,0.0000000000000000e+0,0.0000000000000000e+0,0.0000000000000000e+0"
    );

    let out = run(&["commutator", "--l", "2", "--format", "json"]);
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(parsed.as_array().unwrap().len(), 25);
}

#[test]
fn out_flag_writes_the_same_bytes_as_stdout() {
    let dir = std::env::temp_dir().join("rotor-scan-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("rows.csv");
    let args = [
        "finite-limit",
        "--l",
        "2",
        "--n",
        "1",
        "--k",
        "1",
        "--s-steps",
        "4",
    ];
    let direct = run(&args);
    let mut with_out: Vec<String> = args.iter().map(|s| s.to_string()).collect();
    with_out.push("--out".into());
    with_out.push(path.to_string_lossy().into_owned());
    let filed = Command::new(env!("CARGO_BIN_EXE_rotor-scan"))
        .args(&with_out)
        .output()
        .unwrap();
    assert_eq!(filed.status.code(), Some(0));
    assert!(filed.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), direct.stdout);
    std::fs::remove_file(&path).ok();
}
