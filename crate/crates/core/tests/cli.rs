//! End-to-end checks of the command-line contract: documented examples,
//! byte determinism, and the exit-code taxonomy.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperphase"))
        .args(args)
        .env_remove("HYPERPHASE_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 output")
}

#[test]
fn point_enumeration_matches_the_brute_force_count() {
    let out = run(&["enumerate", "--b", "2", "--n", "4", "--k", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("# hyperphase "), "metadata header first: {text}");
    assert!(text.contains("\n2,0,4,4,15"), "expected count 15: {text}");
}

#[test]
fn sweep_enumeration_covers_the_requested_excess_range() {
    let out = run(&["enumerate", "--b", "3", "--n-max", "12", "--ell", "-1..2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    // Hypertree and positive-excess anchors, with majorant and asymptotic
    // columns populated once they apply.
    assert!(text.contains("3,-1,9,4,76545"));
    assert!(text.contains("3,1,5,3,100,"));
    for ell in [-1i64, 0, 1, 2] {
        assert!(text.contains(&format!("\n3,{ell},")), "missing excess {ell}");
    }
}

#[test]
fn empty_ranges_exit_zero_with_an_empty_table() {
    let out = run(&["enumerate", "--b", "3", "--n-max", "12", "--ell", "2..-1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 2, "metadata + header only");
}

#[test]
fn expectation_commands_show_their_constants() {
    let out = run(&["expect", "static0", "--n", "1000000", "--b", "3"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("1.9747"), "{}", stdout(&out));

    let out = run(&["expect", "gamma-sum", "--u", "0", "--n", "1000000", "--b", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let ratio: f64 = text
        .lines()
        .nth(2)
        .and_then(|row| row.rsplit(',').next())
        .and_then(|cell| cell.parse().ok())
        .expect("ratio cell");
    assert!((ratio - 1.0).abs() <= 0.01, "{text}");
}

#[test]
fn simulation_output_is_a_pure_function_of_the_flags() {
    let args = ["simulate", "--n", "400", "--b", "3", "--reps", "12", "--seed", "9"];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout, "same flags, same bytes");

    let mut threaded: Vec<&str> = args.to_vec();
    threaded.extend(["--threads", "2"]);
    let third = run(&threaded);
    assert_eq!(first.stdout, third.stdout, "thread count is invisible");
}

#[test]
fn tiny_simulation_is_deterministic_endgame() {
    let out = run(&["simulate", "--n", "3", "--b", "2", "--reps", "10"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let row0 = text.lines().nth(2).expect("ell=0 row");
    assert!(row0.starts_with("0,1.000000,0,"), "creations[0] all ones: {row0}");
}

#[test]
fn json_output_nests_per_excess_maps() {
    let out = run(&[
        "simulate", "--n", "200", "--b", "3", "--reps", "5", "--output", "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(v["meta"]["seed"], 1729);
    assert!(v["per_ell"]["0"]["creations"]["mean"].is_number());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["enumerate", "--b", "3"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["expect", "vell", "--n", "100", "--ell", "0"]).status.code(), Some(2));
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
}

#[test]
fn resource_ceilings_exit_three() {
    let out = run(&["enumerate", "--b", "3", "--n", "40", "--k", "600"]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr).expect("utf8");
    assert!(err.contains("limit"), "declares the ceiling: {err}");
}

#[test]
fn verify_suite_reports_pass_rows_and_exits_zero() {
    let out = run(&["verify", "--suite", "saddle", "--budget", "120s"]);
    assert!(out.status.success(), "saddle suite passes");
    let text = stdout(&out);
    assert!(text.contains("criterion,pass,detail"));
    assert!(text.contains("C9 saddle-accuracy,pass,"));
    assert!(text.contains("n=1200"), "error-decay table present: {text}");
}
