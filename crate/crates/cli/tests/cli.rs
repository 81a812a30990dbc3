//! End-to-end tests against the built binary: output schemas, routing, and
//! the exit-code contract.

use std::io::Write;
use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (String, String, i32) {
    let output = Command::new(env!("CARGO_BIN_EXE_geomword"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8(output.stdout).expect("utf8 stdout"),
        String::from_utf8(output.stderr).expect("utf8 stderr"),
        output.status.code().expect("exit code"),
    )
}

fn run_json(args: &[&str]) -> Value {
    let (stdout, stderr, code) = run(args);
    assert_eq!(code, 0, "command failed: {stderr}");
    serde_json::from_str(&stdout).expect("stdout is valid JSON")
}

#[test]
fn stat_counts_an_inline_word() {
    let value = run_json(&["stat", "--word", "3,1,2"]);
    assert_eq!(value["command"], "stat");
    assert_eq!(value["mode"], "exact");
    assert_eq!(value["results"]["inversions"]["exact"], "2");
    assert_eq!(value["results"]["inversions"]["float"], 2.0);
    assert_eq!(value["results"]["knuth"]["exact"], "1");
    assert_eq!(value["results"]["inversions"]["provenance"], "statistic");
    assert_eq!(value["params"]["n"], 3);
}

#[test]
fn stat_reads_a_word_file() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(file, "[5, 2, 5, 1]").unwrap();
    let path = file.path().to_str().unwrap().to_string();
    let value = run_json(&["stat", "--word-file", &path]);
    // 5,2,5,1: inversions are (5,2),(5,1),(2,1),(5,1) = 4.
    assert_eq!(value["results"]["inversions"]["exact"], "4");
    assert_eq!(value["params"]["source"], path.as_str());
}

#[test]
fn stat_rejects_zero_letters_and_junk() {
    let (_, stderr, code) = run(&["stat", "--word", "3,0,2"]);
    assert_eq!(code, 2, "zero letters are a usage error: {stderr}");
    let (_, _, code) = run(&["stat", "--word", "3,x,2"]);
    assert_eq!(code, 2);
    let (_, _, code) = run(&["stat", "--word-file", "/nonexistent/words.json"]);
    assert_eq!(code, 2);
}

#[test]
fn moments_exact_fraction_route() {
    let value = run_json(&["moments", "--statistic", "knuth", "--n", "3", "--q", "1/2"]);
    assert_eq!(value["mode"], "exact");
    assert_eq!(value["results"]["mean"]["exact"], "40/21");
    assert_eq!(value["results"]["variance"]["exact"], "416/441");
    assert_eq!(value["results"]["second_factorial_moment"]["exact"], "8/3");
    assert_eq!(value["results"]["mean"]["provenance"], "closed-form");
}

#[test]
fn moments_decimal_defaults_to_float_mode() {
    let value = run_json(&["moments", "--statistic", "inversions", "--n", "5", "--q", "0.3"]);
    assert_eq!(value["mode"], "float");
    assert!(value["results"]["mean"]["exact"].is_null());
    let mean = value["results"]["mean"]["float"].as_f64().unwrap();
    // E = C(5,2) q/(1+q) = 10 * 0.3/1.3.
    assert!((mean - 10.0 * 0.3 / 1.3).abs() < 1e-12);
}

#[test]
fn moments_decimal_with_exact_mode_becomes_rational() {
    let value = run_json(&[
        "moments",
        "--statistic",
        "inversions",
        "--n",
        "2",
        "--q",
        "0.25",
        "--mode",
        "exact",
    ]);
    assert_eq!(value["mode"], "exact");
    assert_eq!(value["results"]["mean"]["exact"], "1/5");
}

#[test]
fn moments_at_q_one_routes_to_the_permutation_limit() {
    let value = run_json(&["moments", "--statistic", "inversions", "--n", "4", "--q", "1"]);
    assert_eq!(value["results"]["label"], "q→1 limit");
    assert_eq!(value["mode"], "float");
    assert_eq!(value["results"]["mean"]["float"], 3.0);
    assert!(value["results"].get("second_factorial_moment").is_none());

    let value = run_json(&["moments", "--statistic", "inversions", "--n", "4", "--q", "1/1"]);
    assert_eq!(value["results"]["label"], "q→1 limit");
    assert_eq!(value["mode"], "exact");
    assert_eq!(value["results"]["mean"]["exact"], "3");
    assert_eq!(value["results"]["variance"]["exact"], "13/6");
}

#[test]
fn dist_lists_the_exact_distribution() {
    let value = run_json(&["dist", "--statistic", "inversions", "--n", "2", "--q", "1/2"]);
    assert_eq!(value["provenance"], "oracle-exact");
    assert_eq!(value["results"]["p[0]"]["exact"], "2/3");
    assert_eq!(value["results"]["p[1]"]["exact"], "1/3");
    assert_eq!(value["results"]["mean"]["exact"], "1/3");
}

#[test]
fn dist_beyond_enumeration_capacity_exits_3() {
    let (_, stderr, code) = run(&["dist", "--statistic", "knuth", "--n", "12", "--q", "1/2"]);
    assert_eq!(code, 3, "expected capacity exit: {stderr}");
    assert!(stderr.contains("capacity"));
}

#[test]
fn out_of_range_q_is_a_usage_error() {
    for q in ["5/4", "-1/2", "1.5", "nan"] {
        let (_, _, code) = run(&["moments", "--statistic", "knuth", "--n", "3", "--q", q]);
        assert_eq!(code, 2, "q = {q} must exit 2");
    }
    let (_, _, code) = run(&["simulate", "--statistic", "knuth", "--n", "3", "--q", "1"]);
    assert_eq!(code, 2, "simulate rejects the q = 1 limit");
}

#[test]
fn unknown_flags_exit_2() {
    let (_, _, code) = run(&["moments", "--bogus"]);
    assert_eq!(code, 2);
}

#[test]
fn simulate_is_reproducible_and_worker_invariant() {
    let base = [
        "simulate",
        "--statistic",
        "inversions",
        "--n",
        "8",
        "--q",
        "0.5",
        "--samples",
        "50000",
        "--seed",
        "42",
    ];
    let (first, _, code) = run(&base);
    assert_eq!(code, 0);
    let (again, _, _) = run(&base);
    assert_eq!(first, again, "same seed must reproduce byte-identical output");
    let mut with_workers = base.to_vec();
    with_workers.extend(["--workers", "4"]);
    let (parallel, _, _) = run(&with_workers);
    let a: Value = serde_json::from_str(&first).unwrap();
    let b: Value = serde_json::from_str(&parallel).unwrap();
    assert_eq!(a["results"], b["results"], "worker count must not move results");
}

#[test]
fn asymptotics_reports_series_constants() {
    let value = run_json(&[
        "asymptotics",
        "--statistic",
        "knuth",
        "--n",
        "1000",
        "--q",
        "0.5",
    ]);
    let alpha = value["results"]["alpha"]["float"].as_f64().unwrap();
    let beta = value["results"]["beta"]["float"].as_f64().unwrap();
    assert!((alpha - 1.6066951524).abs() < 1e-9);
    assert!((beta - 1.1373387363).abs() < 1e-9);
    assert_eq!(value["results"]["alpha"]["provenance"], "series");
    assert!(value["results"]["terms_used"]["float"].as_f64().unwrap() > 0.0);
    // Two-term expansion should sit near the exact mean (residual ~ 0.57).
    let mean = value["results"]["mean"]["float"].as_f64().unwrap();
    assert!((mean - 250_000.0).abs() < 100.0);
}

#[test]
fn verify_passes_and_fault_injection_fails() {
    let (stdout, _, code) = run(&["verify", "--suite", "limits"]);
    assert_eq!(code, 0);
    let value: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(value["results"]["summary"]["failed"], 0);
    assert!(value["results"]["summary"]["passed"].as_u64().unwrap() >= 4);

    let (stdout, _, code) = run(&["verify", "--suite", "limits", "--inject-fault"]);
    assert_eq!(code, 1, "fault injection must flip the exit code");
    let value: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(value["results"]["summary"]["failed"], 1);
    let first = &value["results"]["checks"][0];
    assert_eq!(first["status"], "fail");
    assert_eq!(first["residual"], 1e-6);
}

#[test]
fn verify_identities_aggregates_100_runs() {
    let (stdout, _, code) = run(&["verify", "--suite", "identities"]);
    assert_eq!(code, 0);
    let value: Value = serde_json::from_str(&stdout).unwrap();
    let checks = value["results"]["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 7);
    for check in checks {
        assert_eq!(check["status"], "pass");
        assert_eq!(check["detail"], "100 comparisons ok");
    }
}

#[test]
fn csv_rows_follow_the_fixed_schema() {
    let (stdout, _, code) = run(&[
        "moments",
        "--statistic",
        "knuth",
        "--n",
        "3",
        "--q",
        "1/2",
        "--format",
        "csv",
    ]);
    assert_eq!(code, 0);
    let mut lines = stdout.lines();
    assert_eq!(
        lines.next().unwrap(),
        "statistic,n,q,quantity,value_exact,value_float,provenance"
    );
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 3);
    for row in &rows {
        assert_eq!(row.len(), 7);
        assert_eq!(row[0], "knuth");
        assert_eq!(row[1], "3");
        assert_eq!(row[2], "1/2");
        assert_eq!(row[6], "closed-form");
    }
    assert_eq!(rows[0][3], "mean");
    assert_eq!(rows[0][4], "40/21");
}

#[test]
fn verify_csv_uses_check_rows() {
    let (stdout, _, code) = run(&["verify", "--suite", "limits", "--format", "csv"]);
    assert_eq!(code, 0);
    let mut lines = stdout.lines();
    assert_eq!(
        lines.next().unwrap(),
        "statistic,n,q,quantity,value_exact,value_float,provenance"
    );
    for line in lines {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 7);
        assert_eq!(fields[0], "limits");
        assert_eq!(fields[6], "pass");
    }
}

#[test]
fn json_output_round_trips_with_stable_keys() {
    let (stdout, _, code) = run(&["moments", "--statistic", "knuth", "--n", "4", "--q", "2/3"]);
    assert_eq!(code, 0);
    let parsed: Value = serde_json::from_str(&stdout).unwrap();
    for key in ["command", "params", "mode", "provenance", "results"] {
        assert!(parsed.get(key).is_some(), "missing top-level key {key}");
    }
    for key in ["mean", "variance", "second_factorial_moment"] {
        let quantity = &parsed["results"][key];
        assert!(quantity.get("exact").is_some());
        assert!(quantity.get("float").is_some());
        assert!(quantity.get("provenance").is_some());
    }
    let reserialized = serde_json::to_string(&parsed).unwrap();
    let reparsed: Value = serde_json::from_str(&reserialized).unwrap();
    assert_eq!(parsed, reparsed);
}
