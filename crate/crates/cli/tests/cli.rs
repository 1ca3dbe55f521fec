use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn jackbessel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jackbessel")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write_omega(dir: &Path, name: &str, json: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, json).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn bessel_a_rank_one_is_exponential() {
    let out = jackbessel(&["bessel-a", "--k", "1/2", "--lambda", "2", "--z", "0.5", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let re = v["re"].as_f64().unwrap();
    assert!((re - 1f64.exp()).abs() < 1e-10, "{re}");
    assert_eq!(v["truncated"], false);
}

#[test]
fn bessel_b_scalar_series() {
    let out = jackbessel(&["bessel-b", "--k", "1", "--kprime", "1/2", "--lambda", "2", "--z", "1"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    let re: f64 = row[0].parse().unwrap();
    assert!((re - 2.2795853023360673).abs() < 1e-12, "{re}");
    assert_eq!(row[3], "0");
}

#[test]
fn exit_codes() {
    assert_eq!(code(&jackbessel(&[])), 1);
    assert_eq!(code(&jackbessel(&["no-such-command"])), 1);
    assert_eq!(code(&jackbessel(&["bessel-a", "--lambda", "1"])), 1);
    assert_eq!(code(&jackbessel(&["bessel-a", "--lambda", "one", "--z", "1"])), 1);
    assert_eq!(code(&jackbessel(&["bessel-a", "--k", "-1", "--lambda", "1", "--z", "1"])), 2);
    assert_eq!(code(&jackbessel(&["bessel-a", "--lambda", "1", "--z", "1,2"])), 2);
    assert_eq!(code(&jackbessel(&["limit-a", "--omega", "/nonexistent/omega.json", "--x", "0"])), 1);
    assert_eq!(code(&jackbessel(&["--help"])), 0);
}

#[test]
fn type_b_limit_rejects_omega_outside_the_cone() {
    let dir = tempfile::tempdir().unwrap();
    let omega = write_omega(dir.path(), "o.json", r#"{"alpha": [0.5], "beta": 1, "gamma": 0.25}"#);
    let out = jackbessel(&["limit-b", "--omega", &omega, "--x", "0.3"]);
    assert_eq!(code(&out), 2);
    let omega = write_omega(dir.path(), "bad.json", r#"{"alpha": [0.5], "beta": 1, "gamma": -0.1}"#);
    assert_eq!(code(&jackbessel(&["limit-a", "--omega", &omega, "--x", "0.3"])), 2);
}

#[test]
fn limit_grid_has_one_row_per_point() {
    let dir = tempfile::tempdir().unwrap();
    let omega = write_omega(dir.path(), "o.json", r#"{"alpha": [0.5], "beta": 1}"#);
    let out = jackbessel(&["limit-b", "--omega", &omega, "--x-grid", "grid:0:1:3x2"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "x_1,x_2,re,im");
    assert_eq!(lines.len(), 10);
    assert_eq!(lines[1], "0,0,1,0");
}

#[test]
fn generate_then_analyze_recovers_parameters() {
    let dir = tempfile::tempdir().unwrap();
    let omega = write_omega(dir.path(), "o.json", r#"{"alpha": [0.5, 0.25], "beta": 1, "gamma": 0.25}"#);
    let arr = dir.path().join("arr.txt");
    let out = jackbessel(&["vk-generate", "--omega", &omega, "--n-list", "8,16,64", "--out", arr.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let out = jackbessel(&["vk-analyze", arr.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code(&out), 0);
    let rows: Vec<serde_json::Value> = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(rows.len(), 3);
    let last = &rows[2];
    assert_eq!(last["n"], 64);
    assert!((last["alpha_hat_1"].as_f64().unwrap() - 0.5).abs() < 1e-12);
    assert!((last["beta_hat"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!((last["gamma_hat"].as_f64().unwrap() - 0.25).abs() < 1e-12);
}

#[test]
fn generate_rejects_short_rows() {
    let dir = tempfile::tempdir().unwrap();
    let omega = write_omega(dir.path(), "o.json", r#"{"alpha": [0.5, 0.25], "beta": 1, "gamma": 0.25}"#);
    assert_eq!(code(&jackbessel(&["vk-generate", "--omega", &omega, "--n-list", "4"])), 2);
}

#[test]
fn converge_outputs_round_trip_and_match_sequential() {
    let dir = tempfile::tempdir().unwrap();
    let omega = write_omega(dir.path(), "o.json", r#"{"alpha": [0.5, 0.25], "beta": 1, "gamma": 0.25}"#);
    let rows = dir.path().join("rows.csv");
    let rows_seq = dir.path().join("rows_seq.csv");
    let common = ["converge-a", "--k", "1", "--omega", &omega, "--n-list", "8,16", "--x-grid", "grid:-1:1:3x2"];
    let par = jackbessel(&[&common[..], &["--out", rows.to_str().unwrap()]].concat());
    let seq = jackbessel(&[&common[..], &["--out", rows_seq.to_str().unwrap(), "--sequential"]].concat());
    assert_eq!(code(&par), 0);
    assert_eq!(code(&seq), 0);
    assert_eq!(stdout(&par), stdout(&seq));
    assert_eq!(fs::read(&rows).unwrap(), fs::read(&rows_seq).unwrap());
    let text = fs::read_to_string(&rows).unwrap();
    assert!(text.starts_with("n,x_1,x_2,re_finite,im_finite,re_limit,im_limit,abs_err,truncation_flag"));
    assert_eq!(text.lines().count(), 1 + 2 * 9);
    let summary = stdout(&par);
    let errs: Vec<f64> =
        summary.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(errs.len(), 2);
    assert!(errs[1] < errs[0]);
}

#[test]
fn converge_b_with_preset_writes_summary_file() {
    let dir = tempfile::tempdir().unwrap();
    let omega = write_omega(dir.path(), "o.json", r#"{"alpha": [0.5], "beta": 1}"#);
    let summary = dir.path().join("summary.json");
    let out = jackbessel(&[
        "converge-b", "--preset", "C", "--omega", &omega, "--n-list", "8,16", "--x-grid", "grid:0:2:2x2:chamber",
        "--format", "json", "--summary", summary.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).is_empty());
    let rows: Vec<serde_json::Value> = serde_json::from_str(&fs::read_to_string(&summary).unwrap()).unwrap();
    assert_eq!(rows.len(), 2);
    assert!(rows[1]["sup_err"].as_f64().unwrap() < rows[0]["sup_err"].as_f64().unwrap());
}

#[test]
fn converge_b_needs_a_multiplicity() {
    let dir = tempfile::tempdir().unwrap();
    let omega = write_omega(dir.path(), "o.json", r#"{"alpha": [0.5], "beta": 1}"#);
    let out = jackbessel(&["converge-b", "--omega", &omega, "--x-grid", "grid:0:1:2x1"]);
    assert_eq!(code(&out), 1);
    let out = jackbessel(&["converge-b", "--preset", "C", "--k", "1/2", "--omega", &omega, "--x-grid", "grid:0:1:2x1"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn selftest_passes_and_fault_injection_is_caught() {
    let out = jackbessel(&["selftest", "--seed", "3"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let summary: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(summary["passed"], true);
    assert_eq!(summary["checks"].as_array().unwrap().len(), 26);

    let out = jackbessel(&["selftest", "--inject-fault"]);
    assert_eq!(code(&out), 3);
    let summary: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(summary["first_failure"], "normalization");
}
