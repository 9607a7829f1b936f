//! End-to-end checks of the `zerofinder` binary: record schemas, exit codes, determinism.

use std::process::{Command, Output};

use serde::Deserialize;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zerofinder")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
#[allow(dead_code)]
struct ZeroRecord {
    index: usize,
    x: f64,
    z: f64,
    iterations: usize,
    residual: f64,
    guess: f64,
    termination: String,
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
#[allow(dead_code)]
struct ZerosSummary {
    family: String,
    params: String,
    method: String,
    zeros: usize,
    total_iterations: usize,
    #[serde(default)]
    audit: Option<serde_json::Value>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Wrapped<S> {
    summary: S,
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
#[allow(dead_code)]
struct BenchRow {
    family: String,
    params: String,
    method: String,
    t_iter: Option<usize>,
    a_time_s: Option<f64>,
    zeros: Option<usize>,
}

#[test]
fn zeros_json_lines_follow_the_schema() {
    let o = run(&["zeros", "--family", "hermite", "--n", "4", "--format", "json-lines"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 5);
    let records: Vec<ZeroRecord> = lines[..4].iter().map(|l| serde_json::from_str(l).unwrap()).collect();
    let summary: Wrapped<ZerosSummary> = serde_json::from_str(lines[4]).unwrap();
    assert_eq!(summary.summary.zeros, 4);
    assert_eq!(summary.summary.family, "hermite");
    assert!(records.windows(2).all(|w| w[0].x < w[1].x));
    assert!(records.iter().all(|r| r.termination == "converged"));
    // Largest zero of H_4.
    assert!((records[3].x - 1.650680123885784_6).abs() < 1e-12);
}

#[test]
fn zeros_csv_has_header_rows_and_footer() {
    let o = run(&["zeros", "--family", "bessel", "--mu", "0.5", "--interval", "1", "10"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "index,x,z,iterations,residual,guess,termination");
    assert_eq!(lines.len(), 5);
    assert!(lines[4].starts_with("# family=bessel"));
    let mut rd = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(text.as_bytes());
    let xs: Vec<f64> = rd.deserialize::<ZeroRecord>().map(|r| r.unwrap().x).collect();
    for (k, x) in xs.iter().enumerate() {
        assert!((x - (k + 1) as f64 * std::f64::consts::PI).abs() < 1e-12);
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["zeros", "--family", "legendre", "--n", "40", "--format", "json-lines"];
    assert_eq!(stdout(&run(&args)), stdout(&run(&args)));
}

#[test]
fn verify_passes_against_the_oracle() {
    let o = run(&["verify", "--family", "legendre", "--n", "30"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn verify_fails_on_a_corrupted_fixture() {
    let path = std::env::temp_dir().join(format!("zerofinder-fixture-{}.tsv", std::process::id()));
    let zeros = [2.404825557695773, 5.520078110286311, 8.8];
    let text: String = zeros.iter().map(|z| format!("bessel\tmu=0\t{z}\ttest\n")).collect();
    std::fs::write(&path, text).unwrap();
    let o = run(&["verify", "--family", "bessel", "--mu", "0", "--interval", "1", "10", "--fixture", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn unsupported_parameters_exit_two() {
    let o = run(&["zeros", "--family", "kummer", "--a", "-2", "--b", "0.1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["zeros", "--family", "legendre", "--n", "5", "--interval", "2", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn experimental_flag_admits_small_b() {
    let o = run(&["zeros", "--family", "kummer", "--a", "-2", "--b", "0.1", "--experimental"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 4);
}

#[test]
fn order_needs_history() {
    // H_1 vanishes at the starting guess, so there are no iterates to fit.
    let o = run(&["order", "--family", "hermite", "--n", "1"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn order_estimate_is_near_three() {
    let o = run(&["order", "--family", "legendre", "--n", "50", "--index", "5", "--format", "json-lines"]);
    assert!(o.status.success());
    let last = stdout(&o).lines().last().unwrap().to_string();
    let v: serde_json::Value = serde_json::from_str(&last).unwrap();
    let order = v["summary"]["order"].as_f64().unwrap();
    assert!((2.7..3.3).contains(&order), "{order}");
}

#[test]
fn bench_single_method_gives_one_row_per_config() {
    let o = run(&[
        "bench", "--config", "legendre:n=200", "--config", "bessel:mu=10@10,60", "--method", "tom", "--runs", "1",
        "--format", "json-lines",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let rows: Vec<BenchRow> = text
        .lines()
        .filter(|l| !l.starts_with("{\"summary\""))
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0].zeros, Some(200));
    assert!(rows.iter().all(|r| r.method == "TOM" && r.t_iter.is_some()));
}
