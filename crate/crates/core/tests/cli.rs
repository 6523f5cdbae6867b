use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use tempfile::TempDir;

fn qwelfare(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qwelfare")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path: PathBuf = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn instance(kind: &str, taus: &[&str], values: &[&[u32]]) -> String {
    serde_json::json!({
        "kind": kind,
        "agents": values.len(),
        "items": values[0].len(),
        "quantiles": taus,
        "values": values,
    })
    .to_string()
}

const GREEDY_EXAMPLE: &[&[u32]] = &[&[5, 4, 1, 0], &[5, 1, 3, 2]];

#[test]
fn solve_greedy_example() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "i.json", &instance("goods", &["1/2", "1/2"], GREEDY_EXAMPLE));
    let out = qwelfare(&["solve", "--objective", "usw", "--balanced", "-i", &input]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let file: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(file["welfare"], 6);
    assert_eq!(file["algorithm"], "greedy");
}

#[test]
fn solve_then_check_agree() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "i.json", &instance("goods", &["1/2", "1/2"], GREEDY_EXAMPLE));
    let alloc = dir.path().join("a.json");
    let alloc = alloc.to_str().unwrap();
    let out = qwelfare(&["solve", "--objective", "esw", "--balanced", "-i", &input, "-o", alloc]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let out = qwelfare(&["check", "--objective", "esw", "--balanced", "-i", &input, "-a", alloc]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(stdout(&out).trim(), "esw 2");
}

#[test]
fn oracle_on_scapegoat_instance() {
    let dir = TempDir::new().unwrap();
    let values: &[&[u32]] = &[&[10, 0, 0, 0], &[0, 8, 0, 0], &[0, 0, 6, 5]];
    let input = write(&dir, "i.json", &instance("goods", &["0/1"; 3], values));
    let out = qwelfare(&["oracle", "--objective", "usw", "-i", &input]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let file: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(file["welfare"], 23);
}

#[test]
fn intractable_quantile_exits_one() {
    let dir = TempDir::new().unwrap();
    let values: &[&[u32]] = &[&[1, 0, 1, 1], &[0, 1, 1, 0]];
    let input = write(&dir, "i.json", &instance("goods", &["1/4", "1/4"], values));
    let out = qwelfare(&["solve", "--objective", "esw", "-i", &input]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("intractable quantile"), "{}", stderr(&out));
}

#[test]
fn indivisible_balanced_exits_two() {
    let dir = TempDir::new().unwrap();
    let values: &[&[u32]] = &[&[1, 2, 3], &[3, 2, 1]];
    let input = write(&dir, "i.json", &instance("goods", &["1/2", "1/2"], values));
    let out = qwelfare(&["solve", "--objective", "usw", "--balanced", "-i", &input]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn quantile_not_in_lowest_terms_is_rejected() {
    let out = qwelfare(&["gen", "--agents", "2", "--items", "4", "--tau", "3/3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = qwelfare(&["gen", "--agents", "2", "--items", "4", "--tau", "2/4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn oracle_budget_exceeded_exits_one() {
    let dir = TempDir::new().unwrap();
    let gen = qwelfare(&["gen", "--agents", "4", "--items", "12", "--seed", "3"]);
    assert_eq!(gen.status.code(), Some(0));
    let input = write(&dir, "i.json", &stdout(&gen));
    let out = qwelfare(&["oracle", "--objective", "usw", "-i", &input]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn check_rejects_out_of_range_owner() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "i.json", &instance("goods", &["1/2", "1/2"], GREEDY_EXAMPLE));
    let alloc = write(&dir, "a.json", r#"{"owner": [0, 1, 2, 0]}"#);
    let out = qwelfare(&["check", "--objective", "usw", "-i", &input, "-a", &alloc]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_rejects_unbalanced_with_flag() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "i.json", &instance("goods", &["1/2", "1/2"], GREEDY_EXAMPLE));
    let alloc = write(&dir, "a.json", r#"{"owner": [0, 0, 0, 1]}"#);
    let out = qwelfare(&["check", "--objective", "usw", "-i", &input, "-a", &alloc]);
    assert_eq!(out.status.code(), Some(0));
    let out = qwelfare(&["check", "--objective", "usw", "--balanced", "-i", &input, "-a", &alloc]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_rejects_wrong_recorded_welfare() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "i.json", &instance("goods", &["1/2", "1/2"], GREEDY_EXAMPLE));
    let alloc = write(&dir, "a.json", r#"{"owner": [0, 1, 0, 1], "welfare": 99}"#);
    let out = qwelfare(&["check", "--objective", "usw", "-i", &input, "-a", &alloc]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_instance_exits_two() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "i.json", r#"{"kind": "goods", "agents": 2}"#);
    let out = qwelfare(&["solve", "--objective", "usw", "-i", &input]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gen_is_seeded_and_identical_rows_match() {
    let args = ["gen", "--agents", "3", "--items", "6", "--binary", "--identical", "--seed", "11"];
    let a = qwelfare(&args);
    let b = qwelfare(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    let file: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    let rows = file["values"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r == &rows[0]));
    assert!(rows[0].as_array().unwrap().iter().all(|v| v == 0 || v == 1));
}

#[test]
fn bench_prints_csv_with_summary() {
    let out = qwelfare(&[
        "bench", "--trials", "5", "--agents", "2", "--items", "4", "--tau", "1/2", "--objective", "esw", "--balanced",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "seed,algorithm,objective,balanced,alg_value,oracle_value,ratio");
    assert_eq!(lines.len(), 7);
    assert!(lines[1..6].iter().all(|l| l.ends_with(",1.000000")));
    assert_eq!(lines[6], "summary,balanced-esw,esw,true,min=1.000000,mean=1.000000,1.000000");
}

#[test]
fn unsupported_combination_exits_one() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "i.json", &instance("goods", &["1/2", "1/2"], GREEDY_EXAMPLE));
    let out = qwelfare(&["solve", "--objective", "usw", "--algorithm", "setcover", "-i", &input]);
    assert_eq!(out.status.code(), Some(1));
}
