use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gamma1lab"))
        .args(args)
        .env("SOURCE_DATE_EPOCH", "1700000000")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let out = run(args);
    let doc = serde_json::from_slice(&out.stdout).expect("valid JSON on stdout");
    (doc, out.status.code().unwrap_or(-1))
}

fn temp_csv(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("gamma1lab-{}-{name}.csv", std::process::id()))
}

fn csv_rows(path: &PathBuf) -> Vec<Vec<String>> {
    let mut reader = csv::Reader::from_path(path).expect("csv written");
    let header: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
    let mut rows = vec![header];
    for r in reader.records() {
        rows.push(r.unwrap().iter().map(String::from).collect());
    }
    std::fs::remove_file(path).ok();
    rows
}

fn reports(doc: &Value) -> Vec<&Value> {
    doc["sections"]
        .as_array()
        .unwrap()
        .iter()
        .filter_map(|s| s["reports"].as_array())
        .flatten()
        .collect()
}

#[test]
fn constants_table_shows_l1() {
    let out = run(&["constants"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("0.2487544770"));
    assert!(text.contains("2023-11-14T22:13:20Z"));
}

#[test]
fn constants_json_bounds_follow_tol() {
    let (doc, code) = json(&["constants", "--json", "--tol", "1e-8"]);
    assert_eq!(code, 0);
    let rows = doc["sections"][0]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 16);
    for row in rows {
        assert!(row["error_bound"].as_f64().unwrap() <= 1e-8, "{row}");
    }
    assert_eq!(doc["context"]["abs_tol"].as_f64(), Some(1e-12));
}

#[test]
fn zeta_suite_passes() {
    let (doc, code) = json(&["verify", "--suite", "zeta", "--json"]);
    assert_eq!(code, 0);
    let names: Vec<&str> = reports(&doc)
        .iter()
        .map(|r| r["name"].as_str().unwrap())
        .collect();
    for s in ["0.3", "0.5", "2"] {
        assert!(names.contains(&format!("zeta reflection formula at s = {s}").as_str()));
    }
}

#[test]
fn raabe_suite_includes_unit_integral() {
    let (doc, code) = json(&["verify", "--suite", "raabe", "--json"]);
    assert_eq!(code, 0);
    assert!(reports(&doc)
        .iter()
        .any(|r| r["name"].as_str().unwrap().contains("L1 - 1/3") && r["pass"] == true));
}

#[test]
fn gamma_suite_passes() {
    let (doc, code) = json(&["verify", "--suite", "gamma", "--json"]);
    assert_eq!(code, 0);
    assert!(reports(&doc).len() > 30);
}

#[test]
fn qed_suite_reports_the_b100_gap() {
    let (doc, code) = json(&["verify", "--suite", "qed", "--tol", "1e-6", "--json"]);
    assert_eq!(code, 1);
    let failed: Vec<&str> = reports(&doc)
        .iter()
        .filter(|r| r["pass"] == false)
        .map(|r| r["name"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["Spinor proper time = strong form at b = 100"]);
    let tables = doc["sections"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|s| s["type"] == "lagrangian")
        .count();
    assert_eq!(tables, 2);
}

#[test]
fn strong_columns_agree_to_twelve_digits() {
    let path = temp_csv("strong");
    let p = path.to_str().unwrap();
    let out = run(&[
        "lagrangian",
        "--kind",
        "spinor",
        "--b-min",
        "100",
        "--b-max",
        "1e5",
        "--points",
        "4",
        "--csv",
        p,
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rows = csv_rows(&path);
    assert_eq!(
        rows[0],
        [
            "b",
            "proper_time",
            "closed_form",
            "strong_zeta",
            "strong_ritus",
            "strong_gamma1",
            "max_pairwise_dev"
        ]
    );
    assert_eq!(rows.len(), 5);
    let bs: Vec<&str> = rows[1..].iter().map(|r| r[0].as_str()).collect();
    assert_eq!(bs, ["100", "1000", "10000", "100000"]);
    for row in &rows[1..] {
        let v: Vec<f64> = row[3..6].iter().map(|c| c.parse().unwrap()).collect();
        for w in &v[1..] {
            assert!(((w - v[0]) / v[0]).abs() <= 1e-12);
        }
    }
}

#[test]
fn scalar_deviation_shrinks() {
    let path = temp_csv("scalar");
    let p = path.to_str().unwrap();
    let out = run(&[
        "lagrangian",
        "--kind",
        "scalar",
        "--routes",
        "proper,strong-zeta",
        "--b-min",
        "10",
        "--b-max",
        "1e4",
        "--points",
        "4",
        "--csv",
        p,
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rows = csv_rows(&path);
    for row in &rows[1..] {
        assert!(row[2].is_empty() && row[4].is_empty() && row[5].is_empty());
    }
    let devs: Vec<f64> = rows[1..].iter().map(|r| r[6].parse().unwrap()).collect();
    assert!(devs.windows(2).all(|w| w[1] < w[0]), "{devs:?}");
}

#[test]
fn calibration_pair_at_unit_field() {
    let path = temp_csv("calibration");
    let p = path.to_str().unwrap();
    let out = run(&[
        "lagrangian",
        "--b-min",
        "1",
        "--b-max",
        "1",
        "--points",
        "1",
        "--routes",
        "proper,closed",
        "--csv",
        p,
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rows = csv_rows(&path);
    assert_eq!(rows.len(), 2);
    let dev: f64 = rows[1][6].parse().unwrap();
    assert!(dev <= 1e-8);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["verify", "--suite", "bogus"][..],
        &["lagrangian", "--b-min", "10", "--b-max", "1"],
        &["lagrangian", "--b-min", "0"],
        &["lagrangian", "--points", "0"],
        &["lagrangian", "--routes", "proper,nope"],
        &["constants", "--tol", "-1"],
        &["frobnicate"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn verify_csv_writes_identity_rows() {
    let path = temp_csv("verify");
    let p = path.to_str().unwrap();
    assert_eq!(
        run(&["verify", "--suite", "zeta", "--csv", p])
            .status
            .code(),
        Some(0)
    );
    let rows = csv_rows(&path);
    assert_eq!(rows[0][0], "name");
    assert!(rows[1..].iter().all(|r| r[6] == "true"));
}

#[test]
fn output_is_reproducible() {
    let a = run(&["verify", "--suite", "all", "--json"]);
    let b = run(&["verify", "--suite", "all", "--json"]);
    assert_eq!(a.stdout, b.stdout);
}
