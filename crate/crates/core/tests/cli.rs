use std::process::{Command, Output};

use serde_json::Value;

fn qneg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qneg"))
        .args(args)
        .env_remove("QNEG_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn validate_builtin_passes() {
    let o = qneg(&["validate", "--builtin", "d3-hesse-qminus"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], true);
    assert!(v["max_gram_violation"].as_f64().unwrap() < 1e-12);
}

#[test]
fn validate_reports_a_broken_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    let o = qneg(&["sic", "--label", "d2", "--emit", "qplus", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let mut file: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    file["elements"][0]["re"][0][0] = Value::from(0.9);
    file["elements"][0]["re"][1][1] = Value::from(0.1);
    std::fs::write(&path, file.to_string()).unwrap();
    let o = qneg(&["validate", "--qrep", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], false);
}

#[test]
fn negativity_then_certify() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let o = qneg(&[
        "negativity", "--builtin", "qmax", "--p", "1", "--exhaustive", "--out", report.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    let expected = 2.0 / 9.0 * (7f64.sqrt() - 1.0);
    assert!((r["value"].as_f64().unwrap() - expected).abs() < 1e-9);
    assert_eq!(r["exhaustive"], true);
    assert_eq!(r["measure"], 1.0);
    assert!(r["wall_time_s"].as_f64().is_some());
    assert_eq!(r["achieving_state"]["dim"], 3);

    let o = qneg(&["certify", "--report", report.to_str().unwrap(), "--qrep", "qmax"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("local-max, global-max witness"), "{text}");
}

#[test]
fn negativity_routes_by_p() {
    let o = qneg(&["negativity", "--qrep", "d3-hesse-qminus", "--p", "inf"]);
    let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((r["value"].as_f64().unwrap() - 1.0 / 9.0).abs() < 1e-12);
    assert_eq!(r["measure"], "inf");

    let o = qneg(&["negativity", "--qrep", "qmin", "--p", "2", "--seeds", "50"]);
    assert_eq!(o.status.code(), Some(0));
    let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["exhaustive"], false);
    assert!(r["value"].as_f64().unwrap() <= (1.0f64 / 3.0).sqrt());
}

#[test]
fn exhaustive_refuses_dimension_eight() {
    let o = qneg(&["negativity", "--builtin", "d8-hoggar-qminus", "--exhaustive"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn threads_from_environment() {
    let run = |threads: &str| {
        let o = Command::new(env!("CARGO_BIN_EXE_qneg"))
            .args(["negativity", "--builtin", "d4-qminus", "--exhaustive"])
            .env("QNEG_THREADS", threads)
            .output()
            .unwrap();
        let mut v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        v.as_object_mut().unwrap().remove("wall_time_s");
        v
    };
    assert_eq!(run("1"), run("3"));
}

#[test]
fn stationary_table_for_d4() {
    let o = qneg(&["stationary", "--dim", "4", "--table", "--format", "json"]);
    let rows: Vec<Value> = serde_json::from_str(&stdout(&o)).unwrap();
    let best = rows
        .iter()
        .max_by(|a, b| a["value"].as_f64().unwrap().total_cmp(&b["value"].as_f64().unwrap()))
        .unwrap();
    assert_eq!(best["n"], 4);
    assert_eq!(best["m"], 0);
    assert!((best["value"].as_f64().unwrap() - 0.5).abs() < 1e-12);

    let csv = stdout(&qneg(&["stationary", "--dim", "3", "--table", "--format", "csv"]));
    assert!(csv.starts_with("d,n,m,k,a,b,value\n"));
    // a < 0 < b exists iff k (k + n - d) > n d with k = d^2 - n - m
    let feasible = (1..9)
        .flat_map(|n| (0..9 - n).map(move |m| (n, m)))
        .filter(|&(n, m)| {
            let k = (9 - n - m) as i64;
            k * (k + n as i64 - 3) > 3 * n as i64
        })
        .count();
    assert_eq!(csv.lines().count(), feasible + 1);
}

#[test]
fn sic_gram() {
    let o = qneg(&["sic", "--label", "d4", "--emit", "gram"]);
    let g: Vec<Vec<f64>> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(g.len(), 16);
    assert!((g[0][0] - 1.0).abs() < 1e-12 && (g[0][5] - 0.2).abs() < 1e-12);
    assert_eq!(qneg(&["sic", "--label", "d6"]).status.code(), Some(1));
}

#[test]
fn wh_sample_and_check() {
    let dir = tempfile::tempdir().unwrap();
    let fid = dir.path().join("fid.json");
    let o = qneg(&["wh", "--sample", "0.3,1.0,0.8,0.2,2", "--out", fid.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let o = qneg(&["wh", "--dim", "3", "--check", fid.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["qrep_validation_passed"], true);

    // infeasible moduli
    assert_eq!(qneg(&["wh", "--sample", "0,1.5707963,0.05,0"]).status.code(), Some(1));
    assert_eq!(qneg(&["wh", "--dim", "4", "--random-seed", "1"]).status.code(), Some(2));
}

#[test]
fn represent_a_random_state() {
    let o = qneg(&["represent", "--builtin", "d3-hesse-qplus", "--random-seed", "5"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let entries: Vec<f64> = serde_json::from_value(v["entries"].clone()).unwrap();
    assert_eq!(entries.len(), 9);
    assert!((entries.iter().sum::<f64>() - 1.0).abs() < 1e-12);
}

#[test]
fn reproduce_scopes() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("rows.json");
    let o = qneg(&["reproduce", "--scope", "d2", "--json", json.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<Value> = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["pass"], true);
    assert!(stdout(&o).contains("0.183012701892"));

    let o = qneg(&["reproduce", "--scope", "d8", "--seeds", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("SKIP"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
}

#[test]
fn deterministic_output() {
    let args = ["negativity", "--builtin", "qmin", "--seeds", "200", "--rng-seed", "9"];
    let strip = |o: Output| {
        let mut v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        v.as_object_mut().unwrap().remove("wall_time_s");
        v
    };
    assert_eq!(strip(qneg(&args)), strip(qneg(&args)));
}

#[test]
fn usage_errors() {
    assert_eq!(qneg(&[]).status.code(), Some(2));
    assert_eq!(qneg(&["negativity"]).status.code(), Some(2));
    assert_eq!(qneg(&["negativity", "--builtin", "qmax", "--p", "x"]).status.code(), Some(2));
    assert_eq!(qneg(&["stationary", "--dim", "3", "--n", "2"]).status.code(), Some(2));
}
