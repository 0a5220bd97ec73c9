use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_greenring")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn csv_rows(args: &[&str]) -> Vec<Vec<String>> {
    let mut a = args.to_vec();
    a.extend(["--format", "csv"]);
    let out = run(&a);
    assert!(out.status.success());
    csv::Reader::from_reader(out.stdout.as_slice())
        .records()
        .map(|r| r.unwrap().iter().map(String::from).collect())
        .collect()
}

#[test]
fn ssmul_matches_worked_example() {
    let v = json(&["green", "ssmul", "--p", "2", "--levels", "7", "--a", "99", "--b", "53"]);
    assert_eq!(v["result"], serde_json::json!([[87, "1"]]));
    assert_eq!(v["basis"], "u");
}

#[test]
fn ssmul_oracle_agrees_with_rule() {
    for (a, b) in [("4", "5"), ("7", "8"), ("2", "2")] {
        let base = ["green", "ssmul", "--p", "3", "--levels", "2", "--a", a, "--b", b];
        let rule = json(&base);
        let mut with = base.to_vec();
        with.push("--oracle");
        assert_eq!(rule["result"], json(&with)["result"], "u{a} u{b}");
    }
}

#[test]
fn fibonacci_dimensions() {
    let v = json(&["verlinde", "dn", "--p", "5", "--object", "0,1,0,0", "--n", "5"]);
    let d: Vec<&str> = v["result"].as_array().unwrap().iter().map(|r| r["d_n"].as_str().unwrap()).collect();
    assert_eq!(d, ["1", "2", "3", "5", "8"]);
}

#[test]
fn factorize_round_trip() {
    let f = json(&["green", "factorize", "--p", "5", "--levels", "5", "--r", "1023"]);
    assert_eq!(f["result"]["base"], 3);
    assert_eq!(f["result"]["levels"], serde_json::json!([4, 0, 1, 1]));
    let r = json(&["green", "reconstruct", "--p", "5", "--levels", "5", "--base", "3", "--x", "4,0,1,1"]);
    assert_eq!(r["result"], 1023);
}

#[test]
fn selftest_passes() {
    let out = run(&["selftest"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = v["result"].as_array().unwrap();
    assert!(rows.iter().all(|r| r["pass"] == true));
    assert!(rows.iter().any(|r| r["id"] == "e7-p23"));
    let ids: Vec<&str> = rows.iter().map(|r| r["id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort_unstable();
    assert_eq!(ids, sorted);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["verlinde", "fuse", "--p", "4", "--i", "1", "--j", "1"]).status.code(), Some(2));
    assert_eq!(run(&["green", "ssmul", "--p", "2", "--levels", "3", "--a", "2", "--b", "3"]).status.code(), Some(2));
    assert_eq!(run(&["nonsense"]).status.code(), Some(64));
    assert_eq!(run(&["verlinde", "fuse", "--p", "five"]).status.code(), Some(64));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    let capped = run(&["green", "mul", "--p", "3", "--levels", "3", "--a", "20", "--b", "25", "--cap-oracle", "100"]);
    assert_eq!(capped.status.code(), Some(2));
}

#[test]
fn csv_matches_json() {
    let args = ["asym", "--system", "A1", "--preset", "L1", "--n", "8", "--n-from", "1", "--ratio"];
    let j = json(&args);
    let rows = csv_rows(&args);
    let items = j["result"].as_array().unwrap();
    assert_eq!(rows.len(), items.len());
    for (row, item) in rows.iter().zip(items) {
        assert_eq!(row[0], item["n"].to_string());
        assert_eq!(row[1], item["d_n_s"].as_str().unwrap());
        assert_eq!(row[2].parse::<f64>().unwrap(), item["ratio"]["value"].as_f64().unwrap());
        assert_eq!(row[3].parse::<f64>().unwrap(), item["ratio"]["err"].as_f64().unwrap());
    }

    let args = ["verlinde", "fuse", "--p", "7", "--i", "3", "--j", "4"];
    let pairs = json(&args)["result"].clone();
    let rows = csv_rows(&args);
    let from_json: Vec<Vec<String>> = pairs
        .as_array()
        .unwrap()
        .iter()
        .map(|p| vec![p[0].to_string(), p[1].as_str().unwrap().to_string()])
        .collect();
    assert_eq!(rows, from_json);
}

#[test]
fn every_float_carries_an_error() {
    let v = json(&["asym", "--system", "B2", "--preset", "vector", "--n", "4", "--ratio", "--cv"]);
    let row = &v["result"][0];
    for k in ["ratio", "cv_target"] {
        let e = row[k]["err"].as_f64().unwrap();
        assert!(e > 0.0 && e < 1e-10, "{k}: {e}");
    }
}

#[test]
fn exact_dimension_count_at_s_one() {
    let v = json(&["asym", "--system", "G2", "--preset", "7-dim", "--n", "5", "--s", "1"]);
    assert_eq!(v["result"][0]["d_n_s"], "16807");
}
