use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_msetforge"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn witness_example() {
    let out = run(&[
        "witness", "--t", "1", "--c", "-1", "--g", "-1,-1,1", "--m", "7",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["status"], "ok");
    assert_eq!(v["payload"]["p"], "29");
    assert_eq!(v["payload"]["a"], "24");
    assert_eq!(v["payload"]["route"], "cond3");
}

#[test]
fn lehmer_queries() {
    let v = json(&run(&["lehmer", "--R", "5", "--Q", "1", "--u", "20"]));
    assert_eq!(v["payload"]["value"], "6765");
    let v = json(&run(&["lehmer", "--R", "5", "--Q", "1", "--phi", "20"]));
    assert_eq!(v["payload"]["value"], "41");
    let v = json(&run(&["lehmer", "--R", "5", "--Q", "1", "--rank", "5"]));
    assert_eq!(v["payload"]["value"], 10);
    let v = json(&run(&[
        "lehmer",
        "--R",
        "-2",
        "--Q",
        "1",
        "--primitive",
        "4",
        "--p",
        "2",
    ]));
    assert_eq!(v["payload"]["is_primitive"], false);
    let v = json(&run(&[
        "lehmer",
        "--R",
        "5",
        "--Q",
        "1",
        "--primitive",
        "10",
    ]));
    assert_eq!(v["payload"]["primes"], serde_json::json!([]));
}

#[test]
fn aurifeuille_example() {
    let v = json(&run(&[
        "aurifeuille",
        "--n",
        "5",
        "--k",
        "5",
        "--x",
        "2",
        "--y",
        "1",
    ]));
    assert_eq!(v["payload"]["F"], serde_json::json!(["1", "3", "1"]));
    assert_eq!(v["payload"]["G"], serde_json::json!(["1", "1"]));
    assert_eq!(v["payload"]["verified"], true);
    assert_eq!(v["payload"]["common_divisor_ok"], true);
}

#[test]
fn not_covered_exits_two() {
    let out = run(&["witness", "--t", "1", "--c", "-1", "--m", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["status"], "not-covered");
    let out = run(&["zsigmondy", "--a", "2", "--m", "6"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn errors_exit_one() {
    let out = run(&["lehmer", "--R", "5", "--Q", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["status"], "error");
    let out = run(&["witness", "--t", "0", "--c", "-1", "--m", "7"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["witness", "--t", "1", "--c", "-1", "--g", "1,x", "--m", "7"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn other_subcommands() {
    let v = json(&run(&["resultant", "--f", "-1,-1,1", "--m", "7"]));
    assert_eq!(v["payload"]["resultant"], "29");
    let v = json(&run(&["resultant", "--f", "-1,-1,1", "--g", "1,1"]));
    assert_eq!(v["payload"]["resultant"], "1");
    let v = json(&run(&["cyclotomic", "--n", "12", "--at", "2"]));
    assert_eq!(
        v["payload"]["coeffs"],
        serde_json::json!(["1", "0", "-1", "0", "1"])
    );
    assert_eq!(v["payload"]["value"], "13");
    let v = json(&run(&[
        "two-squares",
        "--R",
        "5",
        "--ell",
        "20",
        "--d0",
        "5",
    ]));
    let (a, b) = (
        v["payload"]["a"].as_str().unwrap(),
        v["payload"]["b"].as_str().unwrap(),
    );
    let (a, b): (i64, i64) = (a.parse().unwrap(), b.parse().unwrap());
    assert_eq!(a * a + b * b, 41);
    let v = json(&run(&["zsigmondy", "--a", "2", "--m", "4"]));
    assert_eq!(v["payload"]["p"], "5");
    let v = json(&run(&[
        "zsigmondy",
        "--a",
        "3",
        "--m",
        "5",
        "--g",
        "3,2,-4,1",
    ]));
    assert_eq!(v["payload"]["route"], "zsigmondy");
}

#[test]
fn scan_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scan.csv");
    let out = run(&[
        "mset-scan",
        "--g",
        "-2,1",
        "--m-max",
        "5",
        "--csv",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["payload"]["witnesses"]["4"]["modulus"], 5);
    let csv = std::fs::read_to_string(&path).unwrap();
    assert!(csv.starts_with("M,init,distinct_count,tail,period\n"));
    assert!(csv.contains("\n5,1,4,0,4\n"));
    let out = run(&[
        "mset-scan",
        "--g",
        "-1,-1,1",
        "--m-max",
        "30",
        "--max-states",
        "50",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["status"], "partial");
}

#[test]
fn output_is_deterministic() {
    let args = ["witness", "--t", "3", "--c", "1", "--m", "20"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let mut threaded = vec!["--threads", "1"];
    threaded.extend_from_slice(&["mset-scan", "--g", "-1,-1,1", "--m-max", "25"]);
    let c = run(&threaded);
    let d = run(&[
        "mset-scan",
        "--g",
        "-1,-1,1",
        "--m-max",
        "25",
        "--threads",
        "4",
    ]);
    assert_eq!(c.stdout, d.stdout);
}

#[test]
fn verify_stored_witness() {
    let out = run(&["witness", "--t", "1", "--c", "-1", "--m", "40"]);
    let v = json(&out);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.json");
    std::fs::write(&path, v["payload"].to_string()).unwrap();
    let out = run(&["verify", "--witness", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["payload"]["verified"], true);

    let mut bad = v["payload"].clone();
    bad["a"] = "6".into();
    std::fs::write(&path, bad.to_string()).unwrap();
    let out = run(&["verify", "--witness", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["payload"]["verified"], false);
}

#[test]
fn verify_single_criterion() {
    let out = run(&["verify", "--suite", "paper", "--criterion", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["payload"]["criteria"][0]["passed"], true);
    assert!(String::from_utf8_lossy(&out.stderr).contains("PASS criterion 5"));
}
