//! End-to-end runs of the `gmdist` binary.

use std::io::Write;
use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn input(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../inputs").join(name).to_str().unwrap().to_string()
}

fn gmdist(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_gmdist")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn json(args: &[&str]) -> Value {
    let (code, stdout, stderr) = gmdist(args);
    assert_eq!(code, 0, "{stderr}");
    serde_json::from_str(&stdout).expect("valid JSON")
}

fn temp_json(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::Builder::new().suffix(".json").tempfile().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn delta_table_on_first_example() {
    let v = json(&["delta", &input("first_example.json"), "--t-max", "4", "--ell-max", "6"]);
    assert_eq!(v["method"], "both");
    assert_eq!(v["convention"], "fixed-dim");
    assert_eq!(v["ring"]["reduced_certified"], true);
    assert_eq!(v["discrepancies"], 0);
    let limits: Vec<i64> =
        v["cells"].as_array().unwrap().iter().filter(|c| c["t"] == 4).map(|c| c["value"].as_i64().unwrap()).collect();
    assert_eq!(limits, [1, 2, 4, 4, 5, 6]);
}

#[test]
fn domain_table_is_constant() {
    let v = json(&["delta", &input("conic.json"), "--t-max", "3", "--ell-max", "2"]);
    assert_eq!(v["ring"]["classification"], "domain");
    for c in v["cells"].as_array().unwrap() {
        assert_eq!(c["value"], 2);
    }
}

#[test]
fn stabilize_second_example() {
    let v = json(&["stabilize", &input("second_example.json")]);
    let rows = v["rows"].as_array().unwrap();
    let got: Vec<(i64, i64)> =
        rows.iter().map(|r| (r["stabilization_value"].as_i64().unwrap(), r["case"].as_i64().unwrap())).collect();
    assert_eq!(got, [(0, 6), (0, 6), (1, 7)]);
}

#[test]
fn sr_info_triangle() {
    let v = json(&["sr-info", &input("triangle.json")]);
    assert_eq!(v["dim"], 2);
    assert_eq!(v["multiplicity"], 3);
    assert_eq!(v["depth"], 2);
    assert_eq!(v["regularity"], 2);
    assert_eq!(v["connected"], true);
    assert_eq!(v["shellable"]["status"], "shellable");
}

#[test]
fn ghw_matches_delta_on_line() {
    let v = json(&["ghw", &input("p1_f2.json"), "--t-max", "1"]);
    let rows = v["rows"].as_array().unwrap();
    let w: Vec<i64> = rows.iter().map(|r| r["weight"].as_i64().unwrap()).collect();
    assert_eq!(w, [2, 3]);
    assert!(rows.iter().all(|r| r["agree"] == true));
    let t = json(&["delta", &input("p1_f2.json"), "--t-max", "1", "--ell-max", "2"]);
    let d: Vec<i64> = t["cells"].as_array().unwrap().iter().map(|c| c["value"].as_i64().unwrap()).collect();
    assert_eq!(d, [2, 3]);
}

#[test]
fn ghw_of_generator_matrix() {
    let v = json(&["ghw", &input("code_f3.json")]);
    let w: Vec<i64> = v["rows"].as_array().unwrap().iter().map(|r| r["weight"].as_i64().unwrap()).collect();
    assert_eq!(w, [2, 4]);
    assert_eq!(v["codes"][0]["generator"], serde_json::json!([[1, 0, 2, 1], [0, 1, 2, 0]]));
}

#[test]
fn verify_builtin_suite_passes() {
    let (code, stdout, stderr) = gmdist(&["verify"]);
    assert_eq!(code, 0, "{stderr}");
    let v: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["failed"], 0);
    assert!(v["passed"].as_u64().unwrap() > 100);
}

#[test]
fn verify_single_input() {
    let v = json(&["verify", &input("two_edges.json")]);
    assert_eq!(v["instances"][0]["name"], "two_edges");
    assert_eq!(v["failed"], 0);
}

#[test]
fn formats() {
    let (code, csv, _) = gmdist(&["delta", &input("xy.json"), "--t-max", "2", "--ell", "1", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(
        csv,
        "t,ell,value,f_empty,method,convention,brute,fast,agree\n1,1,1,false,both,fixed-dim,1,1,true\n2,1,1,false,both,fixed-dim,1,1,true\n"
    );
    let (code, text, _) = gmdist(&["delta", &input("xy.json"), "--t-max", "1", "--ell", "1", "--format", "text"]);
    assert_eq!(code, 0);
    assert!(text.contains("classification: one_dimensional"), "{text}");
}

#[test]
fn own_dim_defaults_to_brute_and_rejects_fast() {
    let v = json(&["delta", &input("second_example.json"), "--t-max", "2", "--ell", "1", "--convention", "own-dim"]);
    assert_eq!(v["method"], "brute");
    assert_eq!(v["convention"], "own-dim");
    let (code, _, err) =
        gmdist(&["delta", &input("second_example.json"), "--convention", "own-dim", "--method", "fast"]);
    assert_eq!(code, 3, "{err}");
}

#[test]
fn uncertified_input() {
    let v = json(&["delta", &input("xy_no_primes.json"), "--t-max", "2", "--ell", "1"]);
    assert_eq!(v["method"], "brute");
    assert_eq!(v["ring"]["reduced_certified"], false);
    let (code, _, err) = gmdist(&["delta", &input("xy_no_primes.json"), "--method", "both"]);
    assert_eq!(code, 3, "{err}");
    let s = json(&["stabilize", &input("xy_no_primes.json"), "--ell", "2", "--t-max", "4"]);
    assert_eq!(s["rows"][0]["regularity_lower_bound"], 1);
    assert_eq!(s["rows"][0]["deltas"], serde_json::json!([2, 2, 2, 2]));
}

#[test]
fn parse_errors_report_position() {
    let f = temp_json("{\n  \"char\": 2,\n  \"vars\": [\"x\", \"y\"],\n  \"gens\": [\"x*y+\"]\n}\n");
    let (code, _, err) = gmdist(&["delta", f.path().to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 4, column"), "{err}");
    let f = temp_json("{\"vertices\": 3, \"facets\": [[1, 2], [1, 2, 3]]}");
    let (code, _, err) = gmdist(&["sr-info", f.path().to_str().unwrap()]);
    assert_eq!(code, 2, "{err}");
    let f = temp_json("[1, 2");
    let (code, _, err) = gmdist(&["delta", f.path().to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 1"), "{err}");
    let (code, _, _) = gmdist(&["delta", "/nonexistent/file.json"]);
    assert_eq!(code, 2);
    let (code, _, _) = gmdist(&["delta"]);
    assert_eq!(code, 2);
}

#[test]
fn hypothesis_violations() {
    let f = temp_json(r#"{"char": 2, "vars": ["x", "y"], "gens": ["x*y"], "minimal_primes": [["x"], ["x+y"]]}"#);
    let (code, _, err) = gmdist(&["delta", f.path().to_str().unwrap()]);
    assert_eq!(code, 3, "{err}");
    assert!(err.contains("does not contain"), "{err}");
    let (code, _, _) = gmdist(&["ghw", &input("code_f3.json"), "--ell", "3"]);
    assert_eq!(code, 3);
    let (code, _, _) = gmdist(&["sr-info", &input("xy.json")]);
    assert_eq!(code, 3);
}

#[test]
fn output_independent_of_jobs() {
    let a = gmdist(&["bridge", "--count", "6", "--jobs", "1"]);
    let b = gmdist(&["bridge", "--count", "6", "--jobs", "4"]);
    assert_eq!(a.0, 0);
    assert_eq!(a, b);
    let c = gmdist(&["bridge", "--count", "6", "--seed", "5"]);
    assert_ne!(a.1, c.1);
}
