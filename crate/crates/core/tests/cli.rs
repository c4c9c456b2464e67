use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_theta-upsilon")).args(args).output().expect("binary runs")
}

fn json_ok(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn error_code(out: &Output) -> String {
    let v: Value = serde_json::from_slice(&out.stderr).expect("json on stderr");
    v["error"]["code"].as_str().unwrap().to_string()
}

#[test]
fn matchings_of_theta3() {
    assert_eq!(json_ok(&["matchings", &data("theta3.json")]), serde_json::json!(["1", "2", "3"]));
}

#[test]
fn trefoil_eval() {
    let v = json_ok(&["upsilon", "eval", &data("trefoil.json"), "--t", "3/2,1/2"]);
    assert_eq!(v["upsilon"], serde_json::json!(["-1/2"]));
    assert_eq!(v["free_rank"], 1);
    assert_eq!(v["t"], serde_json::json!(["3/2", "1/2"]));
    assert_eq!(v["torsion"], serde_json::json!([{"gr": "-3/2", "order": "1/2"}]));
}

#[test]
fn c4_decomposition() {
    let v = json_ok(&["decompose", &data("c4.json"), "--t", "1,1,1,1"]);
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 2);
    assert!(terms.iter().all(|t| t["coefficient"] == "1/2"));
}

#[test]
fn import_matches_stored_complex() {
    let out = run(&["import-cfk", &data("trefoil_cfk.json")]);
    assert!(out.status.success());
    let stored = std::fs::read_to_string(data("trefoil.json")).unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), stored);
}

#[test]
fn segment_csv_is_exact() {
    let out = run(&["upsilon", "segment", &data("trefoil.json"), "--from", "2,0", "--to", "0,2", "--format", "csv"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "0,0\n1/2,-1\n1,0\n");
}

#[test]
fn delta_complex_layout() {
    let v = json_ok(&["delta-complex", &data("link2.json")]);
    assert_eq!(v["vertices"][0], serde_json::json!(["0", "0", "2", "2"]));
    assert_eq!(v["simplices"]["2"], serde_json::json!([[0, 1, 3], [0, 2, 3]]));
    assert_eq!(v["simplices"]["1"].as_array().unwrap().len(), 5);
}

#[test]
fn invariants() {
    assert_eq!(json_ok(&["invariants", "d", &data("s3.json")])["d"], "0");
    let tau = json_ok(&["invariants", "tau", &data("trefoil.json")]);
    assert_eq!(tau["tau"][0][1], "1");
    let j = json_ok(&["invariants", "jumps", &data("trefoil.json"), "--edge", "1", "--a", "1"]);
    assert_eq!(j["a_times_delta"], "2");
    let f = json_ok(&["invariants", "fi", &data("t34.json"), "--edge", "1", "--count", "3"]);
    assert_eq!(f["components"], serde_json::json!(["1", "0", "0"]));
}

#[test]
fn tensor_stabilize_glue_chain() {
    let dir = std::env::temp_dir().join(format!("theta-upsilon-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let sq = dir.join("sq.json").to_string_lossy().into_owned();
    let st = dir.join("st.json").to_string_lossy().into_owned();
    let gl = dir.join("gl.json").to_string_lossy().into_owned();
    assert!(run(&["tensor", &data("trefoil.json"), &data("trefoil.json"), "--out", &sq]).status.success());
    assert_eq!(json_ok(&["upsilon", "eval", &sq, "--t", "1,1"])["upsilon"][0], "-2");
    assert!(run(&["stabilize", &data("trefoil.json"), "--slot", "2", "--out", &st]).status.success());
    assert_eq!(json_ok(&["upsilon", "eval", &st, "--t", "1,1/2,1/2"])["upsilon"][0], "-1");
    assert!(run(&["glue", &st, &data("trefoil.json"), "--out", &gl]).status.success());
    assert_eq!(json_ok(&["validate", &gl])["edges"], 3);
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn exit_codes() {
    let out = run(&["invariants", "d", &data("trefoil.json")]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(error_code(&out), "E_SHAPE_MISMATCH");

    let out = run(&["upsilon", "eval", &data("trefoil.json"), "--t", "2/4,3/2"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(error_code(&out), "E_PARSE");

    let out = run(&["upsilon", "eval", &data("trefoil.json"), "--t", "3,-1"]);
    assert_eq!(error_code(&out), "E_NOT_IN_POLYTOPE");

    let out = run(&["matchings", "/nonexistent/graph.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(error_code(&out), "E_IO");

    let out = run(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_code(&out), "E_USAGE");

    let out = run(&["upsilon", "eval", &data("trefoil.json")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invalid_complex_lists_violations() {
    let dir = std::env::temp_dir().join(format!("theta-upsilon-bad-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    let text = std::fs::read_to_string(data("trefoil.json")).unwrap().replace("\"-2\",\n        \"2\": \"0\"", "\"-2\",\n        \"2\": \"5\"");
    std::fs::write(&bad, text).unwrap();
    let out = run(&["validate", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(v["error"]["code"], "E_GRADING");
    assert!(!v["error"]["violations"].as_array().unwrap().is_empty());
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn thread_setting_is_checked() {
    let out = Command::new(env!("CARGO_BIN_EXE_theta-upsilon"))
        .args(["matchings", &data("theta3.json")])
        .env("THETA_UPSILON_THREADS", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_theta-upsilon"))
        .args(["matchings", &data("theta3.json")])
        .env("THETA_UPSILON_THREADS", "2")
        .output()
        .unwrap();
    assert!(out.status.success());
}

#[test]
fn output_is_deterministic() {
    let args = ["upsilon", "segment", &data("t34.json"), "--from", "2,0", "--to", "0,2"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.stdout, b.stdout);
    let args = ["delta-complex", &data("link2.json")];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}
