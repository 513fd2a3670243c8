use std::process::{Command, Output};

use serde_json::Value;

fn wittlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wittlab"))
        .args(args)
        .env_remove("WITTLAB_SEED")
        .env_remove("WITTLAB_TIMING")
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn build_objects() {
    let out = wittlab(&["build", "--p", "5", "--n", "2", "--object", "b", "--r", "2"]);
    assert_eq!(code(&out), 0);
    let doc = json_of(&out);
    assert_eq!(doc["dim"], 8);
    assert_eq!(doc["subspace"]["dim"], 8);
    assert_eq!(doc["provenance"]["construction"], "b_n = t_0 + C_n");
    assert_eq!(json_of(&wittlab(&["build", "--p", "5", "--n", "2", "--object", "t", "--r", "0"]))["dim"], 2);
    assert_eq!(json_of(&wittlab(&["build", "--p", "5", "--n", "2", "--object", "B1"]))["dim"], 12);
}

#[test]
fn build_writes_file() {
    let dir = std::env::temp_dir().join(format!("wittlab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("b0.json");
    let out = wittlab(&["build", "--p", "5", "--n", "2", "--object", "b", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["dim"], 47);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&wittlab(&["build", "--p", "4", "--n", "2", "--object", "b"])), 2);
    assert_eq!(code(&wittlab(&["build", "--p", "5", "--n", "2", "--object", "b", "--r", "3"])), 2);
    assert_eq!(code(&wittlab(&["build", "--p", "5", "--n", "3", "--object", "B1"])), 2);
    assert_eq!(code(&wittlab(&["verify", "--suite", "nope"])), 2);
    assert_eq!(code(&wittlab(&["table", "--p-list", "9"])), 2);
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", "--suite", "algebra", "--p-list", "5", "--n-list", "1,2", "--seed", "3"];
    let (a, b) = (wittlab(&args), wittlab(&args));
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let doc = json_of(&a);
    assert_eq!(doc["grid"]["seed"], 3);
    assert_eq!(doc["failed"], 0);
    assert!(doc["checks"].as_array().unwrap().iter().all(|c| c["elapsed_ms"].is_null()));
}

#[test]
fn seed_falls_back_to_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_wittlab"))
        .args(["verify", "--suite", "consistency", "--p-list", "5", "--n-list", "1"])
        .env("WITTLAB_SEED", "9")
        .output()
        .unwrap();
    assert_eq!(json_of(&out)["grid"]["seed"], 9);
}

#[test]
fn solvability_includes_negative_control() {
    let out = wittlab(&["verify", "--suite", "solvability", "--p-list", "5", "--n-list", "1,2"]);
    assert_eq!(code(&out), 0);
    let doc = json_of(&out);
    let control = doc["checks"].as_array().unwrap().iter().find(|c| c["name"] == "b1-negative-control").unwrap();
    assert_eq!(control["status"], "pass");
    assert_eq!(control["witness"]["solvable"], true);
    assert_eq!(control["witness"]["partial_2_in_stable_term"], true);
}

#[test]
fn maximality_defaults_to_small_n() {
    let out = wittlab(&["verify", "--suite", "maximality", "--p-list", "5"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json_of(&out)["grid"]["n_list"], serde_json::json!([1, 2]));
}

#[test]
fn dimensions_fail_only_on_middle_cells() {
    let out = wittlab(&["verify", "--suite", "dimensions", "--p-list", "5", "--n-list", "1"]);
    assert_eq!(code(&out), 0);
    let out = wittlab(&["verify", "--suite", "dimensions", "--p-list", "5", "--n-list", "2"]);
    assert_eq!(code(&out), 1);
    let doc = json_of(&out);
    let failing: Vec<(String, Value)> = doc["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"] == "fail")
        .map(|c| (c["name"].as_str().unwrap().to_string(), c["params"].clone()))
        .collect();
    let names: Vec<&str> = failing.iter().map(|(n, _)| n.as_str()).collect();
    assert_eq!(names, ["dim-formula", "gdim-formula", "r-i-formula"]);
    assert_eq!(failing[0].1["r"], 1);
    let dim = doc["checks"].as_array().unwrap().iter().find(|c| c["name"] == "dim-formula" && c["params"]["r"] == 1).unwrap();
    assert_eq!(dim["witness"]["enumerated"], 38);
    assert_eq!(dim["witness"]["formula"], 34);
}

#[test]
fn gdim_command() {
    let out = wittlab(&["gdim", "--p", "5", "--n", "2", "--r", "2"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("difference: 0\n"), "{text}");
    assert!(text.contains("enumerated: 2·t^-1 + 3 + t + t^2 + t^3"));
    let out = wittlab(&["gdim", "--p", "5", "--n", "1", "--r", "0", "--format", "json"]);
    let doc = json_of(&out);
    assert_eq!(doc["difference"]["coeffs"], serde_json::json!({}));
    assert_eq!(doc["enumerated"]["coeffs"]["0"], 1);
    assert_eq!(code(&wittlab(&["gdim", "--p", "5", "--n", "2", "--r", "1", "--strict"])), 1);
    assert_eq!(code(&wittlab(&["gdim", "--p", "5", "--n", "2", "--r", "1"])), 0);
}

#[test]
fn orbit_command() {
    let out = wittlab(&["orbit", "--p", "5", "--n", "2", "--r", "1", "--count", "20", "--seed", "4"]);
    assert_eq!(code(&out), 0);
    let doc = json_of(&out);
    let checks = doc["report"]["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 20);
    assert!(checks.iter().all(|c| c["witness"]["pr0"] == 1));
    let out = wittlab(&["orbit", "--p", "5", "--n", "2", "--r", "0", "--count", "5", "--unipotent"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn orbit_with_identity_file() {
    let dir = std::env::temp_dir().join(format!("wittlab-orbit-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("id.json");
    let identity = r#"{"p":5,"n":2,"images":[{"terms":[{"exp":[1,0],"coef":1}]},{"terms":[{"exp":[0,1],"coef":1}]}]}"#;
    std::fs::write(&path, identity).unwrap();
    let out = wittlab(&["orbit", "--p", "5", "--n", "2", "--r", "1", "--automorphism", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let doc = json_of(&out);
    assert_eq!(doc["report"]["checks"][0]["witness"]["equals_base"], true);
    std::fs::write(&path, r#"{"p":5,"n":2,"images":[]}"#).unwrap();
    let bad = wittlab(&["orbit", "--p", "5", "--n", "2", "--automorphism", path.to_str().unwrap()]);
    assert_eq!(code(&bad), 2);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn table_command() {
    let out = wittlab(&["table", "--p-list", "5,7", "--n-list", "1,2", "--format", "md"]);
    assert_eq!(code(&out), 1);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("| 5 | 2 | 0 | 47 | 47 | ok |"));
    assert!(text.contains("| 5 | 2 | 2 | 8 | 8 | ok |"));
    assert!(text.contains("| 7 | 1 | 1 | 2 | 2 | ok |"));
    assert!(text.contains("| 5 | 2 | 1 | 34 | 38 | MISMATCH | 38 |"));
    let out = wittlab(&["table", "--p-list", "5", "--n-list", "1", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "p,n,r,formula,enumerated,match,corrected_formula\n5,1,0,4,4,ok,4\n5,1,1,2,2,ok,2\n"
    );
}
