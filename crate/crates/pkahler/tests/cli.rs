//! End-to-end checks of the `pkk` binary: exit codes, output formats, and
//! the JSON round trip of classification reports.

use std::process::{Command, Output};

use pkahler::detector::DetectionReport;

fn pkk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pkk"))
        .args(args)
        .env_remove("PKK_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn verify_example_passes_on_bundled_model() {
    let out = pkk(&["verify-example"]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("dω ≠ 0"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn verify_example_rejects_wrong_model() {
    let out = pkk(&["verify-example", "--model", "torus2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not the bundled"));
}

#[test]
fn verify_example_rejects_corrupted_constants() {
    // flipped sign on one structure constant fails the Jacobi identity
    let dir = std::env::temp_dir().join("pkk-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("corrupt.json");
    std::fs::write(
        &path,
        r#"{"name":"sl2c","n":3,
           "A":[{"k":1,"i":1,"j":3,"re":"-2"},
                {"k":2,"i":2,"j":3,"re":"-2"},
                {"k":3,"i":1,"j":2,"re":"1"}],
           "B":[]}"#,
    )
    .unwrap();
    let out = pkk(&["verify-example", "--model", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("integrability"));
}

#[test]
fn classify_torus_table() {
    let out = pkk(&["classify", "--model", "torus2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for class in ["pK", "pWK", "pS", "pPL"] {
        let line = text.lines().find(|l| l.contains(&format!(" {class} "))).unwrap();
        assert!(line.contains("Primal"), "{class}: {line}");
    }
}

#[test]
fn classify_json_round_trips() {
    let out = pkk(&[
        "classify", "--model", "sl2c", "--p", "2", "--class", "e1", "--class", "ppl",
        "--format", "json",
    ]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let report = DetectionReport::from_json(&stdout(&out)).unwrap();
    assert_eq!(report.entries.len(), 2);
    assert_eq!(report.to_json(), stdout(&out).trim_end_matches('\n'));
}

#[test]
fn classify_sl2c_p1_e4_is_dual() {
    let out = pkk(&["classify", "--model", "sl2c", "--p", "1", "--class", "e4"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("Dual"));
}

#[test]
fn classify_rejects_bad_inputs() {
    let out = pkk(&["classify", "--model", "no-such-model"]);
    assert_eq!(out.status.code(), Some(2));
    let out = pkk(&["classify", "--model", "torus2", "--p", "7"]);
    assert_eq!(out.status.code(), Some(2));
    let out = pkk(&["classify", "--model", "torus2", "--class", "zz"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cones_on_indefinite_form() {
    let form = r#"{"n":2,"p":1,"q":1,"coeffs":[
        {"i":[1],"j":[1],"re":"0","im":"1/2"},
        {"i":[2],"j":[2],"re":"0","im":"-1/2"}]}"#;
    let out = pkk(&["cones", "--form", form]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    let p_line = text.lines().find(|l| l.starts_with("p ")).unwrap();
    assert!(p_line.contains("OUT"));
    assert!(p_line.contains("exact"));
}

#[test]
fn cones_on_zero_form_boundary() {
    let form = r#"{"n":2,"p":1,"q":1,"coeffs":[]}"#;
    let out = pkk(&["cones", "--form", form, "--format", "json"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
    let items = parsed.as_array().unwrap();
    // zero form: in every closed cone, out of the open one
    for item in items {
        let cone = item["cone"].as_str().unwrap();
        let status = item["verdict"]["status"].as_str().unwrap();
        match cone {
            "transverse" => assert_eq!(status, "Out"),
            _ => assert_eq!(status, "In", "{cone}"),
        }
    }
}

#[test]
fn cones_rejects_malformed_form() {
    let out = pkk(&["cones", "--form", "{broken"]);
    assert_eq!(out.status.code(), Some(2));
    let out = pkk(&["cones", "--form", "/nonexistent/path.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cohomology_table_torus() {
    let out = pkk(&["cohomology", "--model", "torus2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("[1, 4, 6, 4, 1]"), "{text}");
    let out = pkk(&["cohomology", "--model", "torus2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["bott_chern"][1], 4);
}

#[test]
fn seed_env_var_is_honored() {
    let ok = Command::new(env!("CARGO_BIN_EXE_pkk"))
        .args(["classify", "--model", "torus2", "--p", "1", "--class", "pk", "--format", "json"])
        .env("PKK_SEED", "17")
        .output()
        .unwrap();
    assert!(ok.status.success());
    let report = DetectionReport::from_json(&stdout(&ok)).unwrap();
    assert_eq!(report.seed, 17);
    let bad = Command::new(env!("CARGO_BIN_EXE_pkk"))
        .args(["classify", "--model", "torus2"])
        .env("PKK_SEED", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn model_file_loading_round_trip() {
    // a user-supplied model file equal to a bundled one classifies the same
    let dir = std::env::temp_dir().join("pkk-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("iwasawa-copy.json");
    let json = pkahler::model::bundled_model("iwasawa").unwrap().to_json();
    std::fs::write(&path, &json).unwrap();
    let a = pkk(&["cohomology", "--model", "iwasawa", "--format", "json"]);
    let b = pkk(&["cohomology", "--model", path.to_str().unwrap(), "--format", "json"]);
    let va: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    let vb: serde_json::Value = serde_json::from_str(&stdout(&b)).unwrap();
    assert_eq!(va["de_rham"], vb["de_rham"]);
    assert_eq!(va["aeppli"], vb["aeppli"]);
}
