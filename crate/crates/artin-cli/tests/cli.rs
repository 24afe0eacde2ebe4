//! End-to-end tests that drive the compiled binary.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn artin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_artin"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("artin-cli-test-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn gen_writes_a_labelled_table() {
    let out = artin(&["gen", "--family", "pt", "--n", "2"]);
    let v = stdout_json(&out);
    assert_eq!(v["order"], 9);
    assert_eq!(v["labels"].as_array().unwrap().len(), 9);
    assert_eq!(v["table"].as_array().unwrap().len(), 9);
}

#[test]
fn decompose_family_reports_summary() {
    let out = artin(&["decompose", "--family", "pt", "--n", "2"]);
    let v = stdout_json(&out);
    assert_eq!(v["summary"], "9 / 2 / 7 / 1,1,1,2");
    assert_eq!(v["radical"]["radical_dim"], 2);
    assert_eq!(v["lift"]["params_free"], 2);
}

#[test]
fn text_format_contains_summary_line() {
    let out = artin(&["decompose", "--family", "pt", "--n", "2", "--format", "text"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("summary: 9 / 2 / 7 / 1,1,1,2"), "{text}");
}

#[test]
fn generate_decompose_verify_round_trip() {
    let table_path = scratch("ft2-table.json");
    let report_path = scratch("ft2-report.json");
    let table_str = table_path.to_str().unwrap();
    let report_str = report_path.to_str().unwrap();

    let out = artin(&["gen", "--family", "ft", "--n", "2", "--out", table_str]);
    assert!(out.status.success());

    let out = artin(&["decompose", "--input", table_str, "--out", report_str]);
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );

    let out = artin(&["verify", "--report", report_str, "--input", table_str]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("report verified"));

    // The same report also verifies against the regenerated family.
    let out = artin(&["verify", "--report", report_str, "--family", "ft", "--n", "2"]);
    assert!(out.status.success());
}

#[test]
fn verify_flags_a_tampered_report() {
    let report_path = scratch("pt2-tampered.json");
    let report_str = report_path.to_str().unwrap();
    let out = artin(&["decompose", "--family", "pt", "--n", "2", "--out", report_str]);
    assert!(out.status.success());

    let mut v: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&report_path).unwrap()).unwrap();
    // Claim a vector that the trace matrix does not annihilate.
    v["radical"]["radical_basis"][0][8] = serde_json::json!("1");
    fs::write(&report_path, serde_json::to_string(&v).unwrap()).unwrap();

    let out = artin(&["verify", "--report", report_str, "--family", "pt", "--n", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("problem:"));
}

#[test]
fn non_associative_input_exits_2() {
    let path = scratch("bad-table.json");
    fs::write(&path, r#"{"order": 2, "table": [[2, 1], [1, 1]]}"#).unwrap();
    let out = artin(&["decompose", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("associative"));
}

#[test]
fn malformed_lift_parameters_exit_2() {
    let out = artin(&[
        "decompose",
        "--family",
        "pt",
        "--n",
        "2",
        "--lift-params",
        "bogus=1",
    ]);
    assert_eq!(out.status.code(), Some(2));

    let out = artin(&[
        "decompose",
        "--family",
        "pt",
        "--n",
        "2",
        "--lift-params",
        "x1_1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn lift_parameters_are_applied_and_recorded() {
    // Discover the free parameter names first, then rerun with values.
    let out = artin(&["decompose", "--family", "pt", "--n", "2"]);
    let v = stdout_json(&out);
    let names: Vec<String> = v["lift"]["param_names"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s.as_str().unwrap().to_string())
        .collect();
    assert_eq!(names.len(), 2);
    let params = format!("{}=1,{}=0", names[0], names[1]);

    let out = artin(&[
        "decompose", "--family", "pt", "--n", "2", "--lift-params", &params,
    ]);
    let with_params = stdout_json(&out);
    let applied = with_params["lift"]["applied_parameters"].as_array().unwrap();
    assert_eq!(applied.len(), 2);
    assert_eq!(applied[0][0], serde_json::json!(names[0]));
    assert_eq!(applied[0][1], "1");
    // A nonzero parameter moves the lifted basis.
    assert_ne!(with_params["lift"]["basis"], v["lift"]["basis"]);
    // The parametrized lift still verifies.
    let report_path = scratch("pt2-params.json");
    fs::write(&report_path, with_params.to_string()).unwrap();
    let out = artin(&[
        "verify",
        "--report",
        report_path.to_str().unwrap(),
        "--family",
        "pt",
        "--n",
        "2",
    ]);
    assert!(
        out.status.success(),
        "stdout: {}",
        String::from_utf8_lossy(&out.stdout)
    );
}

#[test]
fn no_lift_omits_the_lift_stage() {
    let out = artin(&["decompose", "--family", "pt", "--n", "2", "--no-lift"]);
    let v = stdout_json(&out);
    assert!(v.get("lift").is_none());
    assert_eq!(v["summary"], "9 / 2 / 7 / 1,1,1,2");
}

#[test]
fn structure_constant_files_decompose() {
    let path = scratch("dual-numbers.json");
    fs::write(
        &path,
        r#"{"dim": 2, "one": ["1", "0"], "structure": [[1, 1, 1, "1"], [1, 2, 2, "1"], [2, 1, 2, "1"]]}"#,
    )
    .unwrap();
    let out = artin(&["decompose", "--input", path.to_str().unwrap()]);
    let v = stdout_json(&out);
    assert_eq!(v["summary"], "2 / 1 / 1 / 1");
}
