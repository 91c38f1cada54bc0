use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn qeuclid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qeuclid")).args(args).output().expect("binary runs")
}

fn config(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "configs", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("JSON report")
}

fn without_timing(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timing_ms");
    v
}

fn write_config(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

const MINIMAL: &str = r#"{"m":3,"k":1,"n":2,"alpha1":"1","alpha":["1"],"beta":["auto"],"lambda":["1","1"]}"#;

#[test]
fn pi_degree_reports_pass() {
    let o = qeuclid(&["pi-degree", "--n", "2", "--m", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("degree = 3, expected m^(n-1) = 3"));
    assert!(stdout(&o).starts_with("PASS"));
}

#[test]
fn json_reports_are_deterministic() {
    let a = qeuclid(&["pi-degree", "--n", "3", "--m", "5", "--json"]);
    let b = qeuclid(&["pi-degree", "--n", "3", "--m", "5", "--json"]);
    assert_eq!(without_timing(json(&a)), without_timing(json(&b)));
    assert_eq!(json(&a)["report"]["degree"], 25);

    let cfg = config("caseIII_n3_m3.json");
    let a = qeuclid(&["verify", "--config", &cfg, "--json"]);
    let b = qeuclid(&["verify", "--config", &cfg, "--json"]);
    assert_eq!(without_timing(json(&a)), without_timing(json(&b)));
}

#[test]
fn verify_worked_instance() {
    let o = qeuclid(&["verify", "--config", &config("caseI_n2_m3.json"), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["passed"], true);
    assert_eq!(v["report"]["commutant"]["dimension"], 1);
    assert_eq!(v["report"]["dimension"], 3);
    assert_eq!(v["report"]["pi_degree"], 3);
    assert_eq!(v["report"]["relation_failures"].as_array().unwrap().len(), 0);

    let text = qeuclid(&["verify", "--config", &config("caseI_n2_m3.json")]);
    assert!(!stdout(&text).contains("FAIL"));
    assert!(stdout(&text).contains("PASS commutant dimension 1"));
}

#[test]
fn build_then_verify_import_matches() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["caseI_n2_m3.json", "caseII_n2_m5.json", "caseIII_n3_m3.json"] {
        let cfg = config(name);
        let out = dir.path().join("matrices.json");
        let out = out.to_str().unwrap();
        let b = qeuclid(&["build", "--config", &cfg, "--out", out]);
        assert_eq!(b.status.code(), Some(0), "{}", stderr(&b));
        let direct = json(&qeuclid(&["verify", "--config", &cfg, "--json"]));
        let imported = json(&qeuclid(&["verify", "--matrices", out, "--json"]));
        assert_eq!(direct["report"], imported["report"]);
        assert_eq!(direct["exit_code"], imported["exit_code"]);
    }
}

#[test]
fn tampered_matrix_file_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let built = qeuclid(&["build", "--config", &config("caseI_n2_m3.json")]);
    let mut v: Value = serde_json::from_slice(&built.stdout).unwrap();
    // x2 entry (0,1) = 1 becomes 2
    let entry = &mut v["generators"]["x2"][0];
    assert_eq!(entry[0], 0);
    entry[2] = serde_json::json!(["2", "0"]);
    let path = write_config(&dir, "tampered.json", &v.to_string());
    let o = qeuclid(&["verify", "--matrices", &path]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn config_errors_exit_2_with_distinct_messages() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        (MINIMAL.replace(r#"["1","1"]"#, r#"["1","0"]"#), "torsion parameters"),
        (MINIMAL.replace(r#""m":3"#, r#""m":4"#), "m must be odd"),
        (MINIMAL.replace(r#""k":1"#, r#""k":3"#), "not primitive"),
        (MINIMAL.replace(r#""alpha1":"1","#, ""), "missing field"),
        (MINIMAL.replace(r#""alpha1":"1""#, r#""alpha1":"0""#), "x_1 not invertible"),
    ];
    let mut seen = Vec::new();
    for (i, (text, needle)) in cases.iter().enumerate() {
        let path = write_config(&dir, &format!("c{i}.json"), text);
        let o = qeuclid(&["verify", "--config", &path]);
        assert_eq!(o.status.code(), Some(2), "{text}");
        let msg = stderr(&o);
        assert!(msg.contains(needle), "{msg}");
        seen.push(msg);
    }
    seen.dedup();
    assert_eq!(seen.len(), cases.len());

    let ok = write_config(&dir, "ok.json", MINIMAL);
    assert_eq!(qeuclid(&["verify", "--config", &ok]).status.code(), Some(0));
    let missing = dir.path().join("nope.json");
    assert_eq!(qeuclid(&["verify", "--config", missing.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn guards_exit_4() {
    let o = qeuclid(&["build", "--config", &config("caseI_n3_m5.json"), "--max-dim", "24"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("dimension guard"));
    let o = qeuclid(&["verify", "--config", &config("caseI_n3_m5.json"), "--max-commutant-dim", "5"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stdout(&o).contains("SKIP commutant"));
}

#[test]
fn identities_pass() {
    let o = qeuclid(&["identities", "--n", "2", "--m", "3", "--confluence", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["report"]["remark"]["checks"].as_array().unwrap().len(), 9);
    assert_eq!(v["report"]["central_powers"]["checks"].as_array().unwrap().len(), 16);
    assert_eq!(v["report"]["confluence"]["failures"].as_array().unwrap().len(), 0);
}

#[test]
fn straighten_prints_normal_form() {
    let o = qeuclid(&["straighten", "--n", "2", "x1*y1 - y1*x1"]);
    assert_eq!(stdout(&o).trim(), "0");
    let o = qeuclid(&["straighten", "--n", "2", "x2*y1"]);
    assert_eq!(stdout(&o).trim(), "q^-1*y1*x2");
}

#[test]
fn out_flag_writes_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = qeuclid(&["pi-degree", "--n", "2", "--m", "5", "--json", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["report"]["degree"], 5);
}
