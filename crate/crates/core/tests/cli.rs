use std::path::Path;
use std::process::{Command, Output};

fn run(dir: &Path, args: &[&str], config: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_floquet-majorana"));
    cmd.args(args).arg("--out").arg(dir);
    if let Some(c) = config {
        let path = dir.join("config.json");
        std::fs::write(&path, c).unwrap();
        cmd.arg("--config").arg(path);
    }
    cmd.output().unwrap()
}

fn data_rows(text: &str) -> Vec<Vec<String>> {
    text.lines().filter(|l| !l.starts_with('#')).skip(1).map(|l| l.split(',').map(String::from).collect()).collect()
}

#[test]
fn sweep_writes_staircase_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["sweep", "--svg", "--seed", "5"], None);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(dir.path().join("sweep.csv")).unwrap();
    assert!(csv.starts_with("# floquet-majorana sweep\n# config: {"));
    assert!(csv.contains("# seed: 5\n"));
    let rows = data_rows(&csv);
    assert_eq!(rows.len(), 159);
    assert!(rows.iter().all(|r| r.len() == 4));
    assert!(std::fs::read_to_string(dir.path().join("sweep.svg")).unwrap().contains("<polyline"));
}

#[test]
fn fig5_sweep_reaches_three_and_four() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = r#"{"law": "fig5", "m_from_pi": 6.0, "m_to_pi": 7.0, "m_step_pi": 0.05}"#;
    let out = run(dir.path(), &["sweep"], Some(cfg));
    assert!(out.status.success());
    let rows = data_rows(&std::fs::read_to_string(dir.path().join("sweep.csv")).unwrap());
    assert!(rows.iter().any(|r| r[1] == "3" && r[2] == "4"));
}

#[test]
fn config_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let empty = run(dir.path(), &["sweep"], Some(r#"{"m_from_pi": 3.0, "m_to_pi": 3.0}"#));
    assert_eq!(empty.status.code(), Some(2));
    let unknown = run(dir.path(), &["modes"], Some(r#"{"sits": 50}"#));
    assert_eq!(unknown.status.code(), Some(2));
    let layout = run(dir.path(), &["gate"], Some(r#"{"mzm_per_corner": 2}"#));
    assert_eq!(layout.status.code(), Some(2));
    let missing = Command::new(env!("CARGO_BIN_EXE_floquet-majorana"))
        .args(["code", "--config", "/nonexistent/config.json", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn modes_summaries() {
    let dir = tempfile::tempdir().unwrap();
    let sweet = r#"{"base": {"mu": 0.0, "J": 0.5, "Delta": 0.5}, "law": "explicit", "sites": 40}"#;
    let out = run(dir.path(), &["modes"], Some(sweet));
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout), "n_zero,n_pi\n2,0\n");
    let trivial = r#"{"base": {"mu": 3.0, "J": 0.5, "Delta": 0.5}, "law": "explicit", "sites": 40}"#;
    let out = run(dir.path(), &["modes"], Some(trivial));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "n_zero,n_pi\n0,0\n");
    let profile = std::fs::read_to_string(dir.path().join("modes_profile.csv")).unwrap();
    assert_eq!(data_rows(&profile).len(), 80);
}

#[test]
fn code_outputs_are_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let cfg = r#"{"trials": 2000, "seed": 7}"#;
    assert!(run(a.path(), &["code"], Some(cfg)).status.success());
    assert!(run(b.path(), &["code"], Some(cfg)).status.success());
    let mc = |d: &Path| std::fs::read(d.join("montecarlo.json")).unwrap();
    assert_eq!(mc(a.path()), mc(b.path()));
    let json: serde_json::Value = serde_json::from_slice(&mc(a.path())).unwrap();
    assert_eq!(json["seed"], 7);
    assert_eq!(json["result"]["corrected"], 2000);
    let table = data_rows(&std::fs::read_to_string(a.path().join("tableI.csv")).unwrap());
    assert_eq!(table.len(), 14);
    assert_eq!(table[0][..2], ["0L1".to_string(), "S1 S2 S3".to_string()]);
}

#[test]
fn gate_reports_sixteen_verified_branches() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["gate"], None);
    assert!(out.status.success());
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("gate.json")).unwrap()).unwrap();
    assert_eq!(json["result"]["verified"], 16);
    let first = &json["result"]["branches"][0];
    assert_eq!(first["outcomes"], serde_json::json!([1, 1, 1, 1]));
    assert!(first["correction_terms"].is_array());
}

#[test]
fn nanowire_and_conductance_tables() {
    let dir = tempfile::tempdir().unwrap();
    assert!(run(dir.path(), &["nanowire"], None).status.success());
    let summary = data_rows(&std::fs::read_to_string(dir.path().join("nanowire_summary.csv")).unwrap());
    assert_eq!(summary.len(), 4);
    let spectrum = std::fs::read_to_string(dir.path().join("nanowire_0.csv")).unwrap();
    assert!(spectrum.contains("\nk,E1,E2,E_eff1,E_eff2,abs_error\n"));

    let cfg = r#"{"params": {"a0": 1.0, "a3": 0.25}, "flux0": [0.4, 1.0], "fluxpi": [0.4]}"#;
    assert!(run(dir.path(), &["conductance"], Some(cfg)).status.success());
    let rows = data_rows(&std::fs::read_to_string(dir.path().join("conductance.csv")).unwrap());
    assert_eq!(rows.len(), 8);
    for r in rows.iter().filter(|r| r[0] == "0.4") {
        let g: f64 = r[5].parse().unwrap();
        let p4: f64 = r[4].parse().unwrap();
        assert!((g - (1.0 + 0.25 * p4)).abs() < 1e-15);
    }
    let bad = run(dir.path(), &["conductance"], Some(r#"{"params": {"a3": 0.0}}"#));
    assert_eq!(bad.status.code(), Some(2));
}
