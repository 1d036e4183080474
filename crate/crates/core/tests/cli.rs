//! End-to-end runs of the `hodgelab` binary.

use std::path::Path;
use std::process::{Command, Output};

fn hodgelab(args: &[&str], seed: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_hodgelab"));
    cmd.args(args).env_remove("HODGELAB_SEED");
    if let Some(s) = seed {
        cmd.env("HODGELAB_SEED", s);
    }
    cmd.output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path_str(p: &Path) -> &str {
    p.to_str().expect("utf-8 path")
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .skip_while(|l| !l.contains(',') || l.starts_with("note:"))
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn mesh_writes_off() {
    let dir = tempfile::tempdir().unwrap();
    let off = dir.path().join("m.off");
    let o = hodgelab(
        &[
            "mesh",
            "--kind",
            "icosphere",
            "--level",
            "2",
            "--radius",
            "1",
            "--out",
            path_str(&off),
        ],
        None,
    );
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("V=162 E=480 F=320"));
    let text = std::fs::read_to_string(&off).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("OFF"));
    assert!(lines.next().unwrap().starts_with("162 320"));
}

#[test]
fn mesh_usage_errors() {
    assert_eq!(
        code(&hodgelab(&["mesh", "--kind", "icosphere", "--radius", "1"], None)),
        1
    );
    let o = hodgelab(&["mesh", "--level", "9"], None);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("resource guard"));
}

#[test]
fn scalar_spectrum_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("s.csv");
    let o = hodgelab(
        &[
            "spectrum",
            "--level",
            "4",
            "--form",
            "0",
            "--count",
            "9",
            "--out",
            path_str(&csv),
        ],
        None,
    );
    assert_eq!(code(&o), 0);
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("index,eigenvalue,residual,group\n"));
    let values: Vec<f64> = csv_rows(&text).iter().map(|r| r[1].parse().unwrap()).collect();
    let expected = [0.0, 2.0, 2.0, 2.0, 6.0, 6.0, 6.0, 6.0, 6.0];
    assert_eq!(values.len(), 9);
    for (v, e) in values.iter().zip(expected) {
        assert!((v - e).abs() <= 0.01 * e.max(1e-6) + 1e-8, "{v} vs {e}");
    }
}

#[test]
fn oneform_spectrum_groups() {
    let o = hodgelab(&["spectrum", "--level", "3", "--form", "1", "--count", "16"], None);
    assert_eq!(code(&o), 0);
    let groups: Vec<String> = csv_rows(&stdout(&o)).iter().map(|r| r[3].clone()).collect();
    assert_eq!(groups.iter().filter(|g| *g == "0").count(), 6);
    assert_eq!(groups.iter().filter(|g| *g == "1").count(), 10);
    assert_eq!(code(&hodgelab(&["spectrum", "--form", "3"], None)), 1);
}

#[test]
fn matrix_market_export() {
    let dir = tempfile::tempdir().unwrap();
    let mtx = dir.path().join("a.mtx");
    let o = hodgelab(
        &[
            "spectrum",
            "--level",
            "1",
            "--form",
            "1",
            "--count",
            "4",
            "--matrix-out",
            path_str(&mtx),
        ],
        None,
    );
    assert_eq!(code(&o), 0);
    let text = std::fs::read_to_string(&mtx).unwrap();
    assert!(text.starts_with("%%MatrixMarket matrix coordinate real symmetric"));
}

#[test]
fn default_verify_passes_and_flags_printed_bound() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let o = hodgelab(&["verify", "--out", path_str(&report)], None);
    let out = stdout(&o);
    assert_eq!(code(&o), 0, "{out}");
    assert!(out.contains("projective upper (printed): INCONSISTENT"));
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(json["pass"], true);
    assert!(json["curvature"]["P"].is_number());
    assert_eq!(json["fields"].as_array().unwrap().len(), 11);
}

#[test]
fn spheroid_verify_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let strip = |p: &Path| {
        let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap();
        v.as_object_mut().unwrap().remove("timestamp");
        v
    };
    let mut reports = Vec::new();
    for i in 0..2 {
        let path = dir.path().join(format!("r{i}.json"));
        let o = hodgelab(
            &["verify", "--kind", "spheroid", "--level", "3", "--out", path_str(&path)],
            Some("0x2a"),
        );
        let out = stdout(&o);
        assert_eq!(code(&o), 0, "{out}");
        assert!(out.contains("not an eigenform: INFO"));
        reports.push(strip(&path));
    }
    assert_eq!(reports[0], reports[1]);
    assert_eq!(reports[0]["seed"], 42);
}

#[test]
fn config_and_seed_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(code(&hodgelab(&["verify", "--config", path_str(&bad)], None)), 1);
    assert_eq!(
        code(&hodgelab(&["verify", "--config", "/nonexistent/cfg.json"], None)),
        1
    );
    assert_eq!(code(&hodgelab(&["spectrum", "--level", "1"], Some("seven"))), 1);
}

#[test]
fn config_file_drives_runs() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(
        &cfg,
        r#"{"surface": {"kind": "icosphere", "level": 2, "radius": 2.0}, "scalar_eigenpairs": 4}"#,
    )
    .unwrap();
    let o = hodgelab(&["spectrum", "--config", path_str(&cfg)], None);
    assert_eq!(code(&o), 0);
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), 4);
    let first: f64 = rows[1][1].parse().unwrap();
    assert!((first - 0.5).abs() < 0.01, "{first}");
}

#[test]
fn converge_reorders_and_decreases() {
    let o = hodgelab(&["converge", "--levels", "4,2,3"], None);
    let out = stdout(&o);
    assert_eq!(code(&o), 0, "{out}");
    assert!(out.contains("note: levels reordered to 2,3,4"));
    let rows = csv_rows(&out);
    let levels: Vec<&str> = rows.iter().map(|r| r[0].as_str()).collect();
    assert_eq!(levels, ["2", "3", "4"]);
    let errors: Vec<f64> = rows.iter().map(|r| r[3].parse().unwrap()).collect();
    assert!(errors.windows(2).all(|w| w[1] < w[0]));
    assert_eq!(code(&hodgelab(&["converge", "--levels", "3"], None)), 1);
    assert_eq!(
        code(&hodgelab(&["converge", "--kind", "spheroid", "--levels", "2,3"], None)),
        1
    );
}

#[test]
fn help_on_every_command() {
    for cmd in ["mesh", "spectrum", "verify", "converge"] {
        let o = hodgelab(&[cmd, "--help"], None);
        assert_eq!(code(&o), 0);
        assert!(stdout(&o).contains("Usage"));
    }
    assert_eq!(code(&hodgelab(&["--help"], None)), 0);
}
