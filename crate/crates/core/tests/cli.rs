use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_rydberg"));
    cmd.env_remove("RYDBERG_OUT_DIR");
    cmd
}

fn scenario_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios")
}

fn write_scenario(dir: &Path, body: &str) -> PathBuf {
    let path = dir.join("scenario.json");
    fs::write(&path, body).unwrap();
    path
}

fn run(cmd: &mut Command) -> Output {
    cmd.output().expect("binary runs")
}

const H319_SMALL: &str = r#"{
  "name": "small",
  "atom": {"n_bar": 319, "sigma": 2.5, "l": 0},
  "basis": "circular",
  "q_list": [6, 7, 9],
  "trace": {"start": {}, "stop": {"t_cl": 4}, "step": {"t_cl": "1/16"}}
}"#;

#[test]
fn scales_json_matches_known_hydrogen_values() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(bin()
        .args(["scales", "--quiet", "--format", "json", "--scenario"])
        .arg(scenario_dir().join("h319_revival.json"))
        .arg("--out")
        .arg(dir.path()));
    assert_eq!(out.status.code(), Some(0));
    let v: Value =
        serde_json::from_slice(&fs::read(dir.path().join("h319_revival_scales.json")).unwrap())
            .unwrap();
    let t_rev = v["seconds"]["t_rev"].as_f64().unwrap();
    assert!((t_rev - 1.0492e-6).abs() / 1.0492e-6 < 1e-3);
}

#[test]
fn schedule_reports_bad_q_per_entry() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_scenario(dir.path(), H319_SMALL);
    let out = run(bin()
        .args(["schedule", "--quiet", "--scenario"])
        .arg(&path)
        .arg("--out")
        .arg(dir.path()));
    assert_eq!(out.status.code(), Some(0));
    let v: Value =
        serde_json::from_slice(&fs::read(dir.path().join("small_schedule.json")).unwrap()).unwrap();
    let entries = v.as_array().unwrap();
    assert_eq!(entries.len(), 3);
    assert_eq!(entries[0]["l"], 6);
    assert!(entries[1]["error"].as_str().unwrap().contains("multiple of 3"));
    assert_eq!(entries[2]["l"], 3);
}

#[test]
fn invalid_scenarios_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    for body in [
        r#"{"name": "x", "atom": {"n_bar": 36, "sigma": 1.5, "l": 1, "delta": 2.65}, "basis": "circular"}"#,
        r#"{"name": "x", "atom": {"n_bar": 36, "sigma": -1.0, "l": 1}}"#,
        r#"{"name": "x", "atom": {"n_bar": 36, "sigma": 1.5, "l": 40}}"#,
        r#"{"name": "x", "atom": {"n_bar": 36, "sigma": 1.5, "l": 1}, "unknown": 1}"#,
        "not json",
    ] {
        let path = write_scenario(dir.path(), body);
        let out = run(bin()
            .args(["scales", "--quiet", "--scenario"])
            .arg(&path)
            .arg("--out")
            .arg(dir.path()));
        assert_eq!(out.status.code(), Some(2), "scenario {body}");
        assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
    }
    let out = run(bin().args(["scales", "--scenario", "/nonexistent/scenario.json"]));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn autocorr_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_scenario(dir.path(), H319_SMALL);
    let mut outputs = Vec::new();
    for sub in ["a", "b"] {
        let out_dir = dir.path().join(sub);
        let out = run(bin()
            .args(["autocorr", "--quiet", "--scenario"])
            .arg(&path)
            .arg("--out")
            .arg(&out_dir));
        assert_eq!(out.status.code(), Some(0));
        outputs.push(fs::read(out_dir.join("small_autocorr.csv")).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    let text = String::from_utf8(outputs.remove(0)).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t_s,abs_a_squared"));
    assert_eq!(lines.count(), 65);
}

#[test]
fn output_dir_can_come_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_scenario(dir.path(), H319_SMALL);
    let out_dir = dir.path().join("from_env");
    let out = run(bin()
        .args(["scales", "--quiet", "--scenario"])
        .arg(&path)
        .env("RYDBERG_OUT_DIR", &out_dir));
    assert_eq!(out.status.code(), Some(0));
    assert!(out_dir.join("small_scales.json").exists());
}

#[test]
fn verify_exit_code_tracks_expectations() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(bin()
        .args(["verify", "--quiet", "--scenario"])
        .arg(scenario_dir().join("verify_h319.json"))
        .arg("--out")
        .arg(dir.path()));
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value =
        serde_json::from_slice(&fs::read(dir.path().join("verify_h319_verify.json")).unwrap())
            .unwrap();
    assert_eq!(v["all_expected_met"], true);

    let wrong = r#"{
      "name": "wrong",
      "atom": {"n_bar": 319, "sigma": 2.5, "l": 0},
      "basis": "circular",
      "q_list": [15],
      "trace": {"start": {"t_sr": "1/16"}, "stop": {"t_sr": "1/14"}, "step": {"t_cl": "1/64"}},
      "verify": {"expected": {"15": "confirmed"}}
    }"#;
    let path = write_scenario(dir.path(), wrong);
    let out = run(bin()
        .args(["verify", "--quiet", "--scenario"])
        .arg(&path)
        .arg("--out")
        .arg(dir.path()));
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn packet_writes_one_profile_per_snapshot() {
    let dir = tempfile::tempdir().unwrap();
    let body = r#"{
      "name": "pk",
      "atom": {"n_bar": 36, "sigma": 1.5, "l": 1},
      "basis": "radial",
      "packet": {"grid_points": 256, "times": [{"label": "a"}, {"label": "b", "t_cl": "1/2"}]}
    }"#;
    let path = write_scenario(dir.path(), body);
    let out = run(bin()
        .args(["packet", "--quiet", "--scenario"])
        .arg(&path)
        .arg("--out")
        .arg(dir.path()));
    assert_eq!(out.status.code(), Some(0));
    for label in ["a", "b"] {
        let text = fs::read_to_string(dir.path().join(format!("pk_packet_{label}.csv"))).unwrap();
        assert!(text.starts_with("r_au,density"));
        assert_eq!(text.lines().count(), 257);
    }
}
