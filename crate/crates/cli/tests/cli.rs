use std::f64::consts::PI;
use std::path::Path;
use std::process::{Command, Output};

use epsw::mesh::Mesh;
use serde_json::Value;

fn epsw(args: &[&str], config: Option<&str>, dir: &Path) -> (Output, Value) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_epsw"));
    cmd.args(args).env("EPSW_THREADS", "2");
    if let Some(text) = config {
        let path = dir.join(format!("config_{}.json", args[0]));
        std::fs::write(&path, text).unwrap();
        cmd.arg("--config").arg(path);
    }
    let output = cmd.output().unwrap();
    let report = serde_json::from_slice(&output.stdout).unwrap_or(Value::Null);
    (output, report)
}

fn status(output: &Output) -> i32 {
    output.status.code().unwrap()
}

#[test]
fn round_sphere_on_the_disk_has_zero_w() {
    let dir = tempfile::tempdir().unwrap();
    let (out, report) = epsw(&["wvol", "--resolution", "128"], None, dir.path());
    assert_eq!(status(&out), 0);
    assert!(report["report"]["w"].as_f64().unwrap().abs() < 1e-6);
    assert_eq!(report["command"], "wvol");
    assert_eq!(report["version"], epsw::VERSION);
    assert_eq!(report["config"]["metric"]["family"], "round_sphere");
}

#[test]
fn flat_disk_reproduces_the_frozen_value() {
    let dir = tempfile::tempdir().unwrap();
    let (out, report) = epsw(&["wvol"], Some(r#"{"metric": {"family": "flat"}}"#), dir.path());
    assert_eq!(status(&out), 0);
    assert!((report["report"]["w"].as_f64().unwrap() + 4.105599216876).abs() < 1e-9);
}

#[test]
fn tangent_circles_fail_validation() {
    let dir = tempfile::tempdir().unwrap();
    let config = r#"{"domain": {"circles": [{"center": [0, 0], "radius": 2}, {"center": [1, 0], "radius": 1}]}}"#;
    let (out, report) = epsw(&["wvol"], Some(config), dir.path());
    assert_eq!(status(&out), 2);
    assert_eq!(report["error"]["kind"], "invalid_input");
}

#[test]
fn malformed_configs_fail_validation() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(status(&epsw(&["wvol"], Some("{"), dir.path()).0), 2);
    assert_eq!(status(&epsw(&["wvol"], Some(r#"{"metric": {"family": "nope"}}"#), dir.path()).0), 2);
    assert_eq!(status(&epsw(&["wvol", "--resolution", "100"], None, dir.path()).0), 2);
    assert_eq!(status(&epsw(&["loewner", "--obj", "x.obj"], None, dir.path()).0), 2);
}

#[test]
fn unreadable_config_is_an_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.json");
    let (out, _) = epsw(&["wvol", "--config", missing.to_str().unwrap()], None, dir.path());
    assert_eq!(status(&out), 1);
}

#[test]
fn bump_on_the_disk_passes_the_polyakov_check() {
    let dir = tempfile::tempdir().unwrap();
    let (out, report) = epsw(&["polyakov-check"], None, dir.path());
    assert_eq!(status(&out), 0);
    assert_eq!(report["report"]["pass"], true);
    assert!(report["report"]["check"]["residual"].as_f64().unwrap() < 1e-4);
}

#[test]
fn zero_conformal_factor_has_zero_residual() {
    let dir = tempfile::tempdir().unwrap();
    let (out, report) = epsw(&["polyakov-check", "--resolution", "128"], Some(r#"{"phi": {"family": "flat"}}"#), dir.path());
    assert_eq!(status(&out), 0);
    assert_eq!(report["report"]["check"]["residual"].as_f64().unwrap(), 0.0);
}

#[test]
fn failed_check_reports_a_convergence_table() {
    let dir = tempfile::tempdir().unwrap();
    let (out, report) = epsw(&["polyakov-check", "--resolution", "32"], Some(r#"{"tolerance": 1e-12}"#), dir.path());
    assert_eq!(status(&out), 3);
    let table = &report["report"]["convergence"];
    assert_eq!(table["resolutions"], serde_json::json!([8, 16, 32]));
    assert_eq!(table["residuals"].as_array().unwrap().len(), 3);
}

#[test]
fn requested_convergence_table_is_included() {
    let dir = tempfile::tempdir().unwrap();
    let (out, report) = epsw(&["polyakov-check"], Some(r#"{"halving": [32, 64, 128]}"#), dir.path());
    assert_eq!(status(&out), 0);
    assert!(report["report"]["convergence"]["observed_order"].as_f64().unwrap() >= 1.5);
}

#[test]
fn symmetric_schottky_configuration_is_certified() {
    let dir = tempfile::tempdir().unwrap();
    let obj = dir.path().join("core.obj");
    let (out, report) = epsw(&["schottky", "--obj", obj.to_str().unwrap()], None, dir.path());
    assert_eq!(status(&out), 0);
    let cert = &report["report"]["certificate"];
    assert_eq!(cert["minus_two_pi_certificate"], true);
    assert!((cert["unconditional_bound"].as_f64().unwrap() - 4.0 * PI).abs() < 1e-12);
    assert_eq!(cert["hexagon_edges"], 6);
    let mesh = Mesh::parse_obj(&std::fs::read_to_string(obj).unwrap()).unwrap();
    assert!(mesh.face_count() > 0);
}

#[test]
fn overlapping_schottky_circles_exit_4() {
    let dir = tempfile::tempdir().unwrap();
    let config = r#"{"schottky": {"genus": 2, "circles": [
        {"center": [1, 0], "radius": 1}, {"center": [-1, 0], "radius": 1.5},
        {"center": [0, 6], "radius": 1}, {"center": [0, -6], "radius": 1}]}}"#;
    let (out, report) = epsw(&["schottky"], Some(config), dir.path());
    assert_eq!(status(&out), 4);
    assert!(report["error"]["guidance"].is_string());
}

#[test]
fn circle_has_zero_loewner_energy() {
    let dir = tempfile::tempdir().unwrap();
    let config = r#"{"curve": {"kind": "circle", "center": [0.3, -0.2], "radius": 1.7}}"#;
    let (out, report) = epsw(&["loewner", "--resolution", "256"], Some(config), dir.path());
    assert_eq!(status(&out), 0);
    assert!(report["report"]["energy"].as_f64().unwrap().abs() < 1e-4);
}

#[test]
fn polynomial_curve_pipelines_agree() {
    let dir = tempfile::tempdir().unwrap();
    let config = r#"{"curve": {"kind": "polynomial", "coeffs": [[0, 0], [1, 0], [0, 0], [0.15, 0.05]]}}"#;
    let (out, report) = epsw(&["loewner"], Some(config), dir.path());
    assert_eq!(status(&out), 0);
    let r = &report["report"];
    let energy = r["energy"].as_f64().unwrap();
    assert!(energy > 0.0);
    assert!(r["gap"].as_f64().unwrap() < 1e-3 * energy.max(1.0));
}

#[test]
fn non_starlike_curve_exits_5_with_guidance() {
    let dir = tempfile::tempdir().unwrap();
    let points: Vec<[f64; 2]> = (0..256)
        .map(|k| {
            let t = 2.0 * PI * k as f64 / 256.0;
            let (r, a) = (1.0 + 0.25 * t.cos(), 0.9 * PI * t.sin());
            [r * a.cos(), r * a.sin()]
        })
        .collect();
    let config = serde_json::json!({ "curve": { "kind": "samples", "points": points } }).to_string();
    let (out, report) = epsw(&["loewner"], Some(&config), dir.path());
    assert_eq!(status(&out), 5);
    assert_eq!(report["error"]["kind"], "no_convergence");
    assert!(report["error"]["guidance"].as_str().unwrap().contains("maps"));
}

#[test]
fn explicit_maps_are_accepted_and_checked() {
    let dir = tempfile::tempdir().unwrap();
    let circle = r#"{"maps": {"base": [0, 0], "interior": [[0, 0], [1, 0]], "exterior": [[0, 0], [1, 0]]}}"#;
    let (out, report) = epsw(&["loewner", "--resolution", "256"], Some(circle), dir.path());
    assert_eq!(status(&out), 0);
    assert!(report["report"]["energy"].as_f64().unwrap().abs() < 1e-8);
    let mismatched = r#"{"maps": {"base": [0, 0], "interior": [[0, 0], [1, 0], [0.1, 0]], "exterior": [[0, 0], [1, 0]]}}"#;
    assert_eq!(status(&epsw(&["loewner"], Some(mismatched), dir.path()).0), 2);
}

#[test]
fn flat_export_writes_three_tagged_pieces() {
    let dir = tempfile::tempdir().unwrap();
    let obj = dir.path().join("flat.obj");
    let (out, report) = epsw(&["epstein-export", "--resolution", "128", "--obj", obj.to_str().unwrap()], None, dir.path());
    assert_eq!(status(&out), 0);
    assert_eq!(report["report"]["degenerate"], false);
    let mesh = Mesh::parse_obj(&std::fs::read_to_string(obj).unwrap()).unwrap();
    for name in ["E", "C_0", "T_0"] {
        assert!(mesh.group(name).is_some_and(|g| !g.faces.is_empty()), "missing group {name}");
    }
    // The flat Epstein surface is the horizontal plane at height 2 and the strip meets it there.
    let strip = mesh.group("C_0").unwrap();
    let top = strip.faces.iter().flatten().map(|&v| mesh.vertices[v][2]).fold(0.0, f64::max);
    assert!((top - 2.0).abs() < 1e-9);
}

#[test]
fn round_export_is_flagged_degenerate() {
    let dir = tempfile::tempdir().unwrap();
    let obj = dir.path().join("round.obj");
    let config = r#"{"metric": {"family": "round_sphere"}}"#;
    let (out, report) = epsw(&["epstein-export", "--obj", obj.to_str().unwrap()], Some(config), dir.path());
    assert_eq!(status(&out), 0);
    assert_eq!(report["report"]["degenerate"], true);
    assert!(Mesh::parse_obj(&std::fs::read_to_string(obj).unwrap()).is_ok());
}

#[test]
fn export_requires_an_obj_path() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(status(&epsw(&["epstein-export"], None, dir.path()).0), 2);
}

#[test]
fn reports_are_deterministic_and_written_to_out() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, threads: &str| {
        let path = dir.path().join(name);
        let out = Command::new(env!("CARGO_BIN_EXE_epsw"))
            .args(["selftest", "--seed", "11", "--resolution", "256", "--out", path.to_str().unwrap()])
            .env("EPSW_THREADS", threads)
            .output()
            .unwrap();
        assert_eq!(status(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
        assert!(out.stdout.is_empty());
        std::fs::read(path).unwrap()
    };
    let a = run("a.json", "1");
    assert_eq!(a, run("b.json", "1"));
    assert_eq!(a, run("c.json", "3"));
    let report: Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(report["config"]["seed"], 11);
    assert_eq!(report["report"]["pass"], true);
}

#[test]
fn invalid_thread_cap_fails_validation() {
    let out = Command::new(env!("CARGO_BIN_EXE_epsw")).arg("selftest").env("EPSW_THREADS", "0").output().unwrap();
    assert_eq!(status(&out), 2);
}
