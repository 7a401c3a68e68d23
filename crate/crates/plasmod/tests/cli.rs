//! End-to-end tests of the `plasmod` binary: output files, exit codes,
//! determinism, and the environment-variable thread bound.

use std::fs;
use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_plasmod"))
}

fn write_config(dir: &tempfile::TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

const SHELL_CONFIG: &str = r#"{
    "kind": "nanoshell",
    "geometry": { "radii": [4, 5, 9, 10], "unit": "nm" },
    "materials": {
        "core": { "fixed": { "eps": [1.0, 0.0] } },
        "shell": { "drude": { "eps0": 1.0, "omega_p": 1.0, "tau": 0.0 } }
    }
}"#;

fn body_of(csv: &str) -> String {
    csv.lines()
        .filter(|line| !line.starts_with('#'))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn shell_modes_csv_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(&dir, "shell.json", SHELL_CONFIG);
    let out1 = dir.path().join("a.csv");
    let out2 = dir.path().join("b.csv");
    for out in [&out1, &out2] {
        let status = bin()
            .args(["shell-modes", "--config"])
            .arg(&config)
            .arg("--out")
            .arg(out)
            .status()
            .unwrap();
        assert!(status.success());
    }
    let a = fs::read_to_string(&out1).unwrap();
    let b = fs::read_to_string(&out2).unwrap();
    assert_eq!(body_of(&a), body_of(&b));
    let body = body_of(&a);
    let mut lines = body.lines();
    assert_eq!(
        lines.next().unwrap(),
        "lambda1,eps_ratio,e_overlap,upsilon_overlap,omega_if_drude,flag"
    );
    assert_eq!(lines.count(), 4);
    // Table values appear in the first data row
    let first = body.lines().nth(1).unwrap();
    let lambda: f64 = first.split(',').next().unwrap().parse().unwrap();
    assert!((lambda + 0.8550).abs() < 5e-4);
}

#[test]
fn json_format_output() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(&dir, "shell.json", SHELL_CONFIG);
    let output = bin()
        .args(["shell-modes", "--format", "json", "--config"])
        .arg(&config)
        .output()
        .unwrap();
    assert!(output.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(doc["command"], "shell-modes");
    assert_eq!(doc["rows"].as_array().unwrap().len(), 4);
    assert!(doc["metadata"]["config"].is_string());
}

#[test]
fn config_error_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        &dir,
        "bad.json",
        r#"{ "kind": "sphere", "geometry": { "radii": [1.0] }, "unexpected": true }"#,
    );
    let output = bin()
        .args(["shell-modes", "--config"])
        .arg(&config)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
    let err: serde_json::Value = serde_json::from_slice(&output.stderr).unwrap();
    assert_eq!(err["error"], "config");
}

#[test]
fn missing_file_exits_2() {
    let output = bin()
        .args(["shell-modes", "--config", "/nonexistent/nowhere.json"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn exact_singularity_exits_3() {
    // fixed eps1 = -2 eps0 exactly: the response solve is singular
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        &dir,
        "singular.json",
        r#"{
            "kind": "sphere",
            "geometry": { "radii": [1.0] },
            "materials": {
                "matrix": { "fixed": { "eps": [1.0, 0.0] } },
                "particle": { "fixed": { "eps": [-2.0, 0.0] } }
            },
            "drive": { "omega": 1.0 },
            "heat": { "sigma_matrix": 1.0, "sigma_np": 1.0 }
        }"#,
    );
    let output = bin()
        .args(["heat-profile", "--config"])
        .arg(&config)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(3));
    let err: serde_json::Value = serde_json::from_slice(&output.stderr).unwrap();
    assert_eq!(err["error"], "singularity");
}

#[test]
fn vanishing_overlap_exits_4() {
    // at r2 = 2.1814688084793072 the lowest mode of (1, r2, 3, 4) has
    // v . e = O(1e-15), violating the excitability hypothesis
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        &dir,
        "overlap.json",
        r#"{
            "kind": "nanoshell",
            "geometry": { "radii": [1.0, 2.1814688084793072, 3.0, 4.0] },
            "materials": {
                "core": { "fixed": { "eps": [1.0, 0.0] } },
                "shell": { "drude": { "eps0": 1.0, "omega_p": 1.0, "tau": 0.0 } }
            },
            "drive": {
                "mode_index": 0,
                "tau_grid": { "start": 1e-3, "stop": 1e-6, "count": 4, "spacing": "log" }
            }
        }"#,
    );
    let output = bin()
        .args(["blowup-scan", "--config"])
        .arg(&config)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(4));
    let err: serde_json::Value = serde_json::from_slice(&output.stderr).unwrap();
    assert_eq!(err["error"], "hypothesis_violated");
}

#[test]
fn blowup_scan_slope_column() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        &dir,
        "blowup.json",
        r#"{
            "kind": "sphere",
            "geometry": { "radii": [1.0] },
            "materials": {
                "particle": { "drude": { "eps0": 1.0, "omega_p": 1.0, "tau": 0.0 } }
            },
            "drive": { "tau_grid": { "start": 1e-2, "stop": 1e-6, "count": 9, "spacing": "log" } }
        }"#,
    );
    let output = bin()
        .args(["blowup-scan", "--config"])
        .arg(&config)
        .output()
        .unwrap();
    assert!(output.status.success());
    let text = String::from_utf8(output.stdout).unwrap();
    let body = body_of(&text);
    let last = body.lines().last().unwrap();
    let slope: f64 = last.split(',').nth(3).unwrap().parse().unwrap();
    assert!((slope + 2.0).abs() < 0.05, "slope {}", slope);
}

#[test]
fn thread_env_variable() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(&dir, "shell.json", SHELL_CONFIG);
    let single = bin()
        .env("PLASMOD_THREADS", "1")
        .args(["shell-modes", "--config"])
        .arg(&config)
        .output()
        .unwrap();
    assert!(single.status.success());
    let unbounded = bin()
        .args(["shell-modes", "--config"])
        .arg(&config)
        .output()
        .unwrap();
    assert_eq!(
        body_of(&String::from_utf8(single.stdout).unwrap()),
        body_of(&String::from_utf8(unbounded.stdout).unwrap())
    );
    // invalid value is a config error
    let bad = bin()
        .env("PLASMOD_THREADS", "zero")
        .args(["sphere-resonance", "--config"])
        .arg(write_config(
            &dir,
            "sphere.json",
            r#"{
                "kind": "sphere",
                "geometry": { "radii": [1.0] },
                "materials": { "particle": { "drude": { "eps0": 1.0, "omega_p": 1.0, "tau": 1e-3 } } },
                "drive": { "omega_grid": { "start": 0.4, "stop": 0.8, "count": 5 } }
            }"#,
        ))
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn sphere_resonance_metadata() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        &dir,
        "sphere.json",
        r#"{
            "kind": "sphere",
            "geometry": { "radii": [10.0], "unit": "nm" },
            "materials": { "particle": { "drude": { "eps0": 1.0, "omega_p": 1.0, "tau": 1e-3 } } },
            "drive": { "omega_grid": { "start": 0.4, "stop": 0.8, "count": 5 }, "speed": 1.0 }
        }"#,
    );
    let output = bin()
        .args(["sphere-resonance", "--config"])
        .arg(&config)
        .output()
        .unwrap();
    assert!(output.status.success());
    let text = String::from_utf8(output.stdout).unwrap();
    assert!(text.contains("# resonance_wavelength: "));
    assert_eq!(body_of(&text).lines().count(), 6);
}
