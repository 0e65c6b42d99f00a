//! End-to-end behaviour of the `canal` binary.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use canal_core::io::{self, CSV_HEADER};

fn canal(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_canal")).args(args).current_dir(dir).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn example_prints_a_loadable_config() {
    let dir = tempfile::tempdir().unwrap();
    let out = canal(&["example", "beta2"], dir.path());
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("family = j3,l1"));
    fs::write(dir.path().join("job.cfg"), &text).unwrap();
    let out = canal(&["build", "--config", "job.cfg", "--grid", "3x3x3"], dir.path());
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn flags_override_the_config_file() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("job.cfg"), "example = beta1\ngrid = 2x2x2\nradius = 2*s\n").unwrap();
    let out = canal(&["build", "--config", "job.cfg", "--grid", "3x4x2", "--out", "patch.json"], dir.path());
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let patch = io::patch_from_json(&fs::read_to_string(dir.path().join("patch.json")).unwrap()).unwrap();
    assert_eq!((patch.s.len(), patch.t.len(), patch.w.len()), (3, 4, 2));
    assert_eq!(io::patch_to_json(&patch), fs::read_to_string(dir.path().join("patch.json")).unwrap());
}

#[test]
fn curvature_csv_has_the_documented_header() {
    let dir = tempfile::tempdir().unwrap();
    let out = canal(&["curvature", "--example", "beta1", "--grid", "2x3x2"], dir.path());
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(CSV_HEADER));
    assert_eq!(lines.count(), 12);
}

#[test]
fn export_splits_each_quad_into_two_triangles() {
    let dir = tempfile::tempdir().unwrap();
    let out = canal(&["export", "--example", "beta1", "--grid", "4x5x1", "--out", "slice.obj"], dir.path());
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let obj = fs::read_to_string(dir.path().join("slice.obj")).unwrap();
    assert_eq!(obj.lines().filter(|l| l.starts_with("v ")).count(), 20);
    assert_eq!(obj.lines().filter(|l| l.starts_with("f ")).count(), 2 * 3 * 4);
    assert!(dir.path().join("slice.csv").exists());
}

#[test]
fn verify_reports_failures_with_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let pass = canal(&["verify", "--example", "beta1", "--grid", "4x4x4", "--check", "kh,weingarten-tw"], dir.path());
    assert_eq!(code(&pass), 0, "{}", String::from_utf8_lossy(&pass.stderr));
    let fail = canal(&["verify", "--example", "beta1", "--grid", "4x4x4", "--check", "weingarten-sw"], dir.path());
    assert_eq!(code(&fail), 1);
    assert!(String::from_utf8_lossy(&fail.stderr).contains("FAIL weingarten-sw"));
}

#[test]
fn invalid_configurations_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        vec!["build", "--example", "beta3"],
        vec!["build", "--example", "beta1", "--family", "j1,l0"],
        vec!["build", "--example", "beta1", "--family", "j1,l-1", "--radius", "0.5"],
        vec!["build", "--example", "beta1", "--grid", "0x2"],
    ] {
        assert_eq!(code(&canal(&args, dir.path())), 2, "{args:?}");
    }
    fs::write(dir.path().join("bad.cfg"), "example = beta1\ncolour = red\n").unwrap();
    assert_eq!(code(&canal(&["build", "--config", "bad.cfg"], dir.path())), 2);
}

#[test]
fn numeric_breakdown_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "build", "--curve-x1", "s", "--curve-x2", "s", "--curve-x3", "cos(s)", "--curve-x4", "sin(s)", "--family", "j2,l-1",
        "--radius", "1", "--grid", "3x3x3",
    ];
    assert_eq!(code(&canal(&args, dir.path())), 3);
}

#[test]
fn thread_cap_must_be_positive() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_canal"))
        .args(["example", "beta1"])
        .env("CANAL_THREADS", "0")
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
}
