//! End-to-end checks of the `qinv` binary: exit codes, validation output,
//! and a small run.

use std::path::Path;
use std::process::Command;

fn qinv() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qinv"))
}

fn write(path: &Path, text: &str) {
    std::fs::write(path, text).unwrap();
}

const SMALL: &str = "\
name = cli-test

[model.aoa]
elements_x = 8
spacing_x = 2.631578947368421
time_samples = 8
time_step = 2.631578947368421
source = -0.5 0 1 0
source = 0.4 0 1 0

[grid]
dimension = 1
x_min = -1
x_max = 1
x_count = 50

[indicator]
label = beam
method = dsm

[output]
formats = csv peaks
";

#[test]
fn run_produces_outputs_and_exit_zero() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("exp.conf");
    write(&config, SMALL);
    let out = dir.path().join("out");
    let status = qinv()
        .args(["run"])
        .arg(&config)
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    assert!(out.join("beam.csv").exists());
    assert!(out.join("beam_peaks.csv").exists());
    assert!(out.join("manifest.txt").exists());
}

#[test]
fn validate_reports_all_errors_with_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("bad.conf");
    write(
        &config,
        "name = bad\n\n[model.aoa]\nelements_x = 8\nspacing_x = 1\ntime_samples = 8\ntime_step = 1\nsource = 0.1 0 1 0\n\n[noise]\nsnr = -2\n\n[indicator]\nmethod = kdsm\n",
    );
    let output = qinv().args(["validate"]).arg(&config).output().unwrap();
    assert_eq!(output.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("snr"), "stderr: {}", stderr);
    assert!(stderr.contains("sparsity"), "stderr: {}", stderr);
    assert!(stderr.contains("line 11"), "stderr: {}", stderr);
}

#[test]
fn validate_accepts_shipped_configs() {
    for name in [
        "fig3.conf",
        "fig5_half.conf",
        "fig5_quarter.conf",
        "fig6.conf",
        "table1.conf",
    ] {
        let path = Path::new(env!("CARGO_MANIFEST_DIR"))
            .join("configs")
            .join(name);
        let status = qinv().args(["validate"]).arg(&path).status().unwrap();
        assert!(status.success(), "{} failed validation", name);
    }
}

#[test]
fn missing_file_exits_two() {
    let status = qinv()
        .args(["run", "/nonexistent/qinv.conf"])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
}

#[test]
fn unknown_demo_exits_one() {
    let status = qinv().args(["demo", "fig99"]).status().unwrap();
    assert_eq!(status.code(), Some(1));
}

#[test]
fn env_var_sets_default_output_directory() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("exp.conf");
    write(&config, SMALL);
    let out = dir.path().join("envout");
    let status = qinv()
        .args(["run"])
        .arg(&config)
        .env("QINV_OUT_DIR", &out)
        .current_dir(dir.path())
        .status()
        .unwrap();
    assert!(status.success());
    assert!(out.join("beam.csv").exists());
}

#[test]
fn export_then_reload_gives_identical_field() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("exp.conf");
    write(&config, SMALL);
    let out = dir.path().join("direct");
    let status = qinv()
        .args(["run"])
        .arg(&config)
        .arg("--out")
        .arg(&out)
        .args(["--export-data", "snapshots.csv"])
        .status()
        .unwrap();
    assert!(status.success());

    let reload_conf = dir.path().join("reload.conf");
    write(
        &reload_conf,
        &format!(
            "\
name = reload

[model.load_csv]
path = {}
probe = aoa
elements_x = 8
spacing_x = 2.631578947368421

[grid]
dimension = 1
x_min = -1
x_max = 1
x_count = 50

[indicator]
label = beam
method = dsm

[output]
formats = csv peaks
",
            out.join("snapshots.csv").display()
        ),
    );
    let out2 = dir.path().join("reloaded");
    let status = qinv()
        .args(["run"])
        .arg(&reload_conf)
        .arg("--out")
        .arg(&out2)
        .status()
        .unwrap();
    assert!(status.success());
    let direct = std::fs::read(out.join("beam.csv")).unwrap();
    let reloaded = std::fs::read(out2.join("beam.csv")).unwrap();
    assert_eq!(direct, reloaded);
}

#[test]
fn demo_fig2_runs() {
    let dir = tempfile::tempdir().unwrap();
    let status = qinv()
        .args(["demo", "fig2", "--out"])
        .arg(dir.path())
        .status()
        .unwrap();
    assert!(status.success());
    assert!(dir.path().join("dirichlet_shift_1_16.csv").exists());
}
