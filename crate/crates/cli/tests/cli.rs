use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const BUNDLED: &str = include_str!("../../../configs/nichol2016.json");

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_isingdrive"))
}

fn bundled() -> Value {
    serde_json::from_str(BUNDLED).unwrap()
}

fn write_config(dir: &TempDir, cfg: &Value) -> PathBuf {
    let path = dir.path().join("config.json");
    std::fs::write(&path, serde_json::to_string_pretty(cfg).unwrap()).unwrap();
    path
}

fn run(cmd: &str, config: &Path, out: &Path, extra: &[&str]) -> Output {
    bin().arg(cmd).arg("--config").arg(config).arg("--out").arg(out).args(extra).output().unwrap()
}

fn csv_rows(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_path(path).unwrap();
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r.records().map(|rec| rec.unwrap().iter().map(String::from).collect()).collect();
    (header, rows)
}

fn num(s: &str) -> f64 {
    s.parse().unwrap()
}

fn with_sweep(mut cfg: Value, t_end: f64, n: usize) -> Value {
    cfg["sweep"]["t_end_ns"] = t_end.into();
    cfg["sweep"]["n_points"] = n.into();
    cfg
}

#[test]
fn overlap_two_points() {
    let dir = TempDir::new().unwrap();
    let config = write_config(&dir, &with_sweep(bundled(), 20.0, 2));
    let out = dir.path().join("overlap.csv");
    let o = run("overlap", &config, &out, &[]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let (header, rows) = csv_rows(&out);
    assert_eq!(header, ["t_ns", "F_one_rwa", "F_two_rwa"]);
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0], ["0", "1", "1"]);
    assert_eq!(num(&rows[1][0]), 20.0);
    assert!(num(&rows[1][1]) > 0.99);
}

#[test]
fn overlap_rows_have_twelve_digits() {
    let dir = TempDir::new().unwrap();
    let config = write_config(&dir, &with_sweep(bundled(), 30.0, 4));
    let out = dir.path().join("overlap.csv");
    assert!(run("overlap", &config, &out, &[]).status.success());
    let (_, rows) = csv_rows(&out);
    for cell in rows.iter().flatten() {
        let digits = cell.split('e').next().unwrap().chars().filter(char::is_ascii_digit).count();
        assert!(digits <= 13, "{cell}");
        assert!(!cell.contains(','));
    }
}

#[test]
fn invariants_start_trivial_and_window_holds_gate_time() {
    let dir = TempDir::new().unwrap();
    let config = write_config(&dir, &with_sweep(bundled(), 1000.0, 11));
    let out = dir.path().join("inv.csv");
    let o = run("invariants", &config, &out, &[]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let (header, rows) = csv_rows(&out);
    assert_eq!(header, ["t_ns", "ReG1", "ImG1", "G2", "ep", "is_pe", "ep_envelope"]);
    assert_eq!(rows[0][..6], ["0", "1", "0", "3", "0", "false"]);
    let sidecar: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("inv.windows.json")).unwrap()).unwrap();
    assert_eq!(sidecar["echo"], true);
    let windows = sidecar["windows_ns"].as_array().unwrap();
    assert!(windows.iter().any(|w| w[0].as_f64().unwrap() <= 615.7 && 615.7 <= w[1].as_f64().unwrap()));
}

#[test]
fn unechoed_entangling_power_matches_envelope() {
    let dir = TempDir::new().unwrap();
    let mut cfg = with_sweep(bundled(), 1000.0, 21);
    cfg["echo"] = false.into();
    let config = write_config(&dir, &cfg);
    let out = dir.path().join("inv.csv");
    assert!(run("invariants", &config, &out, &[]).status.success());
    let (_, rows) = csv_rows(&out);
    for r in rows {
        assert!((num(&r[4]) - num(&r[6])).abs() < 1e-11, "{r:?}");
    }
}

#[test]
fn echo_flag_overrides_config() {
    let dir = TempDir::new().unwrap();
    let mut cfg = with_sweep(bundled(), 600.0, 3);
    cfg["echo"] = false.into();
    let config = write_config(&dir, &cfg);
    let plain = dir.path().join("plain.csv");
    let echoed = dir.path().join("echo.csv");
    assert!(run("invariants", &config, &plain, &[]).status.success());
    assert!(run("invariants", &config, &echoed, &["--echo"]).status.success());
    assert_ne!(std::fs::read(&plain).unwrap(), std::fs::read(&echoed).unwrap());
    let sidecar = std::fs::read_to_string(dir.path().join("echo.windows.json")).unwrap();
    assert!(sidecar.contains("\"echo\": true"));
}

#[test]
fn tomography_reaches_cphase_class() {
    let dir = TempDir::new().unwrap();
    let config = write_config(&dir, &bundled());
    let out = dir.path().join("tomo.json");
    let o = run("tomography", &config, &out, &["--target", "cphase"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!((r["t_ns"].as_f64().unwrap() - 615.7).abs() < 1e-9);
    assert!(r["fidelity"].as_f64().unwrap() >= 0.985);
    assert_eq!(r["chi_re"].as_array().unwrap().len(), 16);
    assert_eq!(r["local_rotations"].as_array().unwrap().len(), 4);
    assert!((r["chi_checks"]["trace"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    assert!(r["chi_checks"]["min_eigenvalue"].as_f64().unwrap() > -1e-9);
    assert_eq!(r["basis_order"][1], "IX");
}

#[test]
fn tomography_is_deterministic_per_seed() {
    let dir = TempDir::new().unwrap();
    let config = write_config(&dir, &bundled());
    let outs: Vec<_> = (0..2)
        .map(|k| {
            let out = dir.path().join(format!("tomo{k}.json"));
            let o = run("tomography", &config, &out, &["--seed", "7", "--time-ns", "300", "--target", "iswap"]);
            assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
            std::fs::read(out).unwrap()
        })
        .collect();
    assert_eq!(outs[0], outs[1]);
}

#[test]
fn regime_margins() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("regime.json");
    let config = write_config(&dir, &bundled());
    assert!(run("regime", &config, &out, &[]).status.success());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    for (k, v) in r["margins"].as_object().unwrap() {
        if k.starts_with("omega_over") {
            assert!(v.as_f64().unwrap() >= 10.0, "{k}");
        }
    }

    let mut uncoupled = bundled();
    uncoupled["system"]["alpha_over_2pi_MHz"] = 0.0.into();
    let config = write_config(&dir, &uncoupled);
    assert!(run("regime", &config, &out, &[]).status.success());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(r["margins"]["omega_over_coupling_q1"].as_f64().unwrap(), f64::MAX);

    let mut detuned = bundled();
    detuned["system"]["omega1_over_2pi_MHz"] = 1400.0.into();
    detuned["system"]["omega2_over_2pi_MHz"] = 1400.0.into();
    let config = write_config(&dir, &detuned);
    assert!(run("regime", &config, &out, &[]).status.success());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(r["valid"]["omega_over_detuning_q1"], false);
}

#[test]
fn config_errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("x.csv");

    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, BUNDLED.replacen("266.4", "266.4,,", 1)).unwrap();
    let o = run("overlap", &broken, &out, &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line"));

    let mut cfg = bundled();
    cfg["sweep"]["n_points"] = 1.into();
    let o = run("overlap", &write_config(&dir, &cfg), &out, &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("sweep.n_points"));

    let mut cfg = bundled();
    cfg["integrator"]["dt_ns"] = 0.5.into();
    let o = run("overlap", &write_config(&dir, &cfg), &out, &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("integrator.dt_ns"));

    let o = run("regime", &dir.path().join("missing.json"), &out, &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!out.exists());
}

#[test]
fn unknown_subcommand_is_rejected() {
    let o = bin().arg("spectrum").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}
