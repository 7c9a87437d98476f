//! End-to-end behavior of the `mmwave` binary: exit codes, file handling
//! and output shapes.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mmwave"))
}

fn workdir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("mmwave-cli-{}-{tag}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write_file(dir: &Path, name: &str, contents: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

const UNIT_RELAXED: &str = r#"{
  "model": "relaxed",
  "parameters": { "mu_e": 1.0, "lambda_e": 1.0, "mu_micro": 1.0,
                  "lambda_micro": 1.0, "mu_c": 1.0, "l_c": 1.0,
                  "rho": 1.0, "eta": 1.0 }
}"#;

const COSSERAT_COUNTEREXAMPLE: &str = r#"{
  "model": "cosserat",
  "parameters": { "mu_macro": 1.0, "lambda_macro": 0.0, "mu_c": -0.5,
                  "l_c": 1.0, "rho": 1.0, "eta": 1.0 }
}"#;

const CAUCHY: &str = r#"{
  "model": "cauchy",
  "parameters": { "mu_macro": 0.5, "lambda_macro": 0.5, "rho": 1.0 }
}"#;

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn check_passes_on_unit_params() {
    let dir = workdir("check-unit");
    let file = write_file(&dir, "unit.json", UNIT_RELAXED);
    let out = bin().args(["check"]).arg(&file).args(["--set", "proposition"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("set proposition: PASS"));
}

#[test]
fn check_separates_ellipticity_from_real_waves() {
    let dir = workdir("check-cosserat");
    let file = write_file(&dir, "cosserat.json", COSSERAT_COUNTEREXAMPLE);
    let ok = bin()
        .args(["check"])
        .arg(&file)
        .args(["--set", "micropolar-ellipticity"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0), "{}", stdout(&ok));
    let fail = bin()
        .args(["check"])
        .arg(&file)
        .args(["--set", "cosserat-real-waves"])
        .output()
        .unwrap();
    assert_eq!(fail.status.code(), Some(1));
    assert!(stdout(&fail).contains("VIOLATED"));
    assert!(stdout(&fail).contains("mu_c >= 0"));
}

#[test]
fn check_rejects_malformed_input() {
    let dir = workdir("check-bad");
    // Missing eta.
    let text = UNIT_RELAXED.replace("\"eta\": 1.0", "\"zeta\": 1.0");
    let file = write_file(&dir, "bad.json", &text);
    let out = bin().args(["check"]).arg(&file).args(["--all"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    // Unknown set name.
    let good = write_file(&dir, "good.json", UNIT_RELAXED);
    let out = bin().args(["check"]).arg(&good).args(["--set", "bogus"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    // Relaxed-only set on a Cauchy file.
    let cauchy = write_file(&dir, "cauchy.json", CAUCHY);
    let out = bin().args(["check"]).arg(&cauchy).args(["--set", "proposition"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_writes_full_branch_set() {
    let dir = workdir("sweep-relaxed");
    let file = write_file(&dir, "unit.json", UNIT_RELAXED);
    let csv = dir.join("out.csv");
    let svg = dir.join("out.svg");
    let out = bin()
        .args(["sweep"])
        .arg(&file)
        .args(["--kmax", "10", "--samples", "200", "--out"])
        .arg(&csv)
        .arg("--svg")
        .arg(&svg)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));

    let text = std::fs::read_to_string(&csv).unwrap();
    let rows: Vec<&str> = text.lines().skip(1).filter(|l| !l.is_empty()).collect();
    // 12 degrees of freedom x 200 samples.
    assert_eq!(rows.len(), 12 * 200);
    let labels: std::collections::BTreeSet<&str> =
        rows.iter().map(|r| r.split(',').nth(1).unwrap()).collect();
    assert_eq!(labels.len(), 9);
    // Transverse branches are doubled.
    assert_eq!(rows.iter().filter(|r| r.split(',').nth(1) == Some("TA")).count(), 400);
    assert_eq!(rows.iter().filter(|r| r.split(',').nth(1) == Some("LA")).count(), 200);
    // All samples of a definite parameter set are real.
    assert!(rows.iter().all(|r| r.ends_with(",real")));

    // Round-trip through the parser reproduces the file byte-for-byte.
    let parsed = mmwave_cli::csvio::parse(&text).unwrap();
    assert_eq!(mmwave_cli::csvio::emit(&parsed), text);

    let svg_text = std::fs::read_to_string(&svg).unwrap();
    assert!(svg_text.starts_with("<svg"));
}

#[test]
fn sweep_cauchy_has_two_labels_and_straight_lines() {
    let dir = workdir("sweep-cauchy");
    let file = write_file(&dir, "cauchy.json", CAUCHY);
    let csv = dir.join("out.csv");
    let out = bin()
        .args(["sweep"])
        .arg(&file)
        .args(["--kmax", "4", "--samples", "50", "--out"])
        .arg(&csv)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&csv).unwrap();
    let branches = mmwave_cli::csvio::parse(&text).unwrap();
    assert_eq!(branches.len(), 2);
    for b in &branches {
        let c = match b.label.id() {
            "cauchy-P" => 1.5f64.sqrt(),
            "cauchy-S" => 0.5f64.sqrt(),
            other => panic!("unexpected label {other}"),
        };
        for s in &b.samples {
            let w = s.omega.real().unwrap();
            assert!((w - c * s.k).abs() <= 1e-12 * (1.0 + s.k));
        }
    }
}

#[test]
fn sweep_rejects_single_sample() {
    let dir = workdir("sweep-bad");
    let file = write_file(&dir, "unit.json", UNIT_RELAXED);
    let out = bin()
        .args(["sweep"])
        .arg(&file)
        .args(["--samples", "1", "--out"])
        .arg(dir.join("x.csv"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_uses_file_section_defaults() {
    let dir = workdir("sweep-defaults");
    let text = UNIT_RELAXED.replace(
        "}\n}",
        "},\n  \"sweep\": { \"k_max\": 2.0, \"samples\": 17 }\n}",
    );
    let file = write_file(&dir, "unit.json", &text);
    let csv = dir.join("out.csv");
    let out = bin().args(["sweep"]).arg(&file).arg("--out").arg(&csv).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let parsed =
        mmwave_cli::csvio::parse(&std::fs::read_to_string(&csv).unwrap()).unwrap();
    assert_eq!(parsed[0].samples.len(), 17);
    assert_eq!(parsed[0].samples.last().unwrap().k, 2.0);
}

#[test]
fn sweep_marks_imaginary_samples() {
    let dir = workdir("sweep-imaginary");
    let file = write_file(&dir, "cosserat.json", COSSERAT_COUNTEREXAMPLE);
    let csv = dir.join("out.csv");
    let out = bin()
        .args(["sweep"])
        .arg(&file)
        .args(["--kmax", "2", "--samples", "50", "--out"])
        .arg(&csv)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.contains(",imaginary"));
}

#[test]
fn acoustic12_along_e1_reports_block_equivalence() {
    let dir = workdir("a12-e1");
    let file = write_file(&dir, "unit.json", UNIT_RELAXED);
    let out = bin()
        .args(["acoustic12"])
        .arg(&file)
        .args(["--direction", "1,0,0", "--k", "1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("block-equivalence: PASS"));
    assert_eq!(text.matches("\n  [").count(), 12);
}

#[test]
fn acoustic12_normalizes_and_matches_e1_spectrum() {
    let dir = workdir("a12-dir");
    let file = write_file(&dir, "unit.json", UNIT_RELAXED);
    let parse_spectrum = |text: &str| -> Vec<f64> {
        text.lines()
            .filter(|l| l.trim_start().starts_with('['))
            .map(|l| l.rsplit(' ').next().unwrap().parse().unwrap())
            .collect()
    };
    let e1 = bin()
        .args(["acoustic12"])
        .arg(&file)
        .args(["--direction", "1,0,0", "--k", "1"])
        .output()
        .unwrap();
    let oblique = bin()
        .args(["acoustic12"])
        .arg(&file)
        .args(["--direction", "1,2,2", "--k", "1"])
        .output()
        .unwrap();
    assert!(stdout(&oblique).contains("note: direction normalized"));
    let a = parse_spectrum(&stdout(&e1));
    let b = parse_spectrum(&stdout(&oblique));
    assert_eq!(a.len(), 12);
    for (x, y) in a.iter().zip(&b) {
        assert!((x - y).abs() <= 1e-8, "{x} vs {y}");
    }
}

#[test]
fn acoustic12_rejects_zero_direction_and_wrong_model() {
    let dir = workdir("a12-bad");
    let file = write_file(&dir, "unit.json", UNIT_RELAXED);
    let out = bin()
        .args(["acoustic12"])
        .arg(&file)
        .args(["--direction", "0,0,0", "--k", "1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let cauchy = write_file(&dir, "cauchy.json", CAUCHY);
    let out = bin()
        .args(["acoustic12"])
        .arg(&cauchy)
        .args(["--direction", "1,0,0", "--k", "1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_rejects_zero_trials() {
    let out = bin().args(["verify", "--trials", "0"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_output_is_byte_identical_across_runs() {
    let dir = workdir("sweep-determinism");
    let file = write_file(&dir, "unit.json", UNIT_RELAXED);
    let mut bytes = Vec::new();
    for name in ["a.csv", "b.csv"] {
        let csv = dir.join(name);
        let out = bin()
            .args(["sweep"])
            .arg(&file)
            .args(["--kmax", "10", "--samples", "120", "--out"])
            .arg(&csv)
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0));
        bytes.push(std::fs::read(&csv).unwrap());
    }
    assert_eq!(bytes[0], bytes[1]);
}

#[test]
fn check_lists_known_sets() {
    let dir = workdir("list-sets");
    let file = write_file(&dir, "unit.json", UNIT_RELAXED);
    let out = bin().args(["check"]).arg(&file).arg("--list-sets").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for id in [
        "positive-definite",
        "proposition",
        "reduced",
        "macro-limit",
        "cauchy-positive-definite",
        "cauchy-ellipticity",
        "cosserat-positive-definite",
        "cosserat-real-waves",
        "micropolar-ellipticity",
    ] {
        assert!(text.lines().any(|l| l == id), "missing {id}");
    }
}

#[test]
fn derive_prints_macroscopic_moduli() {
    let dir = workdir("derive");
    let file = write_file(&dir, "unit.json", UNIT_RELAXED);
    let out = bin().args(["derive"]).arg(&file).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("mu_macro     = 0.5"));
    assert!(text.contains("omega_p  = 3.1622776601683795"));
    // Indefinite coupling turns omega_r into an undefined marker.
    let indef = write_file(
        &dir,
        "indef.json",
        &UNIT_RELAXED.replace("\"mu_c\": 1.0", "\"mu_c\": -1.0"),
    );
    let out = bin().args(["derive"]).arg(&indef).output().unwrap();
    assert!(stdout(&out).contains("omega_r  = undefined (squared = -2)"));
}
