// Copyright 2026 The qudisim Authors
// SPDX-License-Identifier: Apache-2.0

mod common;

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use qudisim::circuit::Circuit;
use qudisim::ppm::{write_ppm, PpmFormat};
use qudisim::sim::ShotHistogram;
use tempfile::TempDir;

use common::{demo_image, random_image, rng};

fn qudisim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qudisim")).args(args).env_remove("QUDISIM_SEED").output().unwrap()
}

fn ok(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

struct Dir(TempDir);

impl Dir {
    fn new() -> Self {
        Dir(tempfile::tempdir().unwrap())
    }

    fn path(&self, name: &str) -> PathBuf {
        self.0.path().join(name)
    }

    fn s(&self, name: &str) -> String {
        self.path(name).to_str().unwrap().to_string()
    }
}

fn write_image(path: &Path, format: PpmFormat) -> Vec<u8> {
    let bytes = write_ppm(&demo_image(), format);
    std::fs::write(path, &bytes).unwrap();
    bytes
}

#[test]
fn encode_reports_register_and_counts() {
    let d = Dir::new();
    write_image(&d.path("in.ppm"), PpmFormat::Binary);
    let text = ok(&qudisim(&["encode", &d.s("in.ppm"), "-o", &d.s("c.json")]));
    assert!(text.contains("wires: 9 (9 before ancillas)"), "{text}");
    assert!(text.contains("elementary_gates: unlowered"));
    assert!(text.contains("table1_bound: 1623"));
    let c = Circuit::from_json(&std::fs::read_to_string(d.path("c.json")).unwrap()).unwrap();
    assert_eq!(c.spec().len(), 9);

    let text = ok(&qudisim(&["encode", &d.s("in.ppm"), "-o", &d.s("l.json"), "--strategy", "ancilla-chain"]));
    assert!(text.contains("wires: 11 (9 before ancillas)"), "{text}");
    assert!(text.contains("elementary_gates: 805"), "{text}");
}

#[test]
fn four_by_four_uses_four_position_qubits() {
    let d = Dir::new();
    let img = random_image(&mut rng(4), 4, 4);
    std::fs::write(d.path("in.ppm"), write_ppm(&img, PpmFormat::Ascii)).unwrap();
    ok(&qudisim(&["encode", &d.s("in.ppm"), "-o", &d.s("c.json")]));
    let c = Circuit::from_json(&std::fs::read_to_string(d.path("c.json")).unwrap()).unwrap();
    assert_eq!(c.spec().dims()[7..], [2, 2, 2, 2]);
}

#[test]
fn bad_dims_exit_2() {
    let d = Dir::new();
    std::fs::write(d.path("in.ppm"), format!("P3\n5 5\n255\n{}", "1 2 3\n".repeat(25))).unwrap();
    let out = qudisim(&["encode", &d.s("in.ppm"), "-o", &d.s("c.json")]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("3^m x 2^n") && err.contains("2^m x 2^n") && err.contains("3^m x 3^n"), "{err}");

    let out = qudisim(&["encode", &d.s("missing.ppm"), "-o", &d.s("c.json")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn inapplicable_strategy_exit_3() {
    let d = Dir::new();
    write_image(&d.path("in.ppm"), PpmFormat::Binary);
    let out = qudisim(&["encode", &d.s("in.ppm"), "-o", &d.s("c.json"), "--strategy", "qubit-ancilla"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn noise_on_unlowered_circuit_exit_3() {
    let d = Dir::new();
    write_image(&d.path("in.ppm"), PpmFormat::Binary);
    ok(&qudisim(&["encode", &d.s("in.ppm"), "-o", &d.s("c.json")]));
    let out = qudisim(&["simulate", &d.s("c.json"), "-o", &d.s("h.csv"), "--noise-l1", "1e-4", "--noise-l2", "1e-4"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn noiseless_round_trip_is_byte_identical() {
    let d = Dir::new();
    for (format, flag) in [(PpmFormat::Binary, None), (PpmFormat::Ascii, Some("--ascii"))] {
        let original = write_image(&d.path("in.ppm"), format);
        ok(&qudisim(&["encode", &d.s("in.ppm"), "-o", &d.s("c.json")]));
        ok(&qudisim(&["simulate", &d.s("c.json"), "-o", &d.s("h.csv"), "--shots", "5000", "--seed", "3"]));
        let hist = ShotHistogram::from_csv(&std::fs::read_to_string(d.path("h.csv")).unwrap()).unwrap();
        assert_eq!(hist.len(), 18);
        let mut args = vec!["decode".to_string(), d.s("h.csv"), "-o".into(), d.s("out.ppm"), "--dims".into(), "3x2".into()];
        args.extend(flag.map(String::from));
        ok(&qudisim(&args.iter().map(String::as_str).collect::<Vec<_>>()));
        assert_eq!(std::fs::read(d.path("out.ppm")).unwrap(), original);
        let diag: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(d.path("out.json")).unwrap()).unwrap();
        assert_eq!(diag["spurious_mass"], 0.0);
        assert_eq!(diag["threshold"], 27);
    }
}

#[test]
fn decode_accepts_height_and_width() {
    let d = Dir::new();
    let original = write_image(&d.path("in.ppm"), PpmFormat::Binary);
    ok(&qudisim(&["encode", &d.s("in.ppm"), "-o", &d.s("c.json"), "--compress", "--compress-report", &d.s("r.csv")]));
    assert!(std::fs::read_to_string(d.path("r.csv")).unwrap().starts_with("channel,trit,value,positions,terms,toffolis\n"));
    ok(&qudisim(&["simulate", &d.s("c.json"), "-o", &d.s("h.csv"), "--threads", "2"]));
    ok(&qudisim(&["decode", &d.s("h.csv"), "-o", &d.s("out.ppm"), "--height", "3", "--width", "2", "--diagnostics", &d.s("diag.json")]));
    assert_eq!(std::fs::read(d.path("out.ppm")).unwrap(), original);
    assert!(d.path("diag.json").exists());
}

#[test]
fn truncated_histogram_exit_4() {
    let d = Dir::new();
    write_image(&d.path("in.ppm"), PpmFormat::Binary);
    ok(&qudisim(&["encode", &d.s("in.ppm"), "-o", &d.s("c.json")]));
    ok(&qudisim(&["simulate", &d.s("c.json"), "-o", &d.s("h.csv")]));
    let text = std::fs::read_to_string(d.path("h.csv")).unwrap();
    let truncated: String = text.lines().take(10).map(|l| format!("{l}\n")).collect();
    std::fs::write(d.path("t.csv"), truncated).unwrap();
    let out = qudisim(&["decode", &d.s("t.csv"), "-o", &d.s("out.ppm"), "--dims", "3x2"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(!d.path("out.ppm").exists());
    assert!(d.path("out.json").exists());
}

#[test]
fn noisy_low_strength_decodes_with_spurious_mass() {
    let d = Dir::new();
    let original = write_image(&d.path("in.ppm"), PpmFormat::Binary);
    ok(&qudisim(&["encode", &d.s("in.ppm"), "-o", &d.s("c.json"), "--strategy", "ancilla-chain"]));
    ok(&qudisim(&["simulate", &d.s("c.json"), "-o", &d.s("h.csv"), "--noise-l1", "1e-4", "--noise-l2", "1e-4"]));
    ok(&qudisim(&["decode", &d.s("h.csv"), "-o", &d.s("out.ppm"), "--dims", "3x2"]));
    assert_eq!(std::fs::read(d.path("out.ppm")).unwrap(), original);
    let diag: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(d.path("out.json")).unwrap()).unwrap();
    assert!(diag["spurious_mass"].as_f64().unwrap() > 0.0);
}

#[test]
fn simulate_is_deterministic_across_threads_and_env_seed() {
    let d = Dir::new();
    write_image(&d.path("in.ppm"), PpmFormat::Binary);
    ok(&qudisim(&["encode", &d.s("in.ppm"), "-o", &d.s("c.json"), "--strategy", "effective-qutrit"]));
    let noise = ["--noise-l1", "1e-3", "--noise-l2", "1e-3", "--shots", "2000"];
    let run = |name: &str, extra: &[&str]| {
        let mut args = vec!["simulate", &d.s("c.json") as &str, "-o"].into_iter().map(String::from).collect::<Vec<_>>();
        args.push(d.s(name));
        args.extend(noise.iter().chain(extra).map(|s| s.to_string()));
        ok(&qudisim(&args.iter().map(String::as_str).collect::<Vec<_>>()));
        std::fs::read(d.path(name)).unwrap()
    };
    let one = run("a.csv", &["--threads", "1", "--seed", "7"]);
    let four = run("b.csv", &["--threads", "4", "--seed", "7"]);
    assert_eq!(one, four);
    let out = Command::new(env!("CARGO_BIN_EXE_qudisim"))
        .args(["simulate", &d.s("c.json"), "-o", &d.s("e.csv")])
        .args(noise)
        .env("QUDISIM_SEED", "7")
        .output()
        .unwrap();
    ok(&out);
    assert_eq!(std::fs::read(d.path("e.csv")).unwrap(), one);
}

#[test]
fn ops_route_through_image_operations() {
    let d = Dir::new();
    write_image(&d.path("in.ppm"), PpmFormat::Binary);
    ok(&qudisim(&["encode", &d.s("in.ppm"), "-o", &d.s("c.json"), "--ops", "swap=RG,invert=R"]));
    ok(&qudisim(&["simulate", &d.s("c.json"), "-o", &d.s("h.csv")]));
    ok(&qudisim(&["decode", &d.s("h.csv"), "-o", &d.s("out.ppm"), "--dims", "3x2"]));
    let got = qudisim::ppm::parse_ppm(&std::fs::read(d.path("out.ppm")).unwrap()).unwrap();
    for (y, x, p) in demo_image().iter() {
        assert_eq!(got.pixel(y, x), [255 - p[1], p[0], p[2]]);
    }
    let out = qudisim(&["encode", &d.s("in.ppm"), "-o", &d.s("c.json"), "--ops", "blur=R"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn report_values() {
    let text = ok(&qudisim(&["report", "--m", "1", "--n", "1"]));
    assert!(text.contains("HQDQR,1623\n"));
    assert!(text.contains("MCQI,352\n"));
    assert!(text.contains("NCQI,2\n"));
    let text = ok(&qudisim(&["report", "--m", "0", "--n", "0"]));
    assert!(text.contains("HQDQR,55\n"));
}
