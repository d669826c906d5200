//! End-to-end tests of the `acausal` binary: exit codes, output schemas,
//! and byte-level determinism of the CSV artifacts.

#![allow(clippy::excessive_precision)]

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_acausal"))
}

fn run_ok(args: &[&str]) -> String {
    let out = bin().args(args).output().expect("binary runs");
    assert!(
        out.status.success(),
        "expected success for {args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8 stdout")
}

fn run_expect_code(args: &[&str], code: i32) -> Output {
    let out = bin().args(args).output().expect("binary runs");
    assert_eq!(
        out.status.code(),
        Some(code),
        "args {args:?}, stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

#[test]
fn beta_matches_the_quoted_value() {
    let stdout = run_ok(&["tline", "beta", "--n", "1", "--r-ohms", "50"]);
    let value: f64 = stdout
        .trim()
        .strip_prefix("beta=")
        .expect("beta= prefix")
        .parse()
        .expect("float");
    assert!((value - 0.0038740451211294058).abs() < 1e-15);
}

#[test]
fn unknown_subcommand_exits_2() {
    run_expect_code(&["frobnicate"], 2);
}

#[test]
fn bad_sweep_bounds_exit_2() {
    let out = run_expect_code(
        &[
            "tline",
            "sweep",
            "--n",
            "1",
            "--r-ohms",
            "50",
            "--a",
            "1",
            "--b-min",
            "100",
            "--b-max",
            "10",
            "--points",
            "5",
            "--out",
            "/dev/null",
        ],
        2,
    );
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("BadSweep"), "stderr: {stderr}");
}

#[test]
fn on_cone_propagator_exits_1_naming_the_operation() {
    let out = run_expect_code(&["propagator", "--r", "1", "--ct", "1"], 1);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("offcone_im"), "stderr: {stderr}");
}

#[test]
fn constants_lists_the_vacuum_impedance() {
    let gaussian = run_ok(&["constants"]);
    assert!(gaussian.contains("r_vac_ps_per_cm=4.1916900439033634e2"));
    let si = run_ok(&["constants", "--system", "si"]);
    assert!(si.contains("r_vac_ohm=3.7673031346177066e2"));
    let natural = run_ok(&["constants", "--system", "natural"]);
    assert!(natural.contains("r_vac_natural=1.0000000000000000e0"));
    run_expect_code(&["constants", "--system", "imperial"], 2);
}

#[test]
fn sweep_is_deterministic_and_thread_count_independent() {
    let dir = tempfile::tempdir().unwrap();
    let out1 = dir.path().join("sweep1.csv");
    let out2 = dir.path().join("sweep2.csv");
    let out3 = dir.path().join("sweep3.csv");
    let base = [
        "tline", "sweep", "--n", "1", "--r-ohms", "50", "--a", "1", "--b-min", "100", "--b-max",
        "10000", "--points", "8",
    ];
    let mut args1: Vec<&str> = base.to_vec();
    args1.extend(["--out", out1.to_str().unwrap()]);
    run_ok(&args1);
    let mut args2: Vec<&str> = base.to_vec();
    args2.extend(["--out", out2.to_str().unwrap()]);
    run_ok(&args2);
    let mut args3: Vec<&str> = base.to_vec();
    args3.extend(["--out", out3.to_str().unwrap(), "--threads", "1"]);
    run_ok(&args3);

    let bytes1 = fs::read(&out1).unwrap();
    assert_eq!(bytes1, fs::read(&out2).unwrap(), "repeat run differs");
    assert_eq!(
        bytes1,
        fs::read(&out3).unwrap(),
        "thread count changed output"
    );

    let text = String::from_utf8(bytes1).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("b,log_p,p,beta_running"));
    // 8 data rows, LF endings, log_p decreasing with b
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 8);
    assert!(!text.contains('\r'));
    let log_ps: Vec<f64> = rows
        .iter()
        .map(|r| r.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert!(
        log_ps.windows(2).all(|w| w[1] < w[0]),
        "log P not decreasing: {log_ps:?}"
    );
}

fn write_cos_signal(path: &Path) {
    let m = 32;
    let dt = 0.5;
    let w0 = 2.0 * std::f64::consts::PI * 4.0 / (m as f64 * dt);
    let mut csv = String::from("t,re,im\n");
    for n in 0..m {
        let t = n as f64 * dt;
        csv.push_str(&format!("{t},{},0.0\n", (w0 * t).cos()));
    }
    fs::write(path, csv).unwrap();
}

#[test]
fn decompose_round_trips_a_cosine_file() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("signal.csv");
    let out1 = dir.path().join("dec1.csv");
    let out2 = dir.path().join("dec2.csv");
    write_cos_signal(&input);

    run_ok(&[
        "decompose",
        "--in",
        input.to_str().unwrap(),
        "--out",
        out1.to_str().unwrap(),
    ]);
    run_ok(&[
        "decompose",
        "--in",
        input.to_str().unwrap(),
        "--out",
        out2.to_str().unwrap(),
    ]);
    assert_eq!(fs::read(&out1).unwrap(), fs::read(&out2).unwrap());

    let text = fs::read_to_string(&out1).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,re_plus,im_plus,re_minus,im_minus"));
    // φ₊ of an on-bin cosine is ½e^{−iω₀t}: at t = 0 that is (0.5, 0)
    let first: Vec<f64> = lines
        .next()
        .unwrap()
        .split(',')
        .map(|f| f.parse().unwrap())
        .collect();
    assert!((first[1] - 0.5).abs() < 1e-12 && first[2].abs() < 1e-12);
    // φ₊ + φ₋ must reconstruct the sample (1.0 at t = 0)
    assert!((first[1] + first[3] - 1.0).abs() < 1e-12);

    let missing = dir.path().join("missing.csv");
    run_expect_code(
        &[
            "decompose",
            "--in",
            missing.to_str().unwrap(),
            "--out",
            out1.to_str().unwrap(),
        ],
        2,
    );
}

const SCENARIO: &str = r#"{
  "grid_n": 8,
  "spacing_cm": 1.25,
  "initial": {
    "type": "gaussian",
    "center_cm": [-1.25, 0.0, 0.0],
    "width_cm": 1.0,
    "polarization": [[0.0, 0.0], [1.0, 0.0], [0.0, 0.0]]
  },
  "final": {
    "type": "gaussian",
    "center_cm": [1.25, 0.0, 0.0],
    "width_cm": 1.0,
    "polarization": [[0.0, 0.0], [1.0, 0.0], [0.0, 0.0]]
  }
}"#;

#[test]
fn overlap_scenario_produces_both_routes() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("scenario.json");
    let out = dir.path().join("result.csv");
    fs::write(&config, SCENARIO).unwrap();

    run_ok(&[
        "overlap",
        "--config",
        config.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    let text = fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("route,re,im,probability"));
    let mom: Vec<&str> = lines.next().unwrap().split(',').collect();
    let pos: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(mom[0], "momentum");
    assert_eq!(pos[0], "position");
    let p_mom: f64 = mom[3].parse().unwrap();
    let p_pos: f64 = pos[3].parse().unwrap();
    assert!(p_mom > 0.0 && p_mom <= 1.0 + 1e-9);
    assert!(p_pos > 0.0, "position-route probability {p_pos}");
}

#[test]
fn overlap_scenario_rejects_unknown_keys() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("bad.json");
    let out = dir.path().join("result.csv");
    let bad = SCENARIO.replace("\"grid_n\": 8,", "\"grid_n\": 8, \"grid_m\": 9,");
    fs::write(&config, bad).unwrap();
    let outcome = run_expect_code(
        &[
            "overlap",
            "--config",
            config.to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
        ],
        2,
    );
    let stderr = String::from_utf8_lossy(&outcome.stderr);
    assert!(
        stderr.contains("grid_m"),
        "stderr should name the unknown key: {stderr}"
    );
}

#[test]
fn coincidence_prints_statistics() {
    let stdout = run_ok(&[
        "coincidence",
        "--a11",
        "0,0",
        "--a22",
        "0,0",
        "--a12",
        "0.5,0",
        "--a21",
        "0.5,0",
    ]);
    assert!(stdout.contains("p_coincidence=1.0000000000000000e0"));
    assert!(stdout.contains("c=1.0000000000000000e0"));
    assert!(stdout.contains("mean_n1=1.0000000000000000e0"));

    // missing amplitudes is a usage error
    run_expect_code(&["coincidence", "--a11", "1,0"], 2);
}

#[test]
fn fringes_oscillate_with_baseline() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fringes.csv");
    run_ok(&[
        "coincidence",
        "fringes",
        "--baseline",
        "100",
        "--wavelength",
        "5e-7",
        "--separation",
        "1e-8",
        "--points",
        "41",
        "--out",
        out.to_str().unwrap(),
    ]);
    let text = fs::read_to_string(&out).unwrap();
    let cs: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(2).unwrap().parse().unwrap())
        .collect();
    assert_eq!(cs.len(), 41);
    let (min, max) = cs
        .iter()
        .fold((f64::MAX, f64::MIN), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    assert!(
        max > 0.6 && min < 0.1,
        "no visible fringes: min {min}, max {max}"
    );
}

#[test]
fn classical_evolution_splits_a_pulse() {
    let dir = tempfile::tempdir().unwrap();
    let profile = dir.path().join("profile.csv");
    let mut csv = String::from("z,v\n");
    let n = 201;
    for i in 0..n {
        let z = -100.0 + i as f64;
        csv.push_str(&format!("{z},{}\n", (-(z / 10.0) * (z / 10.0)).exp()));
    }
    fs::write(&profile, csv).unwrap();

    // u = c for eps = mu = 1; travel 50 cm
    let t = 50.0 / 2.99792458e10;
    let stdout = run_ok(&[
        "tline",
        "classical",
        "--profile",
        profile.to_str().unwrap(),
        "--t",
        &t.to_string(),
    ]);
    let rows: Vec<(f64, f64)> = stdout
        .lines()
        .skip(1)
        .map(|l| {
            let mut it = l.split(',');
            (
                it.next().unwrap().parse().unwrap(),
                it.next().unwrap().parse().unwrap(),
            )
        })
        .collect();
    assert_eq!(rows.len(), n);
    // two half-height peaks near ±50
    let peak_at = |target: f64| -> f64 {
        rows.iter()
            .filter(|(z, _)| (z - target).abs() < 5.0)
            .map(|&(_, v)| v)
            .fold(f64::MIN, f64::max)
    };
    assert!((peak_at(50.0) - 0.5).abs() < 0.01);
    assert!((peak_at(-50.0) - 0.5).abs() < 0.01);
    // original center is down to the overlapping tails
    let center = rows[100].1;
    assert!(center < 0.01, "center value {center}");
}
