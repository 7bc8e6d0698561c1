use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use adft_core::adft32::Adft32;
use adft_core::io;
use tempfile::TempDir;

fn adft(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_adft"))
        .args(args)
        .env_remove("ADFT_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn adft_in(dir: &Path, args: &[&str]) -> Output {
    let mut full = vec!["--out", dir.to_str().unwrap()];
    full.extend_from_slice(args);
    adft(&full)
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn files(dir: &Path) -> Vec<String> {
    let mut v: Vec<String> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    v.sort();
    v
}

#[test]
fn factors_round_trip_to_the_same_transform() {
    let dir = TempDir::new().unwrap();
    let o = adft_in(
        dir.path(),
        &["gen-matrix", "--variant", "alg1", "--what", "factors"],
    );
    assert!(o.status.success());
    let names: Vec<String> = (0..8).map(|k| format!("W{k}.csv")).collect();
    assert_eq!(files(dir.path()), names);

    let factors = (0..8)
        .map(|k| {
            let f = fs::File::open(dir.path().join(format!("W{k}.csv"))).unwrap();
            io::read_factor(f, &format!("W{k}"), 32).unwrap()
        })
        .collect();
    let rebuilt = Adft32::from_factors(factors).unwrap();
    let diff = rebuilt
        .matrix()
        .max_abs_diff(&Adft32::standard().matrix())
        .unwrap();
    assert_eq!(diff, 0.0);
}

#[test]
fn exact_dense_matrix_is_unitary_when_read_back() {
    let dir = TempDir::new().unwrap();
    let o = adft_in(
        dir.path(),
        &["gen-matrix", "--variant", "exact", "--what", "dense"],
    );
    assert!(o.status.success());
    assert_eq!(files(dir.path()), vec!["exact_1024.csv"]);
    let m = io::read_matrix(
        fs::File::open(dir.path().join("exact_1024.csv")).unwrap(),
        1024,
    )
    .unwrap();
    assert!(m.unitarity_error() < 1e-10);
}

#[test]
fn invalid_variant_is_a_usage_error() {
    let o = adft(&["gen-matrix", "--variant", "alg9"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(
        err.contains("invalid value 'alg9'") && err.contains("--help"),
        "{err}"
    );
}

#[test]
fn verify_passes_and_detects_corruption() {
    let o = adft(&["verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));

    let o = adft(&["verify", "--corrupt-w7"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL adft32 adds: 350 adds"));
}

#[test]
fn verify_only_runs_selected_groups() {
    let o = adft(&["verify", "--only", "counts"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 2);
    assert!(out.lines().all(|l| l.starts_with("PASS adft32")));
}

#[test]
fn complexity_reports_every_variant() {
    let dir = TempDir::new().unwrap();
    let o = adft_in(dir.path(), &["complexity", "--model", "paper"]);
    assert!(o.status.success());
    let reports: Vec<serde_json::Value> = stdout(&o)
        .lines()
        .filter(|l| l.starts_with('{'))
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(reports.len(), 4);
    let alg1 = reports.iter().find(|r| r["variant"] == "alg1").unwrap();
    assert_eq!(alg1["real_mults"], 2883);
    assert_eq!(alg1["real_adds"], 25155);
    assert_eq!(alg1["convention"]["complex_mult_scheme"], "Paper_3M3A");

    let saved = fs::read_to_string(dir.path().join("complexity_Paper_3M3A.jsonl")).unwrap();
    assert_eq!(
        saved,
        stdout(&o)
            .lines()
            .filter(|l| l.starts_with('{'))
            .map(|l| format!("{l}\n"))
            .collect::<String>()
    );
    let circuits = fs::read_to_string(dir.path().join("circuits.jsonl")).unwrap();
    assert_eq!(circuits.lines().count(), 4);

    let o = adft_in(dir.path(), &["complexity", "--model", "gauss"]);
    let alg1 = stdout(&o)
        .lines()
        .find(|l| l.contains(r#""variant":"alg1""#))
        .unwrap()
        .to_string();
    let first: serde_json::Value = serde_json::from_str(&alg1).unwrap();
    assert_eq!(first["real_adds"], 27077);
}

#[test]
fn snr_is_deterministic() {
    let a = TempDir::new().unwrap();
    let b = TempDir::new().unwrap();
    let args = [
        "snr",
        "--variant",
        "alg1",
        "--replicates",
        "10000",
        "--seed",
        "7",
        "--bins",
        "0,66,512",
    ];
    assert!(adft_in(a.path(), &args).status.success());
    assert!(adft_in(b.path(), &args).status.success());
    let fa = fs::read(a.path().join("snr_alg1.csv")).unwrap();
    let fb = fs::read(b.path().join("snr_alg1.csv")).unwrap();
    assert_eq!(fa, fb);
    let rows = io::read_snr(fa.as_slice()).unwrap();
    assert_eq!(
        rows.iter().map(|r| r.bin).collect::<Vec<_>>(),
        vec![0, 66, 512]
    );
    assert!(rows.iter().all(|r| (r.snr_exact_db - 30.1).abs() < 0.3));
}

#[test]
fn snr_rejects_bad_arguments() {
    let dir = TempDir::new().unwrap();
    let o = adft_in(dir.path(), &["snr", "--bins", "1024"]);
    assert_eq!(o.status.code(), Some(2));
    let o = adft_in(dir.path(), &["snr", "--bins", "3", "--replicates", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = adft_in(dir.path(), &["snr", "--bins", "3", "--sample", "4"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn beams_write_one_file_per_bin() {
    let dir = TempDir::new().unwrap();
    let o = adft_in(
        dir.path(),
        &[
            "beams",
            "--variant",
            "alg3",
            "--bins",
            "200,201,202,203",
            "--angles",
            "512",
        ],
    );
    assert!(o.status.success());
    let names = files(dir.path());
    assert_eq!(
        names,
        (200..204)
            .map(|k| format!("beam_alg3_{k}.csv"))
            .collect::<Vec<_>>()
    );
    let rows =
        io::read_beam(fs::File::open(dir.path().join("beam_alg3_201.csv")).unwrap()).unwrap();
    assert_eq!(rows.len(), 512);
    assert!(rows
        .iter()
        .all(|r| (r.gain_abs - r.gain_re.hypot(r.gain_im)).abs() < 1e-12));
}

#[test]
fn filterbank_csv_and_json() {
    let dir = TempDir::new().unwrap();
    let o = adft_in(
        dir.path(),
        &["filterbank", "--variant", "alg2", "--grid", "1024"],
    );
    assert!(o.status.success());
    let rows =
        io::read_error_stats(fs::File::open(dir.path().join("filterbank_alg2.csv")).unwrap())
            .unwrap();
    assert_eq!(rows.len(), 1024);
    assert!(rows
        .iter()
        .all(|r| r.lower <= r.q1 && r.q1 <= r.q2 && r.q2 <= r.q3 && r.q3 <= r.upper));
    let summary: serde_json::Value = serde_json::from_str(
        &fs::read_to_string(dir.path().join("filterbank_alg2_summary.json")).unwrap(),
    )
    .unwrap();
    assert!(summary["max_db"].as_f64().unwrap() < 0.0);

    let o = adft_in(
        dir.path(),
        &[
            "--format",
            "json",
            "filterbank",
            "--variant",
            "exact",
            "--grid",
            "256",
        ],
    );
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(
        &fs::read_to_string(dir.path().join("filterbank_exact.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(v.as_array().unwrap().len(), 256);
    assert_eq!(v[0]["upper"], -60.0);
}

#[test]
fn config_file_and_environment() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("run.conf");
    let out = dir.path().join("from-config");
    fs::write(
        &cfg,
        format!("# test run\nvariant = alg2\nout_dir = {}\n", out.display()),
    )
    .unwrap();
    let o = adft(&[
        "--config",
        cfg.to_str().unwrap(),
        "beams",
        "--bins",
        "3",
        "--angles",
        "16",
    ]);
    assert!(o.status.success());
    assert_eq!(files(&out), vec!["beam_alg2_3.csv"]);

    fs::write(&cfg, "colour = red\n").unwrap();
    let o = adft(&["--config", cfg.to_str().unwrap(), "verify"]);
    assert_eq!(o.status.code(), Some(2));

    let env_out = dir.path().join("from-env");
    let o = Command::new(env!("CARGO_BIN_EXE_adft"))
        .args(["beams", "--bins", "9", "--angles", "8"])
        .env("ADFT_OUT_DIR", &env_out)
        .output()
        .unwrap();
    assert!(o.status.success());
    assert_eq!(files(&env_out), vec!["beam_alg1_9.csv"]);
}

#[test]
fn unwritable_output_fails() {
    let dir = TempDir::new().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, "x").unwrap();
    let o = adft_in(&blocker.join("sub"), &["complexity"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!String::from_utf8_lossy(&o.stderr).is_empty());
}
