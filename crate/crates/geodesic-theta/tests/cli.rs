//! End-to-end checks of the command-line interface: exit codes, the TSV
//! schema, determinism, and the JSON envelope.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_geodesic-theta")
}

fn config(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("configs")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().expect("spawn")
}

#[test]
fn verify_bundled_config_exits_zero() {
    let out = run(&["verify", config("disc14_d3d5.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("order axioms     ok"));
    assert!(text.contains("discriminant     14"));
    assert!(text.contains("level            1"));
}

#[test]
fn verify_rejects_broken_embedding() {
    // corrupt w1 so its square is no longer D1
    let text = std::fs::read_to_string(config("disc14_d3d5.json")).unwrap();
    let bad = text.replace("[\"0\", \"2\", \"1\", \"0\"]", "[\"0\", \"1\", \"1\", \"0\"]");
    let dir = std::env::temp_dir().join("geodesic-theta-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad_embedding.json");
    std::fs::write(&path, bad).unwrap();
    let out = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("embedding square mismatch"), "stderr: {err}");
}

#[test]
fn coeffs_empty_range_and_schema() {
    let out = run(&[
        "coeffs",
        config("disc14_d3d5.json").to_str().unwrap(),
        "--n-max",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text, "n\ta_theta\ta_oracle\tmatch\tcoprime\n");
}

#[test]
fn coeffs_both_matches_and_is_deterministic() {
    let cfg = config("disc14_d3d5.json");
    let args = [
        "coeffs",
        cfg.to_str().unwrap(),
        "--n-max",
        "12",
        "--method",
        "both",
    ];
    let out1 = run(&args);
    let out2 = run(&args);
    assert_eq!(out1.status.code(), Some(0));
    assert_eq!(out1.stdout, out2.stdout, "output must be byte-identical");
    let text = String::from_utf8(out1.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "n\ta_theta\ta_oracle\tmatch\tcoprime");
    let mut seen = 0;
    for (i, line) in lines.enumerate() {
        let cells: Vec<&str> = line.split('\t').collect();
        assert_eq!(cells.len(), 5);
        assert_eq!(cells[0], (i + 1).to_string());
        cells[1].parse::<i64>().unwrap();
        cells[2].parse::<i64>().unwrap();
        assert_eq!(cells[3], "true");
        let n = i as u64 + 1;
        let coprime = num_integer::gcd(n, 14) == 1;
        assert_eq!(cells[4], coprime.to_string());
        seen += 1;
    }
    assert_eq!(seen, 12);
}

#[test]
fn coeffs_single_method_and_json() {
    let out = run(&[
        "coeffs",
        config("disc15_d3d2.json").to_str().unwrap(),
        "--n-max",
        "6",
        "--method",
        "theta",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    for line in text.lines().skip(1) {
        let cells: Vec<&str> = line.split('\t').collect();
        cells[1].parse::<i64>().unwrap();
        assert_eq!(cells[2], "NA");
        assert_eq!(cells[3], "NA");
    }

    let out = run(&[
        "coeffs",
        config("disc15_d3d2.json").to_str().unwrap(),
        "--n-max",
        "6",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(doc["config_hash"].is_string());
    let sign = doc["calibration_sign"].as_i64().unwrap();
    assert!(sign == 1 || sign == -1);
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 6);
    for row in rows {
        assert!(row["match"].as_bool().unwrap());
    }
}

#[test]
fn sign_convention_flip_still_matches_after_calibration() {
    let text = std::fs::read_to_string(config("disc14_d3d5.json")).unwrap();
    let flipped = text.replace("\"sign_convention\": 1", "\"sign_convention\": -1");
    assert_ne!(text, flipped);
    let dir = std::env::temp_dir().join("geodesic-theta-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("flipped_convention.json");
    std::fs::write(&path, flipped).unwrap();

    let base = run(&[
        "coeffs",
        config("disc14_d3d5.json").to_str().unwrap(),
        "--n-max",
        "8",
        "--format",
        "json",
    ]);
    let flip = run(&["coeffs", path.to_str().unwrap(), "--n-max", "8", "--format", "json"]);
    assert_eq!(base.status.code(), Some(0));
    assert_eq!(flip.status.code(), Some(0), "flipped convention must still match");
    let base: serde_json::Value = serde_json::from_slice(&base.stdout).unwrap();
    let flip: serde_json::Value = serde_json::from_slice(&flip.stdout).unwrap();
    assert_eq!(
        base["calibration_sign"].as_i64().unwrap(),
        -flip["calibration_sign"].as_i64().unwrap(),
        "global sign flip moves into the calibration"
    );
    for (rb, rf) in base["rows"]
        .as_array()
        .unwrap()
        .iter()
        .zip(flip["rows"].as_array().unwrap())
    {
        assert_eq!(
            rb["a_theta"].as_i64().unwrap(),
            -rf["a_theta"].as_i64().unwrap()
        );
        assert_eq!(rb["a_oracle"], rf["a_oracle"]);
    }
}

#[test]
fn hilbert_table_regroups_to_theta_column() {
    let cfg = config("disc14_d3d5.json");
    let hil = run(&["hilbert", cfg.to_str().unwrap(), "--trace-max", "8"]);
    assert_eq!(hil.status.code(), Some(0));
    let text = String::from_utf8(hil.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "trace\tbeta\tc");
    let mut totals = std::collections::BTreeMap::new();
    for line in lines {
        let cells: Vec<&str> = line.split('\t').collect();
        assert_eq!(cells.len(), 3);
        let tr: u32 = cells[0].parse().unwrap();
        assert!(cells[1].contains("*sqrt(15)"));
        let c: i64 = cells[2].parse().unwrap();
        *totals.entry(tr).or_insert(0i64) += c;
    }

    let coeffs = run(&[
        "coeffs",
        cfg.to_str().unwrap(),
        "--n-max",
        "8",
        "--method",
        "theta",
    ]);
    let text = String::from_utf8(coeffs.stdout).unwrap();
    for line in text.lines().skip(1) {
        let cells: Vec<&str> = line.split('\t').collect();
        let n: u32 = cells[0].parse().unwrap();
        let a: i64 = cells[1].parse().unwrap();
        assert_eq!(totals.get(&n).copied().unwrap_or(0), a, "trace {n}");
    }
}

#[test]
fn selftest_passes_and_forced_tolerance_fails() {
    let start = std::time::Instant::now();
    let out = run(&["selftest"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(start.elapsed().as_secs() < 30, "selftest exceeded 30 s");
    let out = run(&["selftest", "--tol", "1e-30"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn precision_bits_env_override_is_accepted() {
    let out = Command::new(bin())
        .env("PRECISION_BITS", "256")
        .args(["verify", config("disc14_d3d5.json").to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let out = Command::new(bin())
        .env("PRECISION_BITS", "not-a-number")
        .args(["verify", config("disc14_d3d5.json").to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}
