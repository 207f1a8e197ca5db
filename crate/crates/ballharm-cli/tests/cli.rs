//! End-to-end tests of the `ballharm` binary, including the full
//! verification run.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::time::Instant;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ballharm"))
}

fn tmp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ballharm-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write_cube_off(dir: &Path) -> PathBuf {
    let path = dir.join("cube.off");
    let mut text = String::from("OFF\n8 12 0\n");
    for z in [-1.0, 1.0] {
        for (x, y) in [(-1.0, -1.0), (1.0, -1.0), (1.0, 1.0), (-1.0, 1.0)] {
            text.push_str(&format!("{x} {y} {z}\n"));
        }
    }
    for f in [
        [0, 1, 2],
        [0, 2, 3],
        [4, 6, 5],
        [4, 7, 6],
        [0, 4, 5],
        [0, 5, 1],
        [1, 5, 6],
        [1, 6, 2],
        [2, 6, 7],
        [2, 7, 3],
        [3, 7, 4],
        [3, 4, 0],
    ] {
        text.push_str(&format!("3 {} {} {}\n", f[0], f[1], f[2]));
    }
    std::fs::write(&path, text).unwrap();
    path
}

fn run_ok(cmd: &mut Command) -> Output {
    let out = cmd.output().expect("binary runs");
    assert!(
        out.status.success(),
        "command failed\nstdout: {}\nstderr: {}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

/// The full verification run: every suite passes, exit 0, within budget.
#[test]
fn check_runs_all_criteria_end_to_end() {
    let t0 = Instant::now();
    let out = run_ok(bin().arg("check"));
    let elapsed = t0.elapsed().as_secs_f64();
    let stdout = String::from_utf8_lossy(&out.stdout);
    println!("{stdout}");
    for suite in ballharm::verify::SUITE_NAMES {
        assert!(
            stdout.contains(&format!("[PASS] {suite}")),
            "missing pass line for {suite}:\n{stdout}"
        );
    }
    assert!(stdout.contains("check PASSED"));
    assert!(elapsed <= 900.0, "check took {elapsed:.0}s, budget 900s");
}

#[test]
fn check_suite_filter_runs_one_suite() {
    let out = run_ok(bin().args(["check", "--suite", "pinv"]));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("[PASS] pinv"));
    assert!(!stdout.contains("[PASS] gram"));
}

#[test]
fn check_under_resolved_gram_fails_with_exit_1() {
    let out = bin()
        .args(["check", "--suite", "gram", "--quad", "8,8,8"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("[FAIL] gram"), "{stdout}");
    assert!(stdout.contains("offdiag max"), "{stdout}");
}

#[test]
fn ingest_is_deterministic_and_normalized() {
    let dir = tmp_dir("ingest");
    let cube = write_cube_off(&dir);
    let a = dir.join("a.xyz");
    let b = dir.join("b.xyz");
    for out in [&a, &b] {
        run_ok(bin().args([
            "ingest",
            cube.to_str().unwrap(),
            "--points",
            "400",
            "--seed",
            "9",
            "--output",
            out.to_str().unwrap(),
        ]));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(
        std::fs::read(a.with_extension("json")).unwrap(),
        std::fs::read(b.with_extension("json")).unwrap()
    );
    let sidecar: serde_json::Value =
        serde_json::from_slice(&std::fs::read(a.with_extension("json")).unwrap()).unwrap();
    let max_radius = sidecar["max_radius"].as_f64().unwrap();
    assert!((max_radius - 1.0).abs() < 1e-9);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn missing_input_exits_2_with_message() {
    let out = bin()
        .args(["ingest", "does-not-exist.off"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("no such input"), "{stderr}");
}

#[test]
fn usage_errors_exit_2() {
    let out = bin().arg("frobnicate").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin()
        .args(["check", "--suite", "not-a-suite"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

/// The least-squares path reconstructs a rasterized shape better than the
/// direct path at the reference order.
#[test]
fn moments_reports_lsq_below_direct() {
    let dir = tmp_dir("moments");
    let cube = write_cube_off(&dir);
    let stem = dir.join("cube-m");
    run_ok(bin().args([
        "moments",
        cube.to_str().unwrap(),
        "--output",
        stem.to_str().unwrap(),
        "--quad",
        "32,32,32",
        "--alpha",
        "auto",
        "--pinv-iters",
        "20",
        "--seed",
        "4",
    ]));
    let report: serde_json::Value = serde_json::from_slice(
        &std::fs::read(PathBuf::from(format!("{}.report.json", stem.display()))).unwrap(),
    )
    .unwrap();
    let paths = report["paths"].as_array().unwrap();
    assert_eq!(paths.len(), 2);
    let direct = paths[0]["mean_abs_error"].as_f64().unwrap();
    let lsq = paths[1]["mean_abs_error"].as_f64().unwrap();
    assert!(
        lsq < direct,
        "lsq error {lsq} not below direct error {direct}"
    );
    // both moment files exist and parse
    for suffix in ["direct.json", "lsq.json"] {
        let path = PathBuf::from(format!("{}.{suffix}", stem.display()));
        ballharm::serial::read_moments_json(&path).unwrap();
    }

    // order 0 yields a single-coefficient file
    let stem0 = dir.join("cube-m0");
    run_ok(bin().args([
        "moments",
        cube.to_str().unwrap(),
        "--output",
        stem0.to_str().unwrap(),
        "--quad",
        "16,16,16",
        "--nmax",
        "0",
        "--paths",
        "direct",
    ]));
    let m0 = ballharm::serial::read_moments_json(&PathBuf::from(format!(
        "{}.direct.json",
        stem0.display()
    )))
    .unwrap();
    assert_eq!(m0.coeffs().len(), 1);
    std::fs::remove_dir_all(&dir).ok();
}

/// Descriptor layout arithmetic, determinism, and the dropout probe.
#[test]
fn descriptor_layout_and_determinism() {
    let dir = tmp_dir("descriptor");
    let cube = write_cube_off(&dir);
    let out_a = dir.join("a.json");
    let out_b = dir.join("b.json");
    for out in [&out_a, &out_b] {
        run_ok(bin().args([
            "descriptor",
            cube.to_str().unwrap(),
            "--output",
            out.to_str().unwrap(),
            "--quad",
            "24,24,24",
            "--points",
            "600",
            "--seed",
            "11",
            "--kernels",
            "3",
            "--dropout",
            "0.2",
        ]));
    }
    assert_eq!(
        std::fs::read(&out_a).unwrap(),
        std::fs::read(&out_b).unwrap()
    );
    let d: serde_json::Value = serde_json::from_slice(&std::fs::read(&out_a).unwrap()).unwrap();
    let layout = d["layout"].as_array().unwrap();
    let values = d["values"].as_array().unwrap();
    let total: u64 = layout.iter().map(|seg| seg[1].as_u64().unwrap()).sum();
    assert_eq!(total as usize, values.len());
    // 3 views × 2 hemispheres × (kernels × (n_max+1)² + axes)
    assert_eq!(values.len(), 3 * 2 * (3 * 36 + 4));
    let delta = d["dropout"]["relative_l2_delta"].as_f64().unwrap();
    assert!(delta.is_finite() && delta >= 0.0);
    std::fs::remove_dir_all(&dir).ok();
}

/// Convolve and symmetry consume the moment files the pipeline writes.
#[test]
fn convolve_and_symmetry_round_trip() {
    let dir = tmp_dir("convolve");
    let cube = write_cube_off(&dir);
    let stem = dir.join("m");
    run_ok(bin().args([
        "moments",
        cube.to_str().unwrap(),
        "--output",
        stem.to_str().unwrap(),
        "--quad",
        "24,24,24",
        "--alpha",
        "auto",
        "--pinv-iters",
        "15",
    ]));
    let lsq = PathBuf::from(format!("{}.lsq.json", stem.display()));
    let fm = dir.join("fm.json");
    run_ok(bin().args([
        "convolve",
        "--input",
        lsq.to_str().unwrap(),
        "--kernel",
        lsq.to_str().unwrap(),
        "--output",
        fm.to_str().unwrap(),
        "--csv",
    ]));
    let map = ballharm::serial::read_feature_map_json(&fm).unwrap();
    assert_eq!(map.l_max(), 5);
    assert!(fm.with_extension("csv").exists());

    run_ok(bin().args(["symmetry", "--input", lsq.to_str().unwrap(), "--axes", "6"]));
    let sym: serde_json::Value = serde_json::from_slice(
        &std::fs::read(PathBuf::from(format!(
            "{}.lsq.symmetry.json",
            stem.display()
        )))
        .unwrap(),
    )
    .unwrap();
    assert_eq!(sym["values"].as_array().unwrap().len(), 6);
    std::fs::remove_dir_all(&dir).ok();
}

/// Bench emits one CSV row per stage.
#[test]
fn bench_emits_stage_table() {
    let dir = tmp_dir("bench");
    let csv = dir.join("bench.csv");
    run_ok(bin().args([
        "bench",
        "--quad",
        "16,16,16",
        "--output",
        csv.to_str().unwrap(),
    ]));
    let text = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "stage,median_ms,min_ms,max_ms,runs");
    assert_eq!(lines.len(), 5);
    for stage in [
        "moment_assembly",
        "pinv_iterations",
        "vol_conv",
        "brute_force_200dirs",
    ] {
        assert!(text.contains(stage), "missing {stage} row");
    }
    std::fs::remove_dir_all(&dir).ok();
}
