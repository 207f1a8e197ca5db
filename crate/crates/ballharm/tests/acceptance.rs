//! Acceptance suite: one test per verification criterion, each printing a
//! pass/fail line with the measured values (visible with `--nocapture`).

use std::time::Instant;

use ballharm::verify;

fn run(name: &str, budget_secs: f64) {
    let t0 = Instant::now();
    let report = verify::run_suite(name).expect("suite construction");
    let elapsed = t0.elapsed().as_secs_f64();
    println!("{}", report.summary_line());
    assert!(report.pass, "{}", report.summary_line());
    assert!(
        elapsed <= budget_secs,
        "suite {name} took {elapsed:.1}s, budget {budget_secs}s"
    );
}

#[test]
fn criterion_1_orthonormality() {
    run("gram", 60.0);
}

#[test]
fn criterion_2_round_trip() {
    run("roundtrip", 60.0);
}

#[test]
fn criterion_3_reconstruction_error_ordering() {
    run("recon-ordering", 600.0);
}

#[test]
fn criterion_4_convolution_oracle() {
    run("conv-oracle", 300.0);
}

#[test]
fn criterion_5_equivariance() {
    run("equivariance", 300.0);
}

#[test]
fn criterion_6_spherical_baseline() {
    run("sph-baseline", 300.0);
}

#[test]
fn criterion_7_pseudo_inverse() {
    run("pinv", 300.0);
}

#[test]
fn criterion_8_symmetry_argmax() {
    run("symmetry-argmax", 300.0);
}
