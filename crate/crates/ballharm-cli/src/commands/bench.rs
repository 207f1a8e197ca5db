//! `ballharm bench`: median-of-5 wall times for the main stages.

use std::io::Write;
use std::path::Path;
use std::time::Instant;

use ballharm::conv::{fibonacci_directions, symmetrize_kernel, vol_conv};
use ballharm::moments::{build_system, pinv_iterate};
use ballharm::synthetic::{random_axial_moments, random_real_moments, sample};

use crate::config::RunConfig;

struct Stage {
    name: &'static str,
    median_ms: f64,
    min_ms: f64,
    max_ms: f64,
    runs: usize,
}

fn time_stage<F: FnMut()>(name: &'static str, runs: usize, mut f: F) -> Stage {
    let mut samples = Vec::with_capacity(runs);
    for _ in 0..runs {
        let t0 = Instant::now();
        f();
        samples.push(t0.elapsed().as_secs_f64() * 1e3);
    }
    samples.sort_by(|a, b| a.total_cmp(b));
    Stage {
        name,
        median_ms: samples[samples.len() / 2],
        min_ms: samples[0],
        max_ms: *samples.last().expect("at least one run"),
        runs,
    }
}

pub fn run(config: &RunConfig, output: Option<&Path>) -> anyhow::Result<()> {
    const RUNS: usize = 5;
    let quad = super::build_quadrature(config)?;
    let n_max = config.n_max;
    let conv = config.convention;

    let f_m = random_real_moments(n_max, conv, config.seed.wrapping_add(1))?;
    let g_m = random_axial_moments(n_max, conv, config.seed.wrapping_add(2))?;
    let f = sample(&f_m, &quad)?;
    let g = sample(&g_m, &quad)?;
    let kernel = symmetrize_kernel(&g_m);
    let dirs = fibonacci_directions(200);

    // a representative least-squares system: every 16th node
    let coords: Vec<_> = quad.nodes().iter().step_by(16).copied().collect();
    let values: Vec<f64> = f.values().iter().step_by(16).copied().collect();
    let system = build_system(&coords, &values, n_max, conv)?;

    let mut stages = Vec::new();
    stages.push(time_stage("moment_assembly", RUNS, || {
        moments_direct_auto(&f, config).expect("moment assembly");
    }));
    stages.push(time_stage("pinv_iterations", RUNS, || {
        pinv_iterate(
            &system.design,
            config.pinv_iterations,
            config.alpha.to_alpha(),
        )
        .expect("pseudo-inverse");
    }));
    stages.push(time_stage("vol_conv", RUNS, || {
        vol_conv(&f_m, &kernel).expect("closed-form convolution");
    }));
    stages.push(time_stage("brute_force_200dirs", RUNS, || {
        brute_force_auto(&f, &g, &dirs).expect("brute-force oracle");
    }));

    let mut csv = String::from("stage,median_ms,min_ms,max_ms,runs\n");
    for s in &stages {
        csv.push_str(&format!(
            "{},{:.3},{:.3},{:.3},{}\n",
            s.name, s.median_ms, s.min_ms, s.max_ms, s.runs
        ));
    }
    match output {
        Some(path) => {
            std::fs::write(path, &csv)?;
            println!("bench table -> {}", path.display());
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(csv.as_bytes())?;
        }
    }
    Ok(())
}

fn moments_direct_auto(
    f: &ballharm::ballgrid::ShapeFunction,
    config: &RunConfig,
) -> ballharm::Result<ballharm::moments::MomentVector> {
    #[cfg(feature = "parallel")]
    {
        ballharm::moments::par_moments_direct(f, config.n_max, config.convention)
    }
    #[cfg(not(feature = "parallel"))]
    {
        ballharm::moments::moments_direct(f, config.n_max, config.convention)
    }
}

fn brute_force_auto(
    f: &ballharm::ballgrid::ShapeFunction,
    g: &ballharm::ballgrid::ShapeFunction,
    dirs: &[(f64, f64)],
) -> ballharm::Result<Vec<f64>> {
    #[cfg(feature = "parallel")]
    {
        ballharm::conv::par_brute_force_conv(f, g, dirs)
    }
    #[cfg(not(feature = "parallel"))]
    {
        ballharm::conv::brute_force_conv(f, g, dirs)
    }
}
