//! `ballharm ingest`: normalize an input into the unit ball.

use std::path::{Path, PathBuf};

use ballharm::ballgrid::save_xyz;
use serde::Serialize;

use crate::config::RunConfig;

#[derive(Serialize)]
struct Sidecar<'a> {
    config: &'a RunConfig,
    input: String,
    points: usize,
    centroid: [f64; 3],
    scale: f64,
    max_radius: f64,
}

pub fn run(config: &RunConfig, input: &Path, output: Option<&Path>) -> anyhow::Result<()> {
    let (cloud, centroid, scale) = super::load_normalized(config, input)?;
    let out_xyz: PathBuf = output.map(PathBuf::from).unwrap_or_else(|| {
        let mut p = input.to_path_buf();
        p.set_extension("normalized.xyz");
        p
    });
    save_xyz(&cloud, &out_xyz)?;
    let sidecar = Sidecar {
        config,
        input: input.display().to_string(),
        points: cloud.len(),
        centroid,
        scale,
        max_radius: cloud.max_norm(),
    };
    let mut out_json = out_xyz.clone();
    out_json.set_extension("json");
    super::write_json(&out_json, &sidecar)?;
    println!(
        "ingested {} points -> {} (+ {})",
        cloud.len(),
        out_xyz.display(),
        out_json.display()
    );
    Ok(())
}
