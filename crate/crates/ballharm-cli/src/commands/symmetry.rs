//! `ballharm symmetry`: per-axis symmetry power of a moment file.

use std::path::{Path, PathBuf};

use ballharm::serial::read_moments_json;
use ballharm::symmetry::{default_axes, symmetry_descriptor};
use serde::Serialize;

use crate::config::RunConfig;

#[derive(Serialize)]
struct SymmetryFile<'a> {
    config: &'a RunConfig,
    input: String,
    axes: Vec<(f64, f64)>,
    values: Vec<f64>,
}

pub fn run(config: &RunConfig, input: &Path, output: Option<&Path>) -> anyhow::Result<()> {
    let m = read_moments_json(input)?;
    let axes = default_axes(config.axes)?;
    let values = symmetry_descriptor(&m, &axes);
    let out: PathBuf = output
        .map(PathBuf::from)
        .unwrap_or_else(|| input.with_extension("symmetry.json"));
    let file = SymmetryFile {
        config,
        input: input.display().to_string(),
        axes: axes.axes().to_vec(),
        values,
    };
    super::write_json(&out, &file)?;
    for ((a, b), v) in file.axes.iter().zip(&file.values) {
        println!("axis (az {a:.4}, pol {b:.4}): {v:.6e}");
    }
    println!("-> {}", out.display());
    Ok(())
}
