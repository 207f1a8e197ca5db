pub mod bench;
pub mod check;
pub mod convolve;
pub mod descriptor;
pub mod ingest;
pub mod moments;
pub mod symmetry;

use std::path::Path;
use std::sync::Arc;

use anyhow::Context;
use ballharm::ballgrid::{
    load_off, load_xyz, make_quadrature, mesh_to_points, normalize_to_ball, BallQuadrature,
    PointCloud,
};

use crate::config::RunConfig;

/// Loads an OFF mesh (sampled to a point cloud) or a plain XYZ list.
pub fn load_input(config: &RunConfig, path: &Path) -> anyhow::Result<PointCloud> {
    let is_off = path
        .extension()
        .map(|e| e.eq_ignore_ascii_case("off"))
        .unwrap_or(false);
    let cloud = if is_off {
        let mesh = load_off(path)?;
        mesh_to_points(&mesh, config.sample_points, config.seed)?
    } else {
        load_xyz(path)?
    };
    Ok(cloud)
}

/// Loads and normalizes an input, returning the cloud with its removed
/// centroid and scale.
pub fn load_normalized(
    config: &RunConfig,
    path: &Path,
) -> anyhow::Result<(PointCloud, [f64; 3], f64)> {
    let cloud = load_input(config, path)?;
    normalize_to_ball(&cloud).with_context(|| format!("normalizing {}", path.display()))
}

pub fn build_quadrature(config: &RunConfig) -> anyhow::Result<Arc<BallQuadrature>> {
    let (r, t, p) = config.quadrature;
    Ok(Arc::new(make_quadrature(r, t, p)?))
}

/// Writes pretty JSON; output bytes are a pure function of the value.
pub fn write_json<T: serde::Serialize>(path: &Path, value: &T) -> anyhow::Result<()> {
    let bytes = serde_json::to_vec_pretty(value).expect("serializable");
    std::fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}
