//! `ballharm descriptor`: fixed orthogonal views, hemisphere split,
//! convolution features per kernel, and symmetry measurements, concatenated.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{bail, Context};
use ballharm::ballgrid::{rasterize, rotate_points, BallQuadrature, PointCloud};
use ballharm::conv::{symmetrize_kernel, vol_conv, AxialKernel, FeatureMap};
use ballharm::moments::MomentVector;
use ballharm::symmetry::{default_axes, symmetry_descriptor, AxisSet};
use ballharm::synthetic::{random_unit_kernel_moments, seeded_subsample};
use serde::Serialize;

use crate::config::RunConfig;

type DescriptorBody = (Vec<(String, usize)>, Vec<f64>);

/// The three fixed orthogonal view rotations as (α, β, γ) Euler angles:
/// identity, and two quarter turns carrying the pole to −x and −z.
const VIEWS: [(f64, f64, f64); 3] = [
    (0.0, 0.0, 0.0),
    (0.0, std::f64::consts::FRAC_PI_2, 0.0),
    (
        std::f64::consts::FRAC_PI_2,
        std::f64::consts::FRAC_PI_2,
        0.0,
    ),
];

#[derive(Serialize)]
struct DescriptorFile<'a> {
    config: &'a RunConfig,
    input: String,
    kernels: usize,
    layout: Vec<(String, usize)>,
    values: Vec<f64>,
    dropout: Option<DropoutReport>,
}

#[derive(Serialize)]
struct DropoutReport {
    fraction: f64,
    removed_points: usize,
    relative_l2_delta: f64,
}

/// Real numbers per feature map: one for each m = 0 coefficient, two for each
/// m > 0 pair, (l_max + 1)² in total.
fn map_size(n_max: u32) -> usize {
    ((n_max + 1) * (n_max + 1)) as usize
}

fn flatten_map(fm: &FeatureMap, out: &mut Vec<f64>) {
    for l in 0..=fm.l_max() {
        out.push(fm.get(l, 0).expect("in range").re);
        for m in 1..=l as i32 {
            let c = fm.get(l, m).expect("in range");
            out.push(c.re);
            out.push(c.im);
        }
    }
}

fn moments_direct_auto(
    f: &ballharm::ballgrid::ShapeFunction,
    config: &RunConfig,
) -> anyhow::Result<MomentVector> {
    #[cfg(feature = "parallel")]
    {
        Ok(ballharm::moments::par_moments_direct(
            f,
            config.n_max,
            config.convention,
        )?)
    }
    #[cfg(not(feature = "parallel"))]
    {
        Ok(ballharm::moments::moments_direct(
            f,
            config.n_max,
            config.convention,
        )?)
    }
}

fn compute_descriptor(
    config: &RunConfig,
    cloud: &PointCloud,
    quad: &Arc<BallQuadrature>,
    bank: &[AxialKernel],
    axes: &AxisSet,
) -> anyhow::Result<DescriptorBody> {
    let conv_len = bank.len() * map_size(config.n_max);
    let mut layout = Vec::new();
    let mut values = Vec::new();
    for (vi, &(a, b, g)) in VIEWS.iter().enumerate() {
        let view = rotate_points(cloud, a, b, g);
        let (pos, neg) = ballharm::ballgrid::split_hemispheres(&view);
        for (half_name, half) in [("pos", pos), ("neg", neg)] {
            let conv_label = format!("view{vi}/{half_name}/conv");
            let sym_label = format!("view{vi}/{half_name}/sym");
            if half.is_empty() {
                eprintln!("warning: view {vi} {half_name} hemisphere is empty; zero-filling");
                layout.push((conv_label, conv_len));
                layout.push((sym_label, axes.len()));
                values.extend(std::iter::repeat_n(0.0, conv_len + axes.len()));
                continue;
            }
            let f = rasterize(&half, quad, config.raster_tol)?;
            let m = moments_direct_auto(&f, config)?;
            layout.push((conv_label, conv_len));
            for kernel in bank {
                let fm = vol_conv(&m, kernel)?;
                flatten_map(&fm, &mut values);
            }
            layout.push((sym_label, axes.len()));
            values.extend(symmetry_descriptor(&m, axes));
        }
    }
    Ok((layout, values))
}

pub fn run(
    config: &RunConfig,
    input: &Path,
    output: Option<&Path>,
    kernels: usize,
    dropout: Option<f64>,
) -> anyhow::Result<()> {
    if kernels == 0 {
        bail!("--kernels must be at least 1");
    }
    let (cloud, _, _) = super::load_normalized(config, input)?;
    let quad = super::build_quadrature(config)?;
    let bank: Vec<AxialKernel> = (0..kernels)
        .map(|k| {
            random_unit_kernel_moments(
                config.n_max,
                config.convention,
                config.seed + 1000 + k as u64,
            )
            .map(|m| symmetrize_kernel(&m))
        })
        .collect::<Result<_, _>>()?;
    let axes = default_axes(config.axes)?;

    let (layout, values) = compute_descriptor(config, &cloud, &quad, &bank, &axes)?;

    let dropout_report = match dropout {
        None => None,
        Some(fraction) => {
            if !(0.0..1.0).contains(&fraction) {
                bail!("--dropout expects a fraction in [0, 1), got {fraction}");
            }
            let keep_count = cloud.len() - (fraction * cloud.len() as f64).floor() as usize;
            let all: Vec<usize> = (0..cloud.len()).collect();
            let mut kept = seeded_subsample(&all, keep_count, config.seed ^ 0xd509);
            kept.sort_unstable();
            let dropped_cloud = PointCloud::new(kept.iter().map(|&i| cloud.points()[i]).collect());
            let (_, dropped_values) =
                compute_descriptor(config, &dropped_cloud, &quad, &bank, &axes)?;
            let num: f64 = values
                .iter()
                .zip(&dropped_values)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt();
            let den: f64 = values.iter().map(|v| v * v).sum::<f64>().sqrt().max(1e-300);
            Some(DropoutReport {
                fraction,
                removed_points: cloud.len() - keep_count,
                relative_l2_delta: num / den,
            })
        }
    };

    let total: usize = layout.iter().map(|(_, n)| n).sum();
    anyhow::ensure!(
        total == values.len(),
        "layout accounts for {total} values but {} were produced",
        values.len()
    );

    let out: PathBuf = output
        .map(PathBuf::from)
        .unwrap_or_else(|| input.with_extension("descriptor.json"));
    let file = DescriptorFile {
        config,
        input: input.display().to_string(),
        kernels,
        layout,
        values,
        dropout: dropout_report,
    };
    super::write_json(&out, &file).context("writing descriptor")?;
    println!(
        "descriptor with {} values ({} segments) -> {}",
        file.values.len(),
        file.layout.len(),
        out.display()
    );
    if let Some(d) = &file.dropout {
        println!(
            "dropout {:.0}%: removed {} points, relative L2 delta {:.4e}",
            d.fraction * 100.0,
            d.removed_points,
            d.relative_l2_delta
        );
    }
    Ok(())
}
