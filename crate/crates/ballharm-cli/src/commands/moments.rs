//! `ballharm moments`: both transform paths with reconstruction errors.

use std::path::{Path, PathBuf};

use anyhow::bail;
use ballharm::ballgrid::rasterize;
use ballharm::moments::{real_unknown_count, MomentVector};
use ballharm::serial::{write_moments_csv, write_moments_json};
use ballharm::synthetic::seeded_subsample;
use serde::Serialize;

use crate::config::RunConfig;

#[derive(Serialize)]
struct MomentReport<'a> {
    config: &'a RunConfig,
    input: String,
    occupied_nodes: usize,
    paths: Vec<PathReport>,
}

#[derive(Serialize)]
struct PathReport {
    path: String,
    file: String,
    mean_abs_error: f64,
    relative_error: f64,
    pinv_residual: Option<f64>,
}

pub fn run(
    config: &RunConfig,
    input: &Path,
    output: Option<&Path>,
    paths: &str,
    csv: bool,
) -> anyhow::Result<()> {
    let (want_direct, want_lsq) = match paths {
        "direct" => (true, false),
        "lsq" => (false, true),
        "both" => (true, true),
        other => bail!("--paths expects direct, lsq, or both; got {other:?}"),
    };
    let stem: PathBuf = output
        .map(PathBuf::from)
        .unwrap_or_else(|| input.with_extension("moments"));
    let stem_file = |suffix: &str| PathBuf::from(format!("{}.{suffix}", stem.display()));

    let (cloud, _, _) = super::load_normalized(config, input)?;
    let quad = super::build_quadrature(config)?;
    let f = rasterize(&cloud, &quad, config.raster_tol)?;
    let support = f.support();

    let mut reports = Vec::new();

    if want_direct {
        let m = moments_direct_auto(&f, config)?;
        let err = ballharm::moments::reconstruction_error(&f, &m)?;
        let file = stem_file("direct.json");
        write_moments_json(&m, &file)?;
        if csv {
            write_moments_csv(&m, &file.with_extension("csv"))?;
        }
        reports.push(PathReport {
            path: "direct".into(),
            file: file.display().to_string(),
            mean_abs_error: err.mean_abs,
            relative_error: err.relative,
            pinv_residual: None,
        });
    }

    if want_lsq {
        let empties: Vec<usize> = {
            let mut mask = vec![true; quad.len()];
            for &i in &support {
                mask[i] = false;
            }
            let pool: Vec<usize> = (0..quad.len()).filter(|&i| mask[i]).collect();
            let want = (support.len() as f64 * config.empty_ratio).round() as usize;
            seeded_subsample(&pool, want, config.seed)
        };
        let mut sel: Vec<usize> = support.iter().copied().chain(empties).collect();
        sel.sort_unstable();
        let required = real_unknown_count(config.n_max);
        if sel.len() < required {
            bail!(
                "only {} sample nodes for {} unknowns at n_max = {}; \
                 lower --nmax, raise --points, or raise --empty-ratio",
                sel.len(),
                required,
                config.n_max
            );
        }
        let coords: Vec<_> = sel.iter().map(|&i| quad.nodes()[i]).collect();
        let values: Vec<f64> = sel.iter().map(|&i| f.values()[i]).collect();
        let (m, rep) = moments_lsq_auto(&coords, &values, config)?;
        let err = ballharm::moments::reconstruction_error(&f, &m)?;
        let file = stem_file("lsq.json");
        write_moments_json(&m, &file)?;
        if csv {
            write_moments_csv(&m, &file.with_extension("csv"))?;
        }
        reports.push(PathReport {
            path: "lsq".into(),
            file: file.display().to_string(),
            mean_abs_error: err.mean_abs,
            relative_error: err.relative,
            pinv_residual: rep.residuals.last().copied(),
        });
    }

    let report = MomentReport {
        config,
        input: input.display().to_string(),
        occupied_nodes: support.len(),
        paths: reports,
    };
    let report_file = stem_file("report.json");
    super::write_json(&report_file, &report)?;
    for p in &report.paths {
        println!(
            "{}: mean abs error {:.6e} (relative {:.4e}) -> {}",
            p.path, p.mean_abs_error, p.relative_error, p.file
        );
    }
    Ok(())
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

fn moments_lsq_auto(
    coords: &[ballharm::ballgrid::BallCoord],
    values: &[f64],
    config: &RunConfig,
) -> anyhow::Result<(MomentVector, ballharm::moments::PinvReport)> {
    #[cfg(feature = "parallel")]
    {
        Ok(ballharm::moments::par_moments_lsq(
            coords,
            values,
            config.n_max,
            config.pinv_iterations,
            config.alpha.to_alpha(),
            config.convention,
        )?)
    }
    #[cfg(not(feature = "parallel"))]
    {
        Ok(ballharm::moments::moments_lsq(
            coords,
            values,
            config.n_max,
            config.pinv_iterations,
            config.alpha.to_alpha(),
            config.convention,
        )?)
    }
}
