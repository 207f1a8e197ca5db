//! `ballharm convolve`: closed-form volumetric convolution of moment files.

use std::path::{Path, PathBuf};

use ballharm::conv::{symmetrize_kernel, vol_conv};
use ballharm::serial::{read_moments_json, write_feature_map_csv, write_feature_map_json};
use serde::Serialize;

use crate::config::RunConfig;

#[derive(Serialize)]
struct ConvolveReport<'a> {
    config: &'a RunConfig,
    input: String,
    kernel: String,
    feature_map: String,
    l_max: u32,
}

pub fn run(
    config: &RunConfig,
    input: &Path,
    kernel: &Path,
    output: &Path,
    csv: bool,
) -> anyhow::Result<()> {
    let f = read_moments_json(input)?;
    let g = read_moments_json(kernel)?;
    let fm = vol_conv(&f, &symmetrize_kernel(&g))?;
    write_feature_map_json(&fm, output)?;
    if csv {
        write_feature_map_csv(&fm, &output.with_extension("csv"))?;
    }
    let report = ConvolveReport {
        config,
        input: input.display().to_string(),
        kernel: kernel.display().to_string(),
        feature_map: output.display().to_string(),
        l_max: fm.l_max(),
    };
    let report_path = PathBuf::from(format!("{}.report.json", output.display()));
    super::write_json(&report_path, &report)?;
    println!("feature map l_max={} -> {}", fm.l_max(), output.display());
    Ok(())
}
