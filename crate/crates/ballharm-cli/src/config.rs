//! Run configuration shared by the subcommands and embedded in every JSON
//! output for provenance.

use anyhow::{bail, Context};
use ballharm::basis::RadialConvention;
use ballharm::moments::Alpha;
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub n_max: u32,
    pub pinv_iterations: usize,
    pub alpha: AlphaArg,
    pub quadrature: (usize, usize, usize),
    pub axes: usize,
    pub seed: u64,
    pub convention: RadialConvention,
    pub raster_tol: f64,
    pub sample_points: usize,
    pub empty_ratio: f64,
}

#[derive(Debug, Clone, Copy, Serialize)]
#[serde(untagged)]
pub enum AlphaArg {
    Fixed(f64),
    Auto(&'static str),
}

impl AlphaArg {
    pub fn parse(s: &str) -> anyhow::Result<Self> {
        if s.eq_ignore_ascii_case("auto") {
            return Ok(AlphaArg::Auto("auto"));
        }
        let v: f64 = s
            .parse()
            .with_context(|| format!("--alpha expects a positive number or \"auto\", got {s:?}"))?;
        if v.is_nan() || v <= 0.0 {
            bail!("--alpha must be positive, got {v}");
        }
        Ok(AlphaArg::Fixed(v))
    }

    pub fn to_alpha(self) -> Alpha {
        match self {
            AlphaArg::Fixed(v) => Alpha::Fixed(v),
            AlphaArg::Auto(_) => Alpha::Auto,
        }
    }
}

pub fn parse_quad(s: &str) -> anyhow::Result<(usize, usize, usize)> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        bail!("--quad expects R,T,P (three comma-separated resolutions), got {s:?}");
    }
    let mut vals = [0usize; 3];
    for (v, p) in vals.iter_mut().zip(&parts) {
        *v = p
            .trim()
            .parse()
            .with_context(|| format!("bad quadrature resolution {p:?}"))?;
    }
    Ok((vals[0], vals[1], vals[2]))
}

pub fn parse_convention(s: &str) -> anyhow::Result<RadialConvention> {
    match s {
        "orthogonalized" => Ok(RadialConvention::Orthogonalized),
        "paper-literal" => Ok(RadialConvention::PaperLiteral),
        other => {
            bail!("--convention expects \"orthogonalized\" or \"paper-literal\", got {other:?}")
        }
    }
}
