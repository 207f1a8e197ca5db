//! JSON and CSV serialization for moment vectors and feature maps.

use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::basis::{enumerate, RadialConvention};
use crate::conv::FeatureMap;
use crate::error::{Error, Result};
use crate::moments::MomentVector;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MomentRecord {
    pub n: u32,
    pub l: u32,
    pub m: i32,
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MomentVectorFile {
    pub n_max: u32,
    pub convention: RadialConvention,
    pub coeffs: Vec<MomentRecord>,
}

impl From<&MomentVector> for MomentVectorFile {
    fn from(m: &MomentVector) -> Self {
        Self {
            n_max: m.n_max(),
            convention: m.convention(),
            coeffs: m
                .iter()
                .map(|(idx, c)| MomentRecord {
                    n: idx.n(),
                    l: idx.l(),
                    m: idx.m(),
                    re: c.re,
                    im: c.im,
                })
                .collect(),
        }
    }
}

impl MomentVectorFile {
    pub fn into_moments(self) -> Result<MomentVector> {
        let mut m = MomentVector::zeros(self.n_max, self.convention)?;
        let expect = enumerate(self.n_max)?.len();
        if self.coeffs.len() != expect {
            return Err(Error::Mismatch(format!(
                "{} records for n_max = {}; expected {expect}",
                self.coeffs.len(),
                self.n_max
            )));
        }
        for r in self.coeffs {
            m.set(r.n, r.l, r.m, Complex64::new(r.re, r.im))?;
        }
        Ok(m)
    }
}

pub fn write_moments_json(m: &MomentVector, path: &Path) -> Result<()> {
    let file = MomentVectorFile::from(m);
    let bytes = serde_json::to_vec_pretty(&file).expect("serializable");
    std::fs::write(path, bytes)?;
    Ok(())
}

pub fn read_moments_json(path: &Path) -> Result<MomentVector> {
    let bytes = std::fs::read(path).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => Error::Parse {
            path: path.display().to_string(),
            line: 0,
            msg: "no such input".into(),
        },
        _ => Error::Io(e),
    })?;
    let file: MomentVectorFile = serde_json::from_slice(&bytes).map_err(|e| Error::Parse {
        path: path.display().to_string(),
        line: e.line(),
        msg: e.to_string(),
    })?;
    file.into_moments()
}

pub fn write_moments_csv(m: &MomentVector, path: &Path) -> Result<()> {
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    writeln!(out, "n,l,m,re,im")?;
    for (idx, c) in m.iter() {
        writeln!(out, "{},{},{},{},{}", idx.n(), idx.l(), idx.m(), c.re, c.im)?;
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FeatureRecord {
    pub l: u32,
    pub m: i32,
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FeatureMapFile {
    pub l_max: u32,
    pub coeffs: Vec<FeatureRecord>,
}

impl From<&FeatureMap> for FeatureMapFile {
    fn from(fm: &FeatureMap) -> Self {
        let mut coeffs = Vec::new();
        for l in 0..=fm.l_max() {
            for m in -(l as i32)..=l as i32 {
                let c = fm.get(l, m).expect("in range");
                coeffs.push(FeatureRecord {
                    l,
                    m,
                    re: c.re,
                    im: c.im,
                });
            }
        }
        Self {
            l_max: fm.l_max(),
            coeffs,
        }
    }
}

impl FeatureMapFile {
    pub fn into_feature_map(self) -> Result<FeatureMap> {
        let mut fm = FeatureMap::zeros(self.l_max);
        let expect = ((self.l_max + 1) * (self.l_max + 1)) as usize;
        if self.coeffs.len() != expect {
            return Err(Error::Mismatch(format!(
                "{} records for l_max = {}; expected {expect}",
                self.coeffs.len(),
                self.l_max
            )));
        }
        for r in self.coeffs {
            fm.set(r.l, r.m, Complex64::new(r.re, r.im))?;
        }
        Ok(fm)
    }
}

pub fn write_feature_map_json(fm: &FeatureMap, path: &Path) -> Result<()> {
    let file = FeatureMapFile::from(fm);
    let bytes = serde_json::to_vec_pretty(&file).expect("serializable");
    std::fs::write(path, bytes)?;
    Ok(())
}

pub fn read_feature_map_json(path: &Path) -> Result<FeatureMap> {
    let bytes = std::fs::read(path)?;
    let file: FeatureMapFile = serde_json::from_slice(&bytes).map_err(|e| Error::Parse {
        path: path.display().to_string(),
        line: e.line(),
        msg: e.to_string(),
    })?;
    file.into_feature_map()
}

pub fn write_feature_map_csv(fm: &FeatureMap, path: &Path) -> Result<()> {
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    writeln!(out, "l,m,re,im")?;
    for l in 0..=fm.l_max() {
        for m in -(l as i32)..=l as i32 {
            let c = fm.get(l, m).expect("in range");
            writeln!(out, "{l},{m},{},{}", c.re, c.im)?;
        }
    }
    Ok(())
}
