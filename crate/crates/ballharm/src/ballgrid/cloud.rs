//! Point clouds: normalization into the unit ball, hemisphere splitting,
//! rigid rotation, and plain-text XYZ I/O.

use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use crate::error::{Error, Result};

use super::rotation::Rotation;

#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    points: Vec<[f64; 3]>,
    normalized: bool,
}

impl PointCloud {
    pub fn new(points: Vec<[f64; 3]>) -> Self {
        Self {
            points,
            normalized: false,
        }
    }

    pub fn points(&self) -> &[[f64; 3]] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// Largest point norm, 0 for an empty cloud.
    pub fn max_norm(&self) -> f64 {
        self.points
            .iter()
            .map(|p| (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt())
            .fold(0.0, f64::max)
    }
}

/// Centers the centroid at the origin and scales uniformly so the farthest
/// point sits on the unit sphere.
///
/// Returns the normalized cloud together with the removed centroid and the
/// applied scale factor.
pub fn normalize_to_ball(pc: &PointCloud) -> Result<(PointCloud, [f64; 3], f64)> {
    if pc.len() < 2 {
        return Err(Error::Degenerate(format!(
            "normalization needs at least 2 points, got {}",
            pc.len()
        )));
    }
    let n = pc.len() as f64;
    let mut centroid = [0.0; 3];
    for p in pc.points() {
        for k in 0..3 {
            centroid[k] += p[k] / n;
        }
    }
    let mut max_norm = 0.0f64;
    for p in pc.points() {
        let d = [p[0] - centroid[0], p[1] - centroid[1], p[2] - centroid[2]];
        max_norm = max_norm.max((d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt());
    }
    if max_norm < 1e-12 {
        return Err(Error::Degenerate(
            "all points coincide; no scale can be established".into(),
        ));
    }
    let scale = 1.0 / max_norm;
    let points = pc
        .points()
        .iter()
        .map(|p| {
            [
                (p[0] - centroid[0]) * scale,
                (p[1] - centroid[1]) * scale,
                (p[2] - centroid[2]) * scale,
            ]
        })
        .collect();
    Ok((
        PointCloud {
            points,
            normalized: true,
        },
        centroid,
        scale,
    ))
}

/// Splits on the sign of y with strict inequalities: points with y = 0 belong
/// to neither half.
pub fn split_hemispheres(pc: &PointCloud) -> (PointCloud, PointCloud) {
    let pos = pc.points().iter().filter(|p| p[1] > 0.0).copied().collect();
    let neg = pc.points().iter().filter(|p| p[1] < 0.0).copied().collect();
    // subsets are generally no longer centered, so the flag does not carry over
    (PointCloud::new(pos), PointCloud::new(neg))
}

/// Applies R_y(α) · R_z(β) · R_y(γ) to every point. Norms are preserved, so a
/// normalized cloud stays normalized.
pub fn rotate_points(pc: &PointCloud, alpha: f64, beta: f64, gamma: f64) -> PointCloud {
    let rot = Rotation::from_euler(alpha, beta, gamma);
    PointCloud {
        points: pc.points().iter().map(|&p| rot.apply(p)).collect(),
        normalized: pc.normalized,
    }
}

/// Reads a plain-text point list, one whitespace-separated `x y z` per line.
/// Blank lines and `#` comment lines are skipped.
pub fn load_xyz(path: &Path) -> Result<PointCloud> {
    let file = std::fs::File::open(path).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => Error::Parse {
            path: path.display().to_string(),
            line: 0,
            msg: "no such input".into(),
        },
        _ => Error::Io(e),
    })?;
    let reader = BufReader::new(file);
    let mut points = Vec::new();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(Error::Parse {
                path: path.display().to_string(),
                line: lineno + 1,
                msg: format!("expected 3 coordinates, got {}", fields.len()),
            });
        }
        let mut p = [0.0; 3];
        for (k, f) in fields.iter().enumerate() {
            p[k] = f.parse().map_err(|_| Error::Parse {
                path: path.display().to_string(),
                line: lineno + 1,
                msg: format!("invalid number {f:?}"),
            })?;
        }
        points.push(p);
    }
    Ok(PointCloud::new(points))
}

pub fn save_xyz(pc: &PointCloud, path: &Path) -> Result<()> {
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    for p in pc.points() {
        writeln!(out, "{} {} {}", p[0], p[1], p[2])?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_pair_normalization() {
        let pc = PointCloud::new(vec![[1.0, 1.0, 1.0], [-1.0, -1.0, -1.0]]);
        let (norm, centroid, scale) = normalize_to_ball(&pc).unwrap();
        let s = 1.0 / 3f64.sqrt();
        for (p, expect) in norm.points().iter().zip([[s, s, s], [-s, -s, -s]]) {
            for k in 0..3 {
                assert!((p[k] - expect[k]).abs() < 1e-15);
            }
        }
        assert_eq!(centroid, [0.0, 0.0, 0.0]);
        assert!((scale - s).abs() < 1e-15);
        assert!(norm.is_normalized());
        assert!((norm.max_norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn translation_is_removed() {
        let base = PointCloud::new(vec![[0.0, 0.0, 0.0], [1.0, 2.0, 3.0], [-1.0, 0.5, 0.2]]);
        let shifted = PointCloud::new(
            base.points()
                .iter()
                .map(|p| [p[0] + 5.0, p[1] + 5.0, p[2] + 5.0])
                .collect(),
        );
        let (a, _, _) = normalize_to_ball(&base).unwrap();
        let (b, _, _) = normalize_to_ball(&shifted).unwrap();
        for (p, q) in a.points().iter().zip(b.points()) {
            for k in 0..3 {
                assert!((p[k] - q[k]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn coincident_points_rejected() {
        let pc = PointCloud::new(vec![[0.0; 3], [0.0; 3], [0.0; 3]]);
        assert!(matches!(normalize_to_ball(&pc), Err(Error::Degenerate(_))));
        let single = PointCloud::new(vec![[1.0, 0.0, 0.0]]);
        assert!(normalize_to_ball(&single).is_err());
    }

    #[test]
    fn hemisphere_split_is_strict() {
        let pc = PointCloud::new(vec![[0.0, 1.0, 0.0], [0.0, -1.0, 0.0], [1.0, 0.0, 0.0]]);
        let (pos, neg) = split_hemispheres(&pc);
        assert_eq!(pos.points(), &[[0.0, 1.0, 0.0]]);
        assert_eq!(neg.points(), &[[0.0, -1.0, 0.0]]);
        let (pe, ne) = split_hemispheres(&PointCloud::new(vec![]));
        assert!(pe.is_empty() && ne.is_empty());
    }

    #[test]
    fn rotation_identity_and_norms() {
        let pc = PointCloud::new(vec![[0.1, 0.5, -0.3], [0.9, 0.0, 0.1]]);
        let same = rotate_points(&pc, 0.0, 0.0, 0.0);
        assert_eq!(pc.points(), same.points());
        let rot = rotate_points(&pc, 0.4, 1.3, 2.7);
        for (p, q) in pc.points().iter().zip(rot.points()) {
            let np = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
            let nq = (q[0] * q[0] + q[1] * q[1] + q[2] * q[2]).sqrt();
            assert!((np - nq).abs() < 1e-12);
        }
    }

    #[test]
    fn z_quarter_turn_example() {
        let pc = PointCloud::new(vec![[0.0, 1.0, 0.0]]);
        let rot = rotate_points(&pc, 0.0, std::f64::consts::PI / 2.0, 0.0);
        let p = rot.points()[0];
        assert!((p[0] + 1.0).abs() < 1e-15 && p[1].abs() < 1e-15 && p[2].abs() < 1e-15);
    }

    #[test]
    fn xyz_round_trip() {
        let dir = std::env::temp_dir().join("ballharm-xyz-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("cloud.xyz");
        let pc = PointCloud::new(vec![[0.25, -1.5, 3.125], [1e-9, 2.0, -0.75]]);
        save_xyz(&pc, &path).unwrap();
        let back = load_xyz(&path).unwrap();
        assert_eq!(pc.points(), back.points());
        std::fs::remove_dir_all(&dir).ok();
    }
}
