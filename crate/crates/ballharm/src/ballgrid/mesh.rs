//! OFF triangle meshes and area-weighted surface sampling.

use std::io::{BufRead, BufReader};
use std::path::Path;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

use super::cloud::PointCloud;

#[derive(Debug, Clone)]
pub struct TriangleMesh {
    vertices: Vec<[f64; 3]>,
    faces: Vec<[usize; 3]>,
}

impl TriangleMesh {
    pub fn new(vertices: Vec<[f64; 3]>, faces: Vec<[usize; 3]>) -> Result<Self> {
        for (i, f) in faces.iter().enumerate() {
            if f.iter().any(|&v| v >= vertices.len()) {
                return Err(Error::Domain(format!(
                    "face {i} references vertex outside 0..{}",
                    vertices.len()
                )));
            }
            if f[0] == f[1] || f[1] == f[2] || f[0] == f[2] {
                return Err(Error::Domain(format!("face {i} repeats a vertex index")));
            }
        }
        Ok(Self { vertices, faces })
    }

    pub fn vertices(&self) -> &[[f64; 3]] {
        &self.vertices
    }

    pub fn faces(&self) -> &[[usize; 3]] {
        &self.faces
    }

    fn face_area(&self, f: &[usize; 3]) -> f64 {
        let a = self.vertices[f[0]];
        let b = self.vertices[f[1]];
        let c = self.vertices[f[2]];
        let u = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
        let v = [c[0] - a[0], c[1] - a[1], c[2] - a[2]];
        let cx = u[1] * v[2] - u[2] * v[1];
        let cy = u[2] * v[0] - u[0] * v[2];
        let cz = u[0] * v[1] - u[1] * v[0];
        0.5 * (cx * cx + cy * cy + cz * cz).sqrt()
    }
}

/// Parses an OFF file.
///
/// Accepts both the standard layout (`OFF` on its own line, counts on the
/// next) and the ModelNet variant where the counts share the header line
/// (`OFF3 1 0`). Faces with more than three vertices are fan-triangulated;
/// degenerate (repeated-index) faces are dropped.
pub fn load_off(path: &Path) -> Result<TriangleMesh> {
    let file = std::fs::File::open(path).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => Error::Parse {
            path: path.display().to_string(),
            line: 0,
            msg: "no such input".into(),
        },
        _ => Error::Io(e),
    })?;
    let reader = BufReader::new(file);
    let pstr = path.display().to_string();
    let err = |line: usize, msg: String| Error::Parse {
        path: pstr.clone(),
        line,
        msg,
    };

    // materialize non-empty, non-comment lines with their 1-based numbers
    let mut lines: Vec<(usize, String)> = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let t = line.trim().to_string();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        lines.push((i + 1, t));
    }
    if lines.is_empty() {
        return Err(err(1, "empty file".into()));
    }

    let (header_line, header) = lines[0].clone();
    if !header.starts_with("OFF") {
        return Err(err(header_line, "missing OFF header".into()));
    }
    let rest = header[3..].trim();
    let mut cursor = 1;
    let (counts_line, counts_str) = if rest.is_empty() {
        if lines.len() < 2 {
            return Err(err(header_line, "missing element counts".into()));
        }
        cursor = 2;
        lines[1].clone()
    } else {
        (header_line, rest.to_string())
    };
    let counts: Vec<&str> = counts_str.split_whitespace().collect();
    if counts.len() < 2 {
        return Err(err(counts_line, format!("malformed counts {counts_str:?}")));
    }
    let n_vert: usize = counts[0]
        .parse()
        .map_err(|_| err(counts_line, format!("bad vertex count {:?}", counts[0])))?;
    let n_face: usize = counts[1]
        .parse()
        .map_err(|_| err(counts_line, format!("bad face count {:?}", counts[1])))?;

    if lines.len() < cursor + n_vert + n_face {
        return Err(err(
            lines.last().map(|l| l.0).unwrap_or(1),
            format!(
                "file ends early: expected {} vertex and {} face lines",
                n_vert, n_face
            ),
        ));
    }

    let mut vertices = Vec::with_capacity(n_vert);
    for (lineno, line) in &lines[cursor..cursor + n_vert] {
        let f: Vec<&str> = line.split_whitespace().collect();
        if f.len() < 3 {
            return Err(err(*lineno, format!("vertex line has {} fields", f.len())));
        }
        let mut p = [0.0; 3];
        for k in 0..3 {
            p[k] = f[k]
                .parse()
                .map_err(|_| err(*lineno, format!("invalid coordinate {:?}", f[k])))?;
        }
        vertices.push(p);
    }

    let mut faces = Vec::with_capacity(n_face);
    for (lineno, line) in &lines[cursor + n_vert..cursor + n_vert + n_face] {
        let f: Vec<&str> = line.split_whitespace().collect();
        if f.is_empty() {
            return Err(err(*lineno, "empty face line".into()));
        }
        let k: usize = f[0]
            .parse()
            .map_err(|_| err(*lineno, format!("bad face vertex count {:?}", f[0])))?;
        if k < 3 {
            return Err(err(*lineno, format!("face with {k} vertices")));
        }
        if f.len() < k + 1 {
            return Err(err(
                *lineno,
                format!("face names {k} vertices but lists {}", f.len() - 1),
            ));
        }
        let mut idx = Vec::with_capacity(k);
        for s in &f[1..=k] {
            let v: usize = s
                .parse()
                .map_err(|_| err(*lineno, format!("invalid vertex index {s:?}")))?;
            if v >= vertices.len() {
                return Err(err(
                    *lineno,
                    format!("vertex index {v} out of range 0..{}", vertices.len()),
                ));
            }
            idx.push(v);
        }
        for t in 1..k - 1 {
            let tri = [idx[0], idx[t], idx[t + 1]];
            if tri[0] != tri[1] && tri[1] != tri[2] && tri[0] != tri[2] {
                faces.push(tri);
            }
        }
    }

    Ok(TriangleMesh { vertices, faces })
}

/// Uniform area-weighted sampling of `count` surface points, deterministic in
/// `seed`.
pub fn mesh_to_points(mesh: &TriangleMesh, count: usize, seed: u64) -> Result<PointCloud> {
    if mesh.faces.is_empty() || mesh.vertices.is_empty() {
        return Err(Error::Degenerate("mesh has no faces to sample".into()));
    }
    if count == 0 {
        return Err(Error::Config("sample count must be at least 1".into()));
    }
    let mut cumulative = Vec::with_capacity(mesh.faces.len());
    let mut total = 0.0;
    for f in &mesh.faces {
        total += mesh.face_area(f);
        cumulative.push(total);
    }
    if total <= 0.0 {
        return Err(Error::Degenerate("mesh has zero total surface area".into()));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = Vec::with_capacity(count);
    for _ in 0..count {
        let target = rng.gen_range(0.0..total);
        let fi = cumulative.partition_point(|&c| c <= target);
        let f = &mesh.faces[fi.min(mesh.faces.len() - 1)];
        let a = mesh.vertices[f[0]];
        let b = mesh.vertices[f[1]];
        let c = mesh.vertices[f[2]];
        let mut u: f64 = rng.gen();
        let mut v: f64 = rng.gen();
        if u + v > 1.0 {
            u = 1.0 - u;
            v = 1.0 - v;
        }
        points.push([
            a[0] + u * (b[0] - a[0]) + v * (c[0] - a[0]),
            a[1] + u * (b[1] - a[1]) + v * (c[1] - a[1]),
            a[2] + u * (b[2] - a[2]) + v * (c[2] - a[2]),
        ]);
    }
    Ok(PointCloud::new(points))
}
