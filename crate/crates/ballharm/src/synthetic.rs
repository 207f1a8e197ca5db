//! Seeded generators for band-limited functions and solid surface clouds.
//!
//! Band-limited functions built here are exact ground truth: their moments
//! are known by construction, so quadrature and least-squares paths can be
//! validated against them without any discretization gap.

use std::sync::Arc;

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::ballgrid::{BallCoord, BallQuadrature, PointCloud, Rotation, ShapeFunction};
use crate::basis::RadialConvention;
use crate::error::Result;
use crate::moments::MomentVector;

/// Random moments of a real-valued band-limited function: m = 0 slots real,
/// m > 0 complex, negative orders filled by the conjugate relation.
pub fn random_real_moments(n_max: u32, conv: RadialConvention, seed: u64) -> Result<MomentVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = MomentVector::zeros(n_max, conv)?;
    for n in 0..=n_max {
        for l in (n % 2..=n).step_by(2) {
            m.set(n, l, 0, Complex64::new(rng.gen_range(-1.0..1.0), 0.0))?;
            for mm in 1..=l as i32 {
                let v = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                m.set(n, l, mm, v)?;
                let sign = if mm % 2 == 0 { 1.0 } else { -1.0 };
                m.set(n, l, -mm, sign * v.conj())?;
            }
        }
    }
    Ok(m)
}

/// Random axial moments (m = 0 only), resampled until at least 30% of the
/// power sits above l = 0 so the symmetry axis is identifiable.
pub fn random_axial_moments(n_max: u32, conv: RadialConvention, seed: u64) -> Result<MomentVector> {
    for attempt in 0..64u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt << 32));
        let mut m = MomentVector::zeros(n_max, conv)?;
        let mut total = 0.0;
        let mut high = 0.0;
        for n in 0..=n_max {
            for l in (n % 2..=n).step_by(2) {
                let v = rng.gen_range(-1.0..1.0);
                m.set(n, l, 0, Complex64::new(v, 0.0))?;
                total += v * v;
                if l > 0 {
                    high += v * v;
                }
            }
        }
        if n_max == 0 || (total > 0.0 && high >= 0.3 * total) {
            return Ok(m);
        }
    }
    unreachable!("axial moment generator failed 64 resampling attempts");
}

/// Unit-norm axial kernel moments.
pub fn random_unit_kernel_moments(
    n_max: u32,
    conv: RadialConvention,
    seed: u64,
) -> Result<MomentVector> {
    let m = random_axial_moments(n_max, conv, seed)?;
    let norm = m.norm();
    Ok(m.scaled(1.0 / norm))
}

/// Samples the band-limited function at every quadrature node.
pub fn sample(m: &MomentVector, quad: &Arc<BallQuadrature>) -> Result<ShapeFunction> {
    ShapeFunction::new(Arc::clone(quad), reconstruct_auto(m, quad.nodes()))
}

/// Samples the rotated function (η f)(p) = f(η⁻¹ p) exactly.
pub fn sample_rotated(
    m: &MomentVector,
    quad: &Arc<BallQuadrature>,
    rot: &Rotation,
) -> Result<ShapeFunction> {
    let inv = rot.inverse();
    let coords: Vec<BallCoord> = quad
        .nodes()
        .iter()
        .map(|p| BallCoord::from_cartesian(inv.apply(p.to_cartesian())))
        .collect();
    ShapeFunction::new(Arc::clone(quad), reconstruct_auto(m, &coords))
}

fn reconstruct_auto(m: &MomentVector, coords: &[BallCoord]) -> Vec<f64> {
    #[cfg(feature = "parallel")]
    {
        crate::moments::par_reconstruct(m, coords)
    }
    #[cfg(not(feature = "parallel"))]
    {
        crate::moments::reconstruct(m, coords)
    }
}

/// Uniform sample of `count` entries from `pool` without replacement,
/// deterministic in `seed` (partial Fisher–Yates).
pub fn seeded_subsample(pool: &[usize], count: usize, seed: u64) -> Vec<usize> {
    let count = count.min(pool.len());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pool = pool.to_vec();
    let mut picked = Vec::with_capacity(count);
    for i in 0..count {
        let j = rng.gen_range(i..pool.len());
        pool.swap(i, j);
        picked.push(pool[i]);
    }
    picked
}

/// Families of synthetic solid surfaces for reconstruction studies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolidKind {
    Ellipsoid,
    BoxSolid,
    TwoSpheres,
}

impl SolidKind {
    pub fn cycle(i: usize) -> SolidKind {
        match i % 3 {
            0 => SolidKind::Ellipsoid,
            1 => SolidKind::BoxSolid,
            _ => SolidKind::TwoSpheres,
        }
    }
}

/// `count` surface points of a randomized solid, before normalization.
pub fn solid_cloud(kind: SolidKind, count: usize, seed: u64) -> PointCloud {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let unit = |rng: &mut ChaCha8Rng| loop {
        let v = [
            rng.gen_range(-1.0..1.0f64),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        ];
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n > 1e-3 && n <= 1.0 {
            return [v[0] / n, v[1] / n, v[2] / n];
        }
    };
    let points = match kind {
        SolidKind::Ellipsoid => {
            let abc = [
                rng.gen_range(0.4..1.0),
                rng.gen_range(0.4..1.0),
                rng.gen_range(0.4..1.0),
            ];
            (0..count)
                .map(|_| {
                    let u = unit(&mut rng);
                    [u[0] * abc[0], u[1] * abc[1], u[2] * abc[2]]
                })
                .collect()
        }
        SolidKind::BoxSolid => {
            let d = [
                rng.gen_range(0.3..1.0),
                rng.gen_range(0.3..1.0),
                rng.gen_range(0.3..1.0),
            ];
            let areas = [
                d[1] * d[2],
                d[1] * d[2],
                d[0] * d[2],
                d[0] * d[2],
                d[0] * d[1],
                d[0] * d[1],
            ];
            let total: f64 = areas.iter().sum();
            (0..count)
                .map(|_| {
                    let mut pick = rng.gen_range(0.0..total);
                    let mut face = 0;
                    for (i, a) in areas.iter().enumerate() {
                        if pick < *a {
                            face = i;
                            break;
                        }
                        pick -= a;
                    }
                    let axis = face / 2;
                    let side = if face % 2 == 0 { 1.0 } else { -1.0 };
                    let mut p = [0.0; 3];
                    p[axis] = side * d[axis];
                    let others: Vec<usize> = (0..3).filter(|&k| k != axis).collect();
                    p[others[0]] = rng.gen_range(-1.0..1.0) * d[others[0]];
                    p[others[1]] = rng.gen_range(-1.0..1.0) * d[others[1]];
                    p
                })
                .collect()
        }
        SolidKind::TwoSpheres => {
            let c1 = [
                rng.gen_range(-0.4..0.4),
                rng.gen_range(-0.4..0.4),
                rng.gen_range(-0.4..0.4),
            ];
            let c2 = [
                rng.gen_range(-0.4..0.4),
                rng.gen_range(-0.4..0.4),
                rng.gen_range(-0.4..0.4),
            ];
            let r1 = rng.gen_range(0.3..0.6);
            let r2 = rng.gen_range(0.3..0.6);
            (0..count)
                .map(|i| {
                    let u = unit(&mut rng);
                    if i % 2 == 0 {
                        [c1[0] + r1 * u[0], c1[1] + r1 * u[1], c1[2] + r1 * u[2]]
                    } else {
                        [c2[0] + r2 * u[0], c2[1] + r2 * u[1], c2[2] + r2 * u[2]]
                    }
                })
                .collect()
        }
    };
    PointCloud::new(points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ballgrid::make_quadrature;
    use crate::moments::moments_direct;

    #[test]
    fn real_moments_have_conjugate_symmetry() {
        let m = random_real_moments(4, RadialConvention::Orthogonalized, 123).unwrap();
        assert_eq!(m.conjugate_symmetry_defect(), 0.0);
    }

    #[test]
    fn sampled_series_is_real_and_recovers_moments() {
        let quad = Arc::new(make_quadrature(24, 24, 24).unwrap());
        let m = random_real_moments(3, RadialConvention::Orthogonalized, 7).unwrap();
        let f = sample(&m, &quad).unwrap();
        let back = moments_direct(&f, 3, RadialConvention::Orthogonalized).unwrap();
        for (a, b) in m.coeffs().iter().zip(back.coeffs()) {
            assert!((a - b).norm() < 1e-9, "{a} vs {b}");
        }
    }

    #[test]
    fn axial_moments_have_no_azimuthal_content() {
        let m = random_axial_moments(5, RadialConvention::Orthogonalized, 9).unwrap();
        for (idx, v) in m.iter() {
            if idx.m() != 0 {
                assert_eq!(v, Complex64::new(0.0, 0.0));
            }
        }
        let k = random_unit_kernel_moments(5, RadialConvention::Orthogonalized, 9).unwrap();
        assert!((k.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn solid_clouds_are_deterministic() {
        for kind in [
            SolidKind::Ellipsoid,
            SolidKind::BoxSolid,
            SolidKind::TwoSpheres,
        ] {
            let a = solid_cloud(kind, 256, 42);
            let b = solid_cloud(kind, 256, 42);
            assert_eq!(a.points(), b.points());
            assert_eq!(a.len(), 256);
        }
    }
}
