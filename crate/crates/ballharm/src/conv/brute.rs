//! Brute-force quadrature oracles for both convolution theorems.

use num_complex::Complex64;

use crate::ballgrid::{gauss_legendre_rule, BallCoord, Rotation, ShapeFunction};
use crate::error::{Error, Result};
use crate::exec::{self, Mode};

use super::FeatureMap;

/// Largest deviation of `g` from its own θ-ring average, the numerical test
/// of axial symmetry.
fn axial_defect(g: &ShapeFunction) -> f64 {
    let quad = g.quad();
    let (n_r, n_t, n_p) = quad.resolution();
    let vals = g.values();
    let mut worst = 0.0f64;
    for ir in 0..n_r {
        for iu in 0..n_p {
            let ring: Vec<f64> = (0..n_t)
                .map(|it| vals[quad.node_index(ir, iu, it)])
                .collect();
            let mean = ring.iter().sum::<f64>() / n_t as f64;
            for v in ring {
                worst = worst.max((v - mean).abs());
            }
        }
    }
    worst
}

fn brute_force_conv_impl(
    mode: Mode,
    f: &ShapeFunction,
    g: &ShapeFunction,
    directions: &[(f64, f64)],
) -> Result<Vec<f64>> {
    let quad = f.quad();
    if !quad.same_grid(g.quad()) {
        return Err(Error::Mismatch(
            "f and g must be sampled on the same quadrature".into(),
        ));
    }
    let gmax = g.values().iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let defect = axial_defect(g);
    if defect > 1e-6 * gmax.max(1.0) {
        return Err(Error::Degenerate(format!(
            "kernel is not axially symmetric about y: θ-ring deviation {defect:.3e}"
        )));
    }

    let nodes = quad.nodes();
    let weights = quad.weights();
    let fv = f.values();
    let gv = g.values();

    Ok(exec::map_indexed(mode, directions.len(), |d| {
        let (alpha, beta) = directions[d];
        let tau_inv = Rotation::pole_to(alpha, beta).inverse();
        let mut acc = 0.0;
        for i in 0..quad.len() {
            let wf = weights[i] * fv[i];
            if wf == 0.0 {
                continue;
            }
            let q = tau_inv.apply(nodes[i].to_cartesian());
            let c = BallCoord::from_cartesian(q);
            acc += wf * quad.interpolate(gv, &c);
        }
        acc
    }))
}

/// Direct evaluation of the convolution integral: for each direction, rotate
/// the kernel samples (trilinearly resampled on the grid) and take the
/// r² sin φ quadrature inner product with `f`.
///
/// `g` must be axially symmetric about y, checked against its θ-ring average
/// at tolerance 1e−6.
pub fn brute_force_conv(
    f: &ShapeFunction,
    g: &ShapeFunction,
    directions: &[(f64, f64)],
) -> Result<Vec<f64>> {
    brute_force_conv_impl(Mode::Seq, f, g, directions)
}

/// Parallel [`brute_force_conv`] over directions; identical output ordering.
#[cfg(feature = "parallel")]
pub fn par_brute_force_conv(
    f: &ShapeFunction,
    g: &ShapeFunction,
    directions: &[(f64, f64)],
) -> Result<Vec<f64>> {
    brute_force_conv_impl(Mode::Par, f, g, directions)
}

/// Brute-force S² convolution oracle for the spherical baseline.
///
/// Integrates ⟨f, τ_û g_ax⟩ over the sphere with Gauss–Legendre × trapezoid
/// quadrature, where both functions are evaluated exactly from their harmonic
/// series and g_ax is the axial (m = 0) part of `g_hat`.
pub fn sph_conv_brute(
    f_hat: &FeatureMap,
    g_hat: &FeatureMap,
    directions: &[(f64, f64)],
    n_polar: usize,
    n_azimuth: usize,
) -> Result<Vec<Complex64>> {
    if f_hat.l_max() != g_hat.l_max() {
        return Err(Error::Mismatch(format!(
            "l_max differs: {} vs {}",
            f_hat.l_max(),
            g_hat.l_max()
        )));
    }
    if n_polar < 2 || n_azimuth < 2 {
        return Err(Error::Config(
            "spherical quadrature needs at least 2 nodes per axis".into(),
        ));
    }
    let mut g_ax = FeatureMap::zeros(g_hat.l_max());
    for l in 0..=g_hat.l_max() {
        g_ax.set(l, 0, g_hat.get(l, 0)?)?;
    }
    let (u, wu) = gauss_legendre_rule(n_polar);
    let dt = 2.0 * std::f64::consts::PI / n_azimuth as f64;

    // sample f once
    let mut f_samples = Vec::with_capacity(n_polar * n_azimuth);
    let mut angles = Vec::with_capacity(n_polar * n_azimuth);
    let mut sphere_w = Vec::with_capacity(n_polar * n_azimuth);
    for (ui, wi) in u.iter().zip(&wu) {
        let phi = ui.clamp(-1.0, 1.0).acos();
        for it in 0..n_azimuth {
            let theta = it as f64 * dt;
            f_samples.push(f_hat.eval_complex(theta, phi));
            angles.push((theta, phi));
            sphere_w.push(wi * dt);
        }
    }

    let mut out = Vec::with_capacity(directions.len());
    for &(alpha, beta) in directions {
        let tau_inv = Rotation::pole_to(alpha, beta).inverse();
        let mut acc = Complex64::new(0.0, 0.0);
        for ((fs, (theta, phi)), w) in f_samples.iter().zip(&angles).zip(&sphere_w) {
            let p = crate::ballgrid::direction(*theta, *phi);
            let q = tau_inv.apply(p);
            let (t2, p2) = crate::ballgrid::direction_angles(q);
            acc += fs * g_ax.eval_complex(t2, p2).conj() * *w;
        }
        out.push(acc);
    }
    Ok(out)
}
