//! Reconstruction from moments and the mean reconstruction error.

use num_complex::Complex64;

use crate::ballgrid::{BallCoord, ShapeFunction};
use crate::basis::BasisEvaluator;
use crate::error::{Error, Result};
use crate::exec::{self, Mode};

use super::MomentVector;

fn reconstruct_impl(mode: Mode, m: &MomentVector, coords: &[BallCoord]) -> Vec<f64> {
    let ev = BasisEvaluator::new(m.n_max(), m.convention())
        .expect("moment vector order validated at construction");
    let k = ev.len();
    let coeffs = m.coeffs();
    exec::map_indexed(mode, coords.len(), |i| {
        let mut scratch = ev.scratch();
        let mut z = vec![Complex64::new(0.0, 0.0); k];
        ev.eval_into(&coords[i], &mut scratch, &mut z);
        coeffs
            .iter()
            .zip(&z)
            .map(|(c, zk)| (c * zk).re)
            .sum::<f64>()
    })
}

/// f̄(p) = Re[ Σ_k Ω_k Z_k(p) ] at each coordinate.
pub fn reconstruct(m: &MomentVector, coords: &[BallCoord]) -> Vec<f64> {
    reconstruct_impl(Mode::Seq, m, coords)
}

/// Parallel [`reconstruct`]; identical output ordering.
#[cfg(feature = "parallel")]
pub fn par_reconstruct(m: &MomentVector, coords: &[BallCoord]) -> Vec<f64> {
    reconstruct_impl(Mode::Par, m, coords)
}

/// Mean reconstruction error of `m` against `f`.
#[derive(Debug, Clone, Copy)]
pub struct ReconstructionError {
    /// (1/T) Σ |f̄(t) − f(t)| over the evaluation set.
    pub mean_abs: f64,
    /// `mean_abs` divided by the mean |f| over the same set, for percentage
    /// reporting. 0 when both vanish.
    pub relative: f64,
}

/// Evaluates the error over the shape's own points — the support of `f` —
/// falling back to every node when `f` vanishes identically (band-limited
/// synthetic functions are supported everywhere, so both readings coincide
/// for them).
pub fn reconstruction_error(f: &ShapeFunction, m: &MomentVector) -> Result<ReconstructionError> {
    reconstruction_error_impl(Mode::Seq, f, m)
}

/// Parallel [`reconstruction_error`].
#[cfg(feature = "parallel")]
pub fn par_reconstruction_error(
    f: &ShapeFunction,
    m: &MomentVector,
) -> Result<ReconstructionError> {
    reconstruction_error_impl(Mode::Par, f, m)
}

fn reconstruction_error_impl(
    mode: Mode,
    f: &ShapeFunction,
    m: &MomentVector,
) -> Result<ReconstructionError> {
    if f.quad().is_empty() {
        return Err(Error::Config("empty node set".into()));
    }
    let support = f.support();
    let nodes = f.quad().nodes();
    let (coords, values): (Vec<BallCoord>, Vec<f64>) = if support.is_empty() {
        (nodes.to_vec(), f.values().to_vec())
    } else {
        (
            support.iter().map(|&i| nodes[i]).collect(),
            support.iter().map(|&i| f.values()[i]).collect(),
        )
    };
    let recon = reconstruct_impl(mode, m, &coords);
    let t = coords.len() as f64;
    let mean_abs = recon
        .iter()
        .zip(&values)
        .map(|(a, b)| (a - b).abs())
        .sum::<f64>()
        / t;
    let mean_f = values.iter().map(|v| v.abs()).sum::<f64>() / t;
    let relative = if mean_f > 0.0 {
        mean_abs / mean_f
    } else if mean_abs > 0.0 {
        f64::INFINITY
    } else {
        0.0
    };
    Ok(ReconstructionError { mean_abs, relative })
}
