//! The real overdetermined system behind the least-squares transform.
//!
//! A real function expands as Σ A_{n,l,m} Re{Z_{n,l,m}} + B_{n,l,m} Im{Z_{n,l,m}}
//! over m ≥ 0, with no B column at m = 0 (Y_{l,0} is real). Solving the system
//! and recombining through Ω_{n,l,0} = A₀, Ω_{n,l,m} = (A_m − iB_m)/2 and the
//! negative-order conjugate relation yields the complex moments.

use ndarray::{Array1, Array2};
use num_complex::Complex64;

use crate::ballgrid::BallCoord;
use crate::basis::{enumerate, BasisEvaluator, BasisIndex, RadialConvention};
use crate::error::{Error, Result};
use crate::exec::{self, Mode};

use super::pinv::{pinv_iterate, Alpha, PinvReport};
use super::MomentVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReImPart {
    Re,
    Im,
}

/// Which (index, component) a design-matrix column holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColumnKey {
    pub index: BasisIndex,
    pub part: ReImPart,
}

#[derive(Debug, Clone)]
pub struct LinearSystem {
    pub design: Array2<f64>,
    pub targets: Array1<f64>,
    pub layout: Vec<ColumnKey>,
}

/// Number of real unknowns for order n_max: one A column per m ∈ [0, l] and
/// one B column per m ∈ [1, l].
pub fn real_unknown_count(n_max: u32) -> usize {
    let mut count = 0;
    for n in 0..=n_max {
        for l in (n % 2..=n).step_by(2) {
            count += 2 * l as usize + 1;
        }
    }
    count
}

fn column_layout(n_max: u32) -> Result<Vec<ColumnKey>> {
    let mut layout = Vec::new();
    for idx in enumerate(n_max)? {
        if idx.m() < 0 {
            continue;
        }
        layout.push(ColumnKey {
            index: idx,
            part: ReImPart::Re,
        });
        if idx.m() > 0 {
            layout.push(ColumnKey {
                index: idx,
                part: ReImPart::Im,
            });
        }
    }
    Ok(layout)
}

fn build_system_impl(
    mode: Mode,
    coords: &[BallCoord],
    values: &[f64],
    n_max: u32,
    conv: RadialConvention,
) -> Result<LinearSystem> {
    if coords.len() != values.len() {
        return Err(Error::Mismatch(format!(
            "{} coordinates with {} values",
            coords.len(),
            values.len()
        )));
    }
    let layout = column_layout(n_max)?;
    let required = layout.len();
    if coords.len() < required {
        return Err(Error::Underdetermined {
            required,
            got: coords.len(),
        });
    }
    let ev = BasisEvaluator::new(n_max, conv)?;
    let k = ev.len();

    let rows = exec::map_indexed(mode, coords.len(), |i| {
        let mut scratch = ev.scratch();
        let mut z = vec![Complex64::new(0.0, 0.0); k];
        ev.eval_into(&coords[i], &mut scratch, &mut z);
        let mut row = Vec::with_capacity(required);
        for key in &layout {
            let v = z[key.index.position()];
            row.push(match key.part {
                ReImPart::Re => v.re,
                ReImPart::Im => v.im,
            });
        }
        row
    });

    let mut design = Array2::zeros((coords.len(), required));
    for (i, row) in rows.into_iter().enumerate() {
        for (j, v) in row.into_iter().enumerate() {
            design[(i, j)] = v;
        }
    }
    Ok(LinearSystem {
        design,
        targets: Array1::from_vec(values.to_vec()),
        layout,
    })
}

/// Assembles the design matrix X (rows = samples, columns = Re/Im basis
/// evaluations) and target vector.
pub fn build_system(
    coords: &[BallCoord],
    values: &[f64],
    n_max: u32,
    conv: RadialConvention,
) -> Result<LinearSystem> {
    build_system_impl(Mode::Seq, coords, values, n_max, conv)
}

/// Parallel [`build_system`]; bit-identical to the sequential path.
#[cfg(feature = "parallel")]
pub fn par_build_system(
    coords: &[BallCoord],
    values: &[f64],
    n_max: u32,
    conv: RadialConvention,
) -> Result<LinearSystem> {
    build_system_impl(Mode::Par, coords, values, n_max, conv)
}

fn recombine(
    layout: &[ColumnKey],
    solution: &Array1<f64>,
    n_max: u32,
    conv: RadialConvention,
) -> Result<MomentVector> {
    let mut m = MomentVector::zeros(n_max, conv)?;
    for (key, &c) in layout.iter().zip(solution.iter()) {
        let idx = key.index;
        let prev = m.get(idx.n(), idx.l(), idx.m())?;
        let add = match (idx.m(), key.part) {
            (0, _) => Complex64::new(c, 0.0),
            (_, ReImPart::Re) => Complex64::new(c / 2.0, 0.0),
            (_, ReImPart::Im) => Complex64::new(0.0, -c / 2.0),
        };
        m.set(idx.n(), idx.l(), idx.m(), prev + add)?;
    }
    // negative orders from the conjugate relation
    let all = enumerate(n_max)?;
    for idx in all {
        if idx.m() < 0 {
            let pos = m.get(idx.n(), idx.l(), -idx.m())?;
            let sign = if idx.m() % 2 == 0 { 1.0 } else { -1.0 };
            m.set(idx.n(), idx.l(), idx.m(), sign * pos.conj())?;
        }
    }
    Ok(m)
}

fn moments_lsq_impl(
    mode: Mode,
    coords: &[BallCoord],
    values: &[f64],
    n_max: u32,
    iterations: usize,
    alpha: Alpha,
    conv: RadialConvention,
) -> Result<(MomentVector, PinvReport)> {
    let system = build_system_impl(mode, coords, values, n_max, conv)?;
    let (pinv, report) = pinv_iterate(&system.design, iterations, alpha)?;
    let solution = pinv.dot(&system.targets);
    let m = recombine(&system.layout, &solution, n_max, conv)?;
    Ok((m, report))
}

/// Least-squares moments: solve the overdetermined system with the iterative
/// pseudo-inverse and recombine to complex coefficients.
pub fn moments_lsq(
    coords: &[BallCoord],
    values: &[f64],
    n_max: u32,
    iterations: usize,
    alpha: Alpha,
    conv: RadialConvention,
) -> Result<(MomentVector, PinvReport)> {
    moments_lsq_impl(Mode::Seq, coords, values, n_max, iterations, alpha, conv)
}

/// Parallel [`moments_lsq`] (system assembly parallelized over rows).
#[cfg(feature = "parallel")]
pub fn par_moments_lsq(
    coords: &[BallCoord],
    values: &[f64],
    n_max: u32,
    iterations: usize,
    alpha: Alpha,
    conv: RadialConvention,
) -> Result<(MomentVector, PinvReport)> {
    moments_lsq_impl(Mode::Par, coords, values, n_max, iterations, alpha, conv)
}
