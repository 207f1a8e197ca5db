//! Pairwise basis inner products under the ball measure.

use ndarray::Array2;
use num_complex::Complex64;

use crate::ballgrid::BallQuadrature;
use crate::error::{Error, Result};
use crate::exec::{self, Mode};

use super::eval::BasisEvaluator;
use super::radial::RadialConvention;

fn gram_impl(
    mode: Mode,
    n_max: u32,
    quad: &BallQuadrature,
    conv: RadialConvention,
) -> Result<Array2<f64>> {
    if quad.is_empty() {
        return Err(Error::Config("empty quadrature node set".into()));
    }
    let ev = BasisEvaluator::new(n_max, conv)?;
    let k = ev.len();
    let nodes = quad.nodes();
    let weights = quad.weights();

    let partials = exec::chunk_partials(mode, quad.len(), |range| {
        let mut acc = vec![Complex64::new(0.0, 0.0); k * k];
        let mut scratch = ev.scratch();
        let mut z = vec![Complex64::new(0.0, 0.0); k];
        for i in range {
            ev.eval_into(&nodes[i], &mut scratch, &mut z);
            let w = weights[i];
            for a in 0..k {
                let za = z[a] * w;
                let row = &mut acc[a * k..(a + 1) * k];
                for (b, zb) in z.iter().enumerate() {
                    row[b] += za * zb.conj();
                }
            }
        }
        acc
    });

    let mut total = vec![Complex64::new(0.0, 0.0); k * k];
    for p in partials {
        for (t, v) in total.iter_mut().zip(p) {
            *t += v;
        }
    }
    Ok(Array2::from_shape_fn((k, k), |(i, j)| {
        total[i * k + j].norm()
    }))
}

/// Magnitudes |⟨Z_i, Z_j⟩| over canonical index pairs, integrated with the
/// quadrature's r² sin φ measure. Under the orthogonalized convention this is
/// (4π/3)·I up to quadrature error.
pub fn gram_matrix(
    n_max: u32,
    quad: &BallQuadrature,
    conv: RadialConvention,
) -> Result<Array2<f64>> {
    gram_impl(Mode::Seq, n_max, quad, conv)
}

/// Parallel [`gram_matrix`]; bit-identical to the sequential path.
#[cfg(feature = "parallel")]
pub fn par_gram_matrix(
    n_max: u32,
    quad: &BallQuadrature,
    conv: RadialConvention,
) -> Result<Array2<f64>> {
    gram_impl(Mode::Par, n_max, quad, conv)
}
