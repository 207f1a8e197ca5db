//! Forward transform by direct quadrature projection.

use num_complex::Complex64;

use crate::ballgrid::ShapeFunction;
use crate::basis::{BasisEvaluator, RadialConvention};
use crate::error::Result;
use crate::exec::{self, Mode};

use super::MomentVector;

fn moments_direct_impl(
    mode: Mode,
    f: &ShapeFunction,
    n_max: u32,
    conv: RadialConvention,
) -> Result<MomentVector> {
    let ev = BasisEvaluator::new(n_max, conv)?;
    let k = ev.len();
    let quad = f.quad();
    let nodes = quad.nodes();
    let weights = quad.weights();
    let values = f.values();

    let partials = exec::chunk_partials(mode, quad.len(), |range| {
        let mut acc = vec![Complex64::new(0.0, 0.0); k];
        let mut scratch = ev.scratch();
        let mut z = vec![Complex64::new(0.0, 0.0); k];
        for i in range {
            let wf = weights[i] * values[i];
            if wf == 0.0 {
                continue;
            }
            ev.eval_into(&nodes[i], &mut scratch, &mut z);
            for (a, zk) in acc.iter_mut().zip(&z) {
                *a += wf * zk.conj();
            }
        }
        acc
    });

    let mut coeffs = vec![Complex64::new(0.0, 0.0); k];
    for p in partials {
        for (c, v) in coeffs.iter_mut().zip(p) {
            *c += v;
        }
    }
    // Under the orthogonalized convention ⟨Z, Z⟩ = 4π/3, so the projection is
    // rescaled to make moments of a basis function recover the unit
    // coefficient and series reconstruction exact.
    if conv == RadialConvention::Orthogonalized {
        let s = 3.0 / (4.0 * std::f64::consts::PI);
        for c in &mut coeffs {
            *c *= s;
        }
    }
    MomentVector::from_coeffs(n_max, conv, coeffs)
}

/// Ω_{n,l,m} = Σᵢ wᵢ fᵢ Z†_{n,l,m}(pᵢ), rescaled by 3/(4π) under the
/// orthogonalized convention.
pub fn moments_direct(
    f: &ShapeFunction,
    n_max: u32,
    conv: RadialConvention,
) -> Result<MomentVector> {
    moments_direct_impl(Mode::Seq, f, n_max, conv)
}

/// Parallel [`moments_direct`]; bit-identical to the sequential path.
#[cfg(feature = "parallel")]
pub fn par_moments_direct(
    f: &ShapeFunction,
    n_max: u32,
    conv: RadialConvention,
) -> Result<MomentVector> {
    moments_direct_impl(Mode::Par, f, n_max, conv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ballgrid::{make_quadrature, BallCoord};
    use crate::basis::{zernike_basis, BasisIndex};
    use std::sync::Arc;

    #[test]
    fn recovers_unit_coefficient_of_constant_basis_function() {
        let quad = Arc::new(make_quadrature(16, 8, 8).unwrap());
        let idx = BasisIndex::new(0, 0, 0).unwrap();
        let f = ShapeFunction::from_fn(Arc::clone(&quad), |p| {
            zernike_basis(idx, p, RadialConvention::Orthogonalized)
                .unwrap()
                .re
        });
        let m = moments_direct(&f, 0, RadialConvention::Orthogonalized).unwrap();
        assert!((m.get(0, 0, 0).unwrap().re - 1.0).abs() < 1e-6);
        assert!(m.get(0, 0, 0).unwrap().im.abs() < 1e-12);
    }

    #[test]
    fn zero_function_gives_zero_moments() {
        let quad = Arc::new(make_quadrature(8, 8, 8).unwrap());
        let f = ShapeFunction::zeros(quad);
        let m = moments_direct(&f, 3, RadialConvention::Orthogonalized).unwrap();
        assert!(m.coeffs().iter().all(|c| c.norm() == 0.0));
    }

    #[test]
    fn real_input_has_conjugate_symmetric_moments() {
        let quad = Arc::new(make_quadrature(16, 16, 16).unwrap());
        let f = ShapeFunction::from_fn(quad, |p: &BallCoord| {
            (2.0 * p.r()).sin() * (p.theta() + 0.3).cos() * p.phi().sin()
        });
        let m = moments_direct(&f, 4, RadialConvention::Orthogonalized).unwrap();
        assert!(m.conjugate_symmetry_defect() < 1e-9);
    }

    #[test]
    fn order_cap_enforced() {
        let quad = Arc::new(make_quadrature(4, 4, 4).unwrap());
        let f = ShapeFunction::zeros(quad);
        assert!(moments_direct(&f, 17, RadialConvention::Orthogonalized).is_err());
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn parallel_matches_sequential_bitwise() {
        let quad = Arc::new(make_quadrature(12, 12, 12).unwrap());
        let f = ShapeFunction::from_fn(quad, |p: &BallCoord| (5.0 * p.r()).cos() + p.phi().cos());
        let a = moments_direct(&f, 4, RadialConvention::Orthogonalized).unwrap();
        let b = par_moments_direct(&f, 4, RadialConvention::Orthogonalized).unwrap();
        for (x, y) in a.coeffs().iter().zip(b.coeffs()) {
            assert_eq!(x.re.to_bits(), y.re.to_bits());
            assert_eq!(x.im.to_bits(), y.im.to_bits());
        }
    }
}
