//! Batch evaluation of the full basis at a point.

use num_complex::Complex64;

use crate::ballgrid::BallCoord;
use crate::error::Result;

use super::harmonics::{condon_shortley, harmonic_norm};
use super::index::{enumerate, BasisIndex};
use super::legendre::legendre_table;
use super::radial::{RadialConvention, RadialTable};

/// Precomputed tables for evaluating every Z_{n,l,m} with n ≤ n_max at a
/// coordinate. Immutable after construction; share freely across threads.
#[derive(Debug, Clone)]
pub struct BasisEvaluator {
    n_max: u32,
    convention: RadialConvention,
    indices: Vec<BasisIndex>,
    radial: RadialTable,
    /// cs(m)·N(l,m) per triangular (l, m ≥ 0) slot.
    scales: Vec<f64>,
}

/// Per-thread scratch for [`BasisEvaluator::eval_into`].
#[derive(Debug, Default, Clone)]
pub struct EvalScratch {
    leg: Vec<f64>,
    eim: Vec<Complex64>,
    block: Vec<Complex64>,
}

fn tri(l: u32, m: u32) -> usize {
    (l as usize) * (l as usize + 1) / 2 + m as usize
}

impl BasisEvaluator {
    pub fn new(n_max: u32, convention: RadialConvention) -> Result<Self> {
        let indices = enumerate(n_max)?;
        let radial = RadialTable::new(n_max, convention)?;
        let mut scales = vec![0.0; tri(n_max, n_max) + 1];
        for l in 0..=n_max {
            for m in 0..=l {
                scales[tri(l, m)] = condon_shortley(m) * harmonic_norm(l, m);
            }
        }
        Ok(Self {
            n_max,
            convention,
            indices,
            radial,
            scales,
        })
    }

    pub fn n_max(&self) -> u32 {
        self.n_max
    }

    pub fn convention(&self) -> RadialConvention {
        self.convention
    }

    pub fn indices(&self) -> &[BasisIndex] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn scratch(&self) -> EvalScratch {
        EvalScratch {
            leg: Vec::new(),
            eim: vec![Complex64::new(0.0, 0.0); self.n_max as usize + 1],
            block: vec![Complex64::new(0.0, 0.0); self.n_max as usize + 1],
        }
    }

    /// Writes Z_k(p) for every canonical index into `out`.
    ///
    /// Negative orders come from Z_{n,l,−m} = (−1)^m Z†_{n,l,m} applied to the
    /// just-computed positive-order value, so the symmetry is bit-exact.
    pub fn eval_into(&self, p: &BallCoord, scratch: &mut EvalScratch, out: &mut [Complex64]) {
        debug_assert_eq!(out.len(), self.indices.len());
        let x = p.phi().cos();
        legendre_table(self.n_max, x, &mut scratch.leg);
        for m in 0..=self.n_max {
            scratch.eim[m as usize] = Complex64::from_polar(1.0, m as f64 * p.theta());
        }
        let mut pos = 0;
        for n in 0..=self.n_max {
            for l in (n % 2..=n).step_by(2) {
                let rv = self.radial.eval(n, l, p.r());
                for m in 0..=l {
                    scratch.block[m as usize] = scratch.eim[m as usize]
                        * (rv * self.scales[tri(l, m)] * scratch.leg[tri(l, m)]);
                }
                for m in -(l as i32)..=l as i32 {
                    let ma = m.unsigned_abs();
                    out[pos] = if m >= 0 {
                        scratch.block[ma as usize]
                    } else {
                        condon_shortley(ma) * scratch.block[ma as usize].conj()
                    };
                    pos += 1;
                }
            }
        }
    }

    pub fn eval(&self, p: &BallCoord) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.indices.len()];
        let mut scratch = self.scratch();
        self.eval_into(p, &mut scratch, &mut out);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::zernike_basis;

    #[test]
    fn matches_single_point_evaluation() {
        for conv in [
            RadialConvention::PaperLiteral,
            RadialConvention::Orthogonalized,
        ] {
            let ev = BasisEvaluator::new(5, conv).unwrap();
            let p = BallCoord::new(0.83, 2.9, 1.2).unwrap();
            let vals = ev.eval(&p);
            for (idx, v) in ev.indices().iter().zip(&vals) {
                let single = zernike_basis(*idx, &p, conv).unwrap();
                assert!(
                    (v - single).norm() <= 1e-13 * single.norm().max(1.0),
                    "{idx:?}: {v} vs {single}"
                );
            }
        }
    }

    #[test]
    fn conjugate_symmetry_bit_exact() {
        let ev = BasisEvaluator::new(6, RadialConvention::Orthogonalized).unwrap();
        let p = BallCoord::new(0.4, 5.1, 2.8).unwrap();
        let vals = ev.eval(&p);
        for (idx, v) in ev.indices().iter().zip(&vals) {
            if idx.m() < 0 {
                let mirror = BasisIndex::new(idx.n(), idx.l(), -idx.m()).unwrap();
                let w = vals[mirror.position()];
                let expect = condon_shortley(idx.m().unsigned_abs()) * w.conj();
                assert_eq!(v.re.to_bits(), expect.re.to_bits());
                assert_eq!(v.im.to_bits(), expect.im.to_bits());
            }
        }
    }

    #[test]
    fn origin_is_canonicalized() {
        let ev = BasisEvaluator::new(4, RadialConvention::Orthogonalized).unwrap();
        let a = ev.eval(&BallCoord::new(0.0, 1.0, 2.0).unwrap());
        let b = ev.eval(&BallCoord::new(0.0, 0.0, 0.0).unwrap());
        assert_eq!(a, b);
    }
}
