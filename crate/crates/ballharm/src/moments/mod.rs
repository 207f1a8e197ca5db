//! 3D Zernike moment transforms: direct quadrature projection and the
//! least-squares route through the iterative pseudo-inverse.

mod direct;
mod pinv;
mod recon;
mod system;

pub use direct::moments_direct;
#[cfg(feature = "parallel")]
pub use direct::par_moments_direct;
pub use pinv::{pinv_iterate, Alpha, PinvReport};
#[cfg(feature = "parallel")]
pub use recon::{par_reconstruct, par_reconstruction_error};
pub use recon::{reconstruct, reconstruction_error, ReconstructionError};
pub use system::{
    build_system, moments_lsq, real_unknown_count, ColumnKey, LinearSystem, ReImPart,
};
#[cfg(feature = "parallel")]
pub use system::{par_build_system, par_moments_lsq};

use num_complex::Complex64;

use crate::basis::{enumerate, BasisIndex, RadialConvention};
use crate::error::{Error, Result};

/// Complex Zernike coefficients of a function, canonically ordered.
///
/// For moments of a real-valued function, Ω_{n,l,−m} = (−1)^m Ω†_{n,l,m}.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentVector {
    n_max: u32,
    convention: RadialConvention,
    coeffs: Vec<Complex64>,
}

impl MomentVector {
    pub fn zeros(n_max: u32, convention: RadialConvention) -> Result<Self> {
        let len = enumerate(n_max)?.len();
        Ok(Self {
            n_max,
            convention,
            coeffs: vec![Complex64::new(0.0, 0.0); len],
        })
    }

    pub fn from_coeffs(
        n_max: u32,
        convention: RadialConvention,
        coeffs: Vec<Complex64>,
    ) -> Result<Self> {
        let expect = enumerate(n_max)?.len();
        if coeffs.len() != expect {
            return Err(Error::Mismatch(format!(
                "{} coefficients for n_max = {n_max}; expected {expect}",
                coeffs.len()
            )));
        }
        Ok(Self {
            n_max,
            convention,
            coeffs,
        })
    }

    pub fn n_max(&self) -> u32 {
        self.n_max
    }

    pub fn convention(&self) -> RadialConvention {
        self.convention
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn get(&self, n: u32, l: u32, m: i32) -> Result<Complex64> {
        let idx = BasisIndex::new(n, l, m)?;
        if n > self.n_max {
            return Err(Error::Domain(format!(
                "n = {n} exceeds n_max = {}",
                self.n_max
            )));
        }
        Ok(self.coeffs[idx.position()])
    }

    pub fn set(&mut self, n: u32, l: u32, m: i32, value: Complex64) -> Result<()> {
        let idx = BasisIndex::new(n, l, m)?;
        if n > self.n_max {
            return Err(Error::Domain(format!(
                "n = {n} exceeds n_max = {}",
                self.n_max
            )));
        }
        self.coeffs[idx.position()] = value;
        Ok(())
    }

    pub fn iter(&self) -> impl Iterator<Item = (BasisIndex, Complex64)> + '_ {
        enumerate(self.n_max)
            .expect("n_max validated at construction")
            .into_iter()
            .zip(self.coeffs.iter().copied())
    }

    /// Largest violation of the real-function symmetry
    /// Ω_{n,l,−m} − (−1)^m Ω†_{n,l,m}.
    pub fn conjugate_symmetry_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for (idx, v) in self.iter() {
            if idx.m() < 0 {
                let mirror = self.coeffs[BasisIndex::new(idx.n(), idx.l(), -idx.m())
                    .unwrap()
                    .position()];
                let sign = if idx.m() % 2 == 0 { 1.0 } else { -1.0 };
                worst = worst.max((v - sign * mirror.conj()).norm());
            }
        }
        worst
    }

    /// √(Σ |Ω|²).
    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self {
            n_max: self.n_max,
            convention: self.convention,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n_max != other.n_max || self.convention != other.convention {
            return Err(Error::Mismatch(
                "moment vectors differ in order or convention".into(),
            ));
        }
        Ok(Self {
            n_max: self.n_max,
            convention: self.convention,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn get_set_round_trip() {
        let mut m = MomentVector::zeros(3, RadialConvention::Orthogonalized).unwrap();
        m.set(2, 2, -1, Complex64::new(1.5, -0.5)).unwrap();
        assert_eq!(m.get(2, 2, -1).unwrap(), Complex64::new(1.5, -0.5));
        assert_eq!(m.get(0, 0, 0).unwrap(), Complex64::new(0.0, 0.0));
        assert!(m.get(4, 0, 0).is_err());
        assert!(m.set(2, 1, 0, Complex64::new(1.0, 0.0)).is_err());
    }

    #[test]
    fn length_matches_canonical_count() {
        let m = MomentVector::zeros(5, RadialConvention::Orthogonalized).unwrap();
        assert_eq!(m.coeffs().len(), 56);
    }

    #[test]
    fn symmetry_defect_detects_violation() {
        let mut m = MomentVector::zeros(2, RadialConvention::Orthogonalized).unwrap();
        m.set(2, 2, 1, Complex64::new(1.0, 2.0)).unwrap();
        m.set(2, 2, -1, Complex64::new(-1.0, 2.0)).unwrap(); // = −conj ✓
        assert!(m.conjugate_symmetry_defect() < 1e-15);
        m.set(2, 2, -1, Complex64::new(1.0, 2.0)).unwrap();
        assert!(m.conjugate_symmetry_defect() > 1.0);
    }
}
