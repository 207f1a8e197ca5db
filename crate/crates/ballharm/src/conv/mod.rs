//! Volumetric convolution on the ball and the spherical baseline.
//!
//! For an axial kernel g (only m = 0 moments survive a rotation about the
//! pole), the convolution f∗g(α, β) = ⟨f, τ_{(α,β)} g⟩ has the closed form
//!
//! ```text
//! f∗g(α, β) = (4π/3) Σ_{n,l,m} √(4π/(2l+1)) Ω_{n,l,m}(f) Ω_{n,l,0}(g) Y_{l,m}(α, β)
//! ```
//!
//! under the orthogonalized convention, where the per-l factor √(4π/(2l+1))
//! comes from expanding the rotated axial harmonic,
//! τ Y_{l,0}(x̂) = √(4π/(2l+1)) Σ_m Y_{l,m}(x̂) Y†_{l,m}(û). The brute-force
//! quadrature oracle in [`brute_force_conv`] validates the identity directly.

mod brute;
mod equivariance;

#[cfg(feature = "parallel")]
pub use brute::par_brute_force_conv;
pub use brute::{brute_force_conv, sph_conv_brute};
pub use equivariance::{equivariance_check, equivariance_check_bandlimited, feature_map_deviation};

use num_complex::Complex64;

use crate::basis::spherical_harmonic;
use crate::error::{Error, Result};
use crate::moments::MomentVector;

/// Spherical-harmonic coefficients of a function on the sphere, ordered by
/// ascending l, then m from −l to l.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMap {
    l_max: u32,
    coeffs: Vec<Complex64>,
}

impl FeatureMap {
    pub fn zeros(l_max: u32) -> Self {
        Self {
            l_max,
            coeffs: vec![Complex64::new(0.0, 0.0); ((l_max + 1) * (l_max + 1)) as usize],
        }
    }

    pub fn from_coeffs(l_max: u32, coeffs: Vec<Complex64>) -> Result<Self> {
        let expect = ((l_max + 1) * (l_max + 1)) as usize;
        if coeffs.len() != expect {
            return Err(Error::Mismatch(format!(
                "{} coefficients for l_max = {l_max}; expected {expect}",
                coeffs.len()
            )));
        }
        Ok(Self { l_max, coeffs })
    }

    pub fn l_max(&self) -> u32 {
        self.l_max
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    fn position(l: u32, m: i32) -> usize {
        (l * l) as usize + (m + l as i32) as usize
    }

    pub fn get(&self, l: u32, m: i32) -> Result<Complex64> {
        if l > self.l_max || m.unsigned_abs() > l {
            return Err(Error::Domain(format!("(l, m) = ({l}, {m}) out of range")));
        }
        Ok(self.coeffs[Self::position(l, m)])
    }

    pub fn set(&mut self, l: u32, m: i32, v: Complex64) -> Result<()> {
        if l > self.l_max || m.unsigned_abs() > l {
            return Err(Error::Domain(format!("(l, m) = ({l}, {m}) out of range")));
        }
        self.coeffs[Self::position(l, m)] = v;
        Ok(())
    }

    /// Σ coeff(l, m) Y_{l,m}(θ, φ), complex.
    pub fn eval_complex(&self, theta: f64, phi: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for l in 0..=self.l_max {
            for m in -(l as i32)..=l as i32 {
                let c = self.coeffs[Self::position(l, m)];
                if c.norm_sqr() == 0.0 {
                    continue;
                }
                acc += c * spherical_harmonic(l, m, theta, phi).expect("indices in range");
            }
        }
        acc
    }

    /// Re[ Σ coeff(l, m) Y_{l,m}(θ, φ) ].
    pub fn eval(&self, theta: f64, phi: f64) -> f64 {
        self.eval_complex(theta, phi).re
    }
}

/// Feature-map evaluation on the sphere.
pub fn eval_feature_map(fm: &FeatureMap, theta: f64, phi: f64) -> f64 {
    fm.eval(theta, phi)
}

/// A kernel symmetric about the pole: every m ≠ 0 moment is structurally zero.
#[derive(Debug, Clone, PartialEq)]
pub struct AxialKernel {
    base: MomentVector,
}

impl AxialKernel {
    pub fn base(&self) -> &MomentVector {
        &self.base
    }

    pub fn n_max(&self) -> u32 {
        self.base.n_max()
    }
}

/// Projects onto the axial subspace: keeps m = 0 coefficients, discards the
/// rest.
pub fn symmetrize_kernel(m: &MomentVector) -> AxialKernel {
    let mut base = MomentVector::zeros(m.n_max(), m.convention()).expect("order already validated");
    for (idx, v) in m.iter() {
        if idx.m() == 0 {
            base.set(idx.n(), idx.l(), 0, v).expect("index valid");
        }
    }
    AxialKernel { base }
}

/// Closed-form volumetric convolution; the output lives on the sphere with
/// l_max = n_max.
pub fn vol_conv(f: &MomentVector, g: &AxialKernel) -> Result<FeatureMap> {
    if f.n_max() != g.base().n_max() {
        return Err(Error::Mismatch(format!(
            "orders differ: f has n_max {}, kernel has {}",
            f.n_max(),
            g.base().n_max()
        )));
    }
    if f.convention() != g.base().convention() {
        return Err(Error::Mismatch(format!(
            "conventions differ: {} vs {}",
            f.convention(),
            g.base().convention()
        )));
    }
    let n_max = f.n_max();
    let four_pi = 4.0 * std::f64::consts::PI;
    let mut fm = FeatureMap::zeros(n_max);
    for l in 0..=n_max {
        let scale = four_pi / 3.0 * (four_pi / (2.0 * l as f64 + 1.0)).sqrt();
        for m in -(l as i32)..=l as i32 {
            let mut s = Complex64::new(0.0, 0.0);
            let mut n = l;
            while n <= n_max {
                s += f.get(n, l, m)? * g.base().get(n, l, 0)?;
                n += 2;
            }
            fm.set(l, m, scale * s)?;
        }
    }
    Ok(fm)
}

/// Spherical convolution baseline in frequency space:
/// out(l, m) = √(4π/(2l+1)) · f̂(l, m) · ĝ(l, 0)†.
pub fn sph_conv(f_hat: &FeatureMap, g_hat: &FeatureMap) -> Result<FeatureMap> {
    if f_hat.l_max() != g_hat.l_max() {
        return Err(Error::Mismatch(format!(
            "l_max differs: {} vs {}",
            f_hat.l_max(),
            g_hat.l_max()
        )));
    }
    let mut out = FeatureMap::zeros(f_hat.l_max());
    for l in 0..=f_hat.l_max() {
        let scale = (4.0 * std::f64::consts::PI / (2.0 * l as f64 + 1.0)).sqrt();
        let g0 = g_hat.get(l, 0)?.conj();
        for m in -(l as i32)..=l as i32 {
            out.set(l, m, scale * f_hat.get(l, m)? * g0)?;
        }
    }
    Ok(out)
}

/// `n` near-uniform directions over the whole sphere from the golden-angle
/// spiral, as (azimuth, polar) pairs.
pub fn fibonacci_directions(n: usize) -> Vec<(f64, f64)> {
    let golden = std::f64::consts::PI * (3.0 - 5.0f64.sqrt());
    (0..n)
        .map(|i| {
            let y = 1.0 - (2.0 * i as f64 + 1.0) / n as f64;
            let beta = y.clamp(-1.0, 1.0).acos();
            let alpha = (golden * i as f64).rem_euclid(2.0 * std::f64::consts::PI);
            (alpha, beta)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::RadialConvention;
    use std::f64::consts::PI;

    #[test]
    fn symmetrize_keeps_axial_slots_only() {
        let mut m = MomentVector::zeros(2, RadialConvention::Orthogonalized).unwrap();
        m.set(2, 0, 0, Complex64::new(1.0, 0.0)).unwrap();
        m.set(2, 2, 1, Complex64::new(5.0, 0.0)).unwrap();
        let k = symmetrize_kernel(&m);
        assert_eq!(k.base().get(2, 0, 0).unwrap(), Complex64::new(1.0, 0.0));
        assert_eq!(k.base().get(2, 2, 1).unwrap(), Complex64::new(0.0, 0.0));
        // already-axial input is unchanged
        let k2 = symmetrize_kernel(k.base());
        assert_eq!(k2.base(), k.base());
        // zero stays zero
        let z = MomentVector::zeros(2, RadialConvention::Orthogonalized).unwrap();
        assert!(symmetrize_kernel(&z)
            .base()
            .coeffs()
            .iter()
            .all(|c| c.norm() == 0.0));
    }

    #[test]
    fn constant_kernel_gives_constant_map() {
        let mut f = MomentVector::zeros(1, RadialConvention::Orthogonalized).unwrap();
        f.set(0, 0, 0, Complex64::new(0.7, 0.0)).unwrap();
        f.set(1, 1, 0, Complex64::new(0.4, 0.0)).unwrap();
        let mut g = MomentVector::zeros(1, RadialConvention::Orthogonalized).unwrap();
        let c = 2.5;
        g.set(0, 0, 0, Complex64::new(c, 0.0)).unwrap();
        let fm = vol_conv(&f, &symmetrize_kernel(&g)).unwrap();
        // only the (0,0) term survives; its value is (4π/3)·c·Ω_f everywhere
        let expect = 4.0 * PI / 3.0 * c * 0.7;
        for (th, ph) in [(0.0, 0.0), (1.0, 1.0), (4.0, 2.5)] {
            assert!((fm.eval(th, ph) - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_input_gives_zero_map() {
        let f = MomentVector::zeros(3, RadialConvention::Orthogonalized).unwrap();
        let mut g = MomentVector::zeros(3, RadialConvention::Orthogonalized).unwrap();
        g.set(1, 1, 0, Complex64::new(1.0, 0.0)).unwrap();
        let fm = vol_conv(&f, &symmetrize_kernel(&g)).unwrap();
        assert!(fm.coeffs().iter().all(|c| c.norm() == 0.0));
    }

    #[test]
    fn convention_mismatch_rejected() {
        let f = MomentVector::zeros(2, RadialConvention::PaperLiteral).unwrap();
        let g = MomentVector::zeros(2, RadialConvention::Orthogonalized).unwrap();
        assert!(vol_conv(&f, &symmetrize_kernel(&g)).is_err());
        let h = MomentVector::zeros(3, RadialConvention::PaperLiteral).unwrap();
        assert!(vol_conv(&f, &symmetrize_kernel(&h)).is_err());
    }

    #[test]
    fn feature_map_constant_coefficient() {
        let mut fm = FeatureMap::zeros(2);
        fm.set(0, 0, Complex64::new(3.0, 0.0)).unwrap();
        let expect = 3.0 / (4.0 * PI).sqrt();
        assert!((fm.eval(1.2, 2.2) - expect).abs() < 1e-14);
        let z = FeatureMap::zeros(2);
        assert_eq!(z.eval(0.3, 0.3), 0.0);
    }

    #[test]
    fn sph_conv_single_coefficient() {
        let mut f = FeatureMap::zeros(2);
        f.set(0, 0, Complex64::new(1.5, 0.0)).unwrap();
        f.set(1, 1, Complex64::new(0.0, 2.0)).unwrap();
        let mut g = FeatureMap::zeros(2);
        let c = Complex64::new(0.5, -0.25);
        g.set(0, 0, c).unwrap();
        let out = sph_conv(&f, &g).unwrap();
        let expect = (4.0 * PI).sqrt() * Complex64::new(1.5, 0.0) * c.conj();
        assert!((out.get(0, 0).unwrap() - expect).norm() < 1e-14);
        // g has no (1, 0) component, so every l = 1 output vanishes
        assert_eq!(out.get(1, 1).unwrap(), Complex64::new(0.0, 0.0));
        // zero f gives zero output
        let zf = FeatureMap::zeros(2);
        let zout = sph_conv(&zf, &g).unwrap();
        assert!(zout.coeffs().iter().all(|v| v.norm() == 0.0));
        // l_max mismatch
        let g3 = FeatureMap::zeros(3);
        assert!(sph_conv(&f, &g3).is_err());
    }

    #[test]
    fn fibonacci_directions_cover_sphere() {
        let dirs = fibonacci_directions(200);
        assert_eq!(dirs.len(), 200);
        let mean_y: f64 = dirs.iter().map(|&(_, b)| b.cos()).sum::<f64>() / 200.0;
        assert!(mean_y.abs() < 1e-6);
        assert!(dirs.iter().any(|&(_, b)| b < 0.3));
        assert!(dirs.iter().any(|&(_, b)| b > PI - 0.3));
    }
}
