//! Axial-symmetry power measure and the equi-angular-axis descriptor.
//!
//! The power of the projection of a function onto the subspace of basis
//! functions symmetric about the axis (α, β) is
//!
//! ```text
//! ‖sym_{(α,β)}‖ = Σ_n Σ_l ‖ Σ_m Ω_{n,l,m} Y_{l,m}(α, β) ‖²
//! ```
//!
//! Overall constants are dropped; all comparisons between axes are relative.

use num_complex::Complex64;

use crate::basis::spherical_harmonic;
use crate::error::{Error, Result};
use crate::moments::MomentVector;

/// A duplicate-free list of axes as (azimuth, polar) pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct AxisSet {
    axes: Vec<(f64, f64)>,
}

impl AxisSet {
    pub fn new(axes: Vec<(f64, f64)>) -> Result<Self> {
        for &(a, b) in &axes {
            if !a.is_finite() || !(0.0..=std::f64::consts::PI).contains(&b) {
                return Err(Error::Domain(format!("axis ({a}, {b}) out of range")));
            }
        }
        for i in 0..axes.len() {
            for j in (i + 1)..axes.len() {
                let u = crate::ballgrid::direction(axes[i].0, axes[i].1);
                let v = crate::ballgrid::direction(axes[j].0, axes[j].1);
                let dot = (u[0] * v[0] + u[1] * v[1] + u[2] * v[2]).clamp(-1.0, 1.0);
                if dot.acos() <= 1e-9 {
                    return Err(Error::Domain(format!("axes {i} and {j} coincide")));
                }
            }
        }
        Ok(Self { axes })
    }

    pub fn axes(&self) -> &[(f64, f64)] {
        &self.axes
    }

    pub fn len(&self) -> usize {
        self.axes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.axes.is_empty()
    }
}

/// `k` axes from the golden-angle spiral restricted to the upper hemisphere
/// (cos β = 1 − i/k); the first axis is always the pole.
pub fn default_axes(k: usize) -> Result<AxisSet> {
    if k == 0 {
        return Err(Error::Config("axis count must be at least 1".into()));
    }
    let golden = std::f64::consts::PI * (3.0 - 5.0f64.sqrt());
    let axes = (0..k)
        .map(|i| {
            let beta = (1.0 - i as f64 / k as f64).clamp(-1.0, 1.0).acos();
            let alpha = (golden * i as f64).rem_euclid(2.0 * std::f64::consts::PI);
            (if i == 0 { 0.0 } else { alpha }, beta)
        })
        .collect();
    AxisSet::new(axes)
}

/// Power of the projection of the function onto the axial subspace of the
/// axis (alpha, beta). Non-negative; quadratic in the moments.
pub fn axial_symmetry(m: &MomentVector, alpha: f64, beta: f64) -> f64 {
    let mut total = 0.0;
    for n in 0..=m.n_max() {
        for l in (n % 2..=n).step_by(2) {
            let mut s = Complex64::new(0.0, 0.0);
            for mm in -(l as i32)..=l as i32 {
                let omega = m.get(n, l, mm).expect("index in range");
                if omega.norm_sqr() == 0.0 {
                    continue;
                }
                s += omega * spherical_harmonic(l, mm, alpha, beta).expect("index in range");
            }
            total += s.norm_sqr();
        }
    }
    total
}

/// [`axial_symmetry`] per axis, in `AxisSet` order.
pub fn symmetry_descriptor(m: &MomentVector, axes: &AxisSet) -> Vec<f64> {
    axes.axes()
        .iter()
        .map(|&(a, b)| axial_symmetry(m, a, b))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::RadialConvention;

    #[test]
    fn zero_moments_zero_everywhere() {
        let m = MomentVector::zeros(3, RadialConvention::Orthogonalized).unwrap();
        assert_eq!(axial_symmetry(&m, 1.0, 1.0), 0.0);
        let axes = default_axes(4).unwrap();
        assert_eq!(symmetry_descriptor(&m, &axes), vec![0.0; 4]);
    }

    #[test]
    fn pole_axis_maximizes_axial_function() {
        let mut m = MomentVector::zeros(2, RadialConvention::Orthogonalized).unwrap();
        m.set(2, 0, 0, Complex64::new(1.0, 0.0)).unwrap();
        m.set(2, 2, 0, Complex64::new(0.8, 0.0)).unwrap();
        let at_pole = axial_symmetry(&m, 0.0, 0.0);
        for i in 0..20 {
            for j in 0..20 {
                let a = i as f64 * std::f64::consts::TAU / 20.0;
                let b = j as f64 * std::f64::consts::PI / 19.0;
                assert!(
                    axial_symmetry(&m, a, b) <= at_pole + 1e-12,
                    "axis ({a}, {b}) beats the pole"
                );
            }
        }
    }

    #[test]
    fn default_axes_anchor_and_separation() {
        let one = default_axes(1).unwrap();
        assert_eq!(one.axes(), &[(0.0, 0.0)]);
        let four = default_axes(4).unwrap();
        assert_eq!(four.len(), 4);
        for i in 0..4 {
            let (_, b) = four.axes()[i];
            assert!(b < std::f64::consts::PI / 2.0 + 1e-12, "axis below equator");
            for j in (i + 1)..4 {
                let u = crate::ballgrid::direction(four.axes()[i].0, four.axes()[i].1);
                let v = crate::ballgrid::direction(four.axes()[j].0, four.axes()[j].1);
                let ang = (u[0] * v[0] + u[1] * v[1] + u[2] * v[2])
                    .clamp(-1.0, 1.0)
                    .acos();
                assert!(ang >= 0.6, "axes {i},{j} separated by only {ang}");
            }
        }
        assert!(default_axes(0).is_err());
    }

    #[test]
    fn scaling_moments_scales_power_quadratically() {
        let m =
            crate::synthetic::random_real_moments(3, RadialConvention::Orthogonalized, 5).unwrap();
        let s = 2.75;
        let scaled = m.scaled(s);
        for &(a, b) in &[(0.3, 0.4), (2.0, 1.5), (5.5, 2.9)] {
            let base = axial_symmetry(&m, a, b);
            let big = axial_symmetry(&scaled, a, b);
            assert!((big - s * s * base).abs() <= 1e-9 * big.max(1.0));
            assert!(base >= 0.0);
        }
    }

    #[test]
    fn descriptor_length_matches_axes() {
        let m =
            crate::synthetic::random_real_moments(2, RadialConvention::Orthogonalized, 6).unwrap();
        for k in [1, 3, 7] {
            let axes = default_axes(k).unwrap();
            assert_eq!(symmetry_descriptor(&m, &axes).len(), k);
        }
    }
}
