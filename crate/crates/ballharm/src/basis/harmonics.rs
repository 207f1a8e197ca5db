//! Spherical harmonics on the unit sphere, polar axis +y.
//!
//! For m ≥ 0,
//!
//! ```text
//! Y_{l,m}(θ, φ) = (−1)^m √( (2l+1)/(4π) · (l−m)!/(l+m)! ) P_l^m(cos φ) e^{imθ}
//! ```
//!
//! with θ the azimuth and φ the polar angle. Negative orders are defined by
//! Y_{l,−m} = (−1)^m Y†_{l,m}, applied verbatim so conjugate symmetry holds at
//! the bit level.

use num_complex::Complex64;

use crate::error::{Error, Result};

use super::legendre::assoc_legendre_unchecked;

/// √( (2l+1)/(4π) · (l−m)!/(l+m)! ) for 0 ≤ m ≤ l.
pub(crate) fn harmonic_norm(l: u32, m: u32) -> f64 {
    let mut ratio = 1.0;
    for k in (l - m + 1)..=(l + m) {
        ratio /= k as f64;
    }
    ((2.0 * l as f64 + 1.0) / (4.0 * std::f64::consts::PI) * ratio).sqrt()
}

pub(crate) fn condon_shortley(m: u32) -> f64 {
    if m.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

pub fn spherical_harmonic(l: u32, m: i32, theta: f64, phi: f64) -> Result<Complex64> {
    let ma = m.unsigned_abs();
    if ma > l {
        return Err(Error::Domain(format!("|m| = {ma} exceeds l = {l}")));
    }
    let p = assoc_legendre_unchecked(l, ma, phi.cos());
    let scale = condon_shortley(ma) * harmonic_norm(l, ma) * p;
    let pos = Complex64::from_polar(1.0, ma as f64 * theta) * scale;
    if m >= 0 {
        Ok(pos)
    } else {
        Ok(condon_shortley(ma) * pos.conj())
    }
}
