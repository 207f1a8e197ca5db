//! Ball coordinates with +y as the polar axis.
//!
//! The Cartesian mapping used everywhere in this crate is
//!
//! ```text
//! x = r sin φ cos θ,   y = r cos φ,   z = r sin φ sin θ
//! ```
//!
//! with azimuth θ ∈ [0, 2π) measured in the x–z plane from +x towards +z and
//! polar angle φ ∈ [0, π] from +y.

use std::f64::consts::PI;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BallCoord {
    r: f64,
    theta: f64,
    phi: f64,
}

impl BallCoord {
    /// θ is reduced into [0, 2π); at r = 0 both angles canonicalize to 0.
    pub fn new(r: f64, theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&r) {
            return Err(Error::Domain(format!("radius {r} outside [0, 1]")));
        }
        if !(0.0..=PI).contains(&phi) {
            return Err(Error::Domain(format!("polar angle {phi} outside [0, π]")));
        }
        if !theta.is_finite() {
            return Err(Error::Domain(format!("azimuth {theta} is not finite")));
        }
        if r == 0.0 {
            return Ok(Self {
                r: 0.0,
                theta: 0.0,
                phi: 0.0,
            });
        }
        let mut theta = theta.rem_euclid(2.0 * PI);
        if theta == 2.0 * PI {
            theta = 0.0;
        }
        Ok(Self { r, theta, phi })
    }

    /// Converts a Cartesian point, clamping the radius into `[0, 1]` against
    /// roundoff. Intended for rotated ball points; callers feeding arbitrary
    /// vectors must normalize first.
    pub fn from_cartesian(p: [f64; 3]) -> Self {
        let r = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
        if r < 1e-15 {
            return Self {
                r: 0.0,
                theta: 0.0,
                phi: 0.0,
            };
        }
        let phi = (p[1] / r).clamp(-1.0, 1.0).acos();
        let theta = p[2].atan2(p[0]).rem_euclid(2.0 * PI);
        Self {
            r: r.min(1.0),
            theta,
            phi,
        }
    }

    pub fn to_cartesian(&self) -> [f64; 3] {
        let sp = self.phi.sin();
        [
            self.r * sp * self.theta.cos(),
            self.r * self.phi.cos(),
            self.r * sp * self.theta.sin(),
        ]
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }
}

/// Unit vector for the axis with azimuth `alpha`, polar angle `beta`.
pub fn direction(alpha: f64, beta: f64) -> [f64; 3] {
    let sb = beta.sin();
    [sb * alpha.cos(), beta.cos(), sb * alpha.sin()]
}

/// (azimuth, polar) angles of a unit vector.
pub fn direction_angles(u: [f64; 3]) -> (f64, f64) {
    let n = (u[0] * u[0] + u[1] * u[1] + u[2] * u[2]).sqrt();
    let phi = (u[1] / n.max(1e-300)).clamp(-1.0, 1.0).acos();
    let theta = u[2].atan2(u[0]).rem_euclid(2.0 * PI);
    (theta, phi)
}
