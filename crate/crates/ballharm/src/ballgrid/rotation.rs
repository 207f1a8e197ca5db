//! Rigid rotations in the crate's fixed axis convention: y up, right-handed.
//!
//! `R_y` rotates +x towards +z (increasing azimuth); `R_z` rotates +x towards
//! +y, so `R_z(π/2)` maps (0, 1, 0) to (−1, 0, 0).

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rotation(pub(crate) [[f64; 3]; 3]);

impl Rotation {
    pub fn identity() -> Self {
        Self([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
    }

    pub fn about_y(a: f64) -> Self {
        let (s, c) = a.sin_cos();
        Self([[c, 0.0, -s], [0.0, 1.0, 0.0], [s, 0.0, c]])
    }

    pub fn about_z(b: f64) -> Self {
        let (s, c) = b.sin_cos();
        Self([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])
    }

    /// The Euler composition R_y(α) · R_z(β) · R_y(γ).
    pub fn from_euler(alpha: f64, beta: f64, gamma: f64) -> Self {
        Self::about_y(alpha)
            .compose(&Self::about_z(beta))
            .compose(&Self::about_y(gamma))
    }

    /// A rotation carrying the pole +y to the axis (azimuth α, polar β):
    /// R_y(α) · R_z(−β).
    pub fn pole_to(alpha: f64, beta: f64) -> Self {
        Self::about_y(alpha).compose(&Self::about_z(-beta))
    }

    /// self · other (apply `other` first).
    pub fn compose(&self, other: &Rotation) -> Rotation {
        let mut m = [[0.0; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = (0..3).map(|k| self.0[i][k] * other.0[k][j]).sum();
            }
        }
        Rotation(m)
    }

    pub fn apply(&self, p: [f64; 3]) -> [f64; 3] {
        let m = &self.0;
        [
            m[0][0] * p[0] + m[0][1] * p[1] + m[0][2] * p[2],
            m[1][0] * p[0] + m[1][1] * p[1] + m[1][2] * p[2],
            m[2][0] * p[0] + m[2][1] * p[1] + m[2][2] * p[2],
        ]
    }

    pub fn inverse(&self) -> Rotation {
        let m = &self.0;
        Rotation([
            [m[0][0], m[1][0], m[2][0]],
            [m[0][1], m[1][1], m[2][1]],
            [m[0][2], m[1][2], m[2][2]],
        ])
    }
}
