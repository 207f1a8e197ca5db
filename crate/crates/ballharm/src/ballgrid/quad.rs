//! Product quadrature on the unit ball.
//!
//! Gauss–Legendre in r on [0, 1] and in cos φ on [−1, 1], uniform trapezoid in
//! θ. Node weights absorb the r² sin φ measure, so Σ wᵢ g(pᵢ) ≈ ∫ g r² sin φ
//! and the weights sum to the ball volume 4π/3.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::exec::{self, Mode};

use super::coord::BallCoord;

/// Gauss–Legendre nodes (ascending) and weights on [−1, 1].
pub fn gauss_legendre_rule(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        // Tricomi initial guess, then Newton on P_n.
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = nf * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                // one extra polish pass
                let (mut q0, mut q1) = (1.0, x);
                for k in 2..=n {
                    let kf = k as f64;
                    let q2 = ((2.0 * kf - 1.0) * x * q1 - (kf - 1.0) * q0) / kf;
                    q0 = q1;
                    q1 = q2;
                }
                dp = nf * (x * q1 - q0) / (x * x - 1.0);
                x -= q1 / dp;
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        // guess i = 0 is the largest root; store ascending
        nodes[n - 1 - i] = x;
        nodes[i] = -x;
        weights[n - 1 - i] = w;
        weights[i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

#[derive(Debug, Clone)]
pub struct BallQuadrature {
    nodes: Vec<BallCoord>,
    weights: Vec<f64>,
    r_nodes: Vec<f64>,
    u_nodes: Vec<f64>,
    n_r: usize,
    n_theta: usize,
    n_phi: usize,
}

pub fn make_quadrature(n_r: usize, n_theta: usize, n_phi: usize) -> Result<BallQuadrature> {
    if n_r < 2 || n_theta < 2 || n_phi < 2 {
        return Err(Error::Config(format!(
            "quadrature resolution ({n_r}, {n_theta}, {n_phi}) below the minimum of 2 per axis"
        )));
    }
    let (xr, wr) = gauss_legendre_rule(n_r);
    let r_nodes: Vec<f64> = xr.iter().map(|x| (x + 1.0) / 2.0).collect();
    let r_weights: Vec<f64> = wr
        .iter()
        .zip(&r_nodes)
        .map(|(w, r)| w / 2.0 * r * r)
        .collect();
    let (u_nodes, u_weights) = gauss_legendre_rule(n_phi);
    let w_theta = 2.0 * PI / n_theta as f64;

    let mut nodes = Vec::with_capacity(n_r * n_phi * n_theta);
    let mut weights = Vec::with_capacity(nodes.capacity());
    for (r, wr) in r_nodes.iter().zip(&r_weights) {
        for (u, wu) in u_nodes.iter().zip(&u_weights) {
            let phi = u.clamp(-1.0, 1.0).acos();
            for it in 0..n_theta {
                let theta = it as f64 * w_theta;
                nodes.push(BallCoord::new(*r, theta, phi).expect("constructed in range"));
                weights.push(wr * wu * w_theta);
            }
        }
    }
    Ok(BallQuadrature {
        nodes,
        weights,
        r_nodes,
        u_nodes,
        n_r,
        n_theta,
        n_phi,
    })
}

impl BallQuadrature {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[BallCoord] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn resolution(&self) -> (usize, usize, usize) {
        (self.n_r, self.n_theta, self.n_phi)
    }

    pub(crate) fn same_grid(&self, other: &BallQuadrature) -> bool {
        self.resolution() == other.resolution()
    }

    pub fn node_index(&self, ir: usize, iu: usize, it: usize) -> usize {
        (ir * self.n_phi + iu) * self.n_theta + it
    }

    fn nearest_axis(axis: &[f64], x: f64) -> usize {
        let i = axis.partition_point(|&a| a < x).clamp(1, axis.len() - 1);
        if (axis[i - 1] - x).abs() <= (axis[i] - x).abs() {
            i - 1
        } else {
            i
        }
    }

    /// Flat index of the node nearest to `p`, per-axis in (r, cos φ, θ) with
    /// wraparound in θ.
    pub fn nearest_index(&self, p: &BallCoord) -> usize {
        let ir = Self::nearest_axis(&self.r_nodes, p.r());
        let iu = Self::nearest_axis(&self.u_nodes, p.phi().cos());
        let dt = 2.0 * PI / self.n_theta as f64;
        let it = ((p.theta() / dt).round() as usize) % self.n_theta;
        self.node_index(ir, iu, it)
    }

    /// Trilinear interpolation of per-node `values` at `p`, in (r, cos φ, θ)
    /// with θ wraparound; clamped beyond the outermost r and cos φ nodes.
    pub fn interpolate(&self, values: &[f64], p: &BallCoord) -> f64 {
        debug_assert_eq!(values.len(), self.len());
        let bracket = |axis: &[f64], x: f64| -> (usize, usize, f64) {
            let i1 = axis.partition_point(|&a| a < x).clamp(1, axis.len() - 1);
            let i0 = i1 - 1;
            let w = ((x - axis[i0]) / (axis[i1] - axis[i0])).clamp(0.0, 1.0);
            (i0, i1, w)
        };
        let (ir0, ir1, fr) = bracket(&self.r_nodes, p.r());
        let (iu0, iu1, fu) = bracket(&self.u_nodes, p.phi().cos());
        let dt = 2.0 * PI / self.n_theta as f64;
        let t = p.theta().rem_euclid(2.0 * PI) / dt;
        let it0 = (t.floor() as usize) % self.n_theta;
        let it1 = (it0 + 1) % self.n_theta;
        let ft = t - t.floor();

        let mut out = 0.0;
        for (ir, wr) in [(ir0, 1.0 - fr), (ir1, fr)] {
            for (iu, wu) in [(iu0, 1.0 - fu), (iu1, fu)] {
                for (it, wt) in [(it0, 1.0 - ft), (it1, ft)] {
                    out += wr * wu * wt * values[self.node_index(ir, iu, it)];
                }
            }
        }
        out
    }

    /// Σ wᵢ f(pᵢ), reduced deterministically.
    pub fn integrate<F>(&self, f: F) -> f64
    where
        F: Fn(&BallCoord) -> f64 + Sync,
    {
        self.integrate_impl(Mode::Seq, f)
    }

    /// Parallel [`Self::integrate`]; bit-identical to the sequential path.
    #[cfg(feature = "parallel")]
    pub fn par_integrate<F>(&self, f: F) -> f64
    where
        F: Fn(&BallCoord) -> f64 + Sync,
    {
        self.integrate_impl(Mode::Par, f)
    }

    fn integrate_impl<F>(&self, mode: Mode, f: F) -> f64
    where
        F: Fn(&BallCoord) -> f64 + Sync,
    {
        exec::chunk_partials(mode, self.len(), |range| {
            range
                .map(|i| self.weights[i] * f(&self.nodes[i]))
                .sum::<f64>()
        })
        .into_iter()
        .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl_rule_integrates_polynomials_exactly() {
        let (x, w) = gauss_legendre_rule(8);
        // degree 15 is exact for an 8-point rule
        let val: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(14)).sum();
        assert!((val - 2.0 / 15.0).abs() < 1e-14);
        let odd: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(7)).sum();
        assert!(odd.abs() < 1e-15);
    }

    #[test]
    fn weights_sum_to_ball_volume() {
        let q = make_quadrature(32, 32, 32).unwrap();
        let sum: f64 = q.weights().iter().sum();
        assert!((sum - 4.0 * PI / 3.0).abs() < 1e-9, "sum = {sum}");
        assert_eq!(q.len(), 32 * 32 * 32);
    }

    #[test]
    fn integrates_radius() {
        let q = make_quadrature(32, 32, 32).unwrap();
        let v = q.integrate(|p| p.r());
        assert!((v - PI).abs() < 1e-9, "∫ r dV = {v}");
    }

    #[test]
    fn rejects_low_resolution() {
        assert!(make_quadrature(1, 8, 8).is_err());
        assert!(make_quadrature(8, 1, 8).is_err());
        assert!(make_quadrature(8, 8, 0).is_err());
    }

    #[test]
    fn quadrature_exactness_in_r_and_phi() {
        let (n_r, n_t, n_p) = (6, 8, 6);
        let q = make_quadrature(n_r, n_t, n_p).unwrap();
        // r^a cos^b φ with a+2 ≤ 2 n_r − 1 and b ≤ n_p − 1
        for a in 0..=(2 * n_r - 3) {
            for b in 0..n_p {
                let got = q.integrate(|p| p.r().powi(a as i32) * p.phi().cos().powi(b as i32));
                let radial = 1.0 / (a as f64 + 3.0);
                let polar = if b % 2 == 0 {
                    2.0 / (b as f64 + 1.0)
                } else {
                    0.0
                };
                let expect = radial * polar * 2.0 * PI;
                assert!(
                    (got - expect).abs() < 1e-9,
                    "a={a} b={b}: {got} vs {expect}"
                );
            }
        }
    }

    #[test]
    fn nearest_recovers_own_nodes() {
        let q = make_quadrature(6, 7, 5).unwrap();
        for (i, p) in q.nodes().iter().enumerate() {
            assert_eq!(q.nearest_index(p), i);
        }
    }

    #[test]
    fn interpolation_reproduces_node_values_and_constants() {
        let q = make_quadrature(6, 7, 5).unwrap();
        let vals: Vec<f64> = (0..q.len()).map(|i| (i as f64).sin()).collect();
        for (i, p) in q.nodes().iter().enumerate() {
            assert!((q.interpolate(&vals, p) - vals[i]).abs() < 1e-12);
        }
        let ones = vec![1.0; q.len()];
        let edge = BallCoord::new(1.0, 0.3, 1.0).unwrap();
        assert!((q.interpolate(&ones, &edge) - 1.0).abs() < 1e-15);
        let center = BallCoord::new(0.0, 0.0, 0.0).unwrap();
        assert!((q.interpolate(&ones, &center) - 1.0).abs() < 1e-15);
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn par_integrate_bit_identical() {
        let q = make_quadrature(16, 16, 16).unwrap();
        let f = |p: &BallCoord| (3.1 * p.r()).sin() * p.phi().cos();
        assert_eq!(q.integrate(f).to_bits(), q.par_integrate(f).to_bits());
    }
}
