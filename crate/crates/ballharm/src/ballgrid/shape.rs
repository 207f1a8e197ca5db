//! Sampled real functions on a ball quadrature.

use std::sync::Arc;

use crate::error::{Error, Result};

use super::cloud::PointCloud;
use super::coord::BallCoord;
use super::quad::BallQuadrature;

/// A real-valued function known at every quadrature node.
#[derive(Debug, Clone)]
pub struct ShapeFunction {
    quad: Arc<BallQuadrature>,
    values: Vec<f64>,
}

impl ShapeFunction {
    pub fn new(quad: Arc<BallQuadrature>, values: Vec<f64>) -> Result<Self> {
        if values.len() != quad.len() {
            return Err(Error::Mismatch(format!(
                "{} values for {} quadrature nodes",
                values.len(),
                quad.len()
            )));
        }
        Ok(Self { quad, values })
    }

    pub fn from_fn<F>(quad: Arc<BallQuadrature>, f: F) -> Self
    where
        F: Fn(&BallCoord) -> f64,
    {
        let values = quad.nodes().iter().map(f).collect();
        Self { quad, values }
    }

    pub fn zeros(quad: Arc<BallQuadrature>) -> Self {
        let values = vec![0.0; quad.len()];
        Self { quad, values }
    }

    pub fn quad(&self) -> &Arc<BallQuadrature> {
        &self.quad
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Index set where the function is nonzero.
    pub fn support(&self) -> Vec<usize> {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != 0.0)
            .map(|(i, _)| i)
            .collect()
    }
}

/// Occupancy rasterization: a node takes its own radius as value when some
/// point maps to it, 0 otherwise.
///
/// Each point is assigned to the nearest node per axis in (r, cos φ, θ) with
/// θ wraparound, and accepted when the Euclidean distance to that node is at
/// most `tol`. Assignment is idempotent, so the result is independent of
/// point order.
pub fn rasterize(pc: &PointCloud, quad: &Arc<BallQuadrature>, tol: f64) -> Result<ShapeFunction> {
    if !pc.is_normalized() && pc.max_norm() > 1.0 + 1e-9 {
        return Err(Error::Degenerate(
            "rasterize needs a cloud inside the unit ball; normalize it first".into(),
        ));
    }
    let mut values = vec![0.0; quad.len()];
    for p in pc.points() {
        let c = BallCoord::from_cartesian(*p);
        let i = quad.nearest_index(&c);
        let node = &quad.nodes()[i];
        let q = node.to_cartesian();
        let d2 = (p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2) + (p[2] - q[2]).powi(2);
        if d2 <= tol * tol {
            values[i] = node.r();
        }
    }
    Ok(ShapeFunction {
        quad: Arc::clone(quad),
        values,
    })
}
