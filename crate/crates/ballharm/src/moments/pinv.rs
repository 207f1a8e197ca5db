//! Iterative Moore–Penrose pseudo-inverse.
//!
//! The third-order hyperpower update
//!
//! ```text
//! V_{k+1} = V_k (3I − A V_k (3I − A V_k))
//! ```
//!
//! converges to A⁺ from V₀ = αAᵀ whenever 0 < α < 2/ρ(AAᵀ). The update is
//! evaluated through P = V_k A as V_{k+1} = 3V_k − 3P V_k + P(P V_k), which is
//! the same product in a cheaper association: every intermediate stays at the
//! size of V instead of rows × rows.

use ndarray::Array2;

use crate::error::{Error, Result};

/// Initialization scale for V₀ = αAᵀ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Alpha {
    Fixed(f64),
    /// α = 1/ρ̂(AAᵀ) with ρ̂ estimated by 50 power-iteration steps.
    Auto,
}

impl Default for Alpha {
    fn default() -> Self {
        // the reference regime
        Alpha::Fixed(0.001)
    }
}

#[derive(Debug, Clone)]
pub struct PinvReport {
    pub iterations: usize,
    /// ‖V A V − V‖_F after each update.
    pub residuals: Vec<f64>,
    pub alpha: f64,
}

/// Spectral radius of AAᵀ (= AᵀA) estimated by power iteration on the smaller
/// Gram matrix, from a deterministic start vector.
fn estimate_spectral_radius(a: &Array2<f64>, steps: usize) -> f64 {
    let (rows, cols) = a.dim();
    let b = if cols <= rows {
        a.t().dot(a)
    } else {
        a.dot(&a.t())
    };
    let n = b.nrows();
    let mut v = ndarray::Array1::from_elem(n, 1.0 / (n as f64).sqrt());
    for _ in 0..steps {
        let w = b.dot(&v);
        let norm = w.dot(&w).sqrt();
        if norm == 0.0 {
            return 0.0;
        }
        v = w / norm;
    }
    v.dot(&b.dot(&v))
}

pub fn pinv_iterate(
    a: &Array2<f64>,
    iterations: usize,
    alpha: Alpha,
) -> Result<(Array2<f64>, PinvReport)> {
    if iterations == 0 {
        return Err(Error::Config(
            "pseudo-inverse needs at least 1 iteration".into(),
        ));
    }
    if a.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite("pseudo-inverse input matrix".into()));
    }
    let alpha_val = match alpha {
        Alpha::Fixed(v) => {
            if v.is_nan() || v <= 0.0 {
                return Err(Error::Config(format!("alpha must be positive, got {v}")));
            }
            v
        }
        Alpha::Auto => {
            let rho = estimate_spectral_radius(a, 50);
            if rho > 0.0 {
                1.0 / rho
            } else {
                // zero matrix: V₀ = 0 is already its pseudo-inverse
                1.0
            }
        }
    };

    let mut v = a.t().mapv(|x| x * alpha_val);
    let mut residuals = Vec::with_capacity(iterations);
    for _ in 0..iterations {
        let p = v.dot(a); // cols × cols
        let pv = p.dot(&v);
        v = 3.0 * &v - 3.0 * &pv + p.dot(&pv);
        if v.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite(
                "pseudo-inverse iterate diverged; alpha violates 0 < α < 2/ρ(AAᵀ)".into(),
            ));
        }
        let p = v.dot(a);
        let diff = p.dot(&v) - &v;
        residuals.push(diff.iter().map(|x| x * x).sum::<f64>().sqrt());
    }
    let report = PinvReport {
        iterations,
        residuals,
        alpha: alpha_val,
    };
    Ok((v, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::arr2;

    #[test]
    fn identity_is_a_fixed_point() {
        let a = Array2::eye(5);
        let (v, rep) = pinv_iterate(&a, 10, Alpha::Fixed(0.5)).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((v[(i, j)] - expect).abs() < 1e-9);
            }
        }
        assert_eq!(rep.residuals.len(), 10);
    }

    #[test]
    fn diagonal_pseudo_inverse() {
        let a = arr2(&[[2.0, 0.0], [0.0, 4.0]]);
        let (v, _) = pinv_iterate(&a, 30, Alpha::Auto).unwrap();
        assert!((v[(0, 0)] - 0.5).abs() < 1e-8);
        assert!((v[(1, 1)] - 0.25).abs() < 1e-8);
        assert!(v[(0, 1)].abs() < 1e-10 && v[(1, 0)].abs() < 1e-10);
    }

    #[test]
    fn paper_regime_is_finite() {
        let a = arr2(&[[1.0, 0.5], [0.25, 2.0], [0.1, -1.0]]);
        let (_, rep) = pinv_iterate(&a, 3, Alpha::Fixed(0.001)).unwrap();
        assert_eq!(rep.residuals.len(), 3);
        assert!(rep.residuals.iter().all(|r| r.is_finite()));
    }

    #[test]
    fn rejects_bad_inputs() {
        let a = arr2(&[[f64::NAN]]);
        assert!(pinv_iterate(&a, 3, Alpha::Auto).is_err());
        let b = arr2(&[[1.0]]);
        assert!(pinv_iterate(&b, 0, Alpha::Auto).is_err());
        assert!(pinv_iterate(&b, 3, Alpha::Fixed(-1.0)).is_err());
    }

    #[test]
    fn overdetermined_least_squares_inverse() {
        // tall matrix with known pseudo-inverse: A⁺ = (AᵀA)⁻¹Aᵀ
        let a = arr2(&[[1.0, 0.0], [0.0, 1.0], [1.0, 1.0]]);
        let (v, _) = pinv_iterate(&a, 40, Alpha::Auto).unwrap();
        // check the defining property A A⁺ A = A
        let back = a.dot(&v).dot(&a);
        for (x, y) in back.iter().zip(a.iter()) {
            assert!((x - y).abs() < 1e-10);
        }
    }

    #[test]
    fn zero_matrix_maps_to_zero() {
        let a = Array2::<f64>::zeros((3, 2));
        let (v, _) = pinv_iterate(&a, 5, Alpha::Auto).unwrap();
        assert!(v.iter().all(|x| *x == 0.0));
    }
}
