//! Zernike radial polynomials in two conventions.
//!
//! `PaperLiteral` is the classical 2D radial polynomial
//!
//! ```text
//! R_{n,l}(r) = Σ_k (−1)^k (n−k)! / ( k! ((n+l)/2 − k)! ((n−l)/2 − k)! ) r^{n−2k}
//! ```
//!
//! which is *not* orthogonal under the ball measure r² dr. `Orthogonalized`
//! Gram–Schmidt-processes the family {R_{n,l}}_n per fixed l under that
//! measure, in ascending n, and scales each polynomial so that
//! ∫₀¹ R² r² dr = 4π/3, making the full basis Gram matrix (4π/3)·I.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::index::{radial_pairs, BasisIndex, ORDER_CAP};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RadialConvention {
    /// The printed finite sum, evaluated verbatim.
    PaperLiteral,
    /// Gram–Schmidt under weight r² on `[0, 1]`, diagonal scaled to 4π/3.
    #[default]
    Orthogonalized,
}

impl std::fmt::Display for RadialConvention {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RadialConvention::PaperLiteral => write!(f, "paper-literal"),
            RadialConvention::Orthogonalized => write!(f, "orthogonalized"),
        }
    }
}

/// Monomial coefficients of the literal radial polynomial; `c[j]` multiplies r^j.
fn paper_coeffs(n: u32, l: u32) -> Vec<f64> {
    let mut c = vec![0.0; n as usize + 1];
    let (n, l) = (n as i64, l as i64);
    for k in 0..=(n - l) / 2 {
        let num = factorial(n - k);
        let den = factorial(k) * factorial((n + l) / 2 - k) * factorial((n - l) / 2 - k);
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        c[(n - 2 * k) as usize] = sign * num / den;
    }
    c
}

/// Exact in f64 for arguments up to 18 (ORDER_CAP is 16).
fn factorial(k: i64) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

/// ∫₀¹ a(r) b(r) r² dr for monomial coefficient vectors.
fn poly_inner(a: &[f64], b: &[f64]) -> f64 {
    let mut s = 0.0;
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0.0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            if bj != 0.0 {
                s += ai * bj / (i + j + 3) as f64;
            }
        }
    }
    s
}

fn poly_eval(c: &[f64], r: f64) -> f64 {
    let mut v = 0.0;
    for &ci in c.iter().rev() {
        v = v * r + ci;
    }
    v
}

/// Orthogonalized coefficients for every (n', l) with n' ≤ n, ascending n'.
///
/// Two Gram–Schmidt passes keep the family orthogonal to ~1e−12 up to the
/// order cap. The result for a given (n, l) depends only on predecessors,
/// so it is independent of the requested maximum order.
fn orthogonalized_family(l: u32, n_top: u32) -> Vec<Vec<f64>> {
    let mut done: Vec<Vec<f64>> = Vec::new();
    let mut n = l;
    while n <= n_top {
        let mut c = paper_coeffs(n, l);
        for _ in 0..2 {
            for q in &done {
                let proj = poly_inner(&c, q) / poly_inner(q, q);
                for (ci, qi) in c.iter_mut().zip(q) {
                    *ci -= proj * qi;
                }
            }
        }
        let norm = poly_inner(&c, &c);
        let scale = (4.0 * std::f64::consts::PI / 3.0 / norm).sqrt();
        for ci in &mut c {
            *ci *= scale;
        }
        done.push(c);
        n += 2;
    }
    done
}

/// Coefficient table for every valid (n, l) pair up to n_max.
#[derive(Debug, Clone)]
pub(crate) struct RadialTable {
    coeffs: Vec<Vec<f64>>,
    pair_pos: Vec<usize>, // indexed by n*(ORDER_CAP+1)+l
}

impl RadialTable {
    pub(crate) fn new(n_max: u32, conv: RadialConvention) -> Result<Self> {
        if n_max > ORDER_CAP {
            return Err(Error::Config(format!(
                "n_max = {n_max} exceeds the order cap {ORDER_CAP}"
            )));
        }
        let pairs = radial_pairs(n_max);
        let mut coeffs = vec![Vec::new(); pairs.len()];
        let mut pair_pos = vec![usize::MAX; (ORDER_CAP as usize + 1) * (ORDER_CAP as usize + 1)];
        for (i, &(n, l)) in pairs.iter().enumerate() {
            pair_pos[(n as usize) * (ORDER_CAP as usize + 1) + l as usize] = i;
        }
        match conv {
            RadialConvention::PaperLiteral => {
                for (i, &(n, l)) in pairs.iter().enumerate() {
                    coeffs[i] = paper_coeffs(n, l);
                }
            }
            RadialConvention::Orthogonalized => {
                for l in 0..=n_max {
                    let fam = orthogonalized_family(l, n_max);
                    for (k, c) in fam.into_iter().enumerate() {
                        let n = l + 2 * k as u32;
                        coeffs[pair_pos[(n as usize) * (ORDER_CAP as usize + 1) + l as usize]] = c;
                    }
                }
            }
        }
        Ok(Self { coeffs, pair_pos })
    }

    pub(crate) fn eval(&self, n: u32, l: u32, r: f64) -> f64 {
        let i = self.pair_pos[(n as usize) * (ORDER_CAP as usize + 1) + l as usize];
        poly_eval(&self.coeffs[i], r)
    }
}

/// Single radial polynomial value.
pub fn zernike_radial(n: u32, l: u32, r: f64, conv: RadialConvention) -> Result<f64> {
    BasisIndex::new(n, l, 0)?;
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::Domain(format!("r = {r} outside [0, 1]")));
    }
    if n > ORDER_CAP {
        return Err(Error::Config(format!(
            "n = {n} exceeds the order cap {ORDER_CAP}"
        )));
    }
    match conv {
        RadialConvention::PaperLiteral => Ok(poly_eval(&paper_coeffs(n, l), r)),
        RadialConvention::Orthogonalized => {
            let fam = orthogonalized_family(l, n);
            Ok(poly_eval(fam.last().unwrap(), r))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn literal_low_orders() {
        assert_eq!(
            zernike_radial(0, 0, 0.7, RadialConvention::PaperLiteral).unwrap(),
            1.0
        );
        // R_{2,0}(r) = 2r² − 1
        assert!(
            (zernike_radial(2, 0, 0.5, RadialConvention::PaperLiteral).unwrap() + 0.5).abs()
                < 1e-15
        );
        // R_{1,1}(r) = r
        assert!(
            (zernike_radial(1, 1, 0.3, RadialConvention::PaperLiteral).unwrap() - 0.3).abs()
                < 1e-15
        );
    }

    #[test]
    fn parity_violation_rejected() {
        assert!(zernike_radial(2, 1, 0.5, RadialConvention::PaperLiteral).is_err());
        assert!(zernike_radial(1, 1, 1.5, RadialConvention::PaperLiteral).is_err());
    }

    #[test]
    fn orthogonalized_family_is_orthonormal_under_ball_weight() {
        // The monomial representation caps the achievable orthogonality at
        // high n (Hilbert-like conditioning of the coefficient inner
        // product); the basis orders the suites use stay far tighter.
        for l in 0..=3u32 {
            let fam = orthogonalized_family(l, 11);
            for (i, a) in fam.iter().enumerate() {
                for (j, b) in fam.iter().enumerate() {
                    let ip = poly_inner(a, b);
                    let expect = if i == j { 4.0 * PI / 3.0 } else { 0.0 };
                    let tol = if l + 2 * i.max(j) as u32 <= 7 {
                        1e-10
                    } else {
                        1e-8
                    };
                    assert!(
                        (ip - expect).abs() < tol,
                        "l={l} pair ({i},{j}): {ip} vs {expect}"
                    );
                }
            }
        }
    }

    #[test]
    fn orthogonalized_independent_of_top_order() {
        let short = orthogonalized_family(1, 5);
        let long = orthogonalized_family(1, 13);
        for (a, b) in short.iter().zip(long.iter()) {
            for (x, y) in a.iter().zip(b) {
                assert_eq!(x.to_bits(), y.to_bits());
            }
        }
    }

    #[test]
    fn orthogonalized_constant_block() {
        // lone member of the l = 0, n = 0 family: c·1 with c²/3 = 4π/3
        let v = zernike_radial(0, 0, 0.123, RadialConvention::Orthogonalized).unwrap();
        assert!((v - (4.0 * PI).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn table_matches_free_function() {
        let t = RadialTable::new(8, RadialConvention::Orthogonalized).unwrap();
        for &(n, l) in &[(0u32, 0u32), (2, 0), (5, 3), (8, 8), (8, 0)] {
            for &r in &[0.0, 0.2, 0.77, 1.0] {
                let a = t.eval(n, l, r);
                let b = zernike_radial(n, l, r, RadialConvention::Orthogonalized).unwrap();
                assert_eq!(a.to_bits(), b.to_bits());
            }
        }
    }
}
