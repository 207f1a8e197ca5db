//! Canonical (n, l, m) index triples for the 3D Zernike basis.

use crate::error::{Error, Result};

/// Largest basis order the crate evaluates. Orthogonalization of the radial
/// family is done in monomial coefficients, which loses accuracy past this.
pub const ORDER_CAP: u32 = 16;

/// A valid 3D Zernike basis index: 0 ≤ l ≤ n, |m| ≤ l, n − l even.
///
/// The canonical enumeration is ascending n, then l, then m from −l to l.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BasisIndex {
    n: u32,
    l: u32,
    m: i32,
}

impl BasisIndex {
    pub fn new(n: u32, l: u32, m: i32) -> Result<Self> {
        if l > n {
            return Err(Error::Domain(format!("l = {l} exceeds n = {n}")));
        }
        if !(n - l).is_multiple_of(2) {
            return Err(Error::Domain(format!(
                "n − l must be even, got n = {n}, l = {l}"
            )));
        }
        if m.unsigned_abs() > l {
            return Err(Error::Domain(format!(
                "|m| = {} exceeds l = {l}",
                m.unsigned_abs()
            )));
        }
        Ok(Self { n, l, m })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn m(&self) -> i32 {
        self.m
    }

    /// Position of this index in the canonical enumeration.
    pub fn position(&self) -> usize {
        let n = self.n as usize;
        // Complete blocks below n: sum over n' < n of (n'+1)(n'+2)/2.
        let mut pos = n * (n + 1) * (n + 2) / 6;
        let l0 = self.n % 2;
        let mut l = l0;
        while l < self.l {
            pos += 2 * l as usize + 1;
            l += 2;
        }
        pos + (self.m + self.l as i32) as usize
    }
}

/// Number of canonical indices with order ≤ n_max.
pub fn index_count(n_max: u32) -> usize {
    let n = n_max as usize;
    (n + 1) * (n + 2) * (n + 3) / 6
}

/// All valid indices with n ≤ n_max in canonical order.
pub fn enumerate(n_max: u32) -> Result<Vec<BasisIndex>> {
    if n_max > ORDER_CAP {
        return Err(Error::Config(format!(
            "n_max = {n_max} exceeds the order cap {ORDER_CAP}"
        )));
    }
    let mut out = Vec::with_capacity(index_count(n_max));
    for n in 0..=n_max {
        for l in (n % 2..=n).step_by(2) {
            for m in -(l as i32)..=l as i32 {
                out.push(BasisIndex { n, l, m });
            }
        }
    }
    Ok(out)
}

/// Valid (n, l) radial pairs with n ≤ n_max, in canonical order.
pub(crate) fn radial_pairs(n_max: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for n in 0..=n_max {
        for l in (n % 2..=n).step_by(2) {
            out.push((n, l));
        }
    }
    out
}
