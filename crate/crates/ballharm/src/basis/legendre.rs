//! Associated Legendre functions with the Condon–Shortley phase.

use crate::error::{Error, Result};

/// P_l^m(x) for 0 ≤ m ≤ l and x ∈ [−1, 1].
///
/// Evaluated by the stable diagonal-then-upward recurrence
///
/// ```text
/// P_m^m     = (−1)^m (2m−1)!! (1−x²)^{m/2}
/// P_{m+1}^m = x (2m+1) P_m^m
/// (l−m) P_l^m = x (2l−1) P_{l−1}^m − (l+m−1) P_{l−2}^m
/// ```
///
/// The (−1)^m Condon–Shortley factor is part of the definition here.
pub fn assoc_legendre(l: u32, m: u32, x: f64) -> Result<f64> {
    if m > l {
        return Err(Error::Domain(format!("m = {m} exceeds l = {l}")));
    }
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("x = {x} outside [−1, 1]")));
    }
    Ok(assoc_legendre_unchecked(l, m, x))
}

pub(crate) fn assoc_legendre_unchecked(l: u32, m: u32, x: f64) -> f64 {
    let mut pmm = 1.0;
    if m > 0 {
        let somx2 = ((1.0 - x) * (1.0 + x)).sqrt();
        let mut fact = 1.0;
        for _ in 0..m {
            pmm *= -fact * somx2;
            fact += 2.0;
        }
    }
    if l == m {
        return pmm;
    }
    let mut pmmp1 = x * (2.0 * m as f64 + 1.0) * pmm;
    if l == m + 1 {
        return pmmp1;
    }
    for ll in (m + 2)..=l {
        let pll =
            (x * (2.0 * ll as f64 - 1.0) * pmmp1 - (ll + m - 1) as f64 * pmm) / (ll - m) as f64;
        pmm = pmmp1;
        pmmp1 = pll;
    }
    pmmp1
}

/// Lower-triangular table P_l^m(x) for all 0 ≤ m ≤ l ≤ l_max, row-major by l.
///
/// Entry (l, m) sits at l(l+1)/2 + m.
pub(crate) fn legendre_table(l_max: u32, x: f64, out: &mut Vec<f64>) {
    let lm = l_max as usize;
    out.clear();
    out.resize((lm + 1) * (lm + 2) / 2, 0.0);
    let at = |l: usize, m: usize| l * (l + 1) / 2 + m;
    let somx2 = ((1.0 - x) * (1.0 + x)).sqrt();

    // diagonal
    out[0] = 1.0;
    let mut fact = 1.0;
    for m in 1..=lm {
        out[at(m, m)] = out[at(m - 1, m - 1)] * (-fact * somx2);
        fact += 2.0;
    }
    // first superdiagonal
    for m in 0..lm {
        out[at(m + 1, m)] = x * (2.0 * m as f64 + 1.0) * out[at(m, m)];
    }
    // upward in l
    for m in 0..=lm {
        for l in (m + 2)..=lm {
            out[at(l, m)] = (x * (2.0 * l as f64 - 1.0) * out[at(l - 1, m)]
                - (l + m - 1) as f64 * out[at(l - 2, m)])
                / (l - m) as f64;
        }
    }
}
