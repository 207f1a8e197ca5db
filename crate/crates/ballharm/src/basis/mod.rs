//! 3D Zernike basis functions Z_{n,l,m}(r, θ, φ) = R_{n,l}(r) · Y_{l,m}(θ, φ)
//! and their orthogonality certificate.

mod eval;
mod gram;
mod harmonics;
mod index;
mod legendre;
mod radial;

pub use eval::{BasisEvaluator, EvalScratch};
pub use gram::gram_matrix;
#[cfg(feature = "parallel")]
pub use gram::par_gram_matrix;
pub use harmonics::spherical_harmonic;
pub use index::{enumerate, index_count, BasisIndex, ORDER_CAP};
pub use legendre::assoc_legendre;
pub use radial::{zernike_radial, RadialConvention};

use num_complex::Complex64;

use crate::ballgrid::BallCoord;
use crate::error::Result;

/// Z_{n,l,m} at a single ball coordinate.
///
/// Negative orders use Z_{n,l,−m} = (−1)^m Z†_{n,l,m}.
pub fn zernike_basis(idx: BasisIndex, p: &BallCoord, conv: RadialConvention) -> Result<Complex64> {
    let r = zernike_radial(idx.n(), idx.l(), p.r(), conv)?;
    let y = spherical_harmonic(idx.l(), idx.m(), p.theta(), p.phi())?;
    Ok(r * y)
}
