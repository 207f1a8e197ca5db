//! Harmonic analysis of functions on the unit ball.
//!
//! The crate evaluates the 3D Zernike basis Z_{n,l,m} = R_{n,l}(r)·Y_{l,m}(θ,φ)
//! with +y as the polar axis, computes moments by direct quadrature and by an
//! overdetermined least-squares system solved with an iterative pseudo-inverse,
//! convolves ball functions with axially symmetric kernels in closed form, and
//! measures axial symmetry about arbitrary axes. Brute-force quadrature
//! oracles for every closed form live alongside the fast paths; the [`verify`]
//! module bundles them into pass/fail suites.
//!
//! # Determinism
//!
//! Every reduction runs over fixed-size index chunks combined in order, so
//! results are bit-identical across thread counts and between the `par_*`
//! entry points (enabled by the default `parallel` feature) and their
//! sequential counterparts.

pub mod ballgrid;
pub mod basis;
pub mod conv;
mod error;
mod exec;
pub mod moments;
pub mod serial;
pub mod symmetry;
pub mod synthetic;
pub mod verify;

pub use error::{Error, Result};
