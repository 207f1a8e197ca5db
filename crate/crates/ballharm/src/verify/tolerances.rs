//! Thresholds used by the verification suites.

/// Gram diagonal must sit at 4π/3 and off-diagonals vanish to this bound at
/// n_max = 5 on the (64, 64, 64) grid.
pub const GRAM_TOL: f64 = 1e-6;

/// Max relative round-trip error for band-limited functions through the
/// least-squares path.
pub const ROUNDTRIP_TOL: f64 = 1e-6;

/// Required direct/least-squares error ratio at n = 5 on rasterized shapes.
pub const RECON_RATIO_MIN: f64 = 3.0;

/// Relative L2 agreement between the closed-form convolution and the
/// quadrature oracle at (48, 48, 48) over 200 directions.
pub const CONV_ORACLE_TOL: f64 = 1e-2;

/// Max pointwise feature-map deviation under rotation for band-limited
/// inputs.
pub const EQUIVARIANCE_TOL: f64 = 1e-3;

/// Relative L2 agreement of the spherical baseline against its S² oracle.
pub const SPH_BASELINE_TOL: f64 = 1e-2;

/// Entry accuracy for the diag(2, 4) pseudo-inverse under auto α.
pub const PINV_DIAG_TOL: f64 = 1e-8;

/// Slack when asserting the residual sequence is non-increasing; covers
/// roundoff chatter at the convergence plateau (observed ~5e−17).
pub const PINV_MONOTONE_SLACK: f64 = 1e-12;
