//! Central tolerance constants.
//!
//! Every numeric contract in the crate (and the downstream test suites)
//! references these values instead of scattering magic literals.

/// Generic absolute-plus-relative tolerance for eigenvalue and singular
/// value computations: quantities compared as `|a - b| <= SPECTRAL * (1 + |b|)`.
pub const SPECTRAL: f64 = 1e-10;

/// Tolerance used when matching conjugate eigenvalue pairs.
pub const CONJUGATE_PAIRING: f64 = 1e-9;

/// Boundary slack for shape membership tests.
pub const MEMBERSHIP_BOUNDARY: f64 = 1e-12;

/// Residual tolerance for Vieta identities of quadratic roots.
pub const VIETA: f64 = 1e-12;

/// Divergence guard for iterate traces: a run is flagged as diverged once
/// the distance to the equilibrium exceeds this value.
pub const DIVERGENCE_GUARD: f64 = 1e12;

/// Relative-change threshold under which the Lawson iteration is declared
/// converged (sustained over [`LAWSON_STALL_ITERS`] iterations).
pub const LAWSON_RELATIVE_CHANGE: f64 = 1e-9;

/// Number of consecutive near-stationary iterations required before the
/// Lawson iteration reports convergence.
pub const LAWSON_STALL_ITERS: usize = 10;
