//! Dense real/complex scalar and matrix kernels.
//!
//! Everything here is a pure function over immutable values, so the whole
//! module is safe to use concurrently. The eigenvalue path is the classic
//! dense chain: balance, Householder reduction to Hessenberg form, then
//! Francis double-shift QR. Singular values use one-sided Jacobi, which
//! keeps high relative accuracy on the small end of the spectrum.

mod eigen;
mod matrix;
mod quadratic;
mod spectrum;
mod svd;

pub use eigen::eigenvalues;
pub use matrix::RealMatrix;
pub use quadratic::quadratic_roots;
pub use spectrum::Spectrum;
pub use svd::singular_values;

use thiserror::Error;

/// Errors produced by the dense kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericsError {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("matrix shape {rows}x{cols} does not match {len} entries")]
    ShapeMismatch { rows: usize, cols: usize, len: usize },
    #[error("matrix entries must be finite")]
    NonFiniteEntry,
    #[error("{0} iteration exceeded its iteration cap")]
    ConvergenceFailure(&'static str),
}

/// Spectral radius: `max |lambda|` over the eigenvalues of a square matrix.
pub fn spectral_radius(m: &RealMatrix) -> Result<f64, NumericsError> {
    let spectrum = eigenvalues(m)?;
    Ok(spectrum
        .values()
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max))
}
