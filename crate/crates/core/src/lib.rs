//! Spectral-shape analysis of smooth-game dynamics.
//!
//! The toolkit is organised around the support `K` of the eigenvalues of a
//! game Jacobian in the complex plane (its *spectral shape*):
//!
//! - [`numerics`] — dense real/complex kernels: eigenvalues, singular values,
//!   quadratic roots, spectral radius.
//! - [`shapes`] — spectral shapes (segment, disc, ellipse, imaginary cross),
//!   their asymptotic convergence factors, optimal momentum parameters and
//!   the covering-ellipse constructions behind the accelerated solvers.
//! - [`minimax`] — an independent minimax-polynomial oracle (Lawson
//!   iteration on boundary grids) that numerically validates every closed
//!   form in [`shapes`].
//! - [`games`] — bilinear and general linear games, matrices with prescribed
//!   spectra, and the field transformations that reshape a spectrum.
//! - [`methods`] — the solver zoo (gradient, momentum, extragradient,
//!   consensus and their accelerated variants), exact rate prediction and
//!   empirical rate fitting.

pub mod games;
pub mod methods;
pub mod minimax;
pub mod numerics;
pub mod shapes;
pub mod tol;

pub use num_complex::Complex64;
