//! Spectral shapes and their convergence theory.
//!
//! A shape `K` is a compact, conjugate-symmetric subset of the right half
//! plane that carries the eigenvalues of a family of game Jacobians. Each
//! shape has an asymptotic convergence factor `acf(K)`: the best geometric
//! rate any oblivious first-order method achieves over the whole family.
//! For segments, discs and ellipses the optimal method is momentum (or
//! plain gradient descent), and the optimal `(alpha, beta)` are closed
//! forms in the shape parameters.
//!
//! The ellipse formulas are evaluated in a cancellation-free form: with
//! `D = b^2 + c^2 - a^2`,
//!
//! ```text
//! rho   = (a + b) / (c + sqrt(D))
//! beta  = (c - sqrt(D)) / (c + sqrt(D))
//! alpha = 2 / (c + sqrt(D))
//! ```
//!
//! which agree algebraically with the usual `(c - sqrt(D)) / (a - b)`
//! expression but stay accurate as `a -> b`.

use crate::numerics::quadratic_roots;
use crate::tol;
use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ShapeError {
    #[error("invalid shape: {0}")]
    InvalidShape(String),
    #[error("ellipse a={a}, b={b}, c={c} is not a momentum convergence region (a^2 > b^2 + c^2)")]
    UnrepresentableEllipse { a: f64, b: f64, c: f64 },
    #[error("shape touches or contains 0, so no method converges on it (rho >= 1)")]
    NotConvergent,
    #[error("{0} has no direct momentum parameters; transform the field first")]
    UnsupportedShape(&'static str),
    #[error("invalid perturbation: {0}")]
    InvalidPerturbation(String),
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("tau too small: gamma/(mu + tau gamma^2) = {q} exceeds sqrt(3/2) sqrt((mu + tau gamma^2)/(L + tau L^2)) = {bound}")]
    InadmissibleTau { q: f64, bound: f64 },
    #[error("convergence region is empty (|beta| > rho^2 or rho outside (0, 1))")]
    EmptyRegion,
}

/// Compact eigenvalue support in the complex plane.
///
/// Invariants (enforced by the constructors):
/// - `Segment`: `0 < mu <= l`
/// - `Disc`: `0 < radius < center`
/// - `Ellipse`: `a, b >= 0`, `(a, b) != (0, 0)`, `a^2 <= b^2 + c^2`, `c > a`
/// - `ImagCross`: `0 < a < b` (the set `[ia, ib] u [-ib, -ia]`)
///
/// Every valid shape is symmetric about the real axis and excludes 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpectralShape {
    /// Real interval `[mu, l]`.
    Segment { mu: f64, l: f64 },
    /// Disc of the given center (on the positive real axis) and radius.
    Disc { center: f64, radius: f64 },
    /// Ellipse centered at `c` on the real axis with real semiaxis `a` and
    /// imaginary semiaxis `b` (`b = 0` degenerates to `[c - a, c + a]`).
    Ellipse { a: f64, b: f64, c: f64 },
    /// Pair of imaginary segments `[ia, ib] u [-ib, -ia]`.
    ImagCross { a: f64, b: f64 },
}

/// Step size and momentum coefficient of the heavy-ball update
/// `omega_{t+1} = omega_t - alpha F(omega_t) + beta (omega_t - omega_{t-1})`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentumParams {
    pub alpha: f64,
    pub beta: f64,
}

/// The region `S(alpha, beta, rho)` of eigenvalues on which momentum with
/// `(alpha, beta)` contracts at rate `rho`: every root of
/// `z^2 - (1 - alpha lambda + beta) z + beta` has `|z| <= rho`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRegion {
    pub alpha: f64,
    pub beta: f64,
    pub rho: f64,
}

impl ConvergenceRegion {
    /// Rejects empty regions: requires `alpha > 0`, `rho` in `(0, 1)` and
    /// `|beta| <= rho^2`.
    pub fn new(alpha: f64, beta: f64, rho: f64) -> Result<Self, ShapeError> {
        if !(alpha > 0.0) || !(rho > 0.0 && rho < 1.0) || beta.abs() > rho * rho {
            return Err(ShapeError::EmptyRegion);
        }
        Ok(Self { alpha, beta, rho })
    }
}

fn require_finite(values: &[f64], what: &str) -> Result<(), ShapeError> {
    if values.iter().any(|v| !v.is_finite()) {
        return Err(ShapeError::InvalidShape(format!("{what}: non-finite parameter")));
    }
    Ok(())
}

impl SpectralShape {
    pub fn segment(mu: f64, l: f64) -> Result<Self, ShapeError> {
        require_finite(&[mu, l], "segment")?;
        if !(mu > 0.0 && l >= mu) {
            return Err(ShapeError::InvalidShape(format!(
                "segment requires 0 < mu <= L, got mu={mu}, L={l}"
            )));
        }
        Ok(Self::Segment { mu, l })
    }

    pub fn disc(center: f64, radius: f64) -> Result<Self, ShapeError> {
        require_finite(&[center, radius], "disc")?;
        if !(radius > 0.0 && radius < center) {
            return Err(ShapeError::InvalidShape(format!(
                "disc requires 0 < r < c, got c={center}, r={radius}"
            )));
        }
        Ok(Self::Disc { center, radius })
    }

    pub fn ellipse(a: f64, b: f64, c: f64) -> Result<Self, ShapeError> {
        require_finite(&[a, b, c], "ellipse")?;
        if a < 0.0 || b < 0.0 || (a == 0.0 && b == 0.0) || !(c > 0.0) {
            return Err(ShapeError::InvalidShape(format!(
                "ellipse requires a, b >= 0, (a, b) != (0, 0), c > 0; got a={a}, b={b}, c={c}"
            )));
        }
        if a * a > b * b + c * c {
            return Err(ShapeError::UnrepresentableEllipse { a, b, c });
        }
        if a >= c {
            // 0 on or inside the ellipse; equivalently rho(a, b, c) >= 1.
            return Err(ShapeError::NotConvergent);
        }
        Ok(Self::Ellipse { a, b, c })
    }

    pub fn imag_cross(a: f64, b: f64) -> Result<Self, ShapeError> {
        require_finite(&[a, b], "imaginary cross")?;
        if !(a > 0.0 && a < b) {
            return Err(ShapeError::InvalidShape(format!(
                "imaginary cross requires 0 < a < b, got a={a}, b={b}"
            )));
        }
        Ok(Self::ImagCross { a, b })
    }
}

/// Point membership with boundary slack `tol::MEMBERSHIP_BOUNDARY`.
pub fn membership(shape: &SpectralShape, lambda: Complex64) -> bool {
    let t = tol::MEMBERSHIP_BOUNDARY * (1.0 + lambda.norm());
    match *shape {
        SpectralShape::Segment { mu, l } => {
            lambda.im.abs() <= t * (1.0 + l)
                && lambda.re >= mu - t * (1.0 + l)
                && lambda.re <= l + t * (1.0 + l)
        }
        SpectralShape::Disc { center, radius } => {
            (lambda - Complex64::new(center, 0.0)).norm() <= radius + t * (1.0 + center)
        }
        SpectralShape::Ellipse { a, b, c } => {
            // Convention 0/0 = 0: a zero semiaxis admits only points with a
            // vanishing offset in that direction.
            let dx = lambda.re - c;
            let dy = lambda.im;
            let scale = t * (1.0 + a.max(b) + c);
            let qx = if a > 0.0 {
                (dx / a).powi(2)
            } else if dx.abs() <= scale {
                0.0
            } else {
                return false;
            };
            let qy = if b > 0.0 {
                (dy / b).powi(2)
            } else if dy.abs() <= scale {
                0.0
            } else {
                return false;
            };
            qx + qy <= 1.0 + tol::MEMBERSHIP_BOUNDARY
        }
        SpectralShape::ImagCross { a, b } => {
            lambda.re.abs() <= t * (1.0 + b)
                && lambda.im.abs() >= a - t * (1.0 + b)
                && lambda.im.abs() <= b + t * (1.0 + b)
        }
    }
}

/// Asymptotic convergence factor of the shape, always in `(0, 1)`
/// (0 for a single-point segment).
pub fn acf(shape: &SpectralShape) -> Result<f64, ShapeError> {
    match *shape {
        SpectralShape::Segment { mu, l } => {
            Ok((l.sqrt() - mu.sqrt()) / (l.sqrt() + mu.sqrt()))
        }
        SpectralShape::Disc { center, radius } => Ok(radius / center),
        SpectralShape::Ellipse { a, b, c } => {
            let (rho, _, _) = ellipse_momentum(a, b, c)?;
            Ok(rho)
        }
        SpectralShape::ImagCross { a, b } => Ok(((b - a) / (b + a)).sqrt()),
    }
}

/// Shared cancellation-free evaluation of `(rho, alpha, beta)` for an
/// ellipse; see the module docs for the algebra.
fn ellipse_momentum(a: f64, b: f64, c: f64) -> Result<(f64, f64, f64), ShapeError> {
    let d = b * b + c * c - a * a;
    if d < 0.0 {
        return Err(ShapeError::UnrepresentableEllipse { a, b, c });
    }
    let denom = c + d.sqrt();
    let rho = (a + b) / denom;
    if !(rho < 1.0) {
        return Err(ShapeError::NotConvergent);
    }
    let beta = (c - d.sqrt()) / denom;
    let alpha = 2.0 / denom;
    Ok((rho, alpha, beta))
}

/// Optimal momentum parameters for a shape.
///
/// Defined for segments, discs and ellipses. An imaginary cross has no
/// direct momentum parameters (momentum alone diverges there); callers
/// must first transform the field, e.g. with
/// [`crate::games::transform_real`].
pub fn optimal_momentum(shape: &SpectralShape) -> Result<MomentumParams, ShapeError> {
    match *shape {
        SpectralShape::Segment { mu, l } => {
            let alpha = 4.0 / (mu.sqrt() + l.sqrt()).powi(2);
            let beta = ((l.sqrt() - mu.sqrt()) / (l.sqrt() + mu.sqrt())).powi(2);
            Ok(MomentumParams { alpha, beta })
        }
        SpectralShape::Disc { center, .. } => Ok(MomentumParams {
            alpha: 1.0 / center,
            beta: 0.0,
        }),
        SpectralShape::Ellipse { a, b, c } => {
            let (_, alpha, beta) = ellipse_momentum(a, b, c)?;
            Ok(MomentumParams { alpha, beta })
        }
        SpectralShape::ImagCross { .. } => Err(ShapeError::UnsupportedShape("imaginary cross")),
    }
}

/// Largest root modulus of `z^2 - (1 - alpha lambda + beta) z + beta = 0`:
/// the local per-iteration contraction momentum achieves on eigenvalue
/// `lambda`.
///
/// For real `lambda` the discriminant is clamped to zero inside its own
/// floating-point noise floor, so boundary eigenvalues of an exactly tuned
/// method report the clean double-root radius `sqrt(beta)`.
pub fn momentum_root_radius(lambda: Complex64, p: MomentumParams) -> f64 {
    if lambda.im == 0.0 {
        let s = 1.0 + p.beta - p.alpha * lambda.re;
        let mut disc = s * s - 4.0 * p.beta;
        if disc.abs() <= 32.0 * f64::EPSILON * (s * s + 4.0 * p.beta.abs()) {
            disc = 0.0;
        }
        if disc <= 0.0 {
            // Conjugate pair; |z|^2 equals the constant coefficient.
            return p.beta.max(0.0).sqrt();
        }
        return (s.abs() + disc.sqrt()) / 2.0;
    }
    let b = p.alpha * lambda - Complex64::new(1.0 + p.beta, 0.0);
    let (z1, _) = quadratic_roots(b, Complex64::new(p.beta, 0.0));
    z1.norm()
}

/// Whether momentum with the region's parameters contracts at rate
/// `rho` on eigenvalue `lambda`.
pub fn region_membership(lambda: Complex64, region: &ConvergenceRegion) -> bool {
    momentum_root_radius(
        lambda,
        MomentumParams {
            alpha: region.alpha,
            beta: region.beta,
        },
    ) <= region.rho + tol::MEMBERSHIP_BOUNDARY
}

/// The unique `(alpha, beta, rho)` with `S(alpha, beta, rho) = E(a, b, c)`.
///
/// The triple satisfies the semiaxis and center identities
/// `(1 + beta)/alpha = c`, `rho + beta/rho = alpha a`,
/// `rho - beta/rho = alpha b`.
pub fn ellipse_as_region(shape: &SpectralShape) -> Result<ConvergenceRegion, ShapeError> {
    match *shape {
        SpectralShape::Ellipse { a, b, c } => {
            let (rho, alpha, beta) = ellipse_momentum(a, b, c)?;
            ConvergenceRegion::new(alpha, beta, rho)
        }
        _ => Err(ShapeError::UnsupportedShape("only ellipses parametrize momentum regions")),
    }
}

/// The ellipse `K_eps`: the segment `[mu, L]` inflated to imaginary
/// half-width `eps`.
pub fn perturbed_ellipse(mu: f64, l: f64, eps: f64) -> Result<SpectralShape, ShapeError> {
    if !(mu > 0.0 && mu < l) {
        return Err(ShapeError::InvalidPerturbation(format!(
            "requires 0 < mu < L, got mu={mu}, L={l}"
        )));
    }
    if !(eps >= 0.0 && eps < (l - mu) / 2.0) {
        return Err(ShapeError::InvalidPerturbation(format!(
            "requires 0 <= eps < (L - mu)/2, got eps={eps}"
        )));
    }
    SpectralShape::ellipse((l - mu) / 2.0, eps, (mu + l) / 2.0)
}

/// Leading-order asymptotic convergence factor of `K_eps` with
/// `eps/L = (mu/L)^theta`, as `mu/L -> 0`.
///
/// Acceleration survives down to `theta = 1/2`; below that the rate decays
/// to the unaccelerated order `1 - (mu/L)^(1-theta)`.
pub fn perturbed_acf_asymptotic(mu: f64, l: f64, theta: f64) -> f64 {
    assert!(mu > 0.0 && mu < l && theta > 0.0);
    let t = mu / l;
    if theta > 0.5 {
        1.0 - 2.0 * t.sqrt()
    } else if theta == 0.5 {
        1.0 - 2.0 * (std::f64::consts::SQRT_2 - 1.0) * t.sqrt()
    } else {
        1.0 - t.powf(1.0 - theta)
    }
}

/// The fixed margin `m = 2` used by both covering constructions.
pub const COVER_MARGIN: f64 = 2.0;

/// Covering ellipse for momentum on the extragradient transform of a field
/// with spectrum in the imaginary cross `[ia, ib] u [-ib, -ia]`.
///
/// Returns the inner step `eta = b / (a sqrt(2 b^2 - a^2/2))` and the
/// ellipse centered at `eta b^2` with real semiaxis `eta (b^2 - a^2/2)` and
/// imaginary semiaxis `b`. Both spectral images `i sigma + eta sigma^2`,
/// `sigma in {a, b}`, lie inside; the image of `ib` sits exactly on the
/// boundary. The construction satisfies `2 mu_bar L_bar = b^2` exactly.
pub fn eg_cover_ellipse(a: f64, b: f64) -> Result<(f64, SpectralShape), ShapeError> {
    if !(a > 0.0 && a < b) {
        return Err(ShapeError::DegenerateInput(format!(
            "requires 0 < a < b, got a={a}, b={b}"
        )));
    }
    let eta = b / (a * (2.0 * b * b - a * a / COVER_MARGIN).sqrt());
    let mu_bar = eta * a * a / COVER_MARGIN;
    let l_bar = 2.0 * eta * b * b - mu_bar;
    let shape = SpectralShape::ellipse((l_bar - mu_bar) / 2.0, b, (mu_bar + l_bar) / 2.0)?;
    Ok((eta, shape))
}

/// Covering ellipse for momentum consensus optimization.
///
/// For a Jacobian with singular values in `[gamma, L]` and Hermitian part
/// bounded below by `mu`, the consensus transform with weight `tau` has its
/// spectrum in a trapezoid with real parts in
/// `[mu + tau gamma^2, L + tau L^2]` and slope `q = gamma/(mu + tau gamma^2)`.
/// This picks the ellipse centered at `L + tau L^2` with
/// `mu_bar = (mu + tau gamma^2)/2` and imaginary semiaxis
/// `sqrt(mu_bar L_bar)`. Rejects `tau` that fails the admissibility
/// condition `q <= sqrt(3/2) sqrt((mu + tau gamma^2)/(L + tau L^2))`.
pub fn consensus_cover_ellipse(
    gamma: f64,
    mu: f64,
    l: f64,
    tau: f64,
) -> Result<SpectralShape, ShapeError> {
    if !(gamma > 0.0 && gamma <= l && mu >= 0.0 && tau >= 0.0) {
        return Err(ShapeError::DegenerateInput(format!(
            "requires 0 < gamma <= L, mu >= 0, tau >= 0; got gamma={gamma}, mu={mu}, L={l}, tau={tau}"
        )));
    }
    let x = mu + tau * gamma * gamma;
    let y = l + tau * l * l;
    let q = gamma / x;
    let bound = (1.5f64).sqrt() * (x / y).sqrt();
    if tau * gamma * gamma < mu || q > bound {
        return Err(ShapeError::InadmissibleTau { q, bound });
    }
    let mu_bar = x / COVER_MARGIN;
    let l_bar = 2.0 * y - mu_bar;
    let eps = (mu_bar * l_bar).sqrt();
    SpectralShape::ellipse((l_bar - mu_bar) / 2.0, eps, (mu_bar + l_bar) / 2.0)
}
