//! The solver zoo: baselines and the accelerated methods, parameter
//! derivation from spectral bounds, exact local rate prediction, and
//! empirical rate fitting.
//!
//! Solvers iterate in equilibrium-relative coordinates (`delta = omega -
//! omega*`). For the linear fields this toolkit benchmarks the recursion is
//! then homogeneous, so traces decay cleanly over hundreds of decades
//! instead of stalling at the cancellation floor of `omega* + delta`.

use crate::games::{LinearGame, VectorField};
use crate::numerics::{self, RealMatrix};
use crate::shapes::{self, MomentumParams, ShapeError, SpectralShape};
use crate::tol;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MethodError {
    #[error(transparent)]
    Shape(#[from] ShapeError),
    #[error(transparent)]
    Numerics(#[from] numerics::NumericsError),
    #[error("{family} cannot be derived from {bounds} bounds")]
    UnsupportedBounds { family: Family, bounds: String },
    #[error("method {family} is missing hyperparameter '{name}'")]
    MissingParam { family: Family, name: &'static str },
    #[error("dimension mismatch: field dimension {expected}, initial point {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("alternating updates need an even dimension, got {0}")]
    OddDimension(usize),
    #[error("non-positive distance at iteration {0}; shrink the fitting window")]
    NonPositiveDistance(usize),
    #[error("invalid window [{start}, {end}] for a trace of length {len}")]
    InvalidWindow { start: usize, end: usize, len: usize },
}

/// Solver family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Gradient,
    Momentum,
    Extragradient,
    /// Momentum on the extragradient field (accelerated EG).
    EgMomentum,
    /// Momentum on the squared-field direction (optimal for bilinear games).
    BilinearAccel,
    Consensus,
    /// Momentum consensus optimization.
    ConsensusMomentum,
    /// Alternating per-player gradient steps with negative momentum.
    NegMomentumAlt,
    /// Optimistic mirror descent.
    Omd,
    /// Hamiltonian gradient descent (gradient on `0.5 ||F||^2`).
    Hgd,
}

pub const ALL_FAMILIES: [Family; 10] = [
    Family::Gradient,
    Family::Momentum,
    Family::Extragradient,
    Family::EgMomentum,
    Family::BilinearAccel,
    Family::Consensus,
    Family::ConsensusMomentum,
    Family::NegMomentumAlt,
    Family::Omd,
    Family::Hgd,
];

impl Family {
    /// Canonical lowercase name, also used for CSV columns.
    pub fn name(&self) -> &'static str {
        match self {
            Family::Gradient => "gradient",
            Family::Momentum => "momentum",
            Family::Extragradient => "extragradient",
            Family::EgMomentum => "accel_eg",
            Family::BilinearAccel => "accel_bilinear",
            Family::Consensus => "consensus",
            Family::ConsensusMomentum => "accel_consensus",
            Family::NegMomentumAlt => "neg_momentum",
            Family::Omd => "omd",
            Family::Hgd => "hgd",
        }
    }

    pub fn parse(name: &str) -> Option<Family> {
        ALL_FAMILIES.iter().copied().find(|f| f.name() == name)
    }

    /// Field evaluations charged per iteration (a Jacobian-vector product
    /// counts as one evaluation).
    pub fn f_evals_per_iter(&self) -> usize {
        match self {
            Family::Gradient | Family::Momentum | Family::Omd | Family::NegMomentumAlt => 1,
            Family::Extragradient
            | Family::EgMomentum
            | Family::BilinearAccel
            | Family::Hgd
            | Family::Consensus
            | Family::ConsensusMomentum => 2,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Fully parameterized solver description.
#[derive(Debug, Clone, PartialEq)]
pub struct MethodSpec {
    pub family: Family,
    /// Named hyperparameters (`eta`, `alpha`, `beta`, `tau` as applicable).
    pub params: BTreeMap<String, f64>,
}

impl MethodSpec {
    pub fn new(family: Family, params: &[(&str, f64)]) -> Self {
        Self {
            family,
            params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        }
    }

    pub fn param(&self, name: &'static str) -> Result<f64, MethodError> {
        self.params.get(name).copied().ok_or(MethodError::MissingParam {
            family: self.family,
            name,
        })
    }

    pub fn f_evals_per_iter(&self) -> usize {
        self.family.f_evals_per_iter()
    }

    fn momentum(&self) -> Result<MomentumParams, MethodError> {
        Ok(MomentumParams {
            alpha: self.param("alpha")?,
            beta: self.param("beta")?,
        })
    }
}

/// Spectral side information a method can be derived from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpectralBounds {
    /// Eigenvalue support of the game Jacobian.
    Shape(SpectralShape),
    /// Singular values in `[gamma, l]`, Hermitian part bounded below by `mu`.
    Consensus { gamma: f64, mu: f64, l: f64 },
}

impl SpectralBounds {
    pub fn imag_cross(a: f64, b: f64) -> Result<Self, ShapeError> {
        Ok(Self::Shape(SpectralShape::imag_cross(a, b)?))
    }

    pub fn segment(mu: f64, l: f64) -> Result<Self, ShapeError> {
        Ok(Self::Shape(SpectralShape::segment(mu, l)?))
    }

    fn describe(&self) -> String {
        match self {
            SpectralBounds::Shape(s) => format!("{s:?}"),
            SpectralBounds::Consensus { gamma, mu, l } => {
                format!("Consensus {{ gamma: {gamma}, mu: {mu}, l: {l} }}")
            }
        }
    }
}

/// Derives a fully populated [`MethodSpec`] from spectral bounds.
///
/// Accelerated families use the closed-form covering constructions; the
/// baselines use the documented safe defaults (`eta = 1/(2 sigma_max)` for
/// EG and alternating negative momentum, `1/(4 sigma_max)` for OMD,
/// `1/sigma_max^2` for HGD, `tau = L/gamma^2` and `alpha = 1/(L + tau L^2)`
/// for plain consensus).
pub fn derive_params(family: Family, bounds: &SpectralBounds) -> Result<MethodSpec, MethodError> {
    use SpectralBounds as B;
    use SpectralShape as S;
    let unsupported = || MethodError::UnsupportedBounds {
        family,
        bounds: bounds.describe(),
    };
    match (family, bounds) {
        (Family::Gradient, B::Shape(shape @ (S::Disc { .. } | S::Segment { .. }))) => {
            let p = shapes::optimal_momentum(shape)?;
            Ok(MethodSpec::new(family, &[("eta", p.alpha / (1.0 + p.beta))]))
        }
        (Family::Momentum, B::Shape(shape)) => {
            let p = shapes::optimal_momentum(shape)?;
            Ok(MethodSpec::new(family, &[("alpha", p.alpha), ("beta", p.beta)]))
        }
        (Family::Extragradient, B::Shape(S::ImagCross { b, .. })) => {
            Ok(MethodSpec::new(family, &[("eta", 1.0 / (2.0 * b))]))
        }
        (Family::Omd, B::Shape(S::ImagCross { b, .. })) => {
            Ok(MethodSpec::new(family, &[("eta", 1.0 / (4.0 * b))]))
        }
        (Family::Hgd, B::Shape(S::ImagCross { b, .. })) => {
            Ok(MethodSpec::new(family, &[("eta", 1.0 / (b * b))]))
        }
        (Family::NegMomentumAlt, B::Shape(S::ImagCross { b, .. })) => Ok(MethodSpec::new(
            family,
            &[("eta", 1.0 / (2.0 * b)), ("beta", -0.5)],
        )),
        (Family::BilinearAccel, B::Shape(S::ImagCross { a, b })) => {
            let alpha = 4.0 / (a + b).powi(2);
            let beta = ((b - a) / (b + a)).powi(2);
            // The squared-field Jacobian -J^2 is eta-free for linear fields;
            // eta only conditions the finite difference.
            Ok(MethodSpec::new(
                family,
                &[("alpha", alpha), ("beta", beta), ("eta", 1.0 / b)],
            ))
        }
        (Family::EgMomentum, B::Shape(S::ImagCross { a, b })) => {
            let (eta, cover) = shapes::eg_cover_ellipse(*a, *b)?;
            let p = shapes::optimal_momentum(&cover)?;
            Ok(MethodSpec::new(
                family,
                &[("eta", eta), ("alpha", p.alpha), ("beta", p.beta)],
            ))
        }
        (Family::Consensus, B::Consensus { gamma, mu: _, l }) => {
            let tau = l / (gamma * gamma);
            let alpha = 1.0 / (l + tau * l * l);
            Ok(MethodSpec::new(family, &[("tau", tau), ("alpha", alpha)]))
        }
        (Family::ConsensusMomentum, B::Consensus { gamma, mu, l }) => {
            let tau = l / (gamma * gamma);
            let cover = shapes::consensus_cover_ellipse(*gamma, *mu, *l, tau)?;
            let p = shapes::optimal_momentum(&cover)?;
            Ok(MethodSpec::new(
                family,
                &[("tau", tau), ("alpha", p.alpha), ("beta", p.beta)],
            ))
        }
        _ => Err(unsupported()),
    }
}

/// Per-iteration distances to the equilibrium plus run metadata.
#[derive(Debug, Clone)]
pub struct IterateTrace {
    pub distances: Vec<f64>,
    pub method: MethodSpec,
    pub game_id: String,
    pub seed: Option<u64>,
    pub diverged: bool,
}

impl IterateTrace {
    pub fn with_context(mut self, game_id: impl Into<String>, seed: Option<u64>) -> Self {
        self.game_id = game_id.into();
        self.seed = seed;
        self
    }
}

fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Runs a solver from `omega0` for `iters` iterations.
///
/// The trace has `iters + 1` entries starting at `||omega0 - omega*||`,
/// unless the divergence guard (distance above `tol::DIVERGENCE_GUARD`)
/// trips, in which case the run stops early with `diverged = true`.
/// Two-step methods start with zero initial velocity.
pub fn run(
    method: &MethodSpec,
    field: &dyn VectorField,
    omega0: &[f64],
    iters: usize,
) -> Result<IterateTrace, MethodError> {
    let d = field.dim();
    if omega0.len() != d {
        return Err(MethodError::DimensionMismatch {
            expected: d,
            got: omega0.len(),
        });
    }

    let mut delta: Vec<f64> = omega0
        .iter()
        .zip(field.equilibrium())
        .map(|(w, s)| w - s)
        .collect();
    let mut delta_prev = delta.clone();
    let mut distances = Vec::with_capacity(iters + 1);
    distances.push(norm2(&delta));
    let mut diverged = false;

    // OMD keeps the previous field value; seed it with the initial one.
    let mut omd_prev_f = if method.family == Family::Omd {
        Some(field.eval_delta(&delta))
    } else {
        None
    };

    let half = d / 2;
    if method.family == Family::NegMomentumAlt && d % 2 != 0 {
        return Err(MethodError::OddDimension(d));
    }

    for _ in 0..iters {
        let next: Vec<f64> = match method.family {
            Family::Gradient => {
                let eta = method.param("eta")?;
                let f = field.eval_delta(&delta);
                delta.iter().zip(&f).map(|(x, fi)| x - eta * fi).collect()
            }
            Family::Momentum => {
                let p = method.momentum()?;
                let f = field.eval_delta(&delta);
                momentum_step(&delta, &delta_prev, &f, p.alpha, p.beta)
            }
            Family::Extragradient => {
                let eta = method.param("eta")?;
                let f = field.eval_delta(&delta);
                let mid: Vec<f64> = delta.iter().zip(&f).map(|(x, fi)| x - eta * fi).collect();
                let g = field.eval_delta(&mid);
                delta.iter().zip(&g).map(|(x, gi)| x - eta * gi).collect()
            }
            Family::EgMomentum => {
                let eta = method.param("eta")?;
                let p = method.momentum()?;
                let f = field.eval_delta(&delta);
                let mid: Vec<f64> = delta.iter().zip(&f).map(|(x, fi)| x - eta * fi).collect();
                let g = field.eval_delta(&mid);
                momentum_step(&delta, &delta_prev, &g, p.alpha, p.beta)
            }
            Family::BilinearAccel => {
                let eta = method.param("eta")?;
                let p = method.momentum()?;
                let f = field.eval_delta(&delta);
                let mid: Vec<f64> = delta.iter().zip(&f).map(|(x, fi)| x - eta * fi).collect();
                let g = field.eval_delta(&mid);
                let fr: Vec<f64> = g.iter().zip(&f).map(|(gi, fi)| (gi - fi) / eta).collect();
                momentum_step(&delta, &delta_prev, &fr, p.alpha, p.beta)
            }
            Family::Consensus | Family::ConsensusMomentum => {
                let tau = method.param("tau")?;
                let alpha = method.param("alpha")?;
                let f = field.eval_delta(&delta);
                let jtf = field.jacobian_transpose_apply(&delta, &f);
                let dir: Vec<f64> = f.iter().zip(&jtf).map(|(a, b)| a + tau * b).collect();
                if method.family == Family::Consensus {
                    delta.iter().zip(&dir).map(|(x, g)| x - alpha * g).collect()
                } else {
                    let beta = method.param("beta")?;
                    momentum_step(&delta, &delta_prev, &dir, alpha, beta)
                }
            }
            Family::Hgd => {
                let eta = method.param("eta")?;
                let f = field.eval_delta(&delta);
                let jtf = field.jacobian_transpose_apply(&delta, &f);
                delta.iter().zip(&jtf).map(|(x, g)| x - eta * g).collect()
            }
            Family::Omd => {
                let eta = method.param("eta")?;
                let f = field.eval_delta(&delta);
                let prev_f = omd_prev_f.as_ref().expect("initialized above");
                let next = delta
                    .iter()
                    .zip(&f)
                    .zip(prev_f)
                    .map(|((x, fi), pfi)| x - 2.0 * eta * fi + eta * pfi)
                    .collect();
                omd_prev_f = Some(f);
                next
            }
            Family::NegMomentumAlt => {
                let eta = method.param("eta")?;
                let beta = method.param("beta")?;
                let f = field.eval_delta(&delta);
                let mut staged = delta.clone();
                for i in 0..half {
                    staged[i] = delta[i] - eta * f[i] + beta * (delta[i] - delta_prev[i]);
                }
                let f2 = field.eval_delta(&staged);
                let mut next = staged.clone();
                for i in half..d {
                    next[i] = delta[i] - eta * f2[i] + beta * (delta[i] - delta_prev[i]);
                }
                next
            }
        };
        delta_prev = std::mem::replace(&mut delta, next);
        let dist = norm2(&delta);
        distances.push(dist);
        if !dist.is_finite() || dist > tol::DIVERGENCE_GUARD {
            diverged = true;
            break;
        }
    }

    Ok(IterateTrace {
        distances,
        method: method.clone(),
        game_id: String::new(),
        seed: None,
        diverged,
    })
}

fn momentum_step(delta: &[f64], prev: &[f64], f: &[f64], alpha: f64, beta: f64) -> Vec<f64> {
    delta
        .iter()
        .zip(prev)
        .zip(f)
        .map(|((x, xp), fi)| x - alpha * fi + beta * (x - xp))
        .collect()
}

/// Exact local rate on a linear game: the spectral radius of the method's
/// one-step iteration operator.
///
/// One-step families map each Jacobian eigenvalue through their update;
/// momentum families take the per-eigenvalue root radius of the effective
/// Jacobian (the spectral radius of the augmented operator — the two agree
/// by the spectral mapping of the block companion form, which the test
/// suite checks directly). Alternating and optimistic families assemble
/// their exact composition matrix.
pub fn predicted_rate(method: &MethodSpec, game: &LinearGame) -> Result<f64, MethodError> {
    let j = game.matrix();
    let max_over = |m: &RealMatrix, f: &dyn Fn(num_complex::Complex64) -> f64| {
        numerics::eigenvalues(m)
            .map(|s| s.values().iter().map(|&z| f(z)).fold(0.0, f64::max))
    };
    let rate = match method.family {
        Family::Gradient => {
            let eta = method.param("eta")?;
            max_over(j, &|z| (1.0 - eta * z).norm())?
        }
        Family::Extragradient => {
            let eta = method.param("eta")?;
            max_over(j, &|z| (1.0 - eta * (z - eta * z * z)).norm())?
        }
        Family::Hgd => {
            let eta = method.param("eta")?;
            numerics::singular_values(j)?
                .iter()
                .map(|s| (1.0 - eta * s * s).abs())
                .fold(0.0, f64::max)
        }
        Family::Consensus => {
            let tau = method.param("tau")?;
            let alpha = method.param("alpha")?;
            let jc = j.add(&j.transpose().matmul(j).scale(tau));
            max_over(&jc, &|z| (1.0 - alpha * z).norm())?
        }
        Family::Momentum => {
            let p = method.momentum()?;
            max_over(j, &|z| shapes::momentum_root_radius(z, p))?
        }
        Family::EgMomentum => {
            let eta = method.param("eta")?;
            let p = method.momentum()?;
            let jeg = j.sub(&j.matmul(j).scale(eta));
            max_over(&jeg, &|z| shapes::momentum_root_radius(z, p))?
        }
        Family::BilinearAccel => {
            let p = method.momentum()?;
            let jr = j.matmul(j).scale(-1.0);
            max_over(&jr, &|z| shapes::momentum_root_radius(z, p))?
        }
        Family::ConsensusMomentum => {
            let tau = method.param("tau")?;
            let p = method.momentum()?;
            let jc = j.add(&j.transpose().matmul(j).scale(tau));
            max_over(&jc, &|z| shapes::momentum_root_radius(z, p))?
        }
        Family::Omd => {
            let eta = method.param("eta")?;
            let n = j.rows();
            let top_left = RealMatrix::identity(n).sub(&j.scale(2.0 * eta));
            let m = RealMatrix::from_blocks(
                &top_left,
                &j.scale(eta),
                &RealMatrix::identity(n),
                &RealMatrix::zeros(n, n),
            );
            numerics::spectral_radius(&m)?
        }
        Family::NegMomentumAlt => {
            let m = neg_momentum_composition(j, method.param("eta")?, method.param("beta")?)?;
            numerics::spectral_radius(&m)?
        }
    };
    Ok(rate)
}

/// Exact one-iteration matrix of the alternating negative-momentum update
/// on the state `(u, v, u_prev, v_prev)`.
fn neg_momentum_composition(
    j: &RealMatrix,
    eta: f64,
    beta: f64,
) -> Result<RealMatrix, MethodError> {
    let d = j.rows();
    if d % 2 != 0 {
        return Err(MethodError::OddDimension(d));
    }
    let h = d / 2;
    let sub = |r0: usize, c0: usize| -> RealMatrix {
        let mut data = Vec::with_capacity(h * h);
        for i in 0..h {
            for k in 0..h {
                data.push(j.get(r0 + i, c0 + k));
            }
        }
        RealMatrix::new(h, h, data).expect("finite entries")
    };
    let (jxx, jxy, jyx, jyy) = (sub(0, 0), sub(0, h), sub(h, 0), sub(h, h));
    let i_h = RealMatrix::identity(h);

    // u+ = (1+beta) u - eta (Jxx u + Jxy v) - beta u'
    let au = i_h.scale(1.0 + beta).sub(&jxx.scale(eta));
    let bu = jxy.scale(-eta);
    let cu = i_h.scale(-beta);
    // v+ = (1+beta) v - eta (Jyx u+ + Jyy v) - beta v'
    let av = jyx.scale(-eta).matmul(&au);
    let bv = i_h
        .scale(1.0 + beta)
        .sub(&jyy.scale(eta))
        .add(&jyx.scale(-eta).matmul(&bu));
    let cv = jyx.scale(-eta).matmul(&cu);

    let n = 2 * d;
    let mut t = vec![0.0; n * n];
    let mut put = |r0: usize, c0: usize, m: &RealMatrix| {
        for i in 0..h {
            for k in 0..h {
                t[(r0 + i) * n + c0 + k] = m.get(i, k);
            }
        }
    };
    put(0, 0, &au);
    put(0, h, &bu);
    put(0, d, &cu);
    put(h, 0, &av);
    put(h, h, &bv);
    put(h, d, &cv);
    put(h, d + h, &i_h.scale(-beta));
    put(d, 0, &i_h);
    put(d + h, h, &i_h);
    Ok(RealMatrix::new(n, n, t)?)
}

/// Least-squares geometric rate of a trace over the window
/// `[start, end]` (inclusive iteration indices): `exp` of the slope of a
/// line fit to `log d_t`.
pub fn fit_rate(trace: &IterateTrace, window: (usize, usize)) -> Result<f64, MethodError> {
    let (start, end) = window;
    let len = trace.distances.len();
    if start >= end || end >= len {
        return Err(MethodError::InvalidWindow { start, end, len });
    }
    let mut logs = Vec::with_capacity(end - start + 1);
    for i in start..=end {
        let d = trace.distances[i];
        if !(d > 0.0) {
            return Err(MethodError::NonPositiveDistance(i));
        }
        logs.push((i as f64, d.ln()));
    }
    let n = logs.len() as f64;
    let sx: f64 = logs.iter().map(|(x, _)| x).sum();
    let sy: f64 = logs.iter().map(|(_, y)| y).sum();
    let sxx: f64 = logs.iter().map(|(x, _)| x * x).sum();
    let sxy: f64 = logs.iter().map(|(x, y)| x * y).sum();
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    Ok(slope.exp())
}

/// Normalized step-size asymptotics of the accelerated-EG derivation:
/// `(eta a sqrt(2), alpha b^2 / (2 sqrt(2) a), (1 - beta) b / (2 sqrt(3) a))`,
/// each tending to 1 as `a/b -> 0`.
pub fn step_size_asymptotics(a: f64, b: f64) -> Result<(f64, f64, f64), MethodError> {
    let spec = derive_params(Family::EgMomentum, &SpectralBounds::imag_cross(a, b)?)?;
    let eta = spec.param("eta")?;
    let alpha = spec.param("alpha")?;
    let beta = spec.param("beta")?;
    let s2 = std::f64::consts::SQRT_2;
    let s3 = 3f64.sqrt();
    Ok((
        eta * a * s2,
        alpha * b * b / (2.0 * s2 * a),
        (1.0 - beta) * b / (2.0 * s3 * a),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::{self, make_bilinear};

    fn close(a: f64, b: f64, tol_: f64) -> bool {
        (a - b).abs() <= tol_ * (1.0 + b.abs())
    }

    #[test]
    fn derive_bilinear_accel_example() {
        let spec = derive_params(
            Family::BilinearAccel,
            &SpectralBounds::imag_cross(1.0, 10.0).unwrap(),
        )
        .unwrap();
        assert!(close(spec.param("alpha").unwrap(), 4.0 / 121.0, 1e-15));
        assert!(close(spec.param("beta").unwrap(), 81.0 / 121.0, 1e-15));
    }

    #[test]
    fn derive_eg_momentum_example() {
        let spec = derive_params(
            Family::EgMomentum,
            &SpectralBounds::imag_cross(1.0, 100.0).unwrap(),
        )
        .unwrap();
        assert!(close(spec.param("eta").unwrap(), 100.0 / 19999.5f64.sqrt(), 1e-13));
    }

    #[test]
    fn derive_consensus_momentum_example() {
        let spec = derive_params(
            Family::ConsensusMomentum,
            &SpectralBounds::Consensus { gamma: 1.0, mu: 0.0, l: 10.0 },
        )
        .unwrap();
        assert!(close(spec.param("tau").unwrap(), 10.0, 1e-15));
        // The cover ellipse has mu_bar = 5, L_bar = 2015; alpha = 2/(c + sqrt(D)).
        assert!(spec.param("alpha").unwrap() > 0.0);
        assert!(spec.param("beta").unwrap() > 0.0);
    }

    #[test]
    fn inadmissible_tau_propagates() {
        // gamma = L with tau = L/gamma^2 = 1/L is outside the admissible
        // regime, so derivation must fail loudly.
        let err = derive_params(
            Family::ConsensusMomentum,
            &SpectralBounds::Consensus { gamma: 10.0, mu: 0.0, l: 10.0 },
        )
        .unwrap_err();
        assert!(matches!(
            err,
            MethodError::Shape(ShapeError::InadmissibleTau { .. })
        ));
    }

    #[test]
    fn fit_rate_examples() {
        let geometric = IterateTrace {
            distances: (0..200).map(|t| 0.9f64.powi(t)).collect(),
            method: MethodSpec::new(Family::Gradient, &[("eta", 0.1)]),
            game_id: "synthetic".into(),
            seed: None,
            diverged: false,
        };
        let r = fit_rate(&geometric, (0, 199)).unwrap();
        assert!((r - 0.9).abs() <= 1e-12);

        let polynomial = IterateTrace {
            distances: (0..=1000)
                .map(|t| (t as f64 + 1.0) * 0.9f64.powi(t))
                .collect(),
            ..geometric.clone()
        };
        let r = fit_rate(&polynomial, (100, 1000)).unwrap();
        assert!((r - 0.9).abs() <= 0.002, "rate = {r}");

        let diverging = IterateTrace {
            distances: (0..50).map(|t| 1.2f64.powi(t)).collect(),
            ..geometric.clone()
        };
        assert!(fit_rate(&diverging, (0, 49)).unwrap() > 1.0);

        let with_zero = IterateTrace {
            distances: vec![1.0, 0.5, 0.0, 0.0],
            ..geometric
        };
        assert!(matches!(
            fit_rate(&with_zero, (0, 3)),
            Err(MethodError::NonPositiveDistance(2))
        ));
    }

    #[test]
    fn gradient_on_bilinear_never_contracts() {
        let game = make_bilinear(6, 10.0, 4).unwrap();
        let linear = game.as_linear();
        for eta in [0.01, 0.1, 1.0] {
            let spec = MethodSpec::new(Family::Gradient, &[("eta", eta)]);
            let trace = run(&spec, &linear, game.omega0(), 300).unwrap();
            for w in trace.distances.windows(2) {
                assert!(
                    w[1] >= w[0] * (1.0 - 1e-12),
                    "distance decreased under gradient flow on a bilinear game"
                );
            }
        }
    }

    #[test]
    fn momentum_on_segment_spectrum_fits_the_acf() {
        // J = diag(linspace(1, 100, 50)); optimal segment momentum attains
        // acf = 9/11 asymptotically.
        let diag: Vec<f64> = (0..50).map(|i| 1.0 + 99.0 * i as f64 / 49.0).collect();
        let j = RealMatrix::diagonal(&diag);
        let game = LinearGame::new(j, vec![0.0; 50]).unwrap();
        let shape = SpectralShape::segment(1.0, 100.0).unwrap();
        let p = shapes::optimal_momentum(&shape).unwrap();
        let spec = MethodSpec::new(Family::Momentum, &[("alpha", p.alpha), ("beta", p.beta)]);
        let mut rng = games::rng::stream(2, 0);
        let omega0 = RealMatrix::random_normal(50, 1, &mut rng).entries().to_vec();
        let trace = run(&spec, &game, &omega0, 1000).unwrap();
        let fitted = fit_rate(&trace, (200, 1000)).unwrap();
        assert!(fitted >= 0.80 && fitted <= 0.84, "fitted = {fitted}");
        let predicted = predicted_rate(&spec, &game).unwrap();
        assert!((predicted - 9.0 / 11.0).abs() <= 1e-9);
    }

    #[test]
    fn gradient_on_disc_spectrum_is_optimal() {
        let disc = SpectralShape::disc(2.0, 1.0).unwrap();
        let pts = crate::minimax::sample_boundary(&disc, 64);
        let spectrum: crate::numerics::Spectrum = pts.into_iter().collect();
        let j = games::matrix_with_spectrum(&spectrum).unwrap();
        let d = j.rows();
        let game = LinearGame::new(j, vec![0.0; d]).unwrap();
        let spec = MethodSpec::new(Family::Gradient, &[("eta", 0.5)]);
        let predicted = predicted_rate(&spec, &game).unwrap();
        assert!((predicted - 0.5).abs() <= 1e-9, "predicted = {predicted}");

        let mut rng = games::rng::stream(3, 0);
        let omega0 = RealMatrix::random_normal(d, 1, &mut rng).entries().to_vec();
        let trace = run(&spec, &game, &omega0, 400).unwrap();
        let fitted = fit_rate(&trace, (100, 400)).unwrap();
        assert!(fitted <= 0.5 + 0.01, "fitted = {fitted}");
    }

    #[test]
    fn predicted_rate_matches_augmented_operator() {
        let game = make_bilinear(4, 5.0, 11).unwrap().as_linear();
        let (a, b) = (1.0, 5.0);
        for family in [Family::BilinearAccel, Family::EgMomentum] {
            let spec =
                derive_params(family, &SpectralBounds::imag_cross(a, b).unwrap()).unwrap();
            let predicted = predicted_rate(&spec, &game).unwrap();
            let p = spec.momentum().unwrap();
            let j = game.matrix();
            let jeff = match family {
                Family::BilinearAccel => j.matmul(j).scale(-1.0),
                _ => j.sub(&j.matmul(j).scale(spec.param("eta").unwrap())),
            };
            let aug = games::augmented_jacobian(&jeff, p);
            let direct = numerics::spectral_radius(&aug).unwrap();
            assert!(
                (predicted - direct).abs() <= 1e-7 * (1.0 + direct),
                "{family}: {predicted} vs {direct}"
            );
        }
    }

    #[test]
    fn step_size_asymptotics_normalize_to_one() {
        let (e, a, b) = step_size_asymptotics(1.0, 1000.0).unwrap();
        for v in [e, a, b] {
            assert!((v - 1.0).abs() <= 0.05, "normalized value {v}");
        }
        // eta's error term is quadratic in a/b.
        let (e, _, _) = step_size_asymptotics(1.0, 10.0).unwrap();
        assert!((e - 1.0).abs() <= 0.01, "eta normalization {e}");
        // beta stays below 1 and approaches it.
        let spec = derive_params(
            Family::EgMomentum,
            &SpectralBounds::imag_cross(1.0, 1e4).unwrap(),
        )
        .unwrap();
        let beta = spec.param("beta").unwrap();
        assert!(beta < 1.0 && beta > 0.99);
    }

    #[test]
    fn divergence_guard_trips() {
        let j = RealMatrix::diagonal(&[-1.0, -2.0]);
        let game = LinearGame::new(j, vec![0.0, 0.0]).unwrap();
        let spec = MethodSpec::new(Family::Gradient, &[("eta", 1.0)]);
        let trace = run(&spec, &game, &[1.0, 1.0], 10_000).unwrap();
        assert!(trace.diverged);
        assert!(trace.distances.len() < 10_001);
        assert!(*trace.distances.last().unwrap() > tol::DIVERGENCE_GUARD);
    }
}
