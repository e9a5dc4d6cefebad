//! Independent minimax-polynomial oracle.
//!
//! Numerically estimates `min_{p in P_t} max_{lambda in K} |p(lambda)|`
//! over real polynomials with `p(0) = 1` by Lawson's iteratively reweighted
//! least squares on a boundary grid of `K`. The `t`-th root of the optimum
//! is a finite-degree estimate of the asymptotic convergence factor, which
//! the closed forms in [`crate::shapes`] must match. The oracle shares no
//! code with those closed forms.
//!
//! Each reweighting step fits in a discretely orthonormal polynomial basis
//! built by Arnoldi on the weighted point set (monomials would be hopeless
//! at degree 40). With an orthonormal basis the constrained least-squares
//! solution is closed form: `gamma = sigma / ||sigma||^2` where
//! `sigma_k = pi_k(0)`.

use crate::shapes::SpectralShape;
use crate::tol;
use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("singular least squares: {0}")]
    SingularLeastSquares(String),
}

/// Real polynomial `p(lambda) = 1 + sum_k c_k lambda^k` with `p(0) = 1`.
///
/// The monomial form is for reporting; at high degree on wide domains it is
/// ill-conditioned to evaluate, so the oracle scores polynomials through its
/// internal orthogonal recurrence instead.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstrainedPolynomial {
    pub degree: usize,
    /// Coefficients `c_1 ..= c_t`.
    pub coeffs: Vec<f64>,
}

impl ConstrainedPolynomial {
    /// Horner evaluation of `1 + sum c_k z^k`.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc * z + 1.0
    }
}

/// Outcome of a Lawson run.
#[derive(Debug, Clone)]
pub struct OracleResult {
    pub poly: ConstrainedPolynomial,
    /// `max_i |p(lambda_i)|` over the grid, recomputed from the final fit.
    pub max_abs: f64,
    /// `max_abs^(1/t)`.
    pub acf_estimate: f64,
    pub grid_size: usize,
    pub iterations_used: usize,
    pub converged: bool,
    /// Orthogonal-basis recurrence of the fitted polynomial (column `k`
    /// holds the coefficients expressing `lambda * pi_k` over `pi_0..pi_{k+1}`).
    hess: Vec<Vec<f64>>,
    gamma: Vec<f64>,
}

impl OracleResult {
    /// Stable evaluation of the fitted polynomial near the grid, through
    /// the orthogonal recurrence.
    pub fn eval_stable(&self, z: Complex64) -> Complex64 {
        let vals = basis_values_at(&self.hess, z);
        self.gamma
            .iter()
            .zip(&vals)
            .map(|(g, v)| g * v)
            .sum()
    }
}

/// Deterministic boundary grid of a shape, closed under conjugation.
///
/// Segments and crosses use cosine-clustered nodes (denser near the
/// endpoints, where minimax polynomials oscillate fastest) and include both
/// endpoints. Discs and ellipses use the trigonometric parametrization at
/// equally spaced angles. For an `ImagCross`, `n` is rounded down to even
/// so the conjugate pairing is exact.
pub fn sample_boundary(shape: &SpectralShape, n: usize) -> Vec<Complex64> {
    assert!(n >= 2, "need at least two boundary samples");
    match *shape {
        SpectralShape::Segment { mu, l } => {
            let c = (mu + l) / 2.0;
            let a = (l - mu) / 2.0;
            (0..n)
                .map(|j| {
                    let theta = std::f64::consts::PI * j as f64 / (n - 1) as f64;
                    Complex64::new(c + a * theta.cos(), 0.0)
                })
                .collect()
        }
        SpectralShape::Disc { center, radius } => (0..n)
            .map(|j| {
                let theta = 2.0 * std::f64::consts::PI * j as f64 / n as f64;
                Complex64::new(center + radius * theta.cos(), radius * theta.sin())
            })
            .collect(),
        SpectralShape::Ellipse { a, b, c } => (0..n)
            .map(|j| {
                let theta = 2.0 * std::f64::consts::PI * j as f64 / n as f64;
                Complex64::new(c + a * theta.cos(), b * theta.sin())
            })
            .collect(),
        SpectralShape::ImagCross { a, b } => {
            let half = (n / 2).max(2);
            let c = (a + b) / 2.0;
            let r = (b - a) / 2.0;
            let mut pts = Vec::with_capacity(2 * half);
            for j in 0..half {
                let theta = std::f64::consts::PI * j as f64 / (half - 1) as f64;
                let y = c + r * theta.cos();
                pts.push(Complex64::new(0.0, y));
                pts.push(Complex64::new(0.0, -y));
            }
            pts
        }
    }
}

/// Minimax value on `[mu, L]` at degree `t`: `1 / T_t((L + mu)/(L - mu))`,
/// evaluated through the `cosh`/`acosh` form.
pub fn chebyshev_reference(mu: f64, l: f64, t: usize) -> f64 {
    assert!(mu > 0.0 && mu < l);
    let z0 = (l + mu) / (l - mu);
    let targ = t as f64 * z0.acosh();
    if targ < 700.0 {
        1.0 / targ.cosh()
    } else {
        2.0 * (-targ).exp()
    }
}

/// Default grid size for [`acf_estimate`].
pub fn default_grid_size(t: usize) -> usize {
    (50 * t).max(64)
}

/// Default iteration cap for [`lawson_minimax`].
pub const DEFAULT_MAX_ITERS: usize = 500;

/// Default weight floor for [`lawson_minimax`].
pub const DEFAULT_WEIGHT_FLOOR: f64 = 1e-14;

/// Finite-degree estimate of the asymptotic convergence factor:
/// `lawson_minimax(sample_boundary(K, n), t).max_abs^(1/t)`.
pub fn acf_estimate(shape: &SpectralShape, t: usize, n: usize) -> Result<f64, OracleError> {
    let points = sample_boundary(shape, n);
    let result = lawson_minimax(&points, t, DEFAULT_MAX_ITERS, DEFAULT_WEIGHT_FLOOR)?;
    Ok(result.acf_estimate)
}

/// Lawson iteratively reweighted least squares for the discrete minimax
/// problem over `P_t` on `points`.
///
/// The weighted objective of the best-so-far polynomial is non-increasing
/// by construction (the best fit is only ever replaced by a smaller
/// `max_abs`). `converged` is set once the relative change of `max_abs`
/// stays below [`tol::LAWSON_RELATIVE_CHANGE`] for
/// [`tol::LAWSON_STALL_ITERS`] consecutive iterations, or once the weighted
/// lower bound certifies the fit; otherwise the best-so-far result is
/// returned with `converged = false`.
pub fn lawson_minimax(
    points: &[Complex64],
    t: usize,
    max_iters: usize,
    weight_floor: f64,
) -> Result<OracleResult, OracleError> {
    if points.is_empty() {
        return Err(OracleError::SingularLeastSquares("empty point set".into()));
    }
    if t == 0 {
        return Err(OracleError::SingularLeastSquares("degree must be >= 1".into()));
    }
    let scale = points.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if scale == 0.0 || points.iter().any(|z| z.norm() <= 1e-14 * scale) {
        return Err(OracleError::SingularLeastSquares(
            "points must exclude 0 (p(0) = 1 cannot vanish there)".into(),
        ));
    }

    let n = points.len();
    let mut weights = vec![1.0 / n as f64; n];
    let mut best: Option<Fit> = None;
    let mut prev_max = f64::INFINITY;
    let mut stall = 0usize;
    let mut iterations_used = 0usize;
    let mut converged = false;

    for iter in 1..=max_iters {
        iterations_used = iter;
        let fit = weighted_fit(points, t, &weights)?;

        if best.as_ref().is_none_or(|b| fit.max_abs < b.max_abs) {
            best = Some(fit.clone());
        }

        // Exact interpolation (Krylov breakdown hit the node polynomial).
        if fit.max_abs <= 1e-300 {
            converged = true;
            break;
        }
        // Weighted LS value is a lower bound for the discrete minimax, so a
        // closed gap certifies optimality.
        let gap_closed = fit.max_abs <= fit.lower_bound * (1.0 + tol::LAWSON_RELATIVE_CHANGE);
        let rel_change = (fit.max_abs - prev_max).abs() / fit.max_abs.max(f64::MIN_POSITIVE);
        stall = if rel_change < tol::LAWSON_RELATIVE_CHANGE {
            stall + 1
        } else {
            0
        };
        prev_max = fit.max_abs;
        if gap_closed || stall >= tol::LAWSON_STALL_ITERS {
            converged = true;
            break;
        }

        // Lawson reweighting: w_i <- w_i |r_i|, floored and renormalized.
        let mut sum = 0.0;
        for (w, r) in weights.iter_mut().zip(&fit.residuals) {
            *w *= r.norm();
            sum += *w;
        }
        if sum <= 0.0 {
            break;
        }
        for w in weights.iter_mut() {
            *w = (*w / sum).max(weight_floor);
        }
        let renorm: f64 = weights.iter().sum();
        for w in weights.iter_mut() {
            *w /= renorm;
        }
    }

    let best = best.expect("at least one iteration ran");
    let coeffs = monomial_coefficients(&best.hess, &best.gamma, t);
    Ok(OracleResult {
        poly: ConstrainedPolynomial { degree: t, coeffs },
        max_abs: best.max_abs,
        acf_estimate: best.max_abs.powf(1.0 / t as f64),
        grid_size: n,
        iterations_used,
        converged,
        hess: best.hess,
        gamma: best.gamma,
    })
}

#[derive(Clone)]
struct Fit {
    hess: Vec<Vec<f64>>,
    gamma: Vec<f64>,
    residuals: Vec<Complex64>,
    max_abs: f64,
    lower_bound: f64,
}

/// Solves `min_p sum_i w_i |p(lambda_i)|^2` over `P_t` for the current
/// weights, via an Arnoldi-orthonormalized basis.
fn weighted_fit(points: &[Complex64], t: usize, weights: &[f64]) -> Result<Fit, OracleError> {
    let n = points.len();
    // Basis value columns; q[k][i] = pi_k(lambda_i).
    let mut q: Vec<Vec<Complex64>> = Vec::with_capacity(t + 1);
    // hess[k] holds the recurrence column for lambda * pi_k.
    let mut hess: Vec<Vec<f64>> = Vec::with_capacity(t);
    q.push(vec![Complex64::new(1.0, 0.0); n]);

    let wdot = |a: &[Complex64], b: &[Complex64]| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..n {
            acc += weights[i] * a[i].conj() * b[i];
        }
        acc
    };

    let mut exhausted_at: Option<usize> = None;
    for k in 0..t {
        let mut v: Vec<Complex64> = points.iter().zip(&q[k]).map(|(z, qi)| z * qi).collect();
        let before = wdot(&v, &v).re.sqrt();
        let mut col = vec![0.0; k + 2];
        for (j, qj) in q.iter().enumerate() {
            // Conjugate-symmetric points and weights make this real; the
            // imaginary part is pure rounding noise.
            let h = wdot(qj, &v).re;
            col[j] = h;
            for i in 0..n {
                v[i] -= h * qj[i];
            }
        }
        let norm = wdot(&v, &v).re.max(0.0).sqrt();
        if norm <= 1e-14 * before.max(f64::MIN_POSITIVE) {
            // lambda * pi_k already lies in the span on the points: the next
            // basis member vanishes on the whole grid (node polynomial).
            col[k + 1] = 1.0;
            hess.push(col);
            exhausted_at = Some(k + 1);
            break;
        }
        col[k + 1] = norm;
        hess.push(col);
        for vi in v.iter_mut() {
            *vi /= norm;
        }
        q.push(v);
    }

    let sigma = basis_values_at_real_zero(&hess);

    if let Some(stop) = exhausted_at {
        // Exact interpolation: put all weight on the vanishing basis member.
        let s = sigma[stop];
        if s.abs() <= 1e-200 {
            return Err(OracleError::SingularLeastSquares(
                "grid degenerate: node polynomial vanishes at 0".into(),
            ));
        }
        let mut gamma = vec![0.0; stop + 1];
        gamma[stop] = 1.0 / s;
        return Ok(Fit {
            hess,
            gamma,
            residuals: vec![Complex64::new(0.0, 0.0); n],
            max_abs: 0.0,
            lower_bound: 0.0,
        });
    }

    // Orthonormal basis: the constrained LS optimum is sigma / ||sigma||^2.
    let norm2: f64 = sigma.iter().map(|s| s * s).sum();
    let gamma: Vec<f64> = sigma.iter().map(|s| s / norm2).collect();

    let mut residuals = vec![Complex64::new(0.0, 0.0); n];
    for (g, qk) in gamma.iter().zip(&q) {
        for i in 0..n {
            residuals[i] += g * qk[i];
        }
    }
    let max_abs = residuals.iter().map(|r| r.norm()).fold(0.0, f64::max);
    // min_p sum w |p|^2 = 1/||sigma||^2, and sum w = 1, so the weighted RMS
    // lower-bounds the discrete minimax.
    let lower_bound = norm2.recip().sqrt();

    Ok(Fit { hess, gamma, residuals, max_abs, lower_bound })
}

/// Values `pi_k(0)` from the recurrence (real because the recurrence is).
fn basis_values_at_real_zero(hess: &[Vec<f64>]) -> Vec<f64> {
    let mut vals = vec![1.0];
    for col in hess {
        let k = vals.len() - 1;
        let mut next = 0.0; // z * pi_k at z = 0
        for (j, v) in vals.iter().enumerate() {
            next -= col[j] * v;
        }
        next /= col[k + 1];
        vals.push(next);
    }
    vals
}

/// Values `pi_k(z)` at an arbitrary complex point.
fn basis_values_at(hess: &[Vec<f64>], z: Complex64) -> Vec<Complex64> {
    let mut vals = vec![Complex64::new(1.0, 0.0)];
    for col in hess {
        let k = vals.len() - 1;
        let mut next = z * vals[k];
        for (j, v) in vals.iter().enumerate() {
            next -= col[j] * v;
        }
        next /= col[k + 1];
        vals.push(next);
    }
    vals
}

/// Monomial coefficients `c_1..c_t` of `sum_k gamma_k pi_k`, renormalized
/// so the constant term is exactly 1.
fn monomial_coefficients(hess: &[Vec<f64>], gamma: &[f64], t: usize) -> Vec<f64> {
    // mono[k][d]: coefficient of z^d in pi_k.
    let mut mono: Vec<Vec<f64>> = vec![vec![0.0; t + 1]];
    mono[0][0] = 1.0;
    for col in hess {
        let k = mono.len() - 1;
        let mut next = vec![0.0; t + 1];
        for d in 0..t {
            next[d + 1] = mono[k][d];
        }
        for (j, mj) in mono.iter().enumerate() {
            for d in 0..=t {
                next[d] -= col[j] * mj[d];
            }
        }
        for c in next.iter_mut() {
            *c /= col[k + 1];
        }
        mono.push(next);
    }
    let mut p = vec![0.0; t + 1];
    for (g, mk) in gamma.iter().zip(&mono) {
        for d in 0..=t {
            p[d] += g * mk[d];
        }
    }
    let p0 = p[0];
    p[1..].iter().map(|c| c / p0).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes::SpectralShape;

    #[test]
    fn boundary_samples_match_examples() {
        let disc = SpectralShape::disc(2.0, 1.0).unwrap();
        let pts = sample_boundary(&disc, 4);
        let expected = [
            Complex64::new(3.0, 0.0),
            Complex64::new(2.0, 1.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(2.0, -1.0),
        ];
        for (p, e) in pts.iter().zip(expected) {
            assert!((p - e).norm() < 1e-14);
        }

        let seg = SpectralShape::segment(1.0, 100.0).unwrap();
        let pts = sample_boundary(&seg, 2);
        let mut re: Vec<f64> = pts.iter().map(|z| z.re).collect();
        re.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((re[0] - 1.0).abs() < 1e-12 && (re[1] - 100.0).abs() < 1e-12);
    }

    #[test]
    fn boundary_samples_are_conjugate_closed() {
        for shape in [
            SpectralShape::ellipse(4.0, 3.0, 5.0).unwrap(),
            SpectralShape::disc(2.0, 1.0).unwrap(),
            SpectralShape::imag_cross(1.0, 10.0).unwrap(),
        ] {
            let pts = sample_boundary(&shape, 360);
            let mut used = vec![false; pts.len()];
            for (i, z) in pts.iter().enumerate() {
                if used[i] {
                    continue;
                }
                let j = (0..pts.len())
                    .find(|&j| !used[j] && (pts[j] - z.conj()).norm() <= 1e-12 * (1.0 + z.norm()));
                let j = j.unwrap_or_else(|| panic!("no conjugate for {z}"));
                used[i] = true;
                used[j] = true;
            }
        }
    }

    #[test]
    fn single_point_interpolation() {
        let res = lawson_minimax(&[Complex64::new(2.0, 0.0)], 1, 50, 1e-14).unwrap();
        assert_eq!(res.max_abs, 0.0);
        assert!(res.converged);
        // p(z) = 1 - z/2.
        assert_eq!(res.poly.coeffs.len(), 1);
        assert!((res.poly.coeffs[0] + 0.5).abs() < 1e-12);
    }

    #[test]
    fn rejects_zero_in_grid() {
        let pts = [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
        assert!(matches!(
            lawson_minimax(&pts, 1, 10, 1e-14),
            Err(OracleError::SingularLeastSquares(_))
        ));
    }

    #[test]
    fn chebyshev_reference_values() {
        // Degree 1 optimum on [mu, L] is 1 - 2 lambda/(mu + L) with value
        // (L - mu)/(L + mu).
        let v = chebyshev_reference(1.0, 100.0, 1);
        assert!((v - 99.0 / 101.0).abs() < 1e-14);

        // Large-degree values approach acf(segment)^t.
        let v40 = chebyshev_reference(1.0, 100.0, 40);
        let rate = v40.powf(1.0 / 40.0);
        let limit = 9.0 / 11.0;
        assert!(rate > limit && rate < limit + 2e-2, "rate = {rate}");
    }

    #[test]
    fn disc_oracle_matches_closed_form() {
        let disc = SpectralShape::disc(2.0, 1.0).unwrap();
        let est = acf_estimate(&disc, 8, 256).unwrap();
        assert!((est - 0.5).abs() <= 0.01, "estimate = {est}");
    }

    #[test]
    fn oracle_result_is_self_consistent() {
        let disc = SpectralShape::disc(2.0, 1.0).unwrap();
        let pts = sample_boundary(&disc, 128);
        let res = lawson_minimax(&pts, 8, DEFAULT_MAX_ITERS, DEFAULT_WEIGHT_FLOOR).unwrap();
        // Recomputed maximum over the grid agrees through both the stable
        // recurrence and the reported monomial coefficients.
        let stable_max = pts
            .iter()
            .map(|&z| res.eval_stable(z).norm())
            .fold(0.0, f64::max);
        assert!((stable_max - res.max_abs).abs() <= 1e-12 * (1.0 + res.max_abs));
        let mono_max = pts
            .iter()
            .map(|&z| res.poly.eval(z).norm())
            .fold(0.0, f64::max);
        assert!((mono_max - res.max_abs).abs() <= 1e-9 * (1.0 + res.max_abs));
    }

    #[test]
    fn imag_cross_oracle_has_even_polynomial() {
        let cross = SpectralShape::imag_cross(1.0, 10.0).unwrap();
        let pts = sample_boundary(&cross, 600);
        let res = lawson_minimax(&pts, 20, DEFAULT_MAX_ITERS, DEFAULT_WEIGHT_FLOOR).unwrap();
        let est = res.acf_estimate;
        // The degree-20 optimum on the cross is exactly the degree-10
        // segment optimum composed with lambda -> -lambda^2, so the finite
        // reference is chebyshev_reference(1, 100, 10)^(1/20); the
        // asymptote sqrt(9/11) lies 3.4% below it.
        let finite_ref = chebyshev_reference(1.0, 100.0, 10).powf(1.0 / 20.0);
        assert!(
            (est - finite_ref).abs() <= 0.005 * finite_ref,
            "estimate = {est}, finite-degree reference = {finite_ref}"
        );
        assert!(est >= (9.0f64 / 11.0).sqrt() * 0.98);
        for (k, c) in res.poly.coeffs.iter().enumerate() {
            if k % 2 == 0 {
                // coeffs[k] multiplies lambda^(k+1), an odd power.
                assert!(c.abs() <= 1e-6, "odd coefficient c{} = {c}", k + 1);
            }
        }
    }
}
