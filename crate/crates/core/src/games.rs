//! Game and vector-field construction.
//!
//! A game is reduced to its vector field `F` with equilibrium `omega*`; for
//! the linear fields built here `F(omega) = A (omega - omega*)`, so the
//! Jacobian is the constant matrix `A` and every local rate statement is
//! exact. Transformed fields (`-J^2`, `J - eta J^2`, `J + tau J^T J`) are
//! lazy wrappers over the base field plus a closed-form Jacobian path.

use crate::numerics::{self, NumericsError, RealMatrix, Spectrum};
use crate::shapes::MomentumParams;
use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GameError {
    #[error("complex eigenvalue {0} has no conjugate partner")]
    UnpairedComplexEigenvalue(Complex64),
    #[error("dimension mismatch: field of dimension {expected} applied to vector of length {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// Deterministic, splittable randomness for game construction.
///
/// Each consumer draws from its own ChaCha stream, so adding a consumer
/// never shifts the draws of another.
pub mod rng {
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Stream indices used by [`super::make_bilinear`].
    pub const STREAM_MATRIX: u64 = 0;
    pub const STREAM_X_STAR: u64 = 1;
    pub const STREAM_Y_STAR: u64 = 2;
    pub const STREAM_OMEGA0: u64 = 3;

    /// A ChaCha8 generator seeded with `seed` on stream `stream`.
    pub fn stream(seed: u64, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        rng
    }
}

/// A stationary-point problem `F(omega*) = 0`.
///
/// `eval_delta` works in equilibrium-relative coordinates; solvers iterate
/// there so long runs never hit the cancellation floor of `omega* + delta`.
pub trait VectorField: Sync {
    fn dim(&self) -> usize;
    fn equilibrium(&self) -> &[f64];
    /// `F(omega* + delta)`.
    fn eval_delta(&self, delta: &[f64]) -> Vec<f64>;
    /// `J_F(omega* + delta)^T v`.
    fn jacobian_transpose_apply(&self, delta: &[f64], v: &[f64]) -> Vec<f64>;
    /// Exact Jacobian at the equilibrium.
    fn jacobian_at_star(&self) -> RealMatrix;

    fn eval(&self, omega: &[f64]) -> Vec<f64> {
        let delta: Vec<f64> = omega
            .iter()
            .zip(self.equilibrium())
            .map(|(w, s)| w - s)
            .collect();
        self.eval_delta(&delta)
    }
}

/// Linear field `F(omega) = A (omega - omega*)`.
#[derive(Debug, Clone)]
pub struct LinearGame {
    matrix: RealMatrix,
    omega_star: Vec<f64>,
}

impl LinearGame {
    pub fn new(matrix: RealMatrix, omega_star: Vec<f64>) -> Result<Self, GameError> {
        if !matrix.is_square() || matrix.rows() != omega_star.len() {
            return Err(GameError::DimensionMismatch {
                expected: matrix.rows(),
                got: omega_star.len(),
            });
        }
        Ok(Self { matrix, omega_star })
    }

    pub fn matrix(&self) -> &RealMatrix {
        &self.matrix
    }
}

impl VectorField for LinearGame {
    fn dim(&self) -> usize {
        self.omega_star.len()
    }

    fn equilibrium(&self) -> &[f64] {
        &self.omega_star
    }

    fn eval_delta(&self, delta: &[f64]) -> Vec<f64> {
        self.matrix.matvec(delta)
    }

    fn jacobian_transpose_apply(&self, _delta: &[f64], v: &[f64]) -> Vec<f64> {
        self.matrix.matvec_transpose(v)
    }

    fn jacobian_at_star(&self) -> RealMatrix {
        self.matrix.clone()
    }
}

/// Min-max bilinear game `min_x max_y (x - x*)^T A (y - y*)`.
///
/// The induced field on `omega = (x, y)` has the skew Jacobian
/// `[[0, A], [-A^T, 0]]`, whose spectrum is purely imaginary with moduli
/// between the extreme singular values of `A`.
#[derive(Debug, Clone)]
pub struct BilinearGame {
    m: usize,
    payoff: RealMatrix,
    x_star: Vec<f64>,
    y_star: Vec<f64>,
    omega0: Vec<f64>,
}

impl BilinearGame {
    pub fn new(
        payoff: RealMatrix,
        x_star: Vec<f64>,
        y_star: Vec<f64>,
        omega0: Vec<f64>,
    ) -> Result<Self, GameError> {
        let m = payoff.rows();
        if !payoff.is_square() || x_star.len() != m || y_star.len() != m || omega0.len() != 2 * m {
            return Err(GameError::DimensionMismatch {
                expected: 2 * m,
                got: omega0.len(),
            });
        }
        Ok(Self { m, payoff, x_star, y_star, omega0 })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn payoff(&self) -> &RealMatrix {
        &self.payoff
    }

    /// Seeded initial point shared by every solver in a benchmark.
    pub fn omega0(&self) -> &[f64] {
        &self.omega0
    }

    /// Extreme singular values `(sigma_min, sigma_max)` of the payoff.
    pub fn extreme_singular_values(&self) -> Result<(f64, f64), GameError> {
        let s = numerics::singular_values(&self.payoff)?;
        Ok((*s.last().unwrap(), s[0]))
    }

    /// The induced linear field on the stacked variable `(x, y)`.
    pub fn as_linear(&self) -> LinearGame {
        let m = self.m;
        let zero = RealMatrix::zeros(m, m);
        let j = RealMatrix::from_blocks(
            &zero,
            &self.payoff,
            &self.payoff.transpose().scale(-1.0),
            &zero,
        );
        let mut omega_star = self.x_star.clone();
        omega_star.extend_from_slice(&self.y_star);
        LinearGame::new(j, omega_star).expect("consistent by construction")
    }
}

/// Random bilinear game with condition number `cond`, deterministic per seed.
///
/// Entries of the payoff, both equilibrium blocks and the initial point are
/// standard normal draws from separate streams; the singular values of the
/// payoff are then affinely remapped onto `[sigma_max / cond, sigma_max]`
/// (largest one preserved) so the ratio is exactly `cond`.
pub fn make_bilinear(m: usize, cond: f64, seed: u64) -> Result<BilinearGame, GameError> {
    assert!(m >= 2, "bilinear games need m >= 2");
    assert!(cond >= 1.0, "condition number must be >= 1");
    let mut mat_rng = rng::stream(seed, rng::STREAM_MATRIX);
    let raw = RealMatrix::random_normal(m, m, &mut mat_rng);
    let payoff = remap_condition_number(&raw, cond)?;

    let mut x_rng = rng::stream(seed, rng::STREAM_X_STAR);
    let x_star = RealMatrix::random_normal(m, 1, &mut x_rng).entries().to_vec();
    let mut y_rng = rng::stream(seed, rng::STREAM_Y_STAR);
    let y_star = RealMatrix::random_normal(m, 1, &mut y_rng).entries().to_vec();
    let mut w_rng = rng::stream(seed, rng::STREAM_OMEGA0);
    let omega0 = RealMatrix::random_normal(2 * m, 1, &mut w_rng).entries().to_vec();

    BilinearGame::new(payoff, x_star, y_star, omega0)
}

/// Rescales the singular values of `a` onto `[s_max/cond, s_max]`.
///
/// Implemented through the one-sided Jacobi rotations: accumulate the right
/// rotations on an identity to recover `V`, read `U Sigma` off the rotated
/// columns, then rebuild with remapped `Sigma`.
fn remap_condition_number(a: &RealMatrix, cond: f64) -> Result<RealMatrix, GameError> {
    let m = a.rows();
    let (u_sigma, v) = jacobi_factor(a)?;
    let sigma: Vec<f64> = (0..m)
        .map(|j| (0..m).map(|i| u_sigma.get(i, j).powi(2)).sum::<f64>().sqrt())
        .collect();
    let s_max = sigma.iter().cloned().fold(0.0, f64::max);
    let s_min = sigma.iter().cloned().fold(f64::INFINITY, f64::min);
    assert!(s_min > 0.0, "random payoff is singular");
    let lo = s_max / cond;
    let remap = |s: f64| {
        if s_max == s_min {
            s_max
        } else {
            lo + (s - s_min) * (s_max - lo) / (s_max - s_min)
        }
    };
    // A' = U * Sigma' * V^T = (U Sigma) * diag(sigma'/sigma) * V^T.
    let mut scaled = u_sigma.clone();
    let mut cols_scale = vec![0.0; m];
    for (j, cs) in cols_scale.iter_mut().enumerate() {
        *cs = remap(sigma[j]) / sigma[j];
    }
    let mut data = Vec::with_capacity(m * m);
    for i in 0..m {
        for j in 0..m {
            data.push(scaled.get(i, j) * cols_scale[j]);
        }
    }
    scaled = RealMatrix::new(m, m, data)?;
    Ok(scaled.matmul(&v.transpose()))
}

/// One-sided Jacobi returning `(U Sigma, V)` with `A = (U Sigma) V^T`.
fn jacobi_factor(a: &RealMatrix) -> Result<(RealMatrix, RealMatrix), GameError> {
    let n = a.rows();
    let k = a.cols();
    assert!(n >= k);
    let mut cols: Vec<Vec<f64>> = (0..k)
        .map(|j| (0..n).map(|i| a.get(i, j)).collect())
        .collect();
    let mut vcols: Vec<Vec<f64>> = (0..k)
        .map(|j| (0..k).map(|i| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    let eps = f64::EPSILON;
    let mut converged = false;
    for _ in 0..60 {
        let mut off = false;
        for p in 0..k {
            for q in (p + 1)..k {
                let (mut app, mut aqq, mut apq) = (0.0, 0.0, 0.0);
                for i in 0..n {
                    app += cols[p][i] * cols[p][i];
                    aqq += cols[q][i] * cols[q][i];
                    apq += cols[p][i] * cols[q][i];
                }
                if apq.abs() <= eps * (app * aqq).sqrt() || apq == 0.0 {
                    continue;
                }
                off = true;
                let tau = (aqq - app) / (2.0 * apq);
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = cs * t;
                for i in 0..n {
                    let vp = cols[p][i];
                    let vq = cols[q][i];
                    cols[p][i] = cs * vp - sn * vq;
                    cols[q][i] = sn * vp + cs * vq;
                }
                for i in 0..k {
                    let vp = vcols[p][i];
                    let vq = vcols[q][i];
                    vcols[p][i] = cs * vp - sn * vq;
                    vcols[q][i] = sn * vp + cs * vq;
                }
            }
        }
        if !off {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(NumericsError::ConvergenceFailure("Jacobi SVD").into());
    }
    let mut usd = vec![0.0; n * k];
    for j in 0..k {
        for i in 0..n {
            usd[i * k + j] = cols[j][i];
        }
    }
    let us = RealMatrix::new(n, k, usd)?;
    let mut vd = vec![0.0; k * k];
    for j in 0..k {
        for i in 0..k {
            vd[i * k + j] = vcols[j][i];
        }
    }
    let v = RealMatrix::new(k, k, vd)?;
    Ok((us, v))
}

/// Real block-diagonal matrix with the prescribed conjugate-closed spectrum.
///
/// Each conjugate pair becomes the 2x2 block `[[Re, -Im], [Im, Re]]`, each
/// real eigenvalue a 1x1 block.
pub fn matrix_with_spectrum(eigs: &Spectrum) -> Result<RealMatrix, GameError> {
    let vals = eigs.values();
    let mut used = vec![false; vals.len()];
    let mut blocks: Vec<RealMatrix> = Vec::new();
    for i in 0..vals.len() {
        if used[i] {
            continue;
        }
        let z = vals[i];
        let scale = crate::tol::CONJUGATE_PAIRING * (1.0 + z.norm());
        if z.im.abs() <= scale {
            blocks.push(RealMatrix::from_rows(&[vec![z.re]]));
            used[i] = true;
        } else {
            let partner = (0..vals.len())
                .find(|&j| !used[j] && j != i && (vals[j] - z.conj()).norm() <= scale);
            let j = partner.ok_or(GameError::UnpairedComplexEigenvalue(z))?;
            used[i] = true;
            used[j] = true;
            let (re, im) = (z.re, z.im.abs());
            blocks.push(RealMatrix::from_rows(&[vec![re, -im], vec![im, re]]));
        }
    }
    Ok(RealMatrix::block_diagonal(&blocks))
}

/// Squared-field direction `(1/eta) (F(omega - eta F(omega)) - F(omega))`,
/// a finite-difference approximation of the gradient of `0.5 ||F||^2`.
///
/// For linear `F` the Jacobian at the equilibrium is exactly `-J^2`, which
/// maps a purely imaginary spectrum onto a real segment.
pub struct RealTransform<'a> {
    inner: &'a dyn VectorField,
    eta: f64,
}

/// Extrapolated field `F(omega - eta F(omega))`; spectral image
/// `lambda -> lambda (1 - eta lambda)`.
pub struct EgTransform<'a> {
    inner: &'a dyn VectorField,
    eta: f64,
}

/// Consensus field `F(omega) + tau J_F(omega)^T F(omega)`; pulls the
/// spectrum toward the real axis as `tau` grows.
pub struct ConsensusTransform<'a> {
    inner: &'a dyn VectorField,
    tau: f64,
}

pub fn transform_real(inner: &dyn VectorField, eta: f64) -> RealTransform<'_> {
    assert!(eta > 0.0);
    RealTransform { inner, eta }
}

pub fn transform_eg(inner: &dyn VectorField, eta: f64) -> EgTransform<'_> {
    assert!(eta > 0.0);
    EgTransform { inner, eta }
}

pub fn transform_consensus(inner: &dyn VectorField, tau: f64) -> ConsensusTransform<'_> {
    assert!(tau >= 0.0);
    ConsensusTransform { inner, tau }
}

impl VectorField for RealTransform<'_> {
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn equilibrium(&self) -> &[f64] {
        self.inner.equilibrium()
    }

    fn eval_delta(&self, delta: &[f64]) -> Vec<f64> {
        let f = self.inner.eval_delta(delta);
        let shifted: Vec<f64> = delta
            .iter()
            .zip(&f)
            .map(|(d, fi)| d - self.eta * fi)
            .collect();
        let g = self.inner.eval_delta(&shifted);
        g.iter()
            .zip(&f)
            .map(|(gi, fi)| (gi - fi) / self.eta)
            .collect()
    }

    fn jacobian_transpose_apply(&self, delta: &[f64], v: &[f64]) -> Vec<f64> {
        // Exact for constant-Jacobian inner fields: J_V^T = -(J^2)^T.
        let jv = self.inner.jacobian_transpose_apply(delta, v);
        let jjv = self.inner.jacobian_transpose_apply(delta, &jv);
        jjv.into_iter().map(|x| -x).collect()
    }

    fn jacobian_at_star(&self) -> RealMatrix {
        let j = self.inner.jacobian_at_star();
        j.matmul(&j).scale(-1.0)
    }
}

impl VectorField for EgTransform<'_> {
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn equilibrium(&self) -> &[f64] {
        self.inner.equilibrium()
    }

    fn eval_delta(&self, delta: &[f64]) -> Vec<f64> {
        let f = self.inner.eval_delta(delta);
        let shifted: Vec<f64> = delta
            .iter()
            .zip(&f)
            .map(|(d, fi)| d - self.eta * fi)
            .collect();
        self.inner.eval_delta(&shifted)
    }

    fn jacobian_transpose_apply(&self, delta: &[f64], v: &[f64]) -> Vec<f64> {
        let jv = self.inner.jacobian_transpose_apply(delta, v);
        let jjv = self.inner.jacobian_transpose_apply(delta, &jv);
        jv.iter().zip(&jjv).map(|(a, b)| a - self.eta * b).collect()
    }

    fn jacobian_at_star(&self) -> RealMatrix {
        let j = self.inner.jacobian_at_star();
        j.sub(&j.matmul(&j).scale(self.eta))
    }
}

impl VectorField for ConsensusTransform<'_> {
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn equilibrium(&self) -> &[f64] {
        self.inner.equilibrium()
    }

    fn eval_delta(&self, delta: &[f64]) -> Vec<f64> {
        let f = self.inner.eval_delta(delta);
        let jtf = self.inner.jacobian_transpose_apply(delta, &f);
        f.iter().zip(&jtf).map(|(a, b)| a + self.tau * b).collect()
    }

    fn jacobian_transpose_apply(&self, delta: &[f64], v: &[f64]) -> Vec<f64> {
        // (J + tau J^T J)^T v = J^T v + tau J^T J v for constant J.
        let jt_v = self.inner.jacobian_transpose_apply(delta, v);
        let j = self.inner.jacobian_at_star();
        let jv = j.matvec(v);
        let jt_jv = self.inner.jacobian_transpose_apply(delta, &jv);
        jt_v.iter().zip(&jt_jv).map(|(a, b)| a + self.tau * b).collect()
    }

    fn jacobian_at_star(&self) -> RealMatrix {
        let j = self.inner.jacobian_at_star();
        j.add(&j.transpose().matmul(&j).scale(self.tau))
    }
}

/// Augmented one-step operator of the momentum update,
/// `[[(1+beta) I - alpha J, -beta I], [I, 0]]`.
///
/// Its spectral radius is the exact local momentum rate; per eigenvalue
/// `lambda` of `J` the two corresponding eigenvalues solve
/// `z^2 - (1 - alpha lambda + beta) z + beta = 0`.
pub fn augmented_jacobian(j: &RealMatrix, p: MomentumParams) -> RealMatrix {
    assert!(j.is_square());
    let n = j.rows();
    let top_left = RealMatrix::identity(n).scale(1.0 + p.beta).sub(&j.scale(p.alpha));
    let top_right = RealMatrix::identity(n).scale(-p.beta);
    RealMatrix::from_blocks(&top_left, &top_right, &RealMatrix::identity(n), &RealMatrix::zeros(n, n))
}

/// Spectrum of the Jacobian of `field` at its equilibrium.
pub fn game_spectrum(field: &dyn VectorField) -> Result<Spectrum, GameError> {
    Ok(numerics::eigenvalues(&field.jacobian_at_star())?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bilinear_spectrum_is_purely_imaginary() {
        let game = make_bilinear(10, 100.0, 1).unwrap();
        let spectrum = game_spectrum(&game.as_linear()).unwrap();
        let (s_min, s_max) = game.extreme_singular_values().unwrap();
        for z in spectrum.values() {
            assert!(z.re.abs() < 1e-10, "Re = {}", z.re);
            let m = z.im.abs();
            assert!(m >= s_min - 1e-8 && m <= s_max + 1e-8, "|Im| = {m}");
        }
    }

    #[test]
    fn condition_number_is_exact() {
        let game = make_bilinear(50, 100.0, 7).unwrap();
        let (s_min, s_max) = game.extreme_singular_values().unwrap();
        assert!(
            (s_max / s_min - 100.0).abs() <= 1e-8 * 100.0,
            "ratio = {}",
            s_max / s_min
        );
    }

    #[test]
    fn isotropic_game_has_equal_singular_values() {
        let game = make_bilinear(2, 1.0, 0).unwrap();
        let (s_min, s_max) = game.extreme_singular_values().unwrap();
        assert!((s_max - s_min).abs() <= 1e-12 * s_max);
    }

    #[test]
    fn same_seed_is_bitwise_identical() {
        let a = make_bilinear(8, 10.0, 3).unwrap();
        let b = make_bilinear(8, 10.0, 3).unwrap();
        assert_eq!(a.payoff().entries(), b.payoff().entries());
        assert_eq!(a.omega0(), b.omega0());
    }

    #[test]
    fn spectrum_block_construction_round_trip() {
        let eigs = Spectrum::from_values(vec![
            Complex64::new(3.0, 0.0),
            Complex64::new(1.0, 2.0),
            Complex64::new(1.0, -2.0),
        ]);
        let m = matrix_with_spectrum(&eigs).unwrap();
        assert_eq!(m.rows(), 3);
        let back = numerics::eigenvalues(&m).unwrap();
        for (a, b) in back.values().iter().zip(eigs.values()) {
            assert!((a - b).norm() <= 1e-10 * (1.0 + b.norm()));
        }
    }

    #[test]
    fn unpaired_complex_eigenvalue_is_rejected() {
        let eigs = Spectrum::from_values(vec![
            Complex64::new(1.0, 2.0),
            Complex64::new(0.5, 0.0),
        ]);
        assert!(matches!(
            matrix_with_spectrum(&eigs),
            Err(GameError::UnpairedComplexEigenvalue(_))
        ));
    }

    #[test]
    fn real_transform_jacobian_is_minus_j_squared() {
        let mut rng = rng::stream(5, 0);
        let j = RealMatrix::random_normal(6, 6, &mut rng);
        let star = vec![0.5; 6];
        let game = LinearGame::new(j.clone(), star).unwrap();
        let tr = transform_real(&game, 0.37);
        let expected = j.matmul(&j).scale(-1.0);
        let got = tr.jacobian_at_star();
        for (a, b) in got.entries().iter().zip(expected.entries()) {
            assert!((a - b).abs() <= 1e-12 * (1.0 + b.abs()));
        }
    }

    #[test]
    fn eg_transform_matches_spectral_image() {
        let mut rng = rng::stream(11, 0);
        let j = RealMatrix::random_normal(8, 8, &mut rng);
        let game = LinearGame::new(j.clone(), vec![0.0; 8]).unwrap();
        let eta = 0.21;
        let tr = transform_eg(&game, eta);
        let got = game_spectrum(&tr).unwrap();
        let base = numerics::eigenvalues(&j).unwrap();
        let images: Spectrum = base
            .values()
            .iter()
            .map(|&z| z - eta * z * z)
            .collect();
        assert_multiset_close(got.values(), images.values(), 1e-9);
    }

    #[test]
    fn consensus_tau_zero_is_identity() {
        let game = make_bilinear(4, 5.0, 9).unwrap().as_linear();
        let tr = transform_consensus(&game, 0.0);
        let delta = vec![0.3, -0.1, 0.7, 0.2, -0.5, 0.9, 0.0, 0.4];
        assert_eq!(tr.eval_delta(&delta), game.eval_delta(&delta));
        assert_eq!(tr.jacobian_at_star().entries(), game.matrix().entries());
    }

    #[test]
    fn consensus_bounds_imaginary_to_real_ratio() {
        // gamma=1, mu=0, L=10, tau=10: |Im|/|Re| <= 0.1, Re in [10, 1010].
        let payoff = RealMatrix::diagonal(&linspace(1.0, 10.0, 6));
        let game = BilinearGame::new(payoff, vec![0.0; 6], vec![0.0; 6], vec![0.0; 12])
            .unwrap()
            .as_linear();
        let tr = transform_consensus(&game, 10.0);
        let spectrum = game_spectrum(&tr).unwrap();
        for z in spectrum.values() {
            assert!(z.im.abs() / z.re.abs() <= 0.1 + 1e-12);
            assert!(z.re >= 10.0 - 1e-8 && z.re <= 1010.0 + 1e-8);
        }
    }

    #[test]
    fn transforms_vanish_at_equilibrium() {
        let game = make_bilinear(5, 3.0, 13).unwrap().as_linear();
        let zero = vec![0.0; 10];
        for v in [
            transform_real(&game, 0.2).eval_delta(&zero),
            transform_eg(&game, 0.2).eval_delta(&zero),
            transform_consensus(&game, 2.0).eval_delta(&zero),
        ] {
            assert!(v.iter().all(|x| x.abs() <= 1e-12));
        }
        let at_star = game.eval(game.equilibrium());
        assert!(at_star.iter().all(|x| x.abs() <= 1e-12));
    }

    #[test]
    fn augmented_matrix_matches_per_eigenvalue_roots() {
        let mut rng = rng::stream(17, 0);
        let j = RealMatrix::random_normal(5, 5, &mut rng);
        let params = MomentumParams { alpha: 0.05, beta: 0.3 };
        let aug = augmented_jacobian(&j, params);
        let aug_spec = numerics::eigenvalues(&aug).unwrap();
        let mut expected: Vec<Complex64> = Vec::new();
        for &lambda in numerics::eigenvalues(&j).unwrap().values() {
            let b = -(Complex64::new(1.0 + params.beta, 0.0) - params.alpha * lambda);
            let (z1, z2) = numerics::quadratic_roots(b, Complex64::new(params.beta, 0.0));
            expected.push(z1);
            expected.push(z2);
        }
        let expected = Spectrum::from_values(expected);
        assert_multiset_close(aug_spec.values(), expected.values(), 1e-8);
    }

    pub(crate) fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
        assert!(n >= 2);
        (0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect()
    }

    /// Greedy nearest matching of two equally sized complex multisets.
    pub(crate) fn assert_multiset_close(a: &[Complex64], b: &[Complex64], tol_: f64) {
        assert_eq!(a.len(), b.len());
        let mut used = vec![false; b.len()];
        for z in a {
            let best = (0..b.len())
                .filter(|&j| !used[j])
                .min_by(|&i, &j| {
                    (z - b[i])
                        .norm()
                        .partial_cmp(&(z - b[j]).norm())
                        .unwrap()
                })
                .unwrap();
            let d = (z - b[best]).norm();
            assert!(
                d <= tol_ * (1.0 + z.norm()),
                "unmatched eigenvalue {z}: nearest {} at distance {d}",
                b[best]
            );
            used[best] = true;
        }
    }

    #[test]
    fn strong_monotonicity_bounds_hold() {
        // H(J) >= mu I and ||J|| <= L force mu <= Re(lambda), |lambda| <= L.
        let mut rng = rng::stream(31, 0);
        for _ in 0..100 {
            let d = 6;
            let s = RealMatrix::random_normal(d, d, &mut rng);
            let skew = s.sub(&s.transpose()).scale(0.5);
            let p = RealMatrix::random_normal(d, d, &mut rng);
            let psd = p.transpose().matmul(&p).scale(0.1);
            let j = RealMatrix::identity(d).scale(0.5).add(&psd).add(&skew);

            let herm = j.add(&j.transpose()).scale(0.5);
            let mu = numerics::eigenvalues(&herm)
                .unwrap()
                .values()
                .iter()
                .map(|z| z.re)
                .fold(f64::INFINITY, f64::min);
            let l = numerics::singular_values(&j).unwrap()[0];
            for z in numerics::eigenvalues(&j).unwrap().values() {
                assert!(z.re >= mu - 1e-8 * (1.0 + mu.abs()), "Re {} < mu {}", z.re, mu);
                assert!(z.norm() <= l + 1e-8 * (1.0 + l), "|z| {} > L {}", z.norm(), l);
            }
        }
    }
}
