//! Singular values via one-sided (Hestenes) Jacobi.

use super::{NumericsError, RealMatrix};

const MAX_SWEEPS: usize = 60;

/// Singular values of `M`, sorted descending.
///
/// One-sided Jacobi orthogonalises the columns of the tall orientation of
/// `M`; it converges to high relative accuracy even for tiny singular
/// values, which the condition-number normalisation in the game builders
/// relies on.
pub fn singular_values(m: &RealMatrix) -> Result<Vec<f64>, NumericsError> {
    let work = if m.rows() >= m.cols() {
        m.clone()
    } else {
        m.transpose()
    };
    let n = work.rows();
    let k = work.cols();
    if k == 0 {
        return Ok(Vec::new());
    }
    // Column-major copy: cols[j] is the j-th column.
    let mut cols: Vec<Vec<f64>> = (0..k)
        .map(|j| (0..n).map(|i| work.get(i, j)).collect())
        .collect();

    let eps = f64::EPSILON;
    for _sweep in 0..MAX_SWEEPS {
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
            }
        }
        if !off {
            let mut sigma: Vec<f64> = cols
                .iter()
                .map(|c| c.iter().map(|x| x * x).sum::<f64>().sqrt())
                .collect();
            sigma.sort_by(|a, b| b.partial_cmp(a).unwrap());
            return Ok(sigma);
        }
    }
    Err(NumericsError::ConvergenceFailure("Jacobi SVD"))
}
