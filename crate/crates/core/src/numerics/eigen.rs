//! Dense nonsymmetric eigenvalues: balance, Householder reduction to upper
//! Hessenberg form, then Francis double-shift QR.
//!
//! The QR stage follows the classic EISPACK `hqr` / Jama layout (eigenvalues
//! only, no Schur vectors), with the usual exceptional shifts every ten
//! stalled iterations.

use super::{NumericsError, RealMatrix, Spectrum};
use num_complex::Complex64;

const MAX_ITERS_PER_EIGENVALUE: usize = 50;

/// Eigenvalues (with multiplicity) of а square real matrix, in the crate's
/// canonical spectrum order.
///
/// Conjugate closure is structural: complex eigenvalues are extracted from
/// 2x2 blocks, so each pair carries exactly opposite imaginary parts.
pub fn eigenvalues(m: &RealMatrix) -> Result<Spectrum, NumericsError> {
    if !m.is_square() {
        return Err(NumericsError::NonSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    if n == 0 {
        return Ok(Spectrum::from_values(Vec::new()));
    }
    let mut h = m.entries().to_vec();
    balance(&mut h, n);
    hessenberg(&mut h, n);
    let values = francis_qr(&mut h, n)?;
    Ok(Spectrum::from_values(values))
}

/// Radix-2 norm balancing (scaling only, no permutation phase).
fn balance(a: &mut [f64], n: usize) {
    const RADIX: f64 = 2.0;
    let mut done = false;
    let mut sweeps = 0;
    while !done && sweeps < 100 {
        done = true;
        sweeps += 1;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += a[j * n + i].abs();
                    r += a[i * n + j].abs();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let mut f = 1.0;
            let mut cs = c;
            let s = c + r;
            while cs < r / RADIX {
                f *= RADIX;
                cs *= RADIX * RADIX;
            }
            while cs > r * RADIX {
                f /= RADIX;
                cs /= RADIX * RADIX;
            }
            // Apply D^-1 A D when it reduces the joint row/column norm.
            if (c * f + r / f) < 0.95 * s {
                done = false;
                for j in 0..n {
                    a[i * n + j] /= f;
                }
                for j in 0..n {
                    a[j * n + i] *= f;
                }
            }
        }
    }
}

/// Householder reduction to upper Hessenberg form (in place).
fn hessenberg(h: &mut [f64], n: usize) {
    if n < 3 {
        return;
    }
    let mut ort = vec![0.0; n];
    let high = n - 1;
    for m in 1..high {
        let mut scale = 0.0;
        for i in m..=high {
            scale += h[i * n + m - 1].abs();
        }
        if scale == 0.0 {
            continue;
        }
        let mut h2 = 0.0;
        for i in (m..=high).rev() {
            ort[i] = h[i * n + m - 1] / scale;
            h2 += ort[i] * ort[i];
        }
        let mut g = h2.sqrt();
        if ort[m] > 0.0 {
            g = -g;
        }
        h2 -= ort[m] * g;
        ort[m] -= g;

        // Similarity transform H <- (I - u u^T / h2) H (I - u u^T / h2).
        for j in m..n {
            let mut f = 0.0;
            for i in (m..=high).rev() {
                f += ort[i] * h[i * n + j];
            }
            f /= h2;
            for i in m..=high {
                h[i * n + j] -= f * ort[i];
            }
        }
        for i in 0..=high {
            let mut f = 0.0;
            for j in (m..=high).rev() {
                f += ort[j] * h[i * n + j];
            }
            f /= h2;
            for j in m..=high {
                h[i * n + j] -= f * ort[j];
            }
        }
        h[m * n + m - 1] = scale * g;
    }
    // Zero out the lower triangle the transform never touches.
    for i in 2..n {
        for j in 0..i - 1 {
            h[i * n + j] = 0.0;
        }
    }
}

/// Francis double-shift QR on an upper Hessenberg matrix; eigenvalues only.
fn francis_qr(h: &mut [f64], nn: usize) -> Result<Vec<Complex64>, NumericsError> {
    let eps = f64::EPSILON;
    let mut values = Vec::with_capacity(nn);
    let mut n = nn as isize - 1;
    let low = 0isize;
    let mut exshift = 0.0;
    let mut iter = 0usize;

    let idx = |i: isize, j: isize| (i as usize) * nn + (j as usize);

    let mut norm = 0.0;
    for i in 0..nn {
        for j in i.saturating_sub(1)..nn {
            norm += h[i * nn + j].abs();
        }
    }
    if norm == 0.0 {
        return Ok(vec![Complex64::new(0.0, 0.0); nn]);
    }

    let (mut p, mut q, mut r, mut s, mut z);
    let (mut x, mut y, mut w);
    p = 0.0;
    q = 0.0;
    r = 0.0;

    while n >= low {
        // Find a negligible subdiagonal entry.
        let mut l = n;
        while l > low {
            s = h[idx(l - 1, l - 1)].abs() + h[idx(l, l)].abs();
            if s == 0.0 {
                s = norm;
            }
            if h[idx(l, l - 1)].abs() < eps * s {
                break;
            }
            l -= 1;
        }

        if l == n {
            // One real root.
            let v = h[idx(n, n)] + exshift;
            values.push(Complex64::new(v, 0.0));
            n -= 1;
            iter = 0;
        } else if l == n - 1 {
            // A 2x2 block: real pair or conjugate pair.
            w = h[idx(n, n - 1)] * h[idx(n - 1, n)];
            p = (h[idx(n - 1, n - 1)] - h[idx(n, n)]) / 2.0;
            q = p * p + w;
            z = q.abs().sqrt();
            x = h[idx(n, n)] + exshift;
            if q >= 0.0 {
                z = if p >= 0.0 { p + z } else { p - z };
                let d1 = x + z;
                let d2 = if z != 0.0 { x - w / z } else { d1 };
                values.push(Complex64::new(d1, 0.0));
                values.push(Complex64::new(d2, 0.0));
            } else {
                values.push(Complex64::new(x + p, z));
                values.push(Complex64::new(x + p, -z));
            }
            n -= 2;
            iter = 0;
        } else {
            // Form shift.
            x = h[idx(n, n)];
            y = h[idx(n - 1, n - 1)];
            w = h[idx(n, n - 1)] * h[idx(n - 1, n)];

            if iter == 10 || iter == 20 || iter == 30 || iter == 40 {
                // Exceptional shift.
                exshift += x;
                for i in low..=n {
                    h[idx(i, i)] -= x;
                }
                s = h[idx(n, n - 1)].abs() + h[idx(n - 1, n - 2)].abs();
                x = 0.75 * s;
                y = x;
                w = -0.4375 * s * s;
            }
            iter += 1;
            if iter > MAX_ITERS_PER_EIGENVALUE {
                return Err(NumericsError::ConvergenceFailure("QR eigenvalue"));
            }

            // Two consecutive small subdiagonals let the bulge start higher.
            let mut m = n - 2;
            while m >= l {
                z = h[idx(m, m)];
                r = x - z;
                s = y - z;
                p = (r * s - w) / h[idx(m + 1, m)] + h[idx(m, m + 1)];
                q = h[idx(m + 1, m + 1)] - z - r - s;
                r = h[idx(m + 2, m + 1)];
                s = p.abs() + q.abs() + r.abs();
                p /= s;
                q /= s;
                r /= s;
                if m == l {
                    break;
                }
                if h[idx(m, m - 1)].abs() * (q.abs() + r.abs())
                    < eps
                        * (p.abs()
                            * (h[idx(m - 1, m - 1)].abs()
                                + z.abs()
                                + h[idx(m + 1, m + 1)].abs()))
                {
                    break;
                }
                m -= 1;
            }
            for i in m + 2..=n {
                h[idx(i, i - 2)] = 0.0;
                if i > m + 2 {
                    h[idx(i, i - 3)] = 0.0;
                }
            }

            // Double QR sweep on rows l..=n, columns m..=n.
            for k in m..n {
                let notlast = k != n - 1;
                if k != m {
                    p = h[idx(k, k - 1)];
                    q = h[idx(k + 1, k - 1)];
                    r = if notlast { h[idx(k + 2, k - 1)] } else { 0.0 };
                    x = p.abs() + q.abs() + r.abs();
                    if x == 0.0 {
                        continue;
                    }
                    p /= x;
                    q /= x;
                    r /= x;
                }
                s = (p * p + q * q + r * r).sqrt();
                if p < 0.0 {
                    s = -s;
                }
                if s == 0.0 {
                    continue;
                }
                if k != m {
                    h[idx(k, k - 1)] = -s * x;
                } else if l != m {
                    h[idx(k, k - 1)] = -h[idx(k, k - 1)];
                }
                p += s;
                x = p / s;
                y = q / s;
                z = r / s;
                q /= p;
                r /= p;

                // Row modification.
                for j in k as usize..nn {
                    let mut pp = h[(k as usize) * nn + j] + q * h[(k as usize + 1) * nn + j];
                    if notlast {
                        pp += r * h[(k as usize + 2) * nn + j];
                        h[(k as usize + 2) * nn + j] -= pp * z;
                    }
                    h[(k as usize) * nn + j] -= pp * x;
                    h[(k as usize + 1) * nn + j] -= pp * y;
                }

                // Column modification.
                let imax = if n < k + 3 { n } else { k + 3 };
                for i in 0..=imax as usize {
                    let mut pp = x * h[i * nn + k as usize] + y * h[i * nn + k as usize + 1];
                    if notlast {
                        pp += z * h[i * nn + k as usize + 2];
                        h[i * nn + k as usize + 2] -= pp * r;
                    }
                    h[i * nn + k as usize] -= pp;
                    h[i * nn + k as usize + 1] -= pp * q;
                }
            }
        }
    }
    Ok(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::RealMatrix;

    #[test]
    fn complex_rotation_block() {
        // C(1 + 2i) = [[1, -2], [2, 1]] has spectrum {1 + 2i, 1 - 2i}.
        let c = RealMatrix::from_rows(&[vec![1.0, -2.0], vec![2.0, 1.0]]);
        let spectrum = eigenvalues(&c).unwrap();
        let v = spectrum.values();
        assert!((v[0] - Complex64::new(1.0, 2.0)).norm() < 1e-12);
        assert!((v[1] - Complex64::new(1.0, -2.0)).norm() < 1e-12);
    }

    #[test]
    fn diagonal_matrix_is_exact() {
        let d = RealMatrix::diagonal(&[4.0, -1.5, 0.25, 100.0]);
        let spectrum = eigenvalues(&d).unwrap();
        let mut got: Vec<f64> = spectrum.values().iter().map(|z| z.re).collect();
        got.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(got, vec![-1.5, 0.25, 4.0, 100.0]);
    }

    #[test]
    fn upper_triangular_eigenvalues() {
        let t = RealMatrix::from_rows(&[
            vec![3.0, 17.0, -5.0],
            vec![0.0, -2.0, 11.0],
            vec![0.0, 0.0, 7.0],
        ]);
        let spectrum = eigenvalues(&t).unwrap();
        let mut got: Vec<f64> = spectrum.values().iter().map(|z| z.re).collect();
        got.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (g, e) in got.iter().zip([-2.0, 3.0, 7.0]) {
            assert!((g - e).abs() < 1e-12);
        }
    }

    #[test]
    fn trace_and_determinant_consistency() {
        // Sum of eigenvalues = trace; product = determinant (via 2x2 case).
        let m = RealMatrix::from_rows(&[vec![2.0, -3.0], vec![4.0, 1.0]]);
        let spectrum = eigenvalues(&m).unwrap();
        let sum: Complex64 = spectrum.values().iter().sum();
        let prod: Complex64 = spectrum.values().iter().product();
        assert!((sum.re - 3.0).abs() < 1e-12 && sum.im.abs() < 1e-12);
        assert!((prod.re - 14.0).abs() < 1e-12 && prod.im.abs() < 1e-12);
    }
}
