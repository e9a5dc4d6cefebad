//! Stable complex quadratic solve.

use num_complex::Complex64;

/// Both roots of `z^2 + b z + c = 0`, larger modulus first.
///
/// Uses the product form for the second root so the nearly cancelled root
/// keeps full relative accuracy: `z1 = -(b + sgn * sqrt(b^2 - 4c)) / 2`,
/// `z2 = c / z1`, where `sgn` avoids cancellation in the numerator.
pub fn quadratic_roots(b: Complex64, c: Complex64) -> (Complex64, Complex64) {
    let disc = b * b - 4.0 * c;
    let sq = disc.sqrt();
    // Pick the sign that grows |b + sgn*sq|.
    let num = if (b + sq).norm() >= (b - sq).norm() {
        b + sq
    } else {
        b - sq
    };
    if num.norm() == 0.0 {
        // b = 0 and c = 0.
        return (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
    }
    let z1 = -num / 2.0;
    let z2 = c / z1;
    // Larger modulus first; ties broken by descending real then imaginary
    // part so the ordering is deterministic.
    let key = |z: &Complex64| (z.norm(), z.re, z.im);
    let (k1, k2) = (key(&z1), key(&z2));
    if k1 >= k2 {
        (z1, z2)
    } else {
        (z2, z1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tol;

    fn assert_vieta(b: Complex64, c: Complex64) {
        let (z1, z2) = quadratic_roots(b, c);
        let sum_resid = (z1 + z2 + b).norm();
        let prod_resid = (z1 * z2 - c).norm();
        let scale = 1.0 + b.norm().max(c.norm());
        assert!(sum_resid <= tol::VIETA * scale, "sum residual {sum_resid}");
        assert!(prod_resid <= tol::VIETA * scale, "product residual {prod_resid}");
        assert!(z1.norm() >= z2.norm(), "ordering violated");
    }

    #[test]
    fn unit_roots() {
        // z^2 = 1.
        let (z1, z2) = quadratic_roots(Complex64::new(0.0, 0.0), Complex64::new(-1.0, 0.0));
        assert!((z1 - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((z2 - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn momentum_characteristic_at_zero_eigenvalue() {
        // z^2 - (1 + beta) z + beta has roots 1 and beta.
        let beta = 0.5;
        let (z1, z2) =
            quadratic_roots(Complex64::new(-(1.0 + beta), 0.0), Complex64::new(beta, 0.0));
        assert!((z1 - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((z2 - Complex64::new(beta, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn vieta_on_random_inputs() {
        let mut rng = crate::games::rng::stream(7, 0);
        use rand::Rng;
        for _ in 0..1000 {
            let b = Complex64::new(rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0));
            let c = Complex64::new(rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0));
            assert_vieta(b, c);
        }
    }
}
