//! Eigenvalue multiset with a deterministic canonical order.

use crate::tol;
use num_complex::Complex64;
use std::cmp::Ordering;

/// Multiset of eigenvalues in canonical order: descending real part, ties
/// broken by descending imaginary part.
///
/// Spectra produced from real matrices are closed under conjugation; the
/// canonical order therefore lists each conjugate pair with the upper
/// half-plane member first.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    values: Vec<Complex64>,
}

fn canonical_cmp(a: &Complex64, b: &Complex64) -> Ordering {
    b.re.partial_cmp(&a.re)
        .unwrap_or(Ordering::Equal)
        .then(b.im.partial_cmp(&a.im).unwrap_or(Ordering::Equal))
}

impl Spectrum {
    /// Sorts the given eigenvalues into canonical order.
    pub fn from_values(mut values: Vec<Complex64>) -> Self {
        values.sort_by(canonical_cmp);
        Self { values }
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Checks closure under conjugation: every value must have a conjugate
    /// partner within `tol::SPECTRAL * (1 + |lambda|)`, with multiplicity.
    pub fn is_conjugate_closed(&self) -> bool {
        let mut used = vec![false; self.values.len()];
        for (i, z) in self.values.iter().enumerate() {
            if used[i] || z.im.abs() <= tol::SPECTRAL * (1.0 + z.norm()) {
                continue;
            }
            let want = z.conj();
            let slack = tol::SPECTRAL * (1.0 + z.norm());
            let partner = self
                .values
                .iter()
                .enumerate()
                .position(|(j, c)| !used[j] && j != i && (c - want).norm() <= slack);
            match partner {
                Some(j) => {
                    used[i] = true;
                    used[j] = true;
                }
                None => return false,
            }
        }
        true
    }

    pub fn max_modulus(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

impl FromIterator<Complex64> for Spectrum {
    fn from_iter<T: IntoIterator<Item = Complex64>>(iter: T) -> Self {
        Self::from_values(iter.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_is_canonical() {
        let s = Spectrum::from_values(vec![
            Complex64::new(1.0, -2.0),
            Complex64::new(3.0, 0.0),
            Complex64::new(1.0, 2.0),
        ]);
        let v = s.values();
        assert_eq!(v[0], Complex64::new(3.0, 0.0));
        assert_eq!(v[1], Complex64::new(1.0, 2.0));
        assert_eq!(v[2], Complex64::new(1.0, -2.0));
    }

    #[test]
    fn conjugate_closure_detection() {
        let closed = Spectrum::from_values(vec![
            Complex64::new(1.0, 2.0),
            Complex64::new(1.0, -2.0),
            Complex64::new(0.5, 0.0),
        ]);
        assert!(closed.is_conjugate_closed());

        let open = Spectrum::from_values(vec![
            Complex64::new(1.0, 2.0),
            Complex64::new(0.5, 0.0),
        ]);
        assert!(!open.is_conjugate_closed());
    }
}
