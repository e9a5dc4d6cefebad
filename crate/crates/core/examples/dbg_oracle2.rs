use spectral_games::minimax::*;
use spectral_games::shapes::{self, SpectralShape};

fn main() {
    // Stress aspect ratios at both ends.
    for (a, b, c) in [
        (0.5, 5.0, 6.0),    // very tall
        (0.2, 8.0, 9.0),    // extreme tall
        (8.0, 0.2, 9.0),    // extreme flat
        (5.0, 1.0, 5.3),    // flat, rho near 1
        (0.3, 0.3, 1.0),    // disc-like
        (3.0, 6.0, 7.0),    // tall moderate
    ] {
        let ell = SpectralShape::ellipse(a, b, c).unwrap();
        let exact = shapes::acf(&ell).unwrap();
        let est = acf_estimate(&ell, 40, 2000).unwrap();
        println!("ellipse({a},{b},{c}): rho={exact:.4} est={est:.6} rel={:+.3}%",
            (est/exact-1.0)*100.0);
    }
}
