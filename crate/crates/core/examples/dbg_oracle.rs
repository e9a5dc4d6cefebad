use spectral_games::minimax::*;
use spectral_games::shapes::{self, SpectralShape};
use std::time::Instant;

fn main() {
    // Criterion 1: Segment{1,100}, t=40, n=2000.
    let seg = SpectralShape::segment(1.0, 100.0).unwrap();
    let t0 = Instant::now();
    let pts = sample_boundary(&seg, 2000);
    let res = lawson_minimax(&pts, 40, DEFAULT_MAX_ITERS, DEFAULT_WEIGHT_FLOOR).unwrap();
    let dt = t0.elapsed().as_secs_f64();
    let cheb = chebyshev_reference(1.0, 100.0, 40).powf(1.0 / 40.0);
    println!(
        "segment: est={:.6} cheb_ref={:.6} nine11={:.6} iters={} conv={} time={:.2}s",
        res.acf_estimate, cheb, 9.0/11.0, res.iterations_used, res.converged, dt
    );
    println!("  rel to cheb: {:.4}%  rel to 9/11: {:.3}%",
        (res.acf_estimate / cheb - 1.0) * 100.0,
        (res.acf_estimate / (9.0/11.0) - 1.0) * 100.0);

    // Criterion 2: Disc{2,1}, t=16, n=512.
    let disc = SpectralShape::disc(2.0, 1.0).unwrap();
    let t0 = Instant::now();
    let est = acf_estimate(&disc, 16, 512).unwrap();
    println!("disc: est={:.6} target=0.5 rel={:.3}% time={:.2}s",
        est, (est/0.5-1.0)*100.0, t0.elapsed().as_secs_f64());

    // Criterion 3 sample: Ellipse{4,3,5}, t=40, n=2000.
    let ell = SpectralShape::ellipse(4.0, 3.0, 5.0).unwrap();
    let t0 = Instant::now();
    let est = acf_estimate(&ell, 40, 2000).unwrap();
    let exact = shapes::acf(&ell).unwrap();
    println!("ellipse(4,3,5): est={:.6} exact={:.6} rel={:.3}% time={:.2}s",
        est, exact, (est/exact-1.0)*100.0, t0.elapsed().as_secs_f64());

    // A thin ellipse and a tall one.
    for (a, b, c) in [(49.5, 10.0, 50.5), (1.0, 4.0, 5.5), (2.0, 0.5, 3.0)] {
        let ell = SpectralShape::ellipse(a, b, c).unwrap();
        let t0 = Instant::now();
        let est = acf_estimate(&ell, 40, 2000).unwrap();
        let exact = shapes::acf(&ell).unwrap();
        println!("ellipse({a},{b},{c}): est={:.6} exact={:.6} rel={:.3}% time={:.2}s",
            est, exact, (est/exact-1.0)*100.0, t0.elapsed().as_secs_f64());
    }

    // ImagCross finite-degree reference.
    let cross = SpectralShape::imag_cross(1.0, 10.0).unwrap();
    let est = acf_estimate(&cross, 20, 1000).unwrap();
    println!("cross(1,10): est={:.6} asymptote={:.6}", est, (9f64/11.0).sqrt());
}
