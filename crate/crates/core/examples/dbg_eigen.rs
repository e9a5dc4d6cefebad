fn main() {
    use spectral_games::numerics::{eigenvalues, RealMatrix};
    // Known case: companion matrix of z^3 - 6z^2 + 11z - 6 = (z-1)(z-2)(z-3)
    let comp = RealMatrix::from_rows(&[
        vec![6.0, -11.0, 6.0],
        vec![1.0, 0.0, 0.0],
        vec![0.0, 1.0, 0.0],
    ]);
    println!("companion: {:?}", eigenvalues(&comp).unwrap().values());

    // 4x4 with known spectrum {1±2i, 3, -1} as dense similarity
    let mut rng = spectral_games::games::rng::stream(1, 0);
    let m = RealMatrix::random_normal(5, 5, &mut rng);
    println!("random 5x5: {:?}", eigenvalues(&m).unwrap().values());
    let tr: f64 = (0..5).map(|i| m.get(i, i)).sum();
    let sum: f64 = eigenvalues(&m).unwrap().values().iter().map(|z| z.re).sum();
    println!("trace {} vs eigensum {}", tr, sum);
}
