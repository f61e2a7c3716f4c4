//! Uniform random polynomials of bounded degree and the probability that
//! one vanishes on a prescribed set of points: exact enumeration, the
//! 1/q^m ceiling, and the Monte-Carlo estimator, including evaluation
//! points taken from an extension field.
//!
//! Run with: cargo run --example random_polynomials

use rand::SeedableRng;
use zforge::poly::{vanish_count_exact, DEFAULT_ENUM_BUDGET};
use zforge::{
    poly_random, vanish_probability_exact, vanish_probability_mc, ChaCha8Rng, FieldSpec, PointSet,
    Ratio,
};

fn main() {
    sampling();
    exact_vanishing();
    extension_points();
    monte_carlo();
}

fn sampling() {
    println!("--- uniform sampling from the degree-<=2 polynomials over F_5 ---\n");
    let f5 = FieldSpec::new(5, 1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..3 {
        let f = poly_random(&f5, 2, 2, &mut rng).unwrap();
        println!("coefficients (graded order): {:?}", f.coeff_list());
    }
    println!("\nsame seed, same polynomial:");
    let a = poly_random(&f5, 2, 2, &mut ChaCha8Rng::seed_from_u64(7)).unwrap();
    let b = poly_random(&f5, 2, 2, &mut ChaCha8Rng::seed_from_u64(7)).unwrap();
    println!("draw twice with seed 7 -> equal: {}\n", a == b);
}

fn exact_vanishing() {
    println!("--- exact vanishing probability over F_2, degree <= 1 ---\n");
    let f2 = FieldSpec::new(2, 1).unwrap();
    // All 8 polynomials a + b X_1 + c X_2; exactly 2 vanish on both points.
    let points = PointSet::from_raw(&f2, 2, vec![vec![0, 0], vec![1, 1]]).unwrap();
    let (hits, total) = vanish_count_exact(&points, &f2, 2, 1, DEFAULT_ENUM_BUDGET).unwrap();
    let prob = vanish_probability_exact(&points, &f2, 2, 1).unwrap();
    println!("points {{(0,0), (1,1)}}: {hits} of {total} polynomials vanish -> {prob}");
    println!("ceiling for 2 distinct points: 1/q^2 = 1/4\n");
}

fn extension_points() {
    println!("--- points from F_{{q^2}} with coefficients in F_q ---\n");
    // Coefficients stay in F_3; the three points live in F_9.
    let f3 = FieldSpec::new(3, 1).unwrap();
    let f9 = FieldSpec::new(3, 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let points = PointSet::sample_distinct(&f9, 2, 2, &mut rng).unwrap();
    let prob = vanish_probability_exact(&points, &f3, 2, 2).unwrap();
    println!("2 random distinct points of F_9^2: probability {prob}");
    let respected = prob <= Ratio::new(1, 9);
    println!(
        "ceiling 1/q^m = 1/9: {}",
        if respected { "respected" } else { "violated" }
    );
    println!();
}

fn monte_carlo() {
    println!("--- Monte-Carlo estimate vs exact ---\n");
    let f5 = FieldSpec::new(5, 1).unwrap();
    let points = PointSet::from_raw(&f5, 1, vec![vec![0], vec![2], vec![4]]).unwrap();
    let exact = vanish_probability_exact(&points, &f5, 1, 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let est = vanish_probability_mc(&points, &f5, 1, 2, 200_000, &mut rng).unwrap();
    println!("exact    = {exact}");
    println!(
        "estimate = {:.6} +- {:.6} ({} hits in {} trials)",
        est.estimate, est.std_error, est.hits, est.trials
    );
}
