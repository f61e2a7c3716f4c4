//! Subsampling: the construction fixes the row count at ell, and any
//! smaller row count m is served by taking a uniform m-subset of rows.
//! Freeness is inherited, and the expected edge count scales by m/ell.
//!
//! Run with: cargo run --example subsampling

use rand::SeedableRng;
use zforge::{build, kst_free, subsample, ChaCha8Rng, Variant};

fn main() {
    let c = build(2, 2, 7, Variant::GraphOfPolynomial, 1, 200).unwrap();
    let ell = c.params.ell;
    let edges = c.graph.edge_count();
    println!(
        "full construction: {} rows, {} edges over F_7\n",
        ell, edges
    );

    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for m in [ell, ell / 2, ell / 4, 1] {
        let sub = subsample(&c, m, &mut rng).unwrap();
        assert!(kst_free(&sub, 2, 2).is_free());
        let expected = (m as f64 / ell as f64) * edges as f64;
        println!(
            "m = {:>2}: {} edges (expectation {})",
            m,
            sub.edge_count(),
            expected
        );
    }

    // Mean over many draws approaches the expectation.
    let m = ell / 2;
    let runs = 2000;
    let total: u64 = (0..runs)
        .map(|_| subsample(&c, m, &mut rng).unwrap().edge_count())
        .sum();
    let mean = total as f64 / runs as f64;
    println!(
        "\nmean over {} draws at m = {}: {:.2} (expectation {})",
        runs,
        m,
        mean,
        (m as f64 / ell as f64) * edges as f64
    );
}
