//! The zero-set construction: neighborhoods are zero sets of s-variate
//! polynomials instead of graphs of (s-1)-variate ones. Row degrees vary
//! (a random fiber has about q^{s-1} points rather than exactly that), and
//! the default degree cap follows the variant's exponent tradeoff.
//!
//! Run with: cargo run --example zero_set_variant

use zforge::construction::DEFAULT_RETRY_BUDGET;
use zforge::{build, density_report, kst_free, params_derive, Variant};

fn main() {
    let (s, t, q, seed) = (2, 3, 7, 11);

    let graph_params = params_derive(s, t, q, Variant::GraphOfPolynomial).unwrap();
    let zero_params = params_derive(s, t, q, Variant::ZeroSet).unwrap();
    println!("pattern K_{{{s},{t}}} over F_{q}:");
    println!(
        "  graph-of-polynomial variant: d = {}, ell = {}, polynomials in {} variable(s)",
        graph_params.d,
        graph_params.ell,
        graph_params.nvars()
    );
    println!(
        "  zero-set variant:            d = {}, ell = {}, polynomials in {} variable(s)",
        zero_params.d,
        zero_params.ell,
        zero_params.nvars()
    );
    println!("  (zero-set d and ell are inferred defaults; override via params_with_overrides)\n");

    let c = build(s, t, q, Variant::ZeroSet, seed, DEFAULT_RETRY_BUDGET).unwrap();
    println!(
        "built {} x {} graph with {} edges",
        c.graph.m(),
        c.graph.n(),
        c.graph.edge_count()
    );
    let degrees: Vec<u64> = (0..c.graph.m()).map(|i| c.graph.row_degree(i)).collect();
    println!("row degrees: {:?} (fibers of 0, size varies)", degrees);

    let verdict = kst_free(&c.graph, s, t);
    println!("K_{{{s},{t}}}-free: {}", verdict.is_free());

    let report = density_report(&c.graph, s, t);
    println!(
        "\nedges = {}, upper bound = {}, ratio to m*n^(1-1/s) = {:.4}",
        report.edges, report.kst_upper, report.ratio_lower
    );
}
