//! Exact Zarankiewicz numbers on tiny instances: the full-enumeration
//! oracle, the branch-and-bound search, and the sandwich between a
//! constructed lower bound and the counting upper bound.
//!
//! Run with: cargo run --example exact_oracle

use zforge::{build, kst_upper_bound, z_exact, z_exact_naive, Variant};

fn main() {
    square_table();
    naive_agrees();
    sandwich();
}

fn square_table() {
    println!("z(n, n; 2, 2): max ones in an n x n matrix with no 2x2 all-ones block\n");
    println!("  n | z | upper bound | nodes");
    println!("  --+---+-------------+------");
    for n in 2..=7usize {
        let result = z_exact(n, n, 2, 2).unwrap();
        let upper = kst_upper_bound(n as u64, n as u64, 2, 2);
        println!(
            "  {} | {:>2}| {:>12}| {}",
            n, result.value, upper, result.nodes_explored
        );
        assert!(result.exact);
        assert!((result.value as u128) <= upper);
    }
    println!();
}

fn naive_agrees() {
    println!("branch-and-bound vs full enumeration (every shape with m*n <= 16):\n");
    let mut checked = 0;
    for m in 1..=4usize {
        for n in 1..=4usize {
            for (s, t) in [(2u32, 2u32), (2, 3)] {
                let naive = z_exact_naive(m, n, s, t).unwrap().value;
                let bnb = z_exact(m, n, s, t).unwrap().value;
                assert_eq!(naive, bnb);
                checked += 1;
            }
        }
    }
    println!("  {checked} instances, all equal\n");
}

fn sandwich() {
    println!("construction <= exact <= upper bound:\n");
    // The degree-1 construction over F_2 gives a 2 x 4 graph with 4 edges.
    let c = build(2, 2, 2, Variant::GraphOfPolynomial, 1, 200).unwrap();
    let built = c.graph.edge_count();
    let exact = z_exact(c.graph.m(), c.graph.n(), 2, 2).unwrap().value;
    let upper = kst_upper_bound(c.graph.m() as u64, c.graph.n() as u64, 2, 2);
    println!(
        "  z({}, {}; 2, 2): construction {} <= exact {} <= bound {}",
        c.graph.m(),
        c.graph.n(),
        built,
        exact,
        upper
    );
    assert!(built <= exact && (exact as u128) <= upper);
}
