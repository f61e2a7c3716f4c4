//! Dense K_{s,t}-free bipartite graphs from random polynomials over finite
//! fields, with certification and exact small-instance ground truth.
//!
//! The Zarankiewicz number z(m, n; s, t) is the largest number of 1s in an
//! m×n 0/1 matrix with no s×t all-ones submatrix (rows are the s-side;
//! orientation matters). This crate builds matrices that approach the
//! counting upper bound: the column set is V = F_q^s, each row is the
//! graph {(x, f(x)) : x ∈ F_q^{s−1}} of a random polynomial f of degree at
//! most d = ⌈t^{1/(s−1)}⌉ − 1, and candidates are redrawn until every
//! s-subset of rows shares at most t−1 columns, which is exactly
//! K_{s,t}-freeness. With ℓ = ⌊q^{(d+1)/(s−1)}/(2d)⌋ rows the result has
//! ℓ·q^{s−1} edges, matching m·n^{1−1/s} exactly at n = q^s; uniform row
//! subsets extend the density guarantee to every smaller row count.
//!
//! The pieces are usable on their own:
//!
//! - [`gf`]: arithmetic in F_p and F_{p^k} (k ≥ 1), primality, and the
//!   largest-prime-below helper that picks q near a target n^{1/s}.
//! - [`poly`]: multivariate polynomials of bounded degree: evaluation
//!   (also at extension-field points), uniform sampling, common-zero
//!   enumeration, and exact / Monte-Carlo probabilities that a random
//!   polynomial vanishes on a prescribed point set.
//! - [`construction`]: parameter derivation, the rejection-sampling build
//!   (graph-of-polynomial and zero-set variants), subsampling, and field
//!   selection for arbitrary n.
//! - [`graph`]: bit-vector bipartite graphs, the K_{s,t} verifier with
//!   witness extraction plus an independent naive reference, the
//!   double-count certificate, and the exact counting upper bound.
//! - [`oracle`]: exact z(m, n; s, t) on tiny instances by full enumeration
//!   and branch-and-bound.
//! - [`mod@format`] and [`cli`]: the GraphFile JSON schema, the report
//!   CSV, and the `zforge` binary's subcommands.
//!
//! Everything randomized is seedable and reproducible: builds draw each
//! row's candidates from a per-index ChaCha stream, so identical inputs
//! produce byte-identical graphs regardless of internal parallelism.
//!
//! The `examples/` directory walks through each capability; start with
//! `cargo run --example build_construction`.

pub mod cli;
pub mod construction;
pub mod error;
pub mod format;
pub mod gf;
pub mod graph;
pub mod oracle;
pub mod poly;

pub use construction::{
    build, field_for_n, intersection_size_via_differences, neighborhood_points, params_derive,
    subsample, Construction, ConstructionParams, Variant,
};
pub use error::{Error, Result};
pub use format::{GraphFile, GridEntry, ReportRow};
pub use gf::{is_prime, next_prime_below, FieldElem, FieldSpec};
pub use graph::{
    density_report, kst_double_count, kst_free, kst_free_reference, kst_upper_bound,
    BipartiteGraph, DensityReport, DoubleCount, Verdict,
};
pub use oracle::{z_exact, z_exact_naive, OracleResult};
pub use poly::{
    common_zeros, monomial_count, monomials, poly_random, vanish_probability_exact,
    vanish_probability_mc, Monomial, MultiPoly, PointSet, VanishEstimate,
};

/// Re-exported so callers can construct the seedable rng the randomized
/// operations take.
pub use rand_chacha::ChaCha8Rng;

/// Re-exported because exact probabilities are returned as [`Ratio`]s.
pub use num_rational::Ratio;
