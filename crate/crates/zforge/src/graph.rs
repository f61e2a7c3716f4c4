//! Bipartite graphs as bit-vector rows, forbidden-submatrix certification,
//! and the counting bounds a K_{s,t}-free graph must satisfy.
//!
//! Orientation is fixed throughout: the s-side of a K_{s,t} is the row side
//! U, the t-side is the column side V. Swapping sides is an explicit
//! [`BipartiteGraph::transpose`], never implicit.

use num_bigint::{BigInt, BigUint};
use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::construction::Variant;
use crate::error::{Error, Result};

/// Default cap on C(m,s)·C(n,t) for the naive reference verifier.
pub const DEFAULT_REFERENCE_BUDGET: u128 = 1 << 28;

/// Where a graph came from, when it was produced by the construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub s: u32,
    pub t: u32,
    pub q: u64,
    pub variant: Variant,
    pub seed: u64,
}

/// An m×n 0/1 incidence structure; bit j of row i is set iff u_i ~ v_j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    m: usize,
    n: usize,
    words_per_row: usize,
    bits: Vec<u64>,
    provenance: Option<Provenance>,
}

impl BipartiteGraph {
    pub fn new(m: usize, n: usize) -> BipartiteGraph {
        assert!(m >= 1 && n >= 1, "graph sides must be nonempty");
        let words_per_row = n.div_ceil(64);
        BipartiteGraph {
            m,
            n,
            words_per_row,
            bits: vec![0; m * words_per_row],
            provenance: None,
        }
    }

    /// Builds a graph from per-row column lists.
    pub fn from_rows(m: usize, n: usize, rows: &[Vec<u64>]) -> BipartiteGraph {
        assert_eq!(rows.len(), m);
        let mut g = BipartiteGraph::new(m, n);
        for (i, cols) in rows.iter().enumerate() {
            for &j in cols {
                g.set(i, j as usize);
            }
        }
        g
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> BipartiteGraph {
        self.provenance = Some(provenance);
        self
    }

    pub fn provenance(&self) -> Option<&Provenance> {
        self.provenance.as_ref()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn set(&mut self, i: usize, j: usize) {
        assert!(i < self.m && j < self.n);
        self.bits[i * self.words_per_row + j / 64] |= 1u64 << (j % 64);
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.m && j < self.n);
        self.bits[i * self.words_per_row + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words_per_row..(i + 1) * self.words_per_row]
    }

    pub fn row_degree(&self, i: usize) -> u64 {
        self.row(i).iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn column_degree(&self, j: usize) -> u64 {
        (0..self.m).filter(|&i| self.get(i, j)).count() as u64
    }

    pub fn edge_count(&self) -> u64 {
        self.bits.iter().map(|w| w.count_ones() as u64).sum()
    }

    /// The n×m graph with the roles of U and V swapped.
    pub fn transpose(&self) -> BipartiteGraph {
        let mut g = BipartiteGraph::new(self.n, self.m);
        for i in 0..self.m {
            for j in 0..self.n {
                if self.get(i, j) {
                    g.set(j, i);
                }
            }
        }
        g
    }
}

/// Outcome of a K_{s,t} check: free, or a concrete all-ones s×t submatrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Free,
    Witness { rows: Vec<usize>, cols: Vec<usize> },
}

impl Verdict {
    pub fn is_free(&self) -> bool {
        matches!(self, Verdict::Free)
    }
}

fn and_into(acc: &mut [u64], row: &[u64]) {
    for (a, r) in acc.iter_mut().zip(row) {
        *a &= r;
    }
}

fn popcount(words: &[u64]) -> u64 {
    words.iter().map(|w| w.count_ones() as u64).sum()
}

fn first_set_bits(words: &[u64], count: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(count);
    for (wi, &w) in words.iter().enumerate() {
        let mut w = w;
        while w != 0 {
            out.push(wi * 64 + w.trailing_zeros() as usize);
            if out.len() == count {
                return out;
            }
            w &= w - 1;
        }
    }
    out
}

/// Checks whether the graph contains an s×t all-ones submatrix with the
/// s rows in U. Scans s-subsets of rows in lexicographic order with an
/// incrementally intersected neighborhood, abandoning any prefix whose
/// intersection already has fewer than t columns; the first violating
/// subset (by lexicographic order) is returned as the witness.
pub fn kst_free(g: &BipartiteGraph, s: u32, t: u32) -> Verdict {
    assert!(s >= 1 && t >= 1);
    let s = s as usize;
    if s > g.m() {
        return Verdict::Free;
    }
    let mut chosen = Vec::with_capacity(s);
    let mut stack: Vec<Vec<u64>> = Vec::with_capacity(s);
    match search_subsets(g, s, t as u64, 0, &mut chosen, &mut stack) {
        Some((rows, cols)) => Verdict::Witness { rows, cols },
        None => Verdict::Free,
    }
}

fn search_subsets(
    g: &BipartiteGraph,
    s: usize,
    t: u64,
    next: usize,
    chosen: &mut Vec<usize>,
    stack: &mut Vec<Vec<u64>>,
) -> Option<(Vec<usize>, Vec<usize>)> {
    if chosen.len() == s {
        let inter = stack.last().expect("s >= 1");
        let cols = first_set_bits(inter, t as usize);
        return Some((chosen.clone(), cols));
    }
    let remaining = s - chosen.len();
    for i in next..=g.m().saturating_sub(remaining) {
        let inter = match stack.last() {
            Some(prev) => {
                let mut inter = prev.clone();
                and_into(&mut inter, g.row(i));
                inter
            }
            None => g.row(i).to_vec(),
        };
        if popcount(&inter) < t {
            continue;
        }
        chosen.push(i);
        stack.push(inter);
        if let Some(found) = search_subsets(g, s, t, i + 1, chosen, stack) {
            return Some(found);
        }
        stack.pop();
        chosen.pop();
    }
    None
}

/// Independent naive oracle: direct enumeration of all s-subsets of rows
/// and t-subsets of columns, checking entries one by one.
pub fn kst_free_reference(g: &BipartiteGraph, s: u32, t: u32) -> Result<Verdict> {
    kst_free_reference_with_budget(g, s, t, DEFAULT_REFERENCE_BUDGET)
}

pub fn kst_free_reference_with_budget(
    g: &BipartiteGraph,
    s: u32,
    t: u32,
    budget: u128,
) -> Result<Verdict> {
    assert!(s >= 1 && t >= 1);
    let work = binom_u128(g.m() as u64, s) * binom_u128(g.n() as u64, t);
    if work > budget {
        return Err(Error::BudgetExceeded {
            needed: work,
            budget,
        });
    }
    if (s as usize) > g.m() || (t as usize) > g.n() {
        return Ok(Verdict::Free);
    }
    let mut rows = Vec::with_capacity(s as usize);
    let mut cols = Vec::with_capacity(t as usize);
    let found = reference_rows(g, s as usize, t as usize, 0, &mut rows, &mut cols);
    Ok(if found {
        Verdict::Witness { rows, cols }
    } else {
        Verdict::Free
    })
}

fn reference_rows(
    g: &BipartiteGraph,
    s: usize,
    t: usize,
    next: usize,
    rows: &mut Vec<usize>,
    cols: &mut Vec<usize>,
) -> bool {
    if rows.len() == s {
        return reference_cols(g, rows, t, 0, cols);
    }
    let remaining = s - rows.len();
    for i in next..=g.m().saturating_sub(remaining) {
        rows.push(i);
        if reference_rows(g, s, t, i + 1, rows, cols) {
            return true;
        }
        rows.pop();
    }
    false
}

fn reference_cols(
    g: &BipartiteGraph,
    rows: &[usize],
    t: usize,
    next: usize,
    cols: &mut Vec<usize>,
) -> bool {
    if cols.len() == t {
        return true;
    }
    let remaining = t - cols.len();
    for j in next..=g.n().saturating_sub(remaining) {
        if rows.iter().all(|&i| g.get(i, j)) {
            cols.push(j);
            if reference_cols(g, rows, t, j + 1, cols) {
                return true;
            }
            cols.pop();
        }
    }
    false
}

/// The double-counting certificate behind the Kővári–Sós–Turán bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleCount {
    /// Σ_{v ∈ V} C(deg v, s)
    pub lhs: BigUint,
    /// (t−1)·C(m, s)
    pub rhs: BigUint,
    pub holds: bool,
}

/// Counts s-subsets of U inside column neighborhoods: in a K_{s,t}-free
/// graph each s-subset has at most t−1 common neighbors, so
/// Σ_v C(deg v, s) ≤ (t−1)·C(m, s). Exact integer arithmetic.
pub fn kst_double_count(g: &BipartiteGraph, s: u32, t: u32) -> DoubleCount {
    let lhs: BigUint = (0..g.n()).map(|j| binom_big(g.column_degree(j), s)).sum();
    let rhs = BigUint::from(t - 1) * binom_big(g.m() as u64, s);
    let holds = lhs <= rhs;
    DoubleCount { lhs, rhs, holds }
}

fn binom_big(n: u64, k: u32) -> BigUint {
    if (k as u64) > n {
        return BigUint::zero();
    }
    let mut result = BigUint::one();
    for i in 0..k as u64 {
        result = result * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    result
}

pub(crate) fn binom_u128(n: u64, k: u32) -> u128 {
    if (k as u64) > n {
        return 0;
    }
    let mut result: u128 = 1;
    for i in 0..k as u64 {
        result = result * (n - i) as u128 / (i + 1) as u128;
    }
    result
}

/// Largest e such that n·B(e/n, s) ≤ (t−1)·C(m, s), where
/// B(x, s) = x(x−1)···(x−s+1)/s! and B(x, s) = 0 for x < s−1. This is the
/// convexity form of the double count, so every K_{s,t}-free m×n graph has
/// at most this many edges. Exact rational arithmetic, monotone binary
/// search over e ∈ [0, mn].
pub fn kst_upper_bound(m: u64, n: u64, s: u32, t: u32) -> u128 {
    assert!(m >= 1 && n >= 1 && 2 <= s && s <= t);
    let big = |v: u128| Ratio::from_integer(BigInt::from(v));
    let rhs = big((t - 1) as u128) * Ratio::from_integer(BigInt::from(binom_big(m, s)));
    let s_factorial: BigInt = (1..=s as u128).map(BigInt::from).product();
    let holds = |e: u128| -> bool {
        let x = Ratio::new(BigInt::from(e), BigInt::from(n));
        if x < big((s - 1) as u128) {
            return true;
        }
        let mut lhs = big(n as u128);
        for i in 0..s {
            lhs *= &x - big(i as u128);
        }
        lhs / Ratio::from_integer(s_factorial.clone()) <= rhs
    };
    let (mut lo, mut hi) = (0u128, m as u128 * n as u128);
    // Invariant: holds(lo); search for the largest e with holds(e).
    debug_assert!(holds(0));
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        if holds(mid) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    lo
}

/// Density of a graph against the benchmarks of the Zarankiewicz problem.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityReport {
    pub edges: u64,
    pub kst_upper: u128,
    /// m·n^{1−1/s}, evaluated in floating point (report only).
    pub lower_target: f64,
    pub ratio_lower: f64,
    pub double_count_lhs: BigUint,
    pub double_count_rhs: BigUint,
    pub double_count_holds: bool,
}

pub fn density_report(g: &BipartiteGraph, s: u32, t: u32) -> DensityReport {
    let edges = g.edge_count();
    let kst_upper = kst_upper_bound(g.m() as u64, g.n() as u64, s, t);
    let lower_target = g.m() as f64 * (g.n() as f64).powf(1.0 - 1.0 / s as f64);
    let ratio_lower = if edges == 0 {
        0.0
    } else {
        edges as f64 / lower_target
    };
    let dc = kst_double_count(g, s, t);
    DensityReport {
        edges,
        kst_upper,
        lower_target,
        ratio_lower,
        double_count_lhs: dc.lhs,
        double_count_rhs: dc.rhs,
        double_count_holds: dc.holds,
    }
}
