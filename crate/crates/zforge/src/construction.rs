//! Derives the (d, ℓ) parameters, builds K_{s,t}-free bipartite graphs by
//! sequential rejection sampling of random polynomials over F_q, and
//! extends them to smaller row counts by subsampling.
//!
//! Two variants are supported. In the graph-of-polynomial variant, vertex
//! u_i with polynomial f_i in s−1 variables is joined to the function graph
//! {(x, f_i(x)) : x ∈ F_q^{s−1}} inside V = F_q^s. In the zero-set variant,
//! f_i has s variables and u_i is joined to {x ∈ F_q^s : f_i(x) = 0}.
//!
//! A candidate f_k is accepted when it is new and every s-subset of rows
//! containing it has at most t−1 common neighbors, which is exactly what
//! K_{s,t}-freeness of the final graph requires. Each index draws its
//! candidates from its own rng stream, so builds are reproducible and
//! independent of any internal parallelism.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{next_prime_below, FieldElem, FieldSpec};
use crate::graph::{BipartiteGraph, Provenance};
use crate::poly::{common_zeros, point_from_index, poly_random_capped, MultiPoly};

/// Default candidate budget per index in [`build`].
pub const DEFAULT_RETRY_BUDGET: u32 = 200;

/// Materialization refuses graphs with more than this many columns.
pub const MAX_COLUMNS: u128 = 1 << 24;

/// Materialization refuses graphs with more than this many total bits.
pub const MAX_TOTAL_BITS: u128 = 1 << 31;

/// Which neighborhood shape the construction uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Variant {
    /// Neighborhoods are graphs of (s−1)-variate polynomials.
    #[serde(rename = "graph")]
    GraphOfPolynomial,
    /// Neighborhoods are zero sets of s-variate polynomials.
    #[serde(rename = "zeroset")]
    ZeroSet,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variant::GraphOfPolynomial => write!(f, "graph"),
            Variant::ZeroSet => write!(f, "zeroset"),
        }
    }
}

impl FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Variant> {
        match s {
            "graph" => Ok(Variant::GraphOfPolynomial),
            "zeroset" => Ok(Variant::ZeroSet),
            other => Err(Error::Format(format!("unknown variant '{}'", other))),
        }
    }
}

/// The parameter tuple of one construction run.
///
/// For the graph variant the defaults are d = ⌈t^{1/(s−1)}⌉ − 1 and
/// ℓ = ⌊q^{(d+1)/(s−1)} / (2d)⌋. The zero-set analogue uses
/// d = ⌈t^{1/s}⌉ − 1 with the same ℓ formula; the source construction
/// leaves both unspecified for that variant, so they are a documented
/// inference and can be overridden.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionParams {
    pub s: u32,
    pub t: u32,
    pub q: u64,
    pub d: u32,
    pub ell: u64,
    pub variant: Variant,
    /// Number of columns, n = q^s.
    pub n: u128,
    /// Exponent (d+1)/(s(s−1)): the largest row count, as a power of n,
    /// that the construction plus subsampling serves at full density.
    pub lower_target_exponent: Ratio<u64>,
}

impl ConstructionParams {
    /// Arity of the construction polynomials for this variant.
    pub fn nvars(&self) -> usize {
        match self.variant {
            Variant::GraphOfPolynomial => (self.s - 1) as usize,
            Variant::ZeroSet => self.s as usize,
        }
    }

    /// Whether ℓ^{s−1} d^{s−1} < q^{d+1}: the union-bound feasibility
    /// predicate of the existence argument. Informational only; rejection
    /// sampling can succeed at small q even when this fails.
    pub fn union_bound_ok(&self) -> bool {
        let lhs = BigUint::from(self.ell).pow(self.s - 1) * BigUint::from(self.d).pow(self.s - 1);
        lhs < BigUint::from(self.q).pow(self.d + 1)
    }
}

/// Largest r with r^n ≤ x.
pub(crate) fn floor_nth_root_u128(x: u128, n: u32) -> u128 {
    assert!(n >= 1);
    if n == 1 || x <= 1 {
        return x;
    }
    let mut lo: u128 = 1;
    let mut hi: u128 = 1u128 << (128 / n).min(127);
    while hi.checked_pow(n).map(|p| p <= x).unwrap_or(false) {
        hi <<= 1;
    }
    // Invariant: lo^n <= x < hi^n.
    while lo + 1 < hi {
        let mid = lo + (hi - lo) / 2;
        match mid.checked_pow(n) {
            Some(p) if p <= x => lo = mid,
            _ => hi = mid,
        }
    }
    lo
}

fn ceil_nth_root(x: u64, n: u32) -> u64 {
    let r = floor_nth_root_u128(x as u128, n) as u64;
    if (r as u128).pow(n) == x as u128 {
        r
    } else {
        r + 1
    }
}

/// ⌊(q^{d+1})^{1/(s−1)} / (2d)⌋ in exact integer arithmetic. Equal to
/// ⌊q^{(d+1)/(s−1)} / (2d)⌋ because flooring a positive real and then
/// dividing by a positive integer floors the quotient.
pub fn ell_formula(q: u64, d: u32, s: u32) -> BigUint {
    assert!(s >= 2 && d >= 1);
    BigUint::from(q).pow(d + 1).nth_root(s - 1) / BigUint::from(2 * d as u64)
}

/// Derives the default parameters for (s, t, q) under the given variant.
pub fn params_derive(s: u32, t: u32, q: u64, variant: Variant) -> Result<ConstructionParams> {
    params_with_overrides(s, t, q, variant, None, None)
}

/// As [`params_derive`] with explicit d and/or ℓ overrides.
pub fn params_with_overrides(
    s: u32,
    t: u32,
    q: u64,
    variant: Variant,
    d_override: Option<u32>,
    ell_override: Option<u64>,
) -> Result<ConstructionParams> {
    assert!(2 <= s && s <= t, "need 2 <= s <= t");
    assert!(q >= 2);
    let root_arity = match variant {
        Variant::GraphOfPolynomial => s - 1,
        Variant::ZeroSet => s,
    };
    let d = match d_override {
        Some(d) => {
            assert!(d >= 1, "degree cap must be at least 1");
            d
        }
        None => (ceil_nth_root(t as u64, root_arity) - 1) as u32,
    };
    let ell = match ell_override {
        Some(ell) => ell,
        None => {
            let big = ell_formula(q, d, s);
            if big.is_zero() {
                return Err(Error::EllTooSmall { s, t, q });
            }
            big.to_u64().ok_or(Error::ParamTooLarge { what: "ell" })?
        }
    };
    if ell < 1 {
        return Err(Error::EllTooSmall { s, t, q });
    }
    let n = (q as u128)
        .checked_pow(s)
        .ok_or(Error::ParamTooLarge { what: "n" })?;
    Ok(ConstructionParams {
        s,
        t,
        q,
        d,
        ell,
        variant,
        n,
        lower_target_exponent: Ratio::new((d + 1) as u64, s as u64 * (s as u64 - 1)),
    })
}

/// The neighborhood S of a polynomial under the variant's shape, as column
/// indices into V = F_q^s (points ranked lexicographically, first
/// coordinate most significant). Ascending.
pub fn neighborhood_cols(f: &MultiPoly, params: &ConstructionParams) -> Result<Vec<u64>> {
    if f.nvars() != params.nvars() {
        return Err(Error::ArityMismatch {
            expected: params.nvars(),
            got: f.nvars(),
        });
    }
    let spec = f.spec();
    let q = params.q;
    match params.variant {
        Variant::GraphOfPolynomial => {
            let prefixes = (q as u128).pow(params.s - 1) as u64;
            let mut cols = Vec::with_capacity(prefixes as usize);
            for prefix in 0..prefixes {
                let coords = point_from_index(q, params.nvars(), prefix);
                let y = f.eval_raw(&coords, spec);
                cols.push(prefix * q + y);
            }
            Ok(cols)
        }
        Variant::ZeroSet => {
            let total = (q as u128).pow(params.s) as u64;
            let mut cols = Vec::new();
            for col in 0..total {
                let coords = point_from_index(q, params.nvars(), col);
                if f.eval_raw(&coords, spec) == 0 {
                    cols.push(col);
                }
            }
            Ok(cols)
        }
    }
}

/// The neighborhood as explicit points of F_q^s.
pub fn neighborhood_points(
    f: &MultiPoly,
    params: &ConstructionParams,
) -> Result<Vec<Vec<FieldElem>>> {
    let spec = f.spec().clone();
    Ok(neighborhood_cols(f, params)?
        .into_iter()
        .map(|col| {
            point_from_index(params.q, params.s as usize, col)
                .into_iter()
                .map(|v| spec.elem(v))
                .collect()
        })
        .collect())
}

/// A completed construction: ℓ pairwise-distinct polynomials whose rows
/// form a K_{s,t}-free bipartite graph on ℓ × q^s vertices.
#[derive(Clone, Debug, PartialEq)]
pub struct Construction {
    pub params: ConstructionParams,
    pub polynomials: Vec<MultiPoly>,
    pub graph: BipartiteGraph,
    pub seed: u64,
    /// Rejected candidates per index.
    pub retries_used: Vec<u32>,
}

impl Construction {
    pub fn retries_total(&self) -> u64 {
        self.retries_used.iter().map(|&r| r as u64).sum()
    }
}

/// Builds a construction with derived parameters. Identical inputs yield
/// byte-identical results.
pub fn build(
    s: u32,
    t: u32,
    q: u64,
    variant: Variant,
    seed: u64,
    retry_budget: u32,
) -> Result<Construction> {
    let params = params_derive(s, t, q, variant)?;
    build_with_params(&params, seed, retry_budget)
}

/// Builds a construction from explicit parameters (e.g. an overridden d).
pub fn build_with_params(
    params: &ConstructionParams,
    seed: u64,
    retry_budget: u32,
) -> Result<Construction> {
    assert!(retry_budget >= 1);
    let field = FieldSpec::new(params.q, 1)?;
    if params.n > MAX_COLUMNS {
        return Err(Error::BudgetExceeded {
            needed: params.n,
            budget: MAX_COLUMNS,
        });
    }
    let total_bits = params.ell as u128 * params.n;
    if total_bits > MAX_TOTAL_BITS {
        return Err(Error::BudgetExceeded {
            needed: total_bits,
            budget: MAX_TOTAL_BITS,
        });
    }
    let ell = params.ell as usize;
    let n = params.n as usize;
    let words_per_row = n.div_ceil(64);
    let t = params.t as u64;

    let mut polynomials: Vec<MultiPoly> = Vec::with_capacity(ell);
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(ell);
    let mut retries_used: Vec<u32> = Vec::with_capacity(ell);

    for index in 0..ell {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index as u64);
        let mut rejected = 0u32;
        loop {
            if rejected == retry_budget {
                retries_used.push(rejected);
                return Err(Error::ConstructionFailed {
                    index,
                    retries: rejected,
                    retry_counts: retries_used,
                });
            }
            // Sampling is cheap even when the basis is large; the default
            // monomial cap only guards test-side exhaustive enumeration.
            let candidate =
                poly_random_capped(&field, params.nvars(), params.d, u64::MAX, &mut rng)?;
            if polynomials.contains(&candidate) {
                rejected += 1;
                continue;
            }
            let mut row = vec![0u64; words_per_row];
            for col in neighborhood_cols(&candidate, params)? {
                row[(col / 64) as usize] |= 1u64 << (col % 64);
            }
            if creates_dense_subset(&rows, &row, params.s, t) {
                rejected += 1;
                continue;
            }
            polynomials.push(candidate);
            rows.push(row);
            retries_used.push(rejected);
            break;
        }
    }

    let mut graph = BipartiteGraph::new(ell, n);
    for (i, row) in rows.iter().enumerate() {
        for (w, &word) in row.iter().enumerate() {
            let mut word = word;
            while word != 0 {
                let j = w * 64 + word.trailing_zeros() as usize;
                graph.set(i, j);
                word &= word - 1;
            }
        }
    }
    let graph = graph.with_provenance(Provenance {
        s: params.s,
        t: params.t,
        q: params.q,
        variant: params.variant,
        seed,
    });
    Ok(Construction {
        params: params.clone(),
        polynomials,
        graph,
        seed,
        retries_used,
    })
}

/// Whether adding `candidate` creates an s-subset of rows with t or more
/// common neighbors. Only subsets containing the candidate need testing;
/// the running intersection prunes as soon as it drops below t bits.
fn creates_dense_subset(rows: &[Vec<u64>], candidate: &[u64], s: u32, t: u64) -> bool {
    let needed = (s - 1) as usize;
    if rows.len() < needed {
        return false;
    }
    fn recurse(rows: &[Vec<u64>], inter: &[u64], needed: usize, next: usize, t: u64) -> bool {
        if needed == 0 {
            return true;
        }
        for i in next..=rows.len().saturating_sub(needed) {
            let mut narrowed: Vec<u64> = inter.to_vec();
            for (a, b) in narrowed.iter_mut().zip(&rows[i]) {
                *a &= b;
            }
            if narrowed.iter().map(|w| w.count_ones() as u64).sum::<u64>() < t {
                continue;
            }
            if recurse(rows, &narrowed, needed - 1, i + 1, t) {
                return true;
            }
        }
        false
    }
    if candidate.iter().map(|w| w.count_ones() as u64).sum::<u64>() < t {
        return false;
    }
    recurse(rows, candidate, needed, 0, t)
}

/// |S_{i_1} ∩ ... ∩ S_{i_j}| computed on the polynomial side: the size of
/// the common zero set of the differences f_{i_1} − f_{i_r} over
/// F_q^{s−1}. With a single index the intersection is trivial and the
/// count is q^{s−1}. Graph variant only.
pub fn intersection_size_via_differences(
    polys: &[MultiPoly],
    indices: &[usize],
    params: &ConstructionParams,
) -> Result<u64> {
    if params.variant != Variant::GraphOfPolynomial {
        return Err(Error::VariantMismatch);
    }
    assert!(!indices.is_empty());
    let mut sorted = indices.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    assert_eq!(sorted.len(), indices.len(), "indices must be distinct");
    let lead = &polys[indices[0]];
    let diffs: Vec<MultiPoly> = indices[1..]
        .iter()
        .map(|&j| lead.sub(&polys[j]))
        .collect::<Result<_>>()?;
    let zeros = common_zeros(&diffs, lead.spec(), (params.s - 1) as usize)?;
    Ok(zeros.len() as u64)
}

/// The induced subgraph on a uniform m-subset of U and all of V.
/// K_{s,t}-freeness is inherited.
pub fn subsample(c: &Construction, m: u64, rng: &mut impl Rng) -> Result<BipartiteGraph> {
    if m < 1 || m > c.params.ell {
        return Err(Error::OutOfRange {
            what: "subsample size",
            value: m as u128,
            min: 1,
            max: c.params.ell as u128,
        });
    }
    let mut picked: Vec<usize> =
        rand::seq::index::sample(rng, c.params.ell as usize, m as usize).into_vec();
    picked.sort_unstable();
    let mut g = BipartiteGraph::new(m as usize, c.graph.n());
    for (new_i, &old_i) in picked.iter().enumerate() {
        for j in 0..c.graph.n() {
            if c.graph.get(old_i, j) {
                g.set(new_i, j);
            }
        }
    }
    Ok(match c.graph.provenance() {
        Some(p) => g.with_provenance(p.clone()),
        None => g,
    })
}

/// Picks a prime field order for a target column count: q is the largest
/// prime ≤ ⌊n^{1/s}⌋, so n_used = q^s ≥ n/2^s by Bertrand's postulate.
pub fn field_for_n(n: u128, s: u32) -> Result<(u64, u128)> {
    assert!(s >= 2);
    if n < 1u128 << s {
        return Err(Error::TooSmall { n, s });
    }
    let root = floor_nth_root_u128(n, s);
    let q = next_prime_below(u64::try_from(root).map_err(|_| Error::ParamTooLarge { what: "q" })?);
    Ok((q, (q as u128).pow(s)))
}
