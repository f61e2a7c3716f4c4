//! Multivariate polynomials of bounded total degree over a finite field:
//! evaluation (including at points of an extension field), subtraction,
//! uniform random sampling, common-zero enumeration, and exact /
//! Monte-Carlo estimation of the probability that a random polynomial
//! vanishes on a prescribed point set.
//!
//! The coefficient basis is the set of monomials X_1^{a_1}···X_n^{a_n}
//! with Σa_i ≤ d, enumerated in a fixed graded order: ascending total
//! degree, and within a degree descending lexicographic exponent vectors
//! (so X_1 precedes X_2). Sampling, dense coefficient lists, and the
//! exhaustive enumerator all index coefficients in this order.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_rational::Ratio;
use rand::Rng;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf::{FieldElem, FieldSpec};

/// Sampling refuses monomial bases larger than this unless overridden.
pub const DEFAULT_MONOMIAL_CAP: u64 = 64;

/// Exhaustive enumerations (points or polynomials) refuse spaces larger
/// than this unless overridden.
pub const DEFAULT_ENUM_BUDGET: u64 = 1 << 24;

// ---------------------------------------------------------------------------
// Monomials
// ---------------------------------------------------------------------------

/// A monomial, stored as its exponent vector.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Monomial {
    exponents: Vec<u32>,
    total_degree: u32,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Monomial {
        let total_degree = exponents.iter().sum();
        Monomial {
            exponents,
            total_degree,
        }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn total_degree(&self) -> u32 {
        self.total_degree
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree
            .cmp(&other.total_degree)
            .then_with(|| other.exponents.cmp(&self.exponents))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Number of monomials in `nvars` variables of total degree ≤ d:
/// binomial(d + nvars, nvars).
pub fn monomial_count(nvars: usize, d: u32) -> u64 {
    assert!(nvars >= 1);
    let mut num: u128 = 1;
    for i in 1..=nvars as u128 {
        num = num * (d as u128 + i) / i;
    }
    u64::try_from(num).expect("monomial count overflows u64")
}

/// All monomials of total degree ≤ d, in the canonical order.
pub fn monomials(nvars: usize, d: u32) -> Vec<Monomial> {
    assert!(nvars >= 1);
    let mut out = Vec::with_capacity(monomial_count(nvars, d) as usize);
    let mut exps = vec![0u32; nvars];
    for deg in 0..=d {
        push_degree(&mut out, &mut exps, 0, deg);
    }
    out
}

fn push_degree(out: &mut Vec<Monomial>, exps: &mut Vec<u32>, var: usize, remaining: u32) {
    if var + 1 == exps.len() {
        exps[var] = remaining;
        out.push(Monomial::new(exps.clone()));
        exps[var] = 0;
        return;
    }
    for e in (0..=remaining).rev() {
        exps[var] = e;
        push_degree(out, exps, var + 1, remaining - e);
    }
    exps[var] = 0;
}

// ---------------------------------------------------------------------------
// Polynomials
// ---------------------------------------------------------------------------

/// A polynomial in `nvars` variables of total degree ≤ `degree_cap` with
/// coefficients in a [`FieldSpec`]. Zero coefficients are never stored, so
/// structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiPoly {
    spec: FieldSpec,
    nvars: usize,
    degree_cap: u32,
    coeffs: BTreeMap<Monomial, u64>,
}

impl MultiPoly {
    pub fn zero(spec: &FieldSpec, nvars: usize, degree_cap: u32) -> MultiPoly {
        assert!(nvars >= 1);
        MultiPoly {
            spec: spec.clone(),
            nvars,
            degree_cap,
            coeffs: BTreeMap::new(),
        }
    }

    /// Builds a polynomial from explicit (exponents, coefficient) terms.
    /// Intended for literals in tests and examples; panics on bad input.
    pub fn from_terms(
        spec: &FieldSpec,
        nvars: usize,
        degree_cap: u32,
        terms: &[(&[u32], u64)],
    ) -> MultiPoly {
        let mut poly = MultiPoly::zero(spec, nvars, degree_cap);
        for (exps, value) in terms {
            assert_eq!(exps.len(), nvars);
            assert!(*value < spec.q());
            let mon = Monomial::new(exps.to_vec());
            assert!(mon.total_degree() <= degree_cap, "term degree exceeds cap");
            if *value != 0 {
                poly.coeffs.insert(mon, *value);
            }
        }
        poly
    }

    /// Builds a polynomial from a dense coefficient list in the canonical
    /// monomial order (length must be `monomial_count(nvars, degree_cap)`).
    pub fn from_coeff_list(
        spec: &FieldSpec,
        nvars: usize,
        degree_cap: u32,
        list: &[u64],
    ) -> Result<MultiPoly> {
        let expected = monomial_count(nvars, degree_cap) as usize;
        if list.len() != expected {
            return Err(Error::ArityMismatch {
                expected,
                got: list.len(),
            });
        }
        let mut coeffs = BTreeMap::new();
        for (mon, &value) in monomials(nvars, degree_cap).into_iter().zip(list) {
            if value >= spec.q() {
                return Err(Error::Format(format!(
                    "coefficient {} out of range for field of order {}",
                    value,
                    spec.q()
                )));
            }
            if value != 0 {
                coeffs.insert(mon, value);
            }
        }
        Ok(MultiPoly {
            spec: spec.clone(),
            nvars,
            degree_cap,
            coeffs,
        })
    }

    /// Dense coefficient list in the canonical monomial order, zeros included.
    pub fn coeff_list(&self) -> Vec<u64> {
        monomials(self.nvars, self.degree_cap)
            .iter()
            .map(|mon| self.coeffs.get(mon).copied().unwrap_or(0))
            .collect()
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree_cap(&self) -> u32 {
        self.degree_cap
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Largest total degree with a nonzero coefficient; None for the zero
    /// polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().map(Monomial::total_degree).max()
    }

    /// Evaluates at a point whose coordinates lie in the coefficient field
    /// or in an extension of it (the latter requires a prime base field;
    /// coefficients embed through the prime subfield).
    pub fn eval(&self, point: &[FieldElem]) -> Result<FieldElem> {
        if point.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                got: point.len(),
            });
        }
        let pspec = point[0].spec().clone();
        if point.iter().any(|c| c.spec() != &pspec) {
            return Err(Error::SpecMismatch);
        }
        check_eval_field(&self.spec, &pspec)?;
        let raw: Vec<u64> = point.iter().map(FieldElem::value).collect();
        Ok(pspec.elem(self.eval_raw(&raw, &pspec)))
    }

    /// Evaluation on raw encoded coordinates. The caller is responsible for
    /// field compatibility (see [`MultiPoly::eval`]).
    pub(crate) fn eval_raw(&self, point: &[u64], pspec: &FieldSpec) -> u64 {
        debug_assert_eq!(point.len(), self.nvars);
        let mut acc = 0u64;
        for (mon, &c) in &self.coeffs {
            let mut term = c;
            for (i, &e) in mon.exponents.iter().enumerate() {
                if e > 0 {
                    term = pspec.mul_raw(term, pspec.pow_raw(point[i], e as u64));
                }
            }
            acc = pspec.add_raw(acc, term);
        }
        acc
    }

    /// Canonical-form difference; requires matching spec, arity and cap.
    pub fn sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        if self.spec != other.spec {
            return Err(Error::SpecMismatch);
        }
        if self.nvars != other.nvars || self.degree_cap != other.degree_cap {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                got: other.nvars,
            });
        }
        let mut coeffs = self.coeffs.clone();
        for (mon, &c) in &other.coeffs {
            let cur = coeffs.get(mon).copied().unwrap_or(0);
            let value = self.spec.sub_raw(cur, c);
            if value == 0 {
                coeffs.remove(mon);
            } else {
                coeffs.insert(mon.clone(), value);
            }
        }
        Ok(MultiPoly {
            spec: self.spec.clone(),
            nvars: self.nvars,
            degree_cap: self.degree_cap,
            coeffs,
        })
    }
}

fn check_eval_field(coeff: &FieldSpec, point: &FieldSpec) -> Result<()> {
    if coeff == point {
        return Ok(());
    }
    if coeff.is_prime_field() && point.p() == coeff.p() {
        return Ok(());
    }
    Err(Error::IncompatibleField)
}

// ---------------------------------------------------------------------------
// Sampling
// ---------------------------------------------------------------------------

/// Uniform draw from the set of polynomials of degree ≤ d: every coefficient
/// in the canonical basis is an independent uniform field element.
pub fn poly_random(
    spec: &FieldSpec,
    nvars: usize,
    d: u32,
    rng: &mut impl Rng,
) -> Result<MultiPoly> {
    poly_random_capped(spec, nvars, d, DEFAULT_MONOMIAL_CAP, rng)
}

/// As [`poly_random`] with an explicit cap on the monomial-basis size.
pub fn poly_random_capped(
    spec: &FieldSpec,
    nvars: usize,
    d: u32,
    max_monomials: u64,
    rng: &mut impl Rng,
) -> Result<MultiPoly> {
    let count = monomial_count(nvars, d);
    if count > max_monomials {
        return Err(Error::BudgetExceeded {
            needed: count as u128,
            budget: max_monomials as u128,
        });
    }
    let list = sample_coeff_vector(spec.q(), count as usize, rng);
    MultiPoly::from_coeff_list(spec, nvars, d, &list)
}

fn sample_coeff_vector(q: u64, count: usize, rng: &mut impl Rng) -> Vec<u64> {
    (0..count).map(|_| rng.gen_range(0..q)).collect()
}

// ---------------------------------------------------------------------------
// Point sets and point indexing
// ---------------------------------------------------------------------------

/// Rank of a point of F_q^n in lexicographic order (first coordinate most
/// significant).
pub fn point_index(q: u64, coords: &[u64]) -> u64 {
    coords.iter().fold(0, |acc, &c| acc * q + c)
}

/// Inverse of [`point_index`].
pub fn point_from_index(q: u64, nvars: usize, index: u64) -> Vec<u64> {
    let mut coords = vec![0u64; nvars];
    let mut v = index;
    for slot in coords.iter_mut().rev() {
        *slot = v % q;
        v /= q;
    }
    debug_assert_eq!(v, 0);
    coords
}

/// A list of pairwise-distinct points sharing one field spec. The field may
/// be an extension of a polynomial's coefficient field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    spec: FieldSpec,
    nvars: usize,
    points: Vec<Vec<u64>>,
}

impl PointSet {
    pub fn from_raw(spec: &FieldSpec, nvars: usize, points: Vec<Vec<u64>>) -> Result<PointSet> {
        assert!(nvars >= 1);
        for pt in &points {
            if pt.len() != nvars {
                return Err(Error::ArityMismatch {
                    expected: nvars,
                    got: pt.len(),
                });
            }
            for &v in pt {
                if v >= spec.q() {
                    return Err(Error::Format(format!(
                        "coordinate {} out of range for field of order {}",
                        v,
                        spec.q()
                    )));
                }
            }
        }
        let mut sorted = points.clone();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::DuplicatePoints);
        }
        Ok(PointSet {
            spec: spec.clone(),
            nvars,
            points,
        })
    }

    pub fn from_elems(points: Vec<Vec<FieldElem>>) -> Result<PointSet> {
        assert!(!points.is_empty(), "cannot infer the field of an empty set");
        let spec = points[0][0].spec().clone();
        let nvars = points[0].len();
        let mut raw = Vec::with_capacity(points.len());
        for pt in &points {
            if pt.iter().any(|c| c.spec() != &spec) {
                return Err(Error::SpecMismatch);
            }
            raw.push(pt.iter().map(FieldElem::value).collect());
        }
        PointSet::from_raw(&spec, nvars, raw)
    }

    /// Uniformly samples `m` distinct points of F_q^nvars.
    pub fn sample_distinct(
        spec: &FieldSpec,
        nvars: usize,
        m: usize,
        rng: &mut impl Rng,
    ) -> Result<PointSet> {
        let space = (spec.q() as u128).pow(nvars as u32);
        if (m as u128) > space {
            return Err(Error::OutOfRange {
                what: "point count",
                value: m as u128,
                min: 0,
                max: space,
            });
        }
        let space = usize::try_from(space).map_err(|_| Error::BudgetExceeded {
            needed: space,
            budget: usize::MAX as u128,
        })?;
        let indices = rand::seq::index::sample(rng, space, m);
        let points = indices
            .iter()
            .map(|i| point_from_index(spec.q(), nvars, i as u64))
            .collect();
        PointSet::from_raw(spec, nvars, points)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn raw_points(&self) -> &[Vec<u64>] {
        &self.points
    }

    pub fn points(&self) -> Vec<Vec<FieldElem>> {
        self.points
            .iter()
            .map(|pt| pt.iter().map(|&v| self.spec.elem(v)).collect())
            .collect()
    }
}

// ---------------------------------------------------------------------------
// Common zeros
// ---------------------------------------------------------------------------

/// All points of F_q^nvars at which every listed polynomial vanishes, in
/// lexicographic order. An empty list yields the whole space.
pub fn common_zeros(polys: &[MultiPoly], spec: &FieldSpec, nvars: usize) -> Result<PointSet> {
    common_zeros_with_budget(polys, spec, nvars, DEFAULT_ENUM_BUDGET)
}

pub fn common_zeros_with_budget(
    polys: &[MultiPoly],
    spec: &FieldSpec,
    nvars: usize,
    budget: u64,
) -> Result<PointSet> {
    assert!(nvars >= 1);
    for poly in polys {
        if poly.spec() != spec {
            return Err(Error::SpecMismatch);
        }
        if poly.nvars() != nvars {
            return Err(Error::ArityMismatch {
                expected: nvars,
                got: poly.nvars(),
            });
        }
    }
    let space = (spec.q() as u128).pow(nvars as u32);
    if space > budget as u128 {
        return Err(Error::BudgetExceeded {
            needed: space,
            budget: budget as u128,
        });
    }
    let mut zeros = Vec::new();
    let mut coords = vec![0u64; nvars];
    loop {
        if polys.iter().all(|f| f.eval_raw(&coords, spec) == 0) {
            zeros.push(coords.clone());
        }
        // Odometer: last coordinate fastest, so output order is lexicographic.
        let mut i = nvars;
        loop {
            if i == 0 {
                return PointSet::from_raw(spec, nvars, zeros);
            }
            i -= 1;
            coords[i] += 1;
            if coords[i] < spec.q() {
                break;
            }
            coords[i] = 0;
        }
    }
}

// ---------------------------------------------------------------------------
// Vanishing probability
// ---------------------------------------------------------------------------

fn check_vanish_inputs(points: &PointSet, spec: &FieldSpec, nvars: usize) -> Result<()> {
    if points.nvars() != nvars {
        return Err(Error::ArityMismatch {
            expected: nvars,
            got: points.nvars(),
        });
    }
    check_eval_field(spec, points.spec())
}

/// Values of every basis monomial at every point, in the point field.
fn monomial_matrix(points: &PointSet, mons: &[Monomial]) -> Vec<Vec<u64>> {
    let pspec = points.spec();
    points
        .raw_points()
        .iter()
        .map(|pt| {
            mons.iter()
                .map(|mon| {
                    let mut v = 1u64;
                    for (i, &e) in mon.exponents().iter().enumerate() {
                        if e > 0 {
                            v = pspec.mul_raw(v, pspec.pow_raw(pt[i], e as u64));
                        }
                    }
                    v
                })
                .collect()
        })
        .collect()
}

/// Exhaustively counts the polynomials of degree ≤ d vanishing on all the
/// points. Returns (vanishing, total) with total = q^{monomial_count}; the
/// enumerator visits every polynomial exactly once.
pub fn vanish_count_exact(
    points: &PointSet,
    spec: &FieldSpec,
    nvars: usize,
    d: u32,
    budget: u64,
) -> Result<(u64, u64)> {
    check_vanish_inputs(points, spec, nvars)?;
    let nmons = monomial_count(nvars, d);
    let total = (spec.q() as u128)
        .checked_pow(u32::try_from(nmons).map_err(|_| Error::BudgetExceeded {
            needed: u128::MAX,
            budget: budget as u128,
        })?)
        .ok_or(Error::BudgetExceeded {
            needed: u128::MAX,
            budget: budget as u128,
        })?;
    if total > budget as u128 {
        return Err(Error::BudgetExceeded {
            needed: total,
            budget: budget as u128,
        });
    }
    let mons = monomials(nvars, d);
    let monvals = monomial_matrix(points, &mons);
    let mut sums = vec![0u64; points.len()];
    let mut hits = 0u64;
    count_vanishing(
        0,
        nmons as usize,
        spec.q(),
        points.spec(),
        &monvals,
        &mut sums,
        &mut hits,
    );
    Ok((hits, total as u64))
}

/// Recursive coefficient odometer with running per-point partial sums.
/// After iterating all q values of a digit the q increments cancel (the
/// point field has characteristic p and q is a power of p), so the sums
/// need no explicit save and restore.
fn count_vanishing(
    digit: usize,
    nmons: usize,
    q: u64,
    pspec: &FieldSpec,
    monvals: &[Vec<u64>],
    sums: &mut [u64],
    hits: &mut u64,
) {
    if digit == nmons {
        if sums.iter().all(|&s| s == 0) {
            *hits += 1;
        }
        return;
    }
    for _ in 0..q {
        count_vanishing(digit + 1, nmons, q, pspec, monvals, sums, hits);
        for (i, s) in sums.iter_mut().enumerate() {
            *s = pspec.add_raw(*s, monvals[i][digit]);
        }
    }
}

/// Exact probability that a uniform polynomial of degree ≤ d vanishes on
/// all the points, as a reduced fraction.
pub fn vanish_probability_exact(
    points: &PointSet,
    spec: &FieldSpec,
    nvars: usize,
    d: u32,
) -> Result<Ratio<u64>> {
    let (hits, total) = vanish_count_exact(points, spec, nvars, d, DEFAULT_ENUM_BUDGET)?;
    Ok(Ratio::new(hits, total))
}

/// A Monte-Carlo estimate with its binomial standard error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VanishEstimate {
    pub hits: u64,
    pub trials: u64,
    pub estimate: f64,
    pub std_error: f64,
}

const MC_CHUNK: u64 = 8192;

/// Monte-Carlo surrogate for [`vanish_probability_exact`]: samples `trials`
/// random polynomials and counts those vanishing on all the points. Trials
/// run in parallel in fixed chunks, each on its own rng stream, so the
/// result does not depend on the worker count.
pub fn vanish_probability_mc(
    points: &PointSet,
    spec: &FieldSpec,
    nvars: usize,
    d: u32,
    trials: u64,
    rng: &mut ChaCha8Rng,
) -> Result<VanishEstimate> {
    assert!(trials >= 1, "at least one trial required");
    check_vanish_inputs(points, spec, nvars)?;
    let nmons = monomial_count(nvars, d) as usize;
    let mons = monomials(nvars, d);
    let monvals = monomial_matrix(points, &mons);
    let pspec = points.spec().clone();
    let q = spec.q();
    let sub_seed = rng.next_u64();
    let nchunks = trials.div_ceil(MC_CHUNK);
    let hits: u64 = (0..nchunks)
        .into_par_iter()
        .map(|chunk| {
            let mut local = ChaCha8Rng::seed_from_u64(sub_seed);
            local.set_stream(chunk);
            let todo = MC_CHUNK.min(trials - chunk * MC_CHUNK);
            let mut coeffs = vec![0u64; nmons];
            let mut hits = 0u64;
            for _ in 0..todo {
                for c in coeffs.iter_mut() {
                    *c = local.gen_range(0..q);
                }
                let vanish = monvals.iter().all(|row| {
                    let mut acc = 0u64;
                    for (c, &mv) in coeffs.iter().zip(row) {
                        if *c != 0 {
                            acc = pspec.add_raw(acc, pspec.mul_raw(*c, mv));
                        }
                    }
                    acc == 0
                });
                if vanish {
                    hits += 1;
                }
            }
            hits
        })
        .sum();
    let estimate = hits as f64 / trials as f64;
    let std_error = (estimate * (1.0 - estimate) / trials as f64).sqrt();
    Ok(VanishEstimate {
        hits,
        trials,
        estimate,
        std_error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64, k: u32) -> FieldSpec {
        FieldSpec::new(p, k).unwrap()
    }

    #[test]
    fn monomial_count_examples() {
        assert_eq!(monomial_count(2, 3), 10);
        for d in 0..6 {
            assert_eq!(monomial_count(1, d), d as u64 + 1);
        }
        assert_eq!(monomial_count(3, 0), 1);
    }

    #[test]
    fn canonical_order_is_fixed() {
        let mons = monomials(2, 2);
        let exps: Vec<&[u32]> = mons.iter().map(|m| m.exponents()).collect();
        assert_eq!(
            exps,
            vec![&[0, 0][..], &[1, 0], &[0, 1], &[2, 0], &[1, 1], &[0, 2]]
        );
        let mut sorted = mons.clone();
        sorted.sort();
        assert_eq!(sorted, mons, "generation order must agree with Ord");
        assert_eq!(mons.len() as u64, monomial_count(2, 2));
    }

    #[test]
    fn coeff_list_round_trip() {
        let f5 = f(5, 1);
        let list = vec![1, 0, 2, 0, 3, 0];
        let poly = MultiPoly::from_coeff_list(&f5, 2, 2, &list).unwrap();
        assert_eq!(poly.coeff_list(), list);
        assert_eq!(poly.coeffs.len(), 3, "zeros are not stored");
        assert!(MultiPoly::from_coeff_list(&f5, 2, 2, &[0; 5]).is_err());
        assert!(MultiPoly::from_coeff_list(&f5, 2, 2, &[9, 0, 0, 0, 0, 0]).is_err());
    }

    #[test]
    fn eval_examples() {
        let f5 = f(5, 1);
        // X_1^2 + 2 X_2 at (3, 1): 9 + 2 = 11 = 1 mod 5.
        let poly = MultiPoly::from_terms(&f5, 2, 2, &[(&[2, 0], 1), (&[0, 1], 2)]);
        let value = poly.eval(&[f5.elem(3), f5.elem(1)]).unwrap();
        assert_eq!(value.value(), 1);

        let zero = MultiPoly::zero(&f5, 2, 2);
        assert_eq!(zero.eval(&[f5.elem(4), f5.elem(2)]).unwrap().value(), 0);

        // X_1 + X_2 over F_2 at the F_4 point (x, x): x + x = 0 in char 2.
        let f2 = f(2, 1);
        let f4 = f(2, 2);
        let sum = MultiPoly::from_terms(&f2, 2, 1, &[(&[1, 0], 1), (&[0, 1], 1)]);
        let x = f4.elem(2);
        assert_eq!(sum.eval(&[x.clone(), x]).unwrap().value(), 0);
    }

    #[test]
    fn eval_errors() {
        let f5 = f(5, 1);
        let poly = MultiPoly::from_terms(&f5, 2, 1, &[(&[1, 0], 1)]);
        assert!(matches!(
            poly.eval(&[f5.elem(1)]),
            Err(Error::ArityMismatch { .. })
        ));
        let f7 = f(7, 1);
        assert!(matches!(
            poly.eval(&[f7.elem(1), f7.elem(2)]),
            Err(Error::IncompatibleField)
        ));
        // Extension base must be prime: F_4 coefficients at F_16 points.
        let f4 = f(2, 2);
        let f16 = f(2, 4);
        let g = MultiPoly::from_terms(&f4, 1, 1, &[(&[1], 1)]);
        assert!(matches!(
            g.eval(&[f16.elem(1)]),
            Err(Error::IncompatibleField)
        ));
    }

    #[test]
    fn sub_examples() {
        let f3 = f(3, 1);
        let g = MultiPoly::from_terms(&f3, 1, 1, &[(&[1], 1), (&[0], 1)]);
        let h = MultiPoly::from_terms(&f3, 1, 1, &[(&[1], 1)]);
        assert!(g.sub(&g).unwrap().is_zero());
        let diff = g.sub(&h).unwrap();
        assert_eq!(diff.coeff_list(), vec![1, 0]);
    }

    #[test]
    fn sub_is_pointwise_subtraction() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for spec in [f(5, 1), f(7, 1), f(2, 2), f(3, 2)] {
            let g = poly_random(&spec, 2, 3, &mut rng).unwrap();
            let h = poly_random(&spec, 2, 3, &mut rng).unwrap();
            let diff = g.sub(&h).unwrap();
            for _ in 0..100 {
                let pt = vec![
                    spec.elem(rng.gen_range(0..spec.q())),
                    spec.elem(rng.gen_range(0..spec.q())),
                ];
                let lhs = diff.eval(&pt).unwrap();
                let rhs = g.eval(&pt).unwrap() - h.eval(&pt).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        let f5 = f(5, 1);
        let a = poly_random(&f5, 2, 2, &mut ChaCha8Rng::seed_from_u64(42)).unwrap();
        let b = poly_random(&f5, 2, 2, &mut ChaCha8Rng::seed_from_u64(42)).unwrap();
        assert_eq!(a, b);
        let c = poly_random(&f5, 2, 2, &mut ChaCha8Rng::seed_from_u64(43)).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn sampling_respects_cap() {
        let f2 = f(2, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(matches!(
            poly_random_capped(&f2, 3, 20, 64, &mut rng),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn coefficient_histogram_is_uniform() {
        // 10^5 draws of 3 coefficients each over F_5; every residue must
        // land within 3 sigma of frequency 1/5.
        let f5 = f(5, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut counts = [0u64; 5];
        let draws = 100_000;
        for _ in 0..draws {
            let poly = poly_random(&f5, 2, 1, &mut rng).unwrap();
            for c in poly.coeff_list() {
                counts[c as usize] += 1;
            }
        }
        let samples = (3 * draws) as f64;
        let sigma = (0.2 * 0.8 / samples).sqrt();
        for (residue, &count) in counts.iter().enumerate() {
            let freq = count as f64 / samples;
            assert!(
                (freq - 0.2).abs() <= 3.0 * sigma,
                "residue {} frequency {} off by more than 3 sigma",
                residue,
                freq
            );
        }
    }

    #[test]
    fn sample_space_of_f2_planes_has_8_members() {
        // F_2, nvars = 2, d = 1: exactly 2^3 polynomials a + bX_1 + cX_2.
        let f2 = f(2, 1);
        assert_eq!(monomial_count(2, 1), 3);
        let mut seen = std::collections::HashSet::new();
        for code in 0..8u64 {
            let list = vec![code & 1, (code >> 1) & 1, (code >> 2) & 1];
            let poly = MultiPoly::from_coeff_list(&f2, 2, 1, &list).unwrap();
            seen.insert(poly.coeff_list());
        }
        assert_eq!(seen.len(), 8);
    }

    #[test]
    fn common_zeros_examples() {
        let f5 = f(5, 1);
        // Empty list: the whole space.
        let all = common_zeros(&[], &f5, 2).unwrap();
        assert_eq!(all.len(), 25);
        assert!(all.raw_points().windows(2).all(|w| w[0] < w[1]));

        // X_1^2 - 1 over F_5 vanishes at 1 and 4.
        let sq = MultiPoly::from_terms(&f5, 1, 2, &[(&[2], 1), (&[0], 4)]);
        let zeros = common_zeros(&[sq], &f5, 1).unwrap();
        assert_eq!(zeros.raw_points(), &[vec![1], vec![4]]);

        // {X_1 + X_2, X_1 - X_2} over F_5 meet only at the origin.
        let plus = MultiPoly::from_terms(&f5, 2, 1, &[(&[1, 0], 1), (&[0, 1], 1)]);
        let minus = MultiPoly::from_terms(&f5, 2, 1, &[(&[1, 0], 1), (&[0, 1], 4)]);
        let zeros = common_zeros(&[plus, minus], &f5, 2).unwrap();
        assert_eq!(zeros.raw_points(), &[vec![0, 0]]);
    }

    #[test]
    fn common_zeros_budget() {
        let f5 = f(5, 1);
        assert!(matches!(
            common_zeros_with_budget(&[], &f5, 3, 100),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn univariate_zero_count_bounded_by_degree() {
        for q in [2u64, 3, 5, 7] {
            let spec = f(q, 1);
            let cap = 4u32;
            let nlists = (q as u128).pow(5) as u64;
            for code in 1..nlists {
                let mut list = vec![0u64; 5];
                let mut v = code;
                for slot in list.iter_mut() {
                    *slot = v % q;
                    v /= q;
                }
                let poly = MultiPoly::from_coeff_list(&spec, 1, cap, &list).unwrap();
                let degree = poly.degree().unwrap_or(0);
                let zeros = common_zeros(std::slice::from_ref(&poly), &spec, 1).unwrap();
                assert!(
                    (zeros.len() as u32) <= degree || poly.is_zero(),
                    "degree-{} polynomial over F_{} has {} roots",
                    degree,
                    q,
                    zeros.len()
                );
            }
        }
    }

    #[test]
    fn point_set_validation() {
        let f5 = f(5, 1);
        assert!(matches!(
            PointSet::from_raw(&f5, 2, vec![vec![0, 0], vec![0, 0]]),
            Err(Error::DuplicatePoints)
        ));
        assert!(matches!(
            PointSet::from_raw(&f5, 2, vec![vec![0]]),
            Err(Error::ArityMismatch { .. })
        ));
        assert!(PointSet::from_raw(&f5, 2, vec![vec![0, 1], vec![1, 0]]).is_ok());
    }

    /// Literal enumeration of the 8 polynomials a + bX_1 + cX_2 over F_2:
    /// the independent oracle for the two hand-picked vanishing cases.
    fn f2_plane_vanish_count(points: &[(u64, u64)]) -> u64 {
        let mut hits = 0;
        for a in 0..2u64 {
            for b in 0..2u64 {
                for c in 0..2u64 {
                    if points.iter().all(|&(x, y)| (a + b * x + c * y) % 2 == 0) {
                        hits += 1;
                    }
                }
            }
        }
        hits
    }

    #[test]
    fn vanish_exact_f2_hand_cases() {
        let f2 = f(2, 1);
        for pts in [[(0u64, 0u64), (1, 1)], [(0, 0), (0, 1)]] {
            assert_eq!(f2_plane_vanish_count(&pts), 2, "oracle");
            let set =
                PointSet::from_raw(&f2, 2, pts.iter().map(|&(x, y)| vec![x, y]).collect()).unwrap();
            let (hits, total) = vanish_count_exact(&set, &f2, 2, 1, 1 << 24).unwrap();
            assert_eq!((hits, total), (2, 8));
            let prob = vanish_probability_exact(&set, &f2, 2, 1).unwrap();
            assert_eq!(prob, Ratio::new(1, 4));
        }
    }

    #[test]
    fn vanish_exact_single_origin_is_one_over_q() {
        for (q, nvars, d) in [(2u64, 1usize, 1u32), (3, 2, 1), (5, 2, 2), (7, 1, 3)] {
            let spec = f(q, 1);
            let set = PointSet::from_raw(&spec, nvars, vec![vec![0; nvars]]).unwrap();
            let prob = vanish_probability_exact(&set, &spec, nvars, d).unwrap();
            assert_eq!(prob, Ratio::new(1, q));
        }
    }

    #[test]
    fn enumerator_visits_whole_sample_space() {
        for (q, nvars, d) in [(2u64, 2usize, 1u32), (3, 1, 2), (5, 2, 1)] {
            let spec = f(q, 1);
            let set = PointSet::from_raw(&spec, nvars, vec![vec![0; nvars]]).unwrap();
            let (_, total) = vanish_count_exact(&set, &spec, nvars, d, 1 << 24).unwrap();
            assert_eq!(
                total as u128,
                (q as u128).pow(monomial_count(nvars, d) as u32)
            );
        }
    }

    #[test]
    fn vanish_bound_small_grid() {
        // Smaller version of the acceptance grid, base field and F_{q^2}.
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for q in [2u64, 3] {
            let base = f(q, 1);
            let ext = f(q, 2);
            for nvars in [1usize, 2] {
                for d in [1u32, 2] {
                    for m in [1usize, 2] {
                        if q <= ((m * (m - 1)) / 2) as u64 || d < m as u32 - 1 {
                            continue;
                        }
                        for pspec in [&base, &ext] {
                            for _ in 0..5 {
                                let set =
                                    PointSet::sample_distinct(pspec, nvars, m, &mut rng).unwrap();
                                let prob = vanish_probability_exact(&set, &base, nvars, d).unwrap();
                                let bound = Ratio::new(1, q.pow(m as u32));
                                assert!(
                                    prob <= bound,
                                    "q={} nvars={} d={} m={} ext={}: {} > {}",
                                    q,
                                    nvars,
                                    d,
                                    m,
                                    pspec.k(),
                                    prob,
                                    bound
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    #[should_panic(expected = "at least one trial")]
    fn mc_rejects_zero_trials() {
        let f2 = f(2, 1);
        let set = PointSet::from_raw(&f2, 2, vec![vec![0, 0]]).unwrap();
        let _ = vanish_probability_mc(&set, &f2, 2, 1, 0, &mut ChaCha8Rng::seed_from_u64(0));
    }

    #[test]
    fn mc_matches_exact_quarter() {
        let f2 = f(2, 1);
        let set = PointSet::from_raw(&f2, 2, vec![vec![0, 0], vec![1, 1]]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let est = vanish_probability_mc(&set, &f2, 2, 1, 100_000, &mut rng).unwrap();
        assert!(
            (est.estimate - 0.25).abs() <= 5.0 * est.std_error,
            "estimate {} se {}",
            est.estimate,
            est.std_error
        );
    }

    #[test]
    fn mc_stays_below_vanishing_ceiling_f7() {
        // q = 7 > C(3,2) = 3 and d = 2 >= m - 1: estimate stays below
        // 7^{-3} plus five standard errors.
        let f7 = f(7, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let set = PointSet::sample_distinct(&f7, 2, 3, &mut rng).unwrap();
        let est = vanish_probability_mc(&set, &f7, 2, 2, 1_000_000, &mut rng).unwrap();
        let bound = 7.0f64.powi(-3);
        assert!(
            est.estimate <= bound + 5.0 * est.std_error,
            "estimate {} bound {} se {}",
            est.estimate,
            bound,
            est.std_error
        );
    }

    #[test]
    fn mc_is_deterministic_across_runs() {
        let f5 = f(5, 1);
        let set = PointSet::from_raw(&f5, 1, vec![vec![0], vec![1]]).unwrap();
        let a = vanish_probability_mc(&set, &f5, 1, 2, 50_000, &mut ChaCha8Rng::seed_from_u64(3))
            .unwrap();
        let b = vanish_probability_mc(&set, &f5, 1, 2, 50_000, &mut ChaCha8Rng::seed_from_u64(3))
            .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn point_index_round_trip() {
        let q = 5u64;
        for idx in 0..125 {
            let pt = point_from_index(q, 3, idx);
            assert_eq!(point_index(q, &pt), idx);
        }
        // First coordinate is most significant.
        assert_eq!(point_index(5, &[1, 0]), 5);
        assert_eq!(point_index(5, &[0, 1]), 1);
    }
}
