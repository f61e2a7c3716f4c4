//! Stable on-disk formats: the GraphFile JSON schema (format_version 1),
//! the report CSV, and the grid files consumed by batch runs.
//!
//! Adjacency rows are lowercase hex strings of ⌈n/4⌉ digits. The encoding
//! is little-endian within the row: the first digit holds columns 0–3 and
//! the least significant bit of each digit is the lowest column, so a row
//! over n = 5 columns with columns {0, 4} set reads "11".

use serde::{Deserialize, Serialize};

use crate::construction::{Construction, ConstructionParams, Variant};
use crate::error::{Error, Result};
use crate::gf::{is_prime, FieldSpec};
use crate::graph::{BipartiteGraph, Provenance};
use crate::poly::{monomial_count, MultiPoly};

pub const GRAPH_FORMAT_VERSION: u32 = 1;

/// The serialized form of a constructed (or hand-written) bipartite graph.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphFile {
    pub format_version: u32,
    pub s: u32,
    pub t: u32,
    pub q: u64,
    pub variant: Variant,
    pub seed: u64,
    pub m: usize,
    pub n: usize,
    /// Coefficient lists in the canonical graded monomial order, base-field
    /// integer encoding. Present when the graph came from a construction;
    /// the degree cap is recovered from the list length.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub polynomials: Option<Vec<Vec<u64>>>,
    pub adjacency: Vec<String>,
}

pub fn encode_adjacency_row(g: &BipartiteGraph, i: usize) -> String {
    let ndigits = g.n().div_ceil(4);
    let mut out = String::with_capacity(ndigits);
    for digit_idx in 0..ndigits {
        let mut v = 0u32;
        for b in 0..4 {
            let j = digit_idx * 4 + b;
            if j < g.n() && g.get(i, j) {
                v |= 1 << b;
            }
        }
        out.push(char::from_digit(v, 16).expect("nibble"));
    }
    out
}

/// Decodes one adjacency row into its set columns. The row must consist of
/// exactly ⌈n/4⌉ lowercase hex digits with no bits beyond column n−1.
pub fn decode_adjacency_row(row: &str, n: usize) -> Result<Vec<usize>> {
    let ndigits = n.div_ceil(4);
    if row.len() != ndigits {
        return Err(Error::Format(format!(
            "adjacency row has {} digits, expected {}",
            row.len(),
            ndigits
        )));
    }
    let mut cols = Vec::new();
    for (digit_idx, ch) in row.chars().enumerate() {
        if !matches!(ch, '0'..='9' | 'a'..='f') {
            return Err(Error::Format(format!(
                "adjacency digit '{}' is not lowercase hex",
                ch
            )));
        }
        let v = ch.to_digit(16).expect("hex digit");
        for b in 0..4 {
            if v >> b & 1 == 1 {
                let j = digit_idx * 4 + b;
                if j >= n {
                    return Err(Error::Format(format!(
                        "adjacency bit set at column {} beyond n = {}",
                        j, n
                    )));
                }
                cols.push(j);
            }
        }
    }
    Ok(cols)
}

impl GraphFile {
    pub fn from_construction(c: &Construction) -> GraphFile {
        GraphFile {
            format_version: GRAPH_FORMAT_VERSION,
            s: c.params.s,
            t: c.params.t,
            q: c.params.q,
            variant: c.params.variant,
            seed: c.seed,
            m: c.graph.m(),
            n: c.graph.n(),
            polynomials: Some(c.polynomials.iter().map(MultiPoly::coeff_list).collect()),
            adjacency: (0..c.graph.m())
                .map(|i| encode_adjacency_row(&c.graph, i))
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("GraphFile serializes");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> Result<GraphFile> {
        let file: GraphFile = serde_json::from_str(text)?;
        if file.format_version != GRAPH_FORMAT_VERSION {
            return Err(Error::Format(format!(
                "unsupported format_version {}",
                file.format_version
            )));
        }
        if file.m < 1 || file.n < 1 {
            return Err(Error::Format("graph sides must be nonempty".into()));
        }
        if file.adjacency.len() != file.m {
            return Err(Error::Format(format!(
                "{} adjacency rows for m = {}",
                file.adjacency.len(),
                file.m
            )));
        }
        Ok(file)
    }

    /// Materializes the adjacency as a graph, with the file's header fields
    /// attached as provenance.
    pub fn to_graph(&self) -> Result<BipartiteGraph> {
        let mut g = BipartiteGraph::new(self.m, self.n);
        for (i, row) in self.adjacency.iter().enumerate() {
            for j in decode_adjacency_row(row, self.n)? {
                g.set(i, j);
            }
        }
        Ok(g.with_provenance(Provenance {
            s: self.s,
            t: self.t,
            q: self.q,
            variant: self.variant,
            seed: self.seed,
        }))
    }

    /// When polynomials are present, re-materializes every neighborhood and
    /// checks that it reproduces the adjacency exactly.
    pub fn verify_coherence(&self) -> Result<()> {
        let Some(polynomials) = &self.polynomials else {
            return Ok(());
        };
        if polynomials.len() != self.m {
            return Err(Error::Format(format!(
                "{} polynomials for m = {}",
                polynomials.len(),
                self.m
            )));
        }
        if !(2 <= self.s && self.s <= self.t) {
            return Err(Error::Format("polynomials require 2 <= s <= t".into()));
        }
        if !is_prime(self.q) {
            return Err(Error::Format(format!("q = {} is not prime", self.q)));
        }
        if (self.n as u128) != (self.q as u128).pow(self.s) {
            return Err(Error::Format(format!(
                "n = {} is not q^s = {}^{}",
                self.n, self.q, self.s
            )));
        }
        let nvars = match self.variant {
            Variant::GraphOfPolynomial => (self.s - 1) as usize,
            Variant::ZeroSet => self.s as usize,
        };
        let len = polynomials
            .first()
            .map(Vec::len)
            .ok_or_else(|| Error::Format("empty polynomial list".into()))?;
        let d = degree_for_len(nvars, len)?;
        let spec = FieldSpec::new(self.q, 1)?;
        let params = ConstructionParams {
            s: self.s,
            t: self.t,
            q: self.q,
            d,
            ell: self.m as u64,
            variant: self.variant,
            n: self.n as u128,
            lower_target_exponent: num_rational::Ratio::new(
                (d + 1) as u64,
                self.s as u64 * (self.s as u64 - 1),
            ),
        };
        for (i, list) in polynomials.iter().enumerate() {
            let poly = MultiPoly::from_coeff_list(&spec, nvars, d, list)?;
            let expected = decode_adjacency_row(&self.adjacency[i], self.n)?;
            let got: Vec<usize> = crate::construction::neighborhood_cols(&poly, &params)?
                .into_iter()
                .map(|c| c as usize)
                .collect();
            if got != expected {
                return Err(Error::Format(format!(
                    "row {} does not match its polynomial's neighborhood",
                    i
                )));
            }
        }
        Ok(())
    }
}

/// The degree cap whose monomial basis has exactly `len` members.
fn degree_for_len(nvars: usize, len: usize) -> Result<u32> {
    for d in 0..=512u32 {
        let count = monomial_count(nvars, d) as usize;
        if count == len {
            return Ok(d);
        }
        if count > len {
            break;
        }
    }
    Err(Error::Format(format!(
        "coefficient list of length {} matches no degree cap in {} variables",
        len, nvars
    )))
}

// ---------------------------------------------------------------------------
// Report CSV
// ---------------------------------------------------------------------------

/// Header of the report CSV, version 1. The leading columns are the
/// measurement fields; `variant` and `status` identify the run and record
/// row-level failures without aborting a batch.
pub const REPORT_CSV_HEADER: &str =
    "s,t,q,d,ell,m,n,edges,kst_upper,lower_target,ratio_lower,union_bound_ok,retries_total,variant,status";

/// One row of a batch report. Measurement fields are empty on failed runs.
#[derive(Clone, Debug, PartialEq)]
pub struct ReportRow {
    pub s: u32,
    pub t: u32,
    pub q: u64,
    pub d: Option<u32>,
    pub ell: Option<u64>,
    pub m: Option<u64>,
    pub n: Option<u128>,
    pub edges: Option<u64>,
    pub kst_upper: Option<u128>,
    pub lower_target: Option<f64>,
    pub ratio_lower: Option<f64>,
    pub union_bound_ok: Option<bool>,
    pub retries_total: Option<u64>,
    pub variant: Variant,
    pub status: String,
}

fn cell<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(T::to_string).unwrap_or_default()
}

impl ReportRow {
    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.s,
            self.t,
            self.q,
            cell(&self.d),
            cell(&self.ell),
            cell(&self.m),
            cell(&self.n),
            cell(&self.edges),
            cell(&self.kst_upper),
            cell(&self.lower_target),
            cell(&self.ratio_lower),
            cell(&self.union_bound_ok),
            cell(&self.retries_total),
            self.variant,
            self.status
        )
    }
}

pub fn report_to_csv(rows: &[ReportRow]) -> String {
    let mut out = String::from(REPORT_CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.csv_line());
        out.push('\n');
    }
    out
}

// ---------------------------------------------------------------------------
// Grid files
// ---------------------------------------------------------------------------

/// One requested run in a grid file: `s,t,q,variant,seed` per line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridEntry {
    pub s: u32,
    pub t: u32,
    pub q: u64,
    pub variant: Variant,
    pub seed: u64,
}

/// Parses a grid file. Blank lines and lines starting with '#' are
/// skipped; anything else must be five comma-separated fields. Semantic
/// problems (s > t, composite q) are left to the runner, which records
/// them as failed rows rather than aborting.
pub fn parse_grid(text: &str) -> Result<Vec<GridEntry>> {
    let mut entries = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 5 {
            return Err(Error::Format(format!(
                "grid line {}: expected 5 fields, got {}",
                lineno + 1,
                fields.len()
            )));
        }
        let parse_int = |what: &str, field: &str| -> Result<u64> {
            field.parse::<u64>().map_err(|_| {
                Error::Format(format!(
                    "grid line {}: {} '{}' is not an integer",
                    lineno + 1,
                    what,
                    field
                ))
            })
        };
        entries.push(GridEntry {
            s: parse_int("s", fields[0])? as u32,
            t: parse_int("t", fields[1])? as u32,
            q: parse_int("q", fields[2])?,
            variant: fields[3].parse()?,
            seed: parse_int("seed", fields[4])?,
        });
    }
    Ok(entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::build;
    use proptest::prelude::*;

    #[test]
    fn hex_row_golden_cases() {
        let mut g = BipartiteGraph::new(1, 5);
        g.set(0, 0);
        g.set(0, 4);
        assert_eq!(encode_adjacency_row(&g, 0), "11");
        assert_eq!(decode_adjacency_row("11", 5).unwrap(), vec![0, 4]);

        let mut g = BipartiteGraph::new(1, 4);
        for j in 0..4 {
            g.set(0, j);
        }
        assert_eq!(encode_adjacency_row(&g, 0), "f");

        let g = BipartiteGraph::new(1, 8);
        assert_eq!(encode_adjacency_row(&g, 0), "00");
    }

    #[test]
    fn hex_row_rejects_malformed() {
        assert!(decode_adjacency_row("1", 5).is_err()); // too short
        assert!(decode_adjacency_row("111", 5).is_err()); // too long
        assert!(decode_adjacency_row("1g", 5).is_err()); // not hex
        assert!(decode_adjacency_row("1F", 5).is_err()); // uppercase
                                                         // Bit set at column 5 with n = 5.
        assert!(decode_adjacency_row("12", 5).is_err());
        assert!(decode_adjacency_row("21", 5).is_ok());
    }

    proptest! {
        #[test]
        fn hex_round_trip(cols in proptest::collection::btree_set(0usize..37, 0..20)) {
            let n = 37;
            let mut g = BipartiteGraph::new(1, n);
            for &j in &cols {
                g.set(0, j);
            }
            let encoded = encode_adjacency_row(&g, 0);
            prop_assert_eq!(encoded.len(), n.div_ceil(4));
            let decoded = decode_adjacency_row(&encoded, n).unwrap();
            prop_assert_eq!(decoded, cols.into_iter().collect::<Vec<_>>());
        }
    }

    #[test]
    fn graph_file_round_trip() {
        let c = build(2, 2, 5, Variant::GraphOfPolynomial, 7, 200).unwrap();
        let file = GraphFile::from_construction(&c);
        assert_eq!((file.m, file.n), (12, 25));
        let json = file.to_json();
        let parsed = GraphFile::from_json(&json).unwrap();
        assert_eq!(parsed, file);
        // Byte-identical re-serialization.
        assert_eq!(parsed.to_json(), json);
        // The graph survives the trip.
        let g = parsed.to_graph().unwrap();
        assert_eq!(g.edge_count(), c.graph.edge_count());
        for i in 0..g.m() {
            for j in 0..g.n() {
                assert_eq!(g.get(i, j), c.graph.get(i, j));
            }
        }
        assert_eq!(g.provenance().unwrap().seed, 7);
    }

    #[test]
    fn coherence_checks_polynomials() {
        let c = build(3, 4, 7, Variant::GraphOfPolynomial, 1, 200).unwrap();
        let mut file = GraphFile::from_construction(&c);
        file.verify_coherence().unwrap();

        // Flip one adjacency bit: coherence must fail.
        let mut g = c.graph.clone();
        let flip_col = if g.get(0, 0) { 0 } else { 1 };
        let mut g2 = BipartiteGraph::new(g.m(), g.n());
        for i in 0..g.m() {
            for j in 0..g.n() {
                let bit = if i == 0 && j == flip_col {
                    !g.get(i, j)
                } else {
                    g.get(i, j)
                };
                if bit {
                    g2.set(i, j);
                }
            }
        }
        g = g2;
        file.adjacency[0] = encode_adjacency_row(&g, 0);
        assert!(file.verify_coherence().is_err());
    }

    #[test]
    fn coherence_zero_set_variant() {
        let c = build(2, 3, 5, Variant::ZeroSet, 9, 200).unwrap();
        let file = GraphFile::from_construction(&c);
        file.verify_coherence().unwrap();
    }

    #[test]
    fn from_json_validates_shape() {
        let c = build(2, 2, 5, Variant::GraphOfPolynomial, 7, 200).unwrap();
        let mut file = GraphFile::from_construction(&c);
        file.adjacency.pop();
        let json = file.to_json();
        assert!(GraphFile::from_json(&json).is_err());
        assert!(GraphFile::from_json("{ truncated").is_err());
    }

    #[test]
    fn report_csv_shape() {
        let row = ReportRow {
            s: 2,
            t: 2,
            q: 5,
            d: Some(1),
            ell: Some(12),
            m: Some(12),
            n: Some(25),
            edges: Some(60),
            kst_upper: Some(75),
            lower_target: Some(60.0),
            ratio_lower: Some(1.0),
            union_bound_ok: Some(true),
            retries_total: Some(0),
            variant: Variant::GraphOfPolynomial,
            status: "ok".into(),
        };
        let failed = ReportRow {
            s: 3,
            t: 2,
            q: 5,
            d: None,
            ell: None,
            m: None,
            n: None,
            edges: None,
            kst_upper: None,
            lower_target: None,
            ratio_lower: None,
            union_bound_ok: None,
            retries_total: None,
            variant: Variant::GraphOfPolynomial,
            status: "invalid_params".into(),
        };
        let csv = report_to_csv(&[row, failed]);
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), REPORT_CSV_HEADER);
        assert_eq!(
            lines.next().unwrap(),
            "2,2,5,1,12,12,25,60,75,60,1,true,0,graph,ok"
        );
        assert_eq!(
            lines.next().unwrap(),
            "3,2,5,,,,,,,,,,,graph,invalid_params"
        );
    }

    #[test]
    fn grid_parse() {
        let text = "# acceptance configurations\n2,2,5,graph,1\n\n 3, 4, 7, zeroset, 9 \n";
        let entries = parse_grid(text).unwrap();
        assert_eq!(entries.len(), 2);
        assert_eq!(
            entries[0],
            GridEntry {
                s: 2,
                t: 2,
                q: 5,
                variant: Variant::GraphOfPolynomial,
                seed: 1
            }
        );
        assert_eq!(entries[1].variant, Variant::ZeroSet);

        assert!(parse_grid("2,2,5,graph").is_err());
        assert!(parse_grid("2,2,five,graph,1").is_err());
        assert!(parse_grid("2,2,5,norm,1").is_err());
    }
}
