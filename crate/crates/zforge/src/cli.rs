//! Subcommand implementations for the `zforge` binary.
//!
//! Exit codes: 0 on success, 1 on usage errors and malformed input, 2 on
//! construction or verification failures and exceeded budgets. Randomized
//! commands take `--seed`; when it is omitted a fresh seed is generated and
//! printed so the run stays reproducible. `ZFORGE_THREADS` caps the worker
//! pool (0 or unset picks the default).

use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use rand::Rng;
use serde::Serialize;

use crate::construction::{
    build_with_params, field_for_n, params_derive, params_with_overrides, Variant,
    DEFAULT_RETRY_BUDGET,
};
use crate::error::{Error, Result};
use crate::format::{parse_grid, report_to_csv, GraphFile, GridEntry, ReportRow};
use crate::gf::is_prime;
use crate::graph::{density_report, kst_free, DensityReport, Verdict};
use crate::oracle::{z_exact_with_budget, DEFAULT_NODE_BUDGET};

#[derive(Parser)]
#[command(
    name = "zforge",
    version,
    about = "K_{s,t}-free bipartite graphs from random polynomials over finite fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

fn parse_variant(s: &str) -> std::result::Result<Variant, String> {
    s.parse()
        .map_err(|_| format!("expected 'graph' or 'zeroset', got '{s}'"))
}

#[derive(Subcommand)]
enum Command {
    /// Build a K_{s,t}-free graph over F_q and write it as a GraphFile.
    Construct {
        #[arg(long)]
        s: u32,
        #[arg(long)]
        t: u32,
        /// Field order; must be prime.
        #[arg(long)]
        q: u64,
        #[arg(long, value_parser = parse_variant, default_value = "graph")]
        variant: Variant,
        /// Override the derived degree cap.
        #[arg(long)]
        d: Option<u32>,
        /// Rng seed; generated and printed when omitted.
        #[arg(long)]
        seed: Option<u64>,
        /// Candidate budget per vertex.
        #[arg(long, default_value_t = DEFAULT_RETRY_BUDGET)]
        retries: u32,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check a GraphFile for K_{s,t}-freeness; exit 2 with the witness if
    /// the pattern is present.
    Verify {
        #[arg(long)]
        s: u32,
        #[arg(long)]
        t: u32,
        #[arg(long = "in")]
        input: PathBuf,
        /// Also print a density report.
        #[arg(long)]
        report: bool,
    },
    /// Print the largest edge count consistent with the double count.
    Bound {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        s: u32,
        #[arg(long)]
        t: u32,
    },
    /// Compute z(m, n; s, t) exactly by branch-and-bound.
    Oracle {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        s: u32,
        #[arg(long)]
        t: u32,
        /// Node budget; on exhaustion the best lower bound is printed.
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
    /// Derive construction parameters for (s, t) at a given q, or pick q
    /// for a target column count n.
    Params {
        #[arg(long)]
        s: u32,
        #[arg(long)]
        t: u32,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        n: Option<u128>,
    },
    /// Run every (s,t,q,variant,seed) line of a grid file and write a CSV.
    Report {
        #[arg(long)]
        grid: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

/// Entry point for the binary; returns the process exit code.
pub fn run() -> i32 {
    configure_threads();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            exit_code_for(&err)
        }
    }
}

fn configure_threads() {
    if let Ok(value) = std::env::var("ZFORGE_THREADS") {
        match value.parse::<usize>() {
            Ok(0) => {}
            Ok(threads) => {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build_global();
            }
            Err(_) => eprintln!("warning: ignoring non-numeric ZFORGE_THREADS={value}"),
        }
    }
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::ConstructionFailed { .. } | Error::BudgetExceeded { .. } => 2,
        _ => 1,
    }
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Format(msg.into())
}

fn dispatch(command: Command) -> Result<i32> {
    match command {
        Command::Construct {
            s,
            t,
            q,
            variant,
            d,
            seed,
            retries,
            out,
        } => cmd_construct(s, t, q, variant, d, seed, retries, out),
        Command::Verify {
            s,
            t,
            input,
            report,
        } => cmd_verify(s, t, input, report),
        Command::Bound { m, n, s, t } => cmd_bound(m, n, s, t),
        Command::Oracle { m, n, s, t, budget } => cmd_oracle(m, n, s, t, budget),
        Command::Params { s, t, q, n } => cmd_params(s, t, q, n),
        Command::Report { grid, out } => cmd_report(grid, out),
    }
}

fn check_pattern(s: u32, t: u32) -> Result<()> {
    if !(2 <= s && s <= t) {
        return Err(usage(format!("need 2 <= s <= t, got s={s} t={t}")));
    }
    Ok(())
}

fn check_prime_q(q: u64) -> Result<()> {
    if !is_prime(q) {
        return Err(usage(format!(
            "q = {q} is not prime; constructions use prime fields only"
        )));
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_construct(
    s: u32,
    t: u32,
    q: u64,
    variant: Variant,
    d: Option<u32>,
    seed: Option<u64>,
    retries: u32,
    out: PathBuf,
) -> Result<i32> {
    check_pattern(s, t)?;
    check_prime_q(q)?;
    if retries < 1 {
        return Err(usage("--retries must be at least 1"));
    }
    let seed = seed.unwrap_or_else(|| {
        let generated = rand::thread_rng().gen();
        eprintln!("generated seed: {generated}");
        generated
    });
    let params = params_with_overrides(s, t, q, variant, d, None)?;
    let construction = build_with_params(&params, seed, retries)?;
    let file = GraphFile::from_construction(&construction);
    fs::write(&out, file.to_json())?;
    eprintln!(
        "wrote m={} n={} edges={} (seed {}) to {}",
        file.m,
        file.n,
        construction.graph.edge_count(),
        seed,
        out.display()
    );
    Ok(0)
}

#[derive(Serialize)]
struct WitnessOut {
    rows: Vec<usize>,
    cols: Vec<usize>,
}

#[derive(Serialize)]
struct ReportOut {
    edges: u64,
    kst_upper: serde_json::Value,
    lower_target: f64,
    ratio_lower: f64,
    double_count_lhs: String,
    double_count_rhs: String,
    double_count_holds: bool,
}

impl ReportOut {
    fn from(report: &DensityReport) -> ReportOut {
        ReportOut {
            edges: report.edges,
            kst_upper: u128_json(report.kst_upper),
            lower_target: report.lower_target,
            ratio_lower: report.ratio_lower,
            double_count_lhs: report.double_count_lhs.to_string(),
            double_count_rhs: report.double_count_rhs.to_string(),
            double_count_holds: report.double_count_holds,
        }
    }
}

#[derive(Serialize)]
struct VerifyOut {
    free: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<WitnessOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    report: Option<ReportOut>,
}

fn u128_json(v: u128) -> serde_json::Value {
    match u64::try_from(v) {
        Ok(small) => serde_json::Value::from(small),
        Err(_) => serde_json::Value::from(v.to_string()),
    }
}

fn cmd_verify(s: u32, t: u32, input: PathBuf, report: bool) -> Result<i32> {
    if s < 1 || t < 1 {
        return Err(usage("need s >= 1 and t >= 1"));
    }
    if report {
        check_pattern(s, t)?;
    }
    let text = fs::read_to_string(&input)?;
    let file = GraphFile::from_json(&text)?;
    file.verify_coherence()?;
    let graph = file.to_graph()?;
    let verdict = kst_free(&graph, s, t);
    let out = VerifyOut {
        free: verdict.is_free(),
        witness: match &verdict {
            Verdict::Free => None,
            Verdict::Witness { rows, cols } => Some(WitnessOut {
                rows: rows.clone(),
                cols: cols.clone(),
            }),
        },
        report: report.then(|| ReportOut::from(&density_report(&graph, s, t))),
    };
    println!("{}", serde_json::to_string_pretty(&out)?);
    Ok(if verdict.is_free() { 0 } else { 2 })
}

#[derive(Serialize)]
struct BoundOut {
    upper: serde_json::Value,
}

fn cmd_bound(m: u64, n: u64, s: u32, t: u32) -> Result<i32> {
    check_pattern(s, t)?;
    if m < 1 || n < 1 {
        return Err(usage("need m >= 1 and n >= 1"));
    }
    let upper = crate::graph::kst_upper_bound(m, n, s, t);
    println!(
        "{}",
        serde_json::to_string(&BoundOut {
            upper: u128_json(upper)
        })?
    );
    Ok(0)
}

#[derive(Serialize)]
struct OracleOut {
    z: u64,
    exact: bool,
}

fn cmd_oracle(m: u64, n: u64, s: u32, t: u32, budget: u64) -> Result<i32> {
    check_pattern(s, t)?;
    if m < 1 || n < 1 {
        return Err(usage("need m >= 1 and n >= 1"));
    }
    let result = z_exact_with_budget(m as usize, n as usize, s, t, budget)?;
    println!(
        "{}",
        serde_json::to_string(&OracleOut {
            z: result.value,
            exact: result.exact
        })?
    );
    Ok(if result.exact { 0 } else { 2 })
}

#[derive(Serialize)]
struct ParamsOut {
    d: u32,
    ell: u64,
    n: serde_json::Value,
}

#[derive(Serialize)]
struct ParamsForNOut {
    q: u64,
    n_used: serde_json::Value,
    d: u32,
    ell: u64,
}

fn cmd_params(s: u32, t: u32, q: Option<u64>, n: Option<u128>) -> Result<i32> {
    check_pattern(s, t)?;
    match (q, n) {
        (Some(q), None) => {
            check_prime_q(q)?;
            let params = params_derive(s, t, q, Variant::GraphOfPolynomial)?;
            println!(
                "{}",
                serde_json::to_string(&ParamsOut {
                    d: params.d,
                    ell: params.ell,
                    n: u128_json(params.n)
                })?
            );
            Ok(0)
        }
        (None, Some(n)) => {
            let (q, n_used) = field_for_n(n, s)?;
            let params = params_derive(s, t, q, Variant::GraphOfPolynomial)?;
            println!(
                "{}",
                serde_json::to_string(&ParamsForNOut {
                    q,
                    n_used: u128_json(n_used),
                    d: params.d,
                    ell: params.ell
                })?
            );
            Ok(0)
        }
        _ => Err(usage("exactly one of --q or --n is required")),
    }
}

fn cmd_report(grid: PathBuf, out: PathBuf) -> Result<i32> {
    let text = fs::read_to_string(&grid)?;
    let entries = parse_grid(&text)?;
    let rows: Vec<ReportRow> = entries.iter().map(report_row).collect();
    fs::write(&out, report_to_csv(&rows))?;
    eprintln!("wrote {} rows to {}", rows.len(), out.display());
    Ok(0)
}

/// One grid entry, run to completion; failures become a status code in the
/// row instead of aborting the batch.
fn report_row(entry: &GridEntry) -> ReportRow {
    let mut row = ReportRow {
        s: entry.s,
        t: entry.t,
        q: entry.q,
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
        variant: entry.variant,
        status: String::new(),
    };
    if !(2 <= entry.s && entry.s <= entry.t) {
        row.status = "invalid_params".into();
        return row;
    }
    if !is_prime(entry.q) {
        row.status = "q_not_prime".into();
        return row;
    }
    let params = match params_derive(entry.s, entry.t, entry.q, entry.variant) {
        Ok(params) => params,
        Err(Error::EllTooSmall { .. }) => {
            row.status = "ell_too_small".into();
            return row;
        }
        Err(_) => {
            row.status = "params_error".into();
            return row;
        }
    };
    row.d = Some(params.d);
    row.ell = Some(params.ell);
    row.n = Some(params.n);
    row.union_bound_ok = Some(params.union_bound_ok());
    let construction = match build_with_params(&params, entry.seed, DEFAULT_RETRY_BUDGET) {
        Ok(c) => c,
        Err(Error::ConstructionFailed { .. }) => {
            row.status = "construction_failed".into();
            return row;
        }
        Err(Error::BudgetExceeded { .. }) => {
            row.status = "budget_exceeded".into();
            return row;
        }
        Err(_) => {
            row.status = "build_error".into();
            return row;
        }
    };
    if !kst_free(&construction.graph, entry.s, entry.t).is_free() {
        // Unreachable for accepted builds; recorded rather than trusted.
        row.status = "not_free".into();
        return row;
    }
    let report = density_report(&construction.graph, entry.s, entry.t);
    row.m = Some(construction.graph.m() as u64);
    row.edges = Some(report.edges);
    row.kst_upper = Some(report.kst_upper);
    row.lower_target = Some(report.lower_target);
    row.ratio_lower = Some(report.ratio_lower);
    row.retries_total = Some(construction.retries_total());
    row.status = "ok".into();
    row
}
