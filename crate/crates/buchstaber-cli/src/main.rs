//! Command-line front end for the mod-p Buchstaber invariant library.
//!
//! Every subcommand shares one exit-code contract:
//!
//! - `0` — success: exact value, witness found, map valid, all checks pass;
//! - `1` — proven negative: no map exists, map degenerate, a check failed;
//! - `2` — usage or input error: bad arguments, malformed JSON, a guard
//!   refused the instance;
//! - `3` — inconclusive: a budget ran out before a verdict.

mod cache;
mod output;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;
use thiserror::Error;

use buchstaber::complexes::{
    count_minimal_nonsimplices, enumerate_minimal_nonsimplices, ComplexDescriptor, ComplexError,
};
use buchstaber::fplinalg::{FpError, Prime};
use buchstaber::invariants::{sp_skeleton, sp_universal, InvariantError, InvariantResult};
use buchstaber::registry;
use buchstaber::search::{
    check_nondegenerate, search_nondegenerate_map, CheckResult, SearchBudget, SearchError,
    SearchOptions, SearchOutcome, VertexMap,
};
use buchstaber::verify::{run_all, CriterionStatus, VerifyOptions, DEFAULT_SEED};

use cache::Cache;
use output::{csv_field, Format, TableCell};

/// Proven-negative verdicts: nonexistent map, degenerate map, failed check.
const EXIT_NEGATIVE: u8 = 1;
/// Usage and input errors, including guard refusals.
const EXIT_USAGE: u8 = 2;
/// A budget ran out before a verdict.
const EXIT_INCONCLUSIVE: u8 = 3;

/// `table` refuses `--max-m` beyond this without `--allow-large`.
const TABLE_GUARD: u32 = 9;

const EXIT_CODE_HELP: &str = "Exit codes:
  0  success: exact value, witness found, map valid, all checks pass
  1  proven negative: no map exists, map degenerate, a check failed
  2  usage or input error: bad arguments, malformed JSON, guard refused
  3  inconclusive: a budget ran out before a verdict";

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Fp(#[from] FpError),
}

/// Compute mod-p Buchstaber invariants of simplicial complexes.
#[derive(Parser, Debug)]
#[command(name = "buchstaber", version, after_help = EXIT_CODE_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Node and wall-clock limits for the exhaustive searches.
#[derive(Args, Debug, Clone, Copy)]
struct BudgetArgs {
    /// Abort a search after this many attempted vertex assignments.
    #[arg(long, value_name = "N")]
    budget_nodes: Option<u64>,
    /// Abort a search after this many wall-clock seconds.
    #[arg(long, value_name = "SECS")]
    budget_seconds: Option<f64>,
}

impl BudgetArgs {
    fn to_budget(self) -> SearchBudget {
        SearchBudget {
            max_nodes: self.budget_nodes,
            max_seconds: self.budget_seconds,
        }
    }
}

/// Result-cache controls shared by the invariant queries.
#[derive(Args, Debug, Clone)]
struct CacheArgs {
    /// Cache file (overrides the BUCHSTABER_CACHE environment variable and
    /// the XDG default).
    #[arg(long, value_name = "PATH")]
    cache: Option<PathBuf>,
    /// Neither read nor write the result cache.
    #[arg(long)]
    no_cache: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute s_p of the k-skeleton of the m-simplex, Δ^m_(k).
    Skeleton {
        /// The complex has m + 1 vertices.
        #[arg(long)]
        m: u32,
        /// Skeleton dimension: faces have at most k + 1 vertices.
        #[arg(long)]
        k: u32,
        /// Prime modulus of the invariant.
        #[arg(long)]
        p: u32,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        cache: CacheArgs,
        /// Write the witness map (when one exists) to this file as JSON.
        #[arg(long, value_name = "PATH")]
        witness: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Tabulate s_p(Δ^m_(k)) for all 1 ≤ m ≤ max-m, 0 ≤ k ≤ m.
    Table {
        /// Prime modulus of the invariant.
        #[arg(long)]
        p: u32,
        /// Largest m to tabulate.
        #[arg(long, default_value_t = TABLE_GUARD)]
        max_m: u32,
        /// Permit --max-m beyond the guard of 9. Large tables can search
        /// for a very long time unless a budget is set.
        #[arg(long)]
        allow_large: bool,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        cache: CacheArgs,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Search for a nondegenerate simplicial map from a complex into X(F_p^r).
    SearchMap {
        /// Path to the source complex descriptor (JSON).
        source: PathBuf,
        /// Prime of the target field.
        #[arg(long)]
        p: u32,
        /// Target rank: the codomain is X(F_p^r).
        #[arg(long)]
        r: u32,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Worker threads (single-worker searches are deterministic).
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Write the found witness map to this file as JSON instead of stdout.
        #[arg(long, value_name = "PATH")]
        witness: Option<PathBuf>,
    },
    /// Check a vertex map for nondegeneracy against a source complex.
    CheckMap {
        /// Path to the source complex descriptor (JSON).
        source: PathBuf,
        /// Path to the vertex map (JSON).
        #[arg(long, value_name = "PATH")]
        witness: PathBuf,
    },
    /// Count the minimal nonsimplices with j + 1 vertices of X(F_p^n).
    Count {
        /// Prime of the field.
        #[arg(long)]
        p: u32,
        /// Rank of the field: the complex is X(F_p^n).
        #[arg(long)]
        n: u32,
        /// Minimal nonsimplices have j + 1 vertices; requires 1 ≤ j ≤ n.
        #[arg(long)]
        j: u32,
        /// Also enumerate by brute force and report MATCH or MISMATCH.
        #[arg(long)]
        brute_force: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Compute s_q of the universal complex X(F_p^n).
    Universal {
        /// Field of the source complex X(F_p^n).
        #[arg(long)]
        p: u32,
        /// Rank of the source complex X(F_p^n).
        #[arg(long)]
        n: u32,
        /// Prime modulus of the invariant; defaults to p (the own-field value).
        #[arg(long)]
        q: Option<u32>,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        cache: CacheArgs,
        /// Write the witness map (when one exists) to this file as JSON.
        #[arg(long, value_name = "PATH")]
        witness: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Re-derive the published reference values and report one PASS/FAIL
    /// line per criterion; exits 0 only when every criterion passes.
    VerifyPaper {
        /// Skip the long exhaustive nonexistence runs, reporting the
        /// criteria that need them as SKIPPED.
        #[arg(long)]
        skip_slow: bool,
        /// Seed for the randomized checks; equal seeds draw equal cases.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Worker threads handed to every search.
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, CliError> {
    match command {
        Command::Skeleton {
            m,
            k,
            p,
            budget,
            cache,
            witness,
            format,
        } => cmd_skeleton(m, k, p, budget, &cache, witness.as_deref(), format),
        Command::Table {
            p,
            max_m,
            allow_large,
            budget,
            cache,
            format,
        } => cmd_table(p, max_m, allow_large, budget, &cache, format),
        Command::SearchMap {
            source,
            p,
            r,
            budget,
            threads,
            witness,
        } => cmd_search_map(&source, p, r, budget, threads, witness.as_deref()),
        Command::CheckMap { source, witness } => cmd_check_map(&source, &witness),
        Command::Count {
            p,
            n,
            j,
            brute_force,
            format,
        } => cmd_count(p, n, j, brute_force, format),
        Command::Universal {
            p,
            n,
            q,
            budget,
            cache,
            witness,
            format,
        } => cmd_universal(p, n, q, budget, &cache, witness.as_deref(), format),
        Command::VerifyPaper {
            skip_slow,
            seed,
            threads,
            format,
        } => cmd_verify_paper(skip_slow, seed, threads, format),
    }
}

fn cmd_skeleton(
    m: u32,
    k: u32,
    p: u32,
    budget: BudgetArgs,
    cache_args: &CacheArgs,
    witness_path: Option<&Path>,
    format: Format,
) -> Result<ExitCode, CliError> {
    let prime = Prime::new(p)?;
    let descriptor = ComplexDescriptor::skeleton(m, k)?;
    let result = cached_invariant(cache_args, &descriptor, prime, || {
        sp_skeleton(m, k, prime, budget.to_budget())
    })?;
    finish_invariant(&result, witness_path, format)
}

fn cmd_universal(
    p: u32,
    n: u32,
    q: Option<u32>,
    budget: BudgetArgs,
    cache_args: &CacheArgs,
    witness_path: Option<&Path>,
    format: Format,
) -> Result<ExitCode, CliError> {
    let source_prime = Prime::new(p)?;
    let modulus = Prime::new(q.unwrap_or(p))?;
    let descriptor = ComplexDescriptor::universal(source_prime, n)?;
    let result = cached_invariant(cache_args, &descriptor, modulus, || {
        sp_universal(source_prime, n, modulus, budget.to_budget())
    })?;
    finish_invariant(&result, witness_path, format)
}

fn cmd_table(
    p: u32,
    max_m: u32,
    allow_large: bool,
    budget: BudgetArgs,
    cache_args: &CacheArgs,
    format: Format,
) -> Result<ExitCode, CliError> {
    if max_m < 1 {
        return Err(CliError::Usage("--max-m must be at least 1".to_string()));
    }
    if max_m > TABLE_GUARD && !allow_large {
        return Err(CliError::Usage(format!(
            "--max-m {max_m} exceeds the guard of {TABLE_GUARD}; pass --allow-large to \
             proceed (large tables can search for a very long time unless a budget is set)"
        )));
    }
    let prime = Prime::new(p)?;
    let published = registry::published_skeleton_table(p);
    let mut cache =
        (!cache_args.no_cache).then(|| Cache::open(cache::resolve_path(cache_args.cache.clone())));

    let mut cells = Vec::new();
    for m in 1..=max_m {
        for k in 0..=m {
            let descriptor = ComplexDescriptor::skeleton(m, k)?;
            let result = match cache.as_ref().and_then(|c| c.lookup(&descriptor, prime)) {
                Some(hit) => hit,
                None => {
                    let computed = sp_skeleton(m, k, prime, budget.to_budget())?;
                    if let Some(open) = cache.as_mut() {
                        open.store(&computed);
                    }
                    computed
                }
            };
            cells.push(TableCell {
                m,
                k,
                lo: result.value.lo(),
                hi: result.value.hi(),
                exact: result.value.exact().is_some(),
                published: published.contains_key(&(m, k)),
            });
        }
    }
    if let Some(open) = cache {
        open.save();
    }

    print!(
        "{}",
        output::render_table(p, max_m, &cells, !published.is_empty(), format)
    );
    Ok(if cells.iter().all(|cell| cell.exact) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_INCONCLUSIVE)
    })
}

fn cmd_search_map(
    source: &Path,
    p: u32,
    r: u32,
    budget: BudgetArgs,
    threads: usize,
    witness_path: Option<&Path>,
) -> Result<ExitCode, CliError> {
    let descriptor = read_descriptor(source)?;
    let prime = Prime::new(p)?;
    let options = SearchOptions {
        budget: budget.to_budget(),
        workers: threads.max(1),
        symmetry_reduction: true,
    };
    let outcome = search_nondegenerate_map(&descriptor, prime, r, &options)?;
    let stats = outcome.stats();
    eprintln!(
        "search: {} nodes in {:?} with {} worker(s)",
        stats.nodes, stats.elapsed, stats.workers
    );
    match outcome {
        SearchOutcome::Found { map, .. } => {
            println!("found: nondegenerate map {descriptor} → X(F_{p}^{r})");
            match witness_path {
                Some(path) => {
                    write_text(path, &(map.to_json() + "\n"))?;
                    eprintln!("witness written to {}", path.display());
                }
                None => println!("{}", map.to_json()),
            }
            Ok(ExitCode::SUCCESS)
        }
        SearchOutcome::ExhaustedNone { .. } => {
            println!("exhausted: no nondegenerate map {descriptor} → X(F_{p}^{r}) exists");
            Ok(ExitCode::from(EXIT_NEGATIVE))
        }
        SearchOutcome::BudgetExceeded { .. } => {
            println!("inconclusive: the budget ran out before a verdict");
            Ok(ExitCode::from(EXIT_INCONCLUSIVE))
        }
    }
}

fn cmd_check_map(source: &Path, witness: &Path) -> Result<ExitCode, CliError> {
    let descriptor = read_descriptor(source)?;
    let map = VertexMap::from_json(&read_text(witness)?)?;
    match check_nondegenerate(&descriptor, &map)? {
        CheckResult::Nondegenerate => {
            println!(
                "nondegenerate: every maximal simplex of {descriptor} has a linearly \
                 independent image in X(F_{}^{})",
                map.prime().get(),
                map.r()
            );
            Ok(ExitCode::SUCCESS)
        }
        CheckResult::Degenerate { simplex } => {
            println!("degenerate: simplex {simplex:?} has a linearly dependent image");
            Ok(ExitCode::from(EXIT_NEGATIVE))
        }
    }
}

fn cmd_count(
    p: u32,
    n: u32,
    j: u32,
    brute_force: bool,
    format: Format,
) -> Result<ExitCode, CliError> {
    let prime = Prime::new(p)?;
    let count = count_minimal_nonsimplices(prime, n, j)?;
    // The brute-force oracle enumerates candidate subsets and refuses
    // oversized instances, which surfaces here as a usage error.
    let enumerated = if brute_force {
        Some(enumerate_minimal_nonsimplices(prime, n, j)?.len())
    } else {
        None
    };
    let verdict = enumerated.map(|found| {
        if found.to_string() == count.to_string() {
            "MATCH"
        } else {
            "MISMATCH"
        }
    });
    match format {
        Format::Md => {
            println!("{count}");
            if let (Some(found), Some(verdict)) = (enumerated, verdict) {
                println!("brute force: {found} ({verdict})");
            }
        }
        Format::Csv => {
            println!("p,n,j,count,brute_force,verdict");
            println!(
                "{p},{n},{j},{count},{},{}",
                enumerated
                    .map(|found| found.to_string())
                    .unwrap_or_default(),
                verdict.unwrap_or_default()
            );
        }
        Format::Json => {
            print!(
                "{}",
                output::pretty_json(&json!({
                    "p": p,
                    "n": n,
                    "j": j,
                    "count": count.to_string(),
                    "brute_force": enumerated,
                    "verdict": verdict,
                }))
            );
        }
    }
    Ok(if verdict == Some("MISMATCH") {
        ExitCode::from(EXIT_NEGATIVE)
    } else {
        ExitCode::SUCCESS
    })
}

fn cmd_verify_paper(
    skip_slow: bool,
    seed: u64,
    threads: usize,
    format: Format,
) -> Result<ExitCode, CliError> {
    let options = VerifyOptions {
        workers: threads.max(1),
        skip_slow,
        seed,
    };
    let reports = run_all(&options);
    match format {
        Format::Md => {
            for report in &reports {
                println!("{}", report.line());
            }
            let count_with =
                |status: CriterionStatus| reports.iter().filter(|r| r.status == status).count();
            println!(
                "summary: {} passed, {} failed, {} skipped",
                count_with(CriterionStatus::Pass),
                count_with(CriterionStatus::Fail),
                count_with(CriterionStatus::Skipped)
            );
        }
        Format::Csv => {
            println!("id,name,status,detail");
            for report in &reports {
                println!(
                    "{},{},{},{}",
                    report.id,
                    csv_field(report.name),
                    report.status,
                    csv_field(&report.detail)
                );
            }
        }
        Format::Json => {
            print!(
                "{}",
                output::pretty_json(&serde_json::to_value(&reports).expect("reports serialize"))
            );
        }
    }
    let failed = reports
        .iter()
        .any(|report| report.status == CriterionStatus::Fail);
    Ok(if failed {
        ExitCode::from(EXIT_NEGATIVE)
    } else {
        ExitCode::SUCCESS
    })
}

/// Answers an invariant query through the cache: exact hits are returned
/// relabeled as cached, misses run `compute`, and exact results are
/// persisted. `--no-cache` bypasses both directions.
fn cached_invariant(
    cache_args: &CacheArgs,
    descriptor: &ComplexDescriptor,
    p: Prime,
    compute: impl FnOnce() -> Result<InvariantResult, InvariantError>,
) -> Result<InvariantResult, CliError> {
    if cache_args.no_cache {
        return Ok(compute()?);
    }
    let mut cache = Cache::open(cache::resolve_path(cache_args.cache.clone()));
    if let Some(hit) = cache.lookup(descriptor, p) {
        return Ok(hit);
    }
    let result = compute()?;
    if cache.store(&result) {
        cache.save();
    }
    Ok(result)
}

/// Prints the result, writes the witness file when requested, and maps
/// exactness to the exit code (exact → 0, interval → 3).
fn finish_invariant(
    result: &InvariantResult,
    witness_path: Option<&Path>,
    format: Format,
) -> Result<ExitCode, CliError> {
    let written = match (witness_path, &result.certificate.witness) {
        (Some(path), Some(map)) => {
            write_text(path, &(map.to_json() + "\n"))?;
            Some(path)
        }
        (Some(path), None) => {
            eprintln!(
                "warning: no witness map available to write to {}",
                path.display()
            );
            None
        }
        _ => None,
    };
    print!("{}", output::render_invariant(result, written, format));
    Ok(if result.value.exact().is_some() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_INCONCLUSIVE)
    })
}

fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn read_descriptor(path: &Path) -> Result<ComplexDescriptor, CliError> {
    Ok(ComplexDescriptor::from_json(&read_text(path)?)?)
}
