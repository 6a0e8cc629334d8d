//! The `ndi` command line.
//!
//! ```text
//! ndi mine    --input <fimi> --min-support <n|frac> [--algo ndi|apriori|closed|free|dfree]
//!             [--depth <k|inf>] [--border] [--emit-rep] [--out <path|->] [--stats <json>]
//! ndi derive  --rep <file> [--query <l1,l2,..>] [--out <path|->]
//! ndi compare --input <fimi> --min-support <n|frac>... [--depths 1,2,3,inf] [--no-time]
//! ```
//!
//! An itemset is frequent when its support is at least the threshold.
//! Exit codes: 0 success, 1 I/O, parse or corrupted-input error, 2 usage error.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::baselines::{self, RepresentationKind};
use crate::bounds::{self, Depth};
use crate::derive::{expand, Reconstructor};
use crate::format::{self, write_representation, write_results};
use crate::miner::{mine_ndi, MinSupport, MinerConfig};
use crate::{oracle, Error, Itemset, QueryAnswer, Result, TransactionDatabase};

#[derive(Debug, Parser)]
#[command(name = "ndi", version, about = "Frequent itemset mining through non-derivable itemsets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Mine a representation or all frequent itemsets from a FIMI file.
    Mine(MineArgs),
    /// Rebuild frequent itemsets from a representation file.
    Derive(DeriveArgs),
    /// Compare representation sizes and run times as CSV.
    Compare(CompareArgs),
    /// Print every deduction rule and the oracle range for one itemset.
    #[command(hide = true)]
    Oracle(OracleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    Ndi,
    Apriori,
    Closed,
    Free,
    Dfree,
}

#[derive(Debug, Args)]
struct MineArgs {
    #[arg(long)]
    input: PathBuf,
    /// Integer >= 1 (absolute) or fraction in (0,1) of the transactions, rounded up.
    #[arg(long, value_parser = parse_min_support)]
    min_support: MinSupport,
    #[arg(long, value_enum, default_value = "ndi")]
    algo: Algo,
    /// Maximum rule depth for `ndi`.
    #[arg(long, default_value = "inf", value_parser = parse_depth)]
    depth: Depth,
    /// Include the border for `free` and `dfree`.
    #[arg(long)]
    border: bool,
    /// Write the `ndi` result as a representation file readable by `derive`.
    #[arg(long)]
    emit_rep: bool,
    #[arg(long, default_value = "-")]
    out: String,
    /// Write a JSON run report.
    #[arg(long)]
    stats: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct DeriveArgs {
    #[arg(long)]
    rep: PathBuf,
    #[arg(long, default_value = "-")]
    out: String,
    /// Comma-separated item labels.
    #[arg(long)]
    query: Option<String>,
}

#[derive(Debug, Args)]
struct CompareArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_parser = parse_min_support, required = true)]
    min_support: Vec<MinSupport>,
    #[arg(long, default_value = "1,2,3,inf", value_delimiter = ',', value_parser = parse_depth)]
    depths: Vec<Depth>,
    /// Leave the time column empty so output is reproducible.
    #[arg(long)]
    no_time: bool,
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Debug, Args)]
struct OracleArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    itemset: String,
    #[arg(long, default_value = "inf", value_parser = parse_depth)]
    depth: Depth,
}

fn parse_min_support(s: &str) -> std::result::Result<MinSupport, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_depth(s: &str) -> std::result::Result<Depth, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Machine-readable summary of one `mine` run.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub input: String,
    pub algo: String,
    pub threshold_abs: u64,
    pub threshold_frac: f64,
    pub depth: serde_json::Value,
    pub levels: Vec<LevelRow>,
    pub totals: Totals,
    pub phases: Phases,
}

#[derive(Debug, Serialize)]
pub struct LevelRow {
    pub level: usize,
    pub candidates: usize,
    pub ndis: usize,
    pub avg_width: f64,
    pub scan_ms: f64,
    pub generated: usize,
    pub bounds_ms: f64,
}

#[derive(Debug, Serialize)]
pub struct Totals {
    pub time_ms: f64,
    pub scans: usize,
    pub emitted: usize,
}

#[derive(Debug, Default, Serialize)]
pub struct Phases {
    pub scan_ms: f64,
    pub bounds_ms: f64,
    pub derive_ms: f64,
}

/// Runs the command line with `args` (program name first) and returns the
/// process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let result = match cli.command {
        Command::Mine(args) => cmd_mine(&args, stdout),
        Command::Derive(args) => cmd_derive(&args, stdout),
        Command::Compare(args) => cmd_compare(&args, stdout),
        Command::Oracle(args) => cmd_oracle(&args, stdout),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            match e {
                Error::InvalidArgument(_) => 2,
                _ => 1,
            }
        }
    }
}

fn with_output(target: &str, stdout: &mut dyn Write, body: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    if target == "-" {
        body(stdout)?;
        stdout.flush()?;
    } else {
        let mut file = BufWriter::new(File::create(target)?);
        body(&mut file)?;
        file.flush()?;
    }
    Ok(())
}

fn ms(since: Instant) -> f64 {
    since.elapsed().as_secs_f64() * 1e3
}

fn cmd_mine(args: &MineArgs, stdout: &mut dyn Write) -> Result<()> {
    let db = TransactionDatabase::from_path(&args.input)?;
    let threshold = args.min_support.absolute(db.len());
    let started = Instant::now();
    let mut phases = Phases::default();
    let mut levels = Vec::new();
    let mut emitted = 0;

    let label = |i: u32| db.label(i);
    match args.algo {
        Algo::Ndi => {
            let cfg = MinerConfig {
                min_support: args.min_support,
                max_depth: args.depth,
            };
            let rep = mine_ndi(&db, &cfg);
            for l in &rep.level_stats {
                phases.scan_ms += l.scan_ms;
                phases.bounds_ms += l.bounds_ms;
                levels.push(LevelRow {
                    level: l.level,
                    candidates: l.candidates,
                    ndis: l.ndis,
                    avg_width: l.avg_width,
                    scan_ms: l.scan_ms,
                    generated: l.generated,
                    bounds_ms: l.bounds_ms,
                });
            }
            with_output(&args.out, stdout, |w| {
                emitted = if args.emit_rep {
                    write_representation(w, &rep)?
                } else {
                    write_results(w, rep.entries.iter().map(|(k, &v)| (k, v)), label)?
                };
                Ok(())
            })?;
        }
        algo => {
            let members = match algo {
                Algo::Apriori => baselines::mine_apriori(&db, threshold),
                Algo::Closed => baselines::mine_closed(&db, threshold).members,
                Algo::Free => baselines::mine_free(&db, threshold, args.border).members,
                Algo::Dfree => baselines::mine_dfree(&db, threshold, args.border).members,
                Algo::Ndi => unreachable!(),
            };
            phases.scan_ms = ms(started);
            with_output(&args.out, stdout, |w| {
                emitted = write_results(w, members.iter().map(|(k, &v)| (k, v)), label)?;
                Ok(())
            })?;
        }
    }

    if let Some(path) = &args.stats {
        let report = RunReport {
            input: args.input.display().to_string(),
            algo: format!("{:?}", args.algo).to_lowercase(),
            threshold_abs: threshold,
            threshold_frac: args.min_support.fraction(db.len()),
            depth: match (args.algo, args.depth) {
                (Algo::Ndi, Depth::Limited(k)) => k.into(),
                (Algo::Ndi, Depth::Unbounded) => "inf".into(),
                _ => serde_json::Value::Null,
            },
            levels,
            totals: Totals {
                time_ms: ms(started),
                scans: db.passes(),
                emitted,
            },
            phases,
        };
        write_json(path, &report)?;
    }
    Ok(())
}

fn write_json(path: &Path, value: &impl Serialize) -> Result<()> {
    let mut file = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut file, value).map_err(std::io::Error::from)?;
    writeln!(file)?;
    file.flush()?;
    Ok(())
}

fn cmd_derive(args: &DeriveArgs, stdout: &mut dyn Write) -> Result<()> {
    let rep = format::read_representation(BufReader::new(File::open(&args.rep)?))?;
    if let Some(query) = &args.query {
        let labels = format::parse_label_list(query)?;
        let answer = match labels.iter().map(|&l| rep.item(l)).collect::<Option<Itemset>>() {
            Some(set) => Reconstructor::new(&rep)?.query(&set)?,
            None => QueryAnswer::Infrequent,
        };
        return with_output(&args.out, stdout, |w| {
            match answer {
                QueryAnswer::Frequent(s) => writeln!(w, "FREQUENT {s}")?,
                QueryAnswer::Infrequent => writeln!(w, "INFREQUENT")?,
            }
            Ok(())
        });
    }
    let result = expand(&rep)?;
    with_output(&args.out, stdout, |w| {
        write_results(w, result.frequent.iter().map(|(k, &v)| (k, v)), |i| rep.label(i))?;
        Ok(())
    })
}

struct CompareRow {
    threshold: u64,
    kind: &'static str,
    depth: Option<Depth>,
    cardinality: usize,
    time_ms: f64,
    scans: usize,
}

fn cmd_compare(args: &CompareArgs, stdout: &mut dyn Write) -> Result<()> {
    let db = TransactionDatabase::from_path(&args.input)?;
    let mut rows = Vec::new();
    for min_support in &args.min_support {
        let threshold = min_support.absolute(db.len());
        let mut timed = |kind: RepresentationKind, f: &dyn Fn() -> usize| {
            let (passes, started) = (db.passes(), Instant::now());
            let cardinality = f();
            rows.push(CompareRow {
                threshold,
                kind: kind.as_str(),
                depth: None,
                cardinality,
                time_ms: ms(started),
                scans: db.passes() - passes,
            });
        };
        timed(RepresentationKind::AllFrequent, &|| baselines::mine_apriori(&db, threshold).len());
        timed(RepresentationKind::Closed, &|| baselines::mine_closed(&db, threshold).cardinality());
        timed(RepresentationKind::FreeBorder, &|| baselines::mine_free(&db, threshold, true).cardinality());
        timed(RepresentationKind::DFreeBorder, &|| baselines::mine_dfree(&db, threshold, true).cardinality());
        for &depth in &args.depths {
            let (passes, started) = (db.passes(), Instant::now());
            let rep = mine_ndi(
                &db,
                &MinerConfig {
                    min_support: MinSupport::Absolute(threshold),
                    max_depth: depth,
                },
            );
            let mine_ms = ms(started);
            let scans = db.passes() - passes;
            let derived = expand(&rep)?;
            let total_ms = ms(started);
            rows.push(CompareRow {
                threshold,
                kind: "ndi",
                depth: Some(depth),
                cardinality: rep.len(),
                time_ms: mine_ms,
                scans,
            });
            rows.push(CompareRow {
                threshold,
                kind: "ndi+di",
                depth: Some(depth),
                cardinality: derived.frequent.len(),
                time_ms: total_ms,
                scans,
            });
        }
    }
    with_output(&args.out, stdout, |w| {
        writeln!(w, "threshold,kind,depth,cardinality,time_ms,scans")?;
        for r in &rows {
            let depth = r.depth.map(|d| d.to_string()).unwrap_or_default();
            let time = if args.no_time {
                String::new()
            } else {
                format!("{:.3}", r.time_ms)
            };
            writeln!(w, "{},{},{},{},{},{}", r.threshold, r.kind, depth, r.cardinality, time, r.scans)?;
        }
        Ok(())
    })
}

fn cmd_oracle(args: &OracleArgs, stdout: &mut dyn Write) -> Result<()> {
    let db = TransactionDatabase::from_path(&args.input)?;
    let labels = format::parse_label_list(&args.itemset)?;
    let Some(target) = db.itemset_from_labels(&labels) else {
        writeln!(stdout, "itemset uses labels absent from the input; support is 0")?;
        return Ok(());
    };
    let name = |set: &Itemset| {
        let mut l: Vec<u64> = set.items().iter().map(|&i| db.label(i)).collect();
        l.sort_unstable();
        format!("{{{}}}", l.iter().map(u64::to_string).collect::<Vec<_>>().join(","))
    };
    let mut lookup = db.subset_supports(&target)?;
    let actual = lookup.remove(&target).unwrap_or(0);
    for rv in bounds::evaluate_rules(&target, &lookup, args.depth)? {
        let op = match rv.rule.kind {
            bounds::BoundKind::Lower => ">=",
            bounds::BoundKind::Upper => "<=",
        };
        writeln!(stdout, "R({}) depth={} s {op} {}", name(&rv.rule.base), rv.rule.depth, rv.value)?;
    }
    let iv = bounds::bounds(&target, &lookup, args.depth)?;
    writeln!(
        stdout,
        "bounds [{}, {}] via R({}) and R({})",
        iv.lower,
        iv.upper,
        name(&iv.lower_witness.base),
        name(&iv.upper_witness.base)
    )?;
    let range = oracle::feasible_support_range(&target, &lookup)?;
    writeln!(stdout, "feasible [{}, {}]", range.min_support, range.max_support)?;
    writeln!(stdout, "support {actual}")?;
    Ok(())
}
