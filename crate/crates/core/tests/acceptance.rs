//! Exit criteria. Each test prints one `criterion N: PASS|FAIL` line; run with
//! `cargo test -p ndi --test acceptance -- --nocapture` to see them.

mod common;

use std::collections::HashMap;
use std::time::{Duration, Instant};

use ndi::baselines::{self, RepresentationKind};
use ndi::bounds::{self, BoundKind, Depth};
use ndi::synth::{correlated_database, CorrelatedConfig};
use ndi::{cli, expand, mine_ndi, oracle, FractionVector, Itemset, MinSupport, MinerConfig, TransactionDatabase};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const A: u32 = 0;
const B: u32 = 1;
const C: u32 = 2;
const D: u32 = 3;

const THRESHOLDS: [MinSupport; 4] = [
    MinSupport::Absolute(1),
    MinSupport::Absolute(2),
    MinSupport::Absolute(3),
    MinSupport::Fraction(0.25),
];
const DEPTHS: [Depth; 4] = [Depth::Limited(1), Depth::Limited(2), Depth::Limited(3), Depth::Unbounded];

fn report(n: u32, what: &str, outcome: Result<String, String>, elapsed: Duration, limit: Option<Duration>) {
    let outcome = match (outcome, limit) {
        (Ok(_), Some(limit)) if elapsed >= limit => Err(format!("took {elapsed:?}, limit {limit:?}")),
        (o, _) => o,
    };
    match &outcome {
        Ok(detail) => println!("criterion {n}: PASS  {what} ({detail}; {elapsed:.2?})"),
        Err(detail) => println!("criterion {n}: FAIL  {what} ({detail}; {elapsed:.2?})"),
    }
    if let Err(detail) = outcome {
        panic!("criterion {n} failed: {detail}");
    }
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn example_lookup() -> HashMap<Itemset, u64> {
    let db = common::example1();
    let abcd = Itemset::from([A, B, C, D]);
    let mut lookup = db.subset_supports(&abcd).unwrap();
    lookup.remove(&abcd);
    lookup
}

fn proper_subset_supports(db: &TransactionDatabase, target: &Itemset) -> HashMap<Itemset, u64> {
    let mut lookup = db.subset_supports(target).unwrap();
    lookup.remove(target);
    lookup
}

#[test]
fn criterion_1_example_exactness() {
    let started = Instant::now();
    let outcome = (|| {
        let lookup = example_lookup();
        let abcd = Itemset::from([A, B, C, D]);
        let iv = bounds::bounds(&abcd, &lookup, Depth::Unbounded).map_err(|e| e.to_string())?;
        ensure!((iv.lower, iv.upper) == (1, 1), "bounds [{}, {}]", iv.lower, iv.upper);
        let rules = bounds::evaluate_rules(&abcd, &lookup, Depth::Unbounded).map_err(|e| e.to_string())?;
        let value_of = |base: Itemset| rules.iter().find(|r| r.rule.base == base).unwrap().clone();
        let ac = value_of(Itemset::from([A, C]));
        ensure!(ac.rule.kind == BoundKind::Lower && ac.value == iv.lower, "R(AC) gives {}", ac.value);
        let a = value_of(Itemset::from([A]));
        ensure!(a.rule.kind == BoundKind::Upper && a.value == iv.upper, "R(A) gives {}", a.value);
        let shallow = bounds::bounds(&abcd, &lookup, Depth::Limited(1)).map_err(|e| e.to_string())?;
        ensure!(shallow.upper == 2, "depth-1 upper bound {}", shallow.upper);
        Ok("[1,1] via R(AC) and R(A); depth-1 upper 2".to_string())
    })();
    report(1, "example exactness", outcome, started.elapsed(), Some(Duration::from_secs(1)));
}

/// The sixteen rules for ABCD as signed sums, transcribed term by term.
const ABCD_RULES: [(&str, BoundKind, &str); 16] = [
    ("", BoundKind::Lower, "+ABC +ABD +ACD +BCD -AB -AC -AD -BC -BD -CD +A +B +C +D -"),
    ("A", BoundKind::Upper, "+A -AB -AC -AD +ABC +ABD +ACD"),
    ("B", BoundKind::Upper, "+B -AB -BC -BD +ABC +ABD +BCD"),
    ("C", BoundKind::Upper, "+C -AC -BC -CD +ABC +ACD +BCD"),
    ("D", BoundKind::Upper, "+D -AD -BD -CD +ABD +ACD +BCD"),
    ("AB", BoundKind::Lower, "+ABC +ABD -AB"),
    ("AC", BoundKind::Lower, "+ABC +ACD -AC"),
    ("AD", BoundKind::Lower, "+ABD +ACD -AD"),
    ("BC", BoundKind::Lower, "+ABC +BCD -BC"),
    ("BD", BoundKind::Lower, "+ABD +BCD -BD"),
    ("CD", BoundKind::Lower, "+ACD +BCD -CD"),
    ("ABC", BoundKind::Upper, "+ABC"),
    ("ABD", BoundKind::Upper, "+ABD"),
    ("ACD", BoundKind::Upper, "+ACD"),
    ("BCD", BoundKind::Upper, "+BCD"),
    ("ABCD", BoundKind::Lower, ""),
];

fn letters(name: &str) -> Itemset {
    name.chars().map(|c| c as u32 - 'A' as u32).collect()
}

#[test]
fn criterion_2_rule_table() {
    let started = Instant::now();
    let outcome = (|| {
        let lookup = example_lookup();
        let abcd = Itemset::from([A, B, C, D]);
        let rules = bounds::evaluate_rules(&abcd, &lookup, Depth::Unbounded).map_err(|e| e.to_string())?;
        ensure!(rules.len() == 16, "{} rules", rules.len());
        let mut values = Vec::new();
        for (base, kind, terms) in ABCD_RULES {
            let expected: i64 = terms
                .split_whitespace()
                .map(|t| {
                    let (sign, set) = t.split_at(1);
                    let s = lookup[&letters(set)] as i64;
                    if sign == "+" { s } else { -s }
                })
                .sum();
            let rv = rules.iter().find(|r| r.rule.base == letters(base)).unwrap();
            ensure!(rv.value == expected, "R({base}) = {} but the table gives {expected}", rv.value);
            ensure!(rv.rule.kind == kind, "R({base}) has kind {:?}", rv.rule.kind);
            values.push(format!("{base}:{expected}"));
        }
        Ok(format!("16 rules match [{}]", values.join(" ")))
    })();
    report(2, "rule table for ABCD", outcome, started.elapsed(), None);
}

#[test]
fn criterion_3_oracle_equivalence() {
    let started = Instant::now();
    let outcome = (|| {
        let corpus = common::corpus();
        ensure!(corpus.len() >= 100, "corpus has {} databases", corpus.len());
        let mut runs = 0;
        for (n, db) in corpus.iter().enumerate() {
            for min_support in THRESHOLDS {
                let threshold = min_support.absolute(db.len());
                let truth = oracle::brute_force_frequent(db, threshold).map_err(|e| e.to_string())?;
                for depth in DEPTHS {
                    let rep = mine_ndi(db, &MinerConfig { min_support, max_depth: depth });
                    let rebuilt = expand(&rep).map_err(|e| format!("db {n}: {e}"))?;
                    ensure!(
                        rebuilt.frequent == truth,
                        "db {n}, threshold {threshold}, depth {depth}: {} rebuilt vs {} true",
                        rebuilt.frequent.len(),
                        truth.len()
                    );
                    runs += 1;
                }
            }
        }
        Ok(format!("{} databases, {runs} runs", corpus.len()))
    })();
    report(3, "oracle equivalence", outcome, started.elapsed(), Some(Duration::from_secs(60)));
}

#[test]
fn criterion_4_tightness() {
    let started = Instant::now();
    let outcome = (|| {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let cases = 1200;
        let mut points = 0;
        for case in 0..cases {
            let k = 2 + case % 4;
            let mut ids: Vec<u32> = (0..12).collect();
            rand::seq::SliceRandom::shuffle(&mut ids[..], &mut rng);
            let target = Itemset::new(ids[..k].to_vec());
            // sparse fraction vectors make narrow and degenerate ranges common
            let fv = FractionVector {
                target: target.clone(),
                values: (0..1usize << k)
                    .map(|_| if rng.gen_bool(0.4) { 0 } else { rng.gen_range(0..6) })
                    .collect(),
            };
            let lookup: HashMap<Itemset, u64> = (0..(1u64 << k) - 1)
                .map(|m| {
                    let set = target.select(m);
                    let s = fv.implied_support(&set).unwrap();
                    (set, s)
                })
                .collect();
            let iv = bounds::bounds(&target, &lookup, Depth::Unbounded).map_err(|e| e.to_string())?;
            let range = oracle::feasible_support_range(&target, &lookup).map_err(|e| e.to_string())?;
            ensure!(
                (iv.lower, iv.upper) == (range.min_support as i64, range.max_support as i64),
                "case {case}: bounds [{}, {}] vs feasible [{}, {}]",
                iv.lower,
                iv.upper,
                range.min_support,
                range.max_support
            );
            points += usize::from(iv.is_derivable());
            for (witness, expected) in [
                (&range.witness_fractions_at_min, range.min_support),
                (&range.witness_fractions_at_max, range.max_support),
            ] {
                let db = oracle::database_from_fractions(witness);
                ensure!(db.support(&target) == expected, "case {case}: endpoint not realised");
                for (set, &s) in &lookup {
                    ensure!(db.support(set) == s, "case {case}: witness changes support of {set}");
                }
            }
        }
        Ok(format!("{cases} lookups, {points} with a single feasible value"))
    })();
    report(4, "tightness", outcome, started.elapsed(), Some(Duration::from_secs(60)));
}

#[test]
fn criterion_5_halving() {
    let started = Instant::now();
    let outcome = (|| {
        let mut checked = 0;
        for (n, db) in common::corpus().iter().enumerate() {
            let universe: Itemset = (0..db.item_count() as u32).collect();
            let mut widths = HashMap::new();
            for mask in 1..1u64 << universe.len() {
                let set = universe.select(mask);
                let iv = bounds::bounds(&set, &proper_subset_supports(db, &set), Depth::Unbounded)
                    .map_err(|e| e.to_string())?;
                widths.insert(set, iv.width());
            }
            for (set, &w) in &widths {
                for item in universe.difference(set).items() {
                    let wider = widths[&set.with(*item)];
                    ensure!(wider <= w / 2, "db {n}: width({}) = {wider} > {w}/2", set.with(*item));
                    checked += 1;
                }
            }
        }
        Ok(format!("{checked} extensions"))
    })();
    report(5, "interval halving", outcome, started.elapsed(), None);
}

#[test]
fn criterion_6_representation_inclusions() {
    let started = Instant::now();
    let outcome = (|| {
        let mut dbs = common::corpus();
        dbs.push(common::load("ndi_smaller_than_closed.dat"));
        dbs.push(common::load("closed_smaller_than_ndi.dat"));
        dbs.push(common::example1());
        for (n, db) in dbs.iter().enumerate() {
            for min_support in THRESHOLDS {
                let threshold = min_support.absolute(db.len());
                let free = baselines::mine_free(db, threshold, false);
                let closed = baselines::mine_closed(db, threshold);
                ensure!(
                    closed.cardinality_with_empty() <= free.cardinality_with_empty(),
                    "db {n}: |Closed| {} > |Free| {}",
                    closed.cardinality_with_empty(),
                    free.cardinality_with_empty()
                );
                let dfree = baselines::mine_dfree(db, threshold, true);
                ensure!(dfree.kind == RepresentationKind::DFreeBorder, "wrong report kind");
                let rep = mine_ndi(db, &MinerConfig { min_support, max_depth: Depth::Unbounded });
                if let Some(outside) = rep.entries.keys().find(|e| !dfree.members.contains_key(*e)) {
                    return Err(format!("db {n}: NDI {outside} outside dfree+border"));
                }
            }
        }
        let sizes = |name: &str| {
            let db = common::load(name);
            (mine_ndi(&db, &MinerConfig::new(1)).len(), baselines::mine_closed(&db, 1).cardinality())
        };
        let (ndi_a, closed_a) = sizes("ndi_smaller_than_closed.dat");
        ensure!(ndi_a < closed_a, "fixture A: |NDI| {ndi_a} vs |Closed| {closed_a}");
        let (ndi_b, closed_b) = sizes("closed_smaller_than_ndi.dat");
        ensure!(closed_b < ndi_b, "fixture B: |Closed| {closed_b} vs |NDI| {ndi_b}");
        Ok(format!(
            "{} databases; fixtures |NDI|<|Closed| {ndi_a}<{closed_a}, |Closed|<|NDI| {closed_b}<{ndi_b}",
            dbs.len()
        ))
    })();
    report(6, "representation inclusions", outcome, started.elapsed(), None);
}

const SYNTHETIC_SEED: u64 = 2002;
const SYNTHETIC_THRESHOLD: u64 = 40;

#[test]
fn criterion_7_depth_monotonicity() {
    let started = Instant::now();
    let outcome = (|| {
        let db = correlated_database(SYNTHETIC_SEED, &CorrelatedConfig::default());
        let all = baselines::mine_apriori(&db, SYNTHETIC_THRESHOLD).len();
        let depths = [1, 2, 3, 4, 5].map(Depth::Limited).into_iter().chain([Depth::Unbounded]);
        let counts: Vec<(Depth, usize)> = depths
            .map(|d| (d, mine_ndi(&db, &MinerConfig::new(SYNTHETIC_THRESHOLD).with_depth(d)).len()))
            .collect();
        for pair in counts.windows(2) {
            ensure!(pair[1].1 <= pair[0].1, "size grows from depth {} to {}", pair[0].0, pair[1].0);
        }
        for &(d, n) in &counts[1..] {
            ensure!(n as f64 <= 0.8 * all as f64, "depth {d}: {n} NDIs vs {all} frequent");
        }
        let row: Vec<String> = counts.iter().map(|(d, n)| format!("{d}:{n}")).collect();
        Ok(format!("{all} frequent; NDIs by depth {}", row.join(" ")))
    })();
    report(7, "depth monotonicity", outcome, started.elapsed(), Some(Duration::from_secs(120)));
}

#[test]
fn criterion_8_scan_accounting() {
    let started = Instant::now();
    let outcome = (|| {
        let mut dbs = common::corpus();
        dbs.push(common::example1());
        let mut thresholds = vec![2; dbs.len()];
        dbs.push(correlated_database(SYNTHETIC_SEED, &CorrelatedConfig::default()));
        thresholds.push(SYNTHETIC_THRESHOLD);
        let mut levels = 0;
        for (n, (db, &threshold)) in dbs.iter().zip(&thresholds).enumerate() {
            for depth in DEPTHS {
                let before = db.passes();
                let rep = mine_ndi(db, &MinerConfig::new(threshold).with_depth(depth));
                let passes = db.passes() - before;
                let nonempty = rep.level_stats.iter().filter(|l| l.candidates > 0).count();
                ensure!(
                    passes == rep.level_stats.len() && passes == nonempty && rep.scans == passes,
                    "db {n}: {passes} passes for {nonempty} levels"
                );
                let before = db.passes();
                expand(&rep).map_err(|e| e.to_string())?;
                ensure!(db.passes() == before, "db {n}: expansion scanned the database");
                levels += passes;
            }
        }
        Ok(format!("{levels} levels, one pass each; expansion made none"))
    })();
    report(8, "scan accounting", outcome, started.elapsed(), None);
}

fn run_cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["ndi"];
    argv.extend_from_slice(args);
    match cli::run(argv, &mut out, &mut err) {
        0 => Ok(out),
        code => Err(format!("{args:?} exited {code}: {}", String::from_utf8_lossy(&err))),
    }
}

#[test]
fn criterion_9_cli_round_trip() {
    let started = Instant::now();
    let outcome = (|| {
        let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
        let mut compared = 0;
        for (n, db) in common::corpus().iter().enumerate() {
            let input = dir.path().join(format!("db{n}.dat"));
            std::fs::write(&input, ndi::format::to_fimi(db)).map_err(|e| e.to_string())?;
            let input = input.to_str().unwrap();
            for threshold in ["1", "2", "3", "0.25"] {
                let rep_path = dir.path().join(format!("db{n}-{threshold}.rep"));
                let rep_path = rep_path.to_str().unwrap();
                run_cli(&["mine", "--input", input, "--min-support", threshold, "--algo", "ndi", "--emit-rep", "--out", rep_path])?;
                let derived = run_cli(&["derive", "--rep", rep_path])?;
                let direct = run_cli(&["mine", "--input", input, "--min-support", threshold, "--algo", "apriori"])?;
                ensure!(derived == direct, "db {n}, threshold {threshold}: outputs differ");
                compared += 1;
            }
        }
        Ok(format!("{compared} byte-identical comparisons"))
    })();
    report(9, "CLI round trip", outcome, started.elapsed(), None);
}
