//! Level-wise mining of frequent non-derivable itemsets.
//!
//! Each level counts its candidates in a single database pass. Frequent
//! candidates enter the representation; those whose support hit one of
//! their bounds are not extended, since all their supersets are derivable.
//! Generated supersets are bounded from the counted supports and only the
//! non-derivable ones become candidates of the next level.

use std::collections::{BTreeMap, HashMap};
use std::time::Instant;

use serde::Serialize;

use crate::bounds::{self, Depth, SupportInterval};
use crate::{Error, Itemset, Result, TransactionDatabase};

/// Minimum support, absolute or relative to the number of transactions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MinSupport {
    Absolute(u64),
    Fraction(f64),
}

impl MinSupport {
    /// Absolute threshold for a database of `transactions` rows. Fractions
    /// round up, so `0.25` of 10 transactions is 3.
    pub fn absolute(self, transactions: usize) -> u64 {
        match self {
            MinSupport::Absolute(s) => s,
            // absorb binary rounding such as 0.1 * 30 = 3.0000000000000004
            MinSupport::Fraction(f) => (f * transactions as f64 - 1e-9).ceil().max(0.0) as u64,
        }
    }

    /// Fraction of `transactions`, whatever form the threshold was given in.
    pub fn fraction(self, transactions: usize) -> f64 {
        match self {
            MinSupport::Fraction(f) => f,
            MinSupport::Absolute(_) if transactions == 0 => 0.0,
            MinSupport::Absolute(s) => s as f64 / transactions as f64,
        }
    }
}

impl std::str::FromStr for MinSupport {
    type Err = Error;

    /// Integers are absolute (at least 1); anything else must be a fraction in (0, 1).
    fn from_str(s: &str) -> Result<MinSupport> {
        let s = s.trim();
        if let Ok(n) = s.parse::<u64>() {
            return if n >= 1 {
                Ok(MinSupport::Absolute(n))
            } else {
                Err(Error::InvalidArgument("minimum support must be at least 1".into()))
            };
        }
        match s.parse::<f64>() {
            Ok(f) if f > 0.0 && f < 1.0 => Ok(MinSupport::Fraction(f)),
            _ => Err(Error::InvalidArgument(format!(
                "minimum support `{s}` is neither an integer >= 1 nor a fraction in (0,1)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinerConfig {
    pub min_support: MinSupport,
    pub max_depth: Depth,
}

impl MinerConfig {
    pub fn new(min_support: u64) -> Self {
        MinerConfig {
            min_support: MinSupport::Absolute(min_support),
            max_depth: Depth::Unbounded,
        }
    }

    pub fn with_depth(mut self, depth: Depth) -> Self {
        self.max_depth = depth;
        self
    }
}

/// Per-level counters of one mining run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LevelStats {
    pub level: usize,
    /// Itemsets produced by candidate generation and bounded.
    pub generated: usize,
    /// Non-derivable itemsets whose support was counted.
    pub candidates: usize,
    /// Counted candidates that turned out frequent.
    pub ndis: usize,
    /// Mean `upper - lower` over the counted candidates.
    pub avg_width: f64,
    pub max_width: i64,
    pub scan_ms: f64,
    pub bounds_ms: f64,
}

/// Frequent non-derivable itemsets with their exact supports.
///
/// The empty itemset is never an entry; its support is `transactions`.
#[derive(Debug, Clone, PartialEq)]
pub struct NdiRepresentation {
    pub entries: BTreeMap<Itemset, u64>,
    pub threshold: u64,
    pub depth: Depth,
    pub transactions: u64,
    /// External label of every internal item id.
    pub labels: Vec<u64>,
    pub level_stats: Vec<LevelStats>,
    pub scans: usize,
}

impl NdiRepresentation {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn label(&self, item: u32) -> u64 {
        self.labels[item as usize]
    }

    pub fn item(&self, label: u64) -> Option<u32> {
        self.labels.iter().position(|&l| l == label).map(|p| p as u32)
    }

    /// Label used in outputs: `NDI` for exact runs, `NDI_k` for depth-limited ones.
    pub fn name(&self) -> String {
        match self.depth {
            Depth::Unbounded => "NDI".to_string(),
            Depth::Limited(k) => format!("NDI_{k}"),
        }
    }
}

/// Per-level table of a mining run.
pub fn mine_level_stats(rep: &NdiRepresentation) -> &[LevelStats] {
    &rep.level_stats
}

/// Classic join-and-prune: unions of two `k`-itemsets sharing their first
/// `k-1` items, kept only when every `k`-subset is in `generators`.
///
/// `generators` must be sorted and all of the same size.
pub fn apriori_generate(generators: &[Itemset]) -> Vec<Itemset> {
    use std::collections::HashSet;
    debug_assert!(generators.windows(2).all(|w| w[0] < w[1]));
    let members: HashSet<&Itemset> = generators.iter().collect();
    let mut out = Vec::new();
    for (n, a) in generators.iter().enumerate() {
        let Some((_, prefix)) = a.items().split_last() else {
            continue;
        };
        for b in &generators[n + 1..] {
            if &b.items()[..prefix.len()] != prefix {
                break;
            }
            let joined = a.with(*b.items().last().unwrap());
            let prune_ok = joined
                .items()
                .iter()
                .take(joined.len() - 2)
                .all(|&i| members.contains(&joined.without(i)));
            if prune_ok {
                out.push(joined);
            }
        }
    }
    out
}

struct Candidate {
    itemset: Itemset,
    interval: SupportInterval,
}

/// Mines all frequent non-derivable itemsets ("frequent" meaning support at
/// least the threshold) using rules up to `cfg.max_depth`.
pub fn mine_ndi(db: &TransactionDatabase, cfg: &MinerConfig) -> NdiRepresentation {
    let n = db.len();
    let threshold = cfg.min_support.absolute(n);
    let mut supports: HashMap<Itemset, u64> = HashMap::new();
    supports.insert(Itemset::empty(), n as u64);

    let started = Instant::now();
    let mut candidates: Vec<Candidate> = (0..db.item_count() as u32)
        .map(|i| {
            let itemset = Itemset::singleton(i);
            let interval = bounds::bounds(&itemset, &supports, cfg.max_depth)
                .expect("the empty set's support is known");
            Candidate { itemset, interval }
        })
        .collect();
    let mut generated = candidates.len();
    let mut bounds_ms = ms(started);

    let mut entries = BTreeMap::new();
    let mut level_stats = Vec::new();
    let mut scans = 0;
    let mut level = 1;
    while !candidates.is_empty() {
        let started = Instant::now();
        let counted = count_supports(db, candidates.iter().map(|c| &c.itemset));
        scans += 1;
        let scan_ms = ms(started);

        let widths: Vec<i64> = candidates.iter().map(|c| c.interval.width()).collect();
        let mut generators = Vec::new();
        let mut ndis = 0;
        for (cand, support) in candidates.iter().zip(counted) {
            supports.insert(cand.itemset.clone(), support);
            if support < threshold {
                continue;
            }
            ndis += 1;
            entries.insert(cand.itemset.clone(), support);
            let s = support as i64;
            if s != cand.interval.lower && s != cand.interval.upper {
                generators.push(cand.itemset.clone());
            }
        }
        level_stats.push(LevelStats {
            level,
            generated,
            candidates: candidates.len(),
            ndis,
            avg_width: widths.iter().sum::<i64>() as f64 / widths.len() as f64,
            max_width: widths.iter().copied().max().unwrap_or(0),
            scan_ms,
            bounds_ms,
        });

        let started = Instant::now();
        let next = apriori_generate(&generators);
        generated = next.len();
        candidates = next
            .into_iter()
            .filter_map(|itemset| {
                // every proper subset was counted in an earlier pass
                let interval = bounds::bounds(&itemset, &supports, cfg.max_depth)
                    .expect("subsets of generated candidates are counted");
                (!interval.is_derivable()).then_some(Candidate { itemset, interval })
            })
            .collect();
        bounds_ms = ms(started);
        level += 1;
    }

    NdiRepresentation {
        entries,
        threshold,
        depth: cfg.max_depth,
        transactions: n as u64,
        labels: db.labels().to_vec(),
        level_stats,
        scans,
    }
}

/// Counts the supports of `candidates` in one pass over the database.
pub fn count_supports<'a>(
    db: &TransactionDatabase,
    candidates: impl IntoIterator<Item = &'a Itemset>,
) -> Vec<u64> {
    let candidates: Vec<&Itemset> = candidates.into_iter().collect();
    let mut by_first: Vec<Vec<usize>> = vec![Vec::new(); db.item_count()];
    let mut counts = vec![0u64; candidates.len()];
    for (n, c) in candidates.iter().enumerate() {
        match c.items().first() {
            Some(&i) if (i as usize) < by_first.len() => by_first[i as usize].push(n),
            Some(_) => {}
            None => counts[n] = db.len() as u64,
        }
    }
    let mut present = vec![false; db.item_count()];
    db.scan(|t| {
        for &i in t.items.items() {
            present[i as usize] = true;
        }
        for &i in t.items.items() {
            for &n in &by_first[i as usize] {
                let contained = candidates[n].items()[1..]
                    .iter()
                    .all(|&j| present.get(j as usize).copied().unwrap_or(false));
                if contained {
                    counts[n] += 1;
                }
            }
        }
        for &i in t.items.items() {
            present[i as usize] = false;
        }
    });
    counts
}

fn ms(since: Instant) -> f64 {
    since.elapsed().as_secs_f64() * 1e3
}
