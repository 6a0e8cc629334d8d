//! Reference miners and competing condensed representations: all frequent
//! itemsets (Apriori), frequent free sets, frequent disjunction-free sets,
//! their borders, and frequent closed sets.
//!
//! Representation cardinalities never count the empty itemset;
//! [`RepresentationReport::includes_empty`] records whether it belongs to the
//! underlying collection.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::bounds::{self, Depth, Rule};
use crate::miner::{apriori_generate, count_supports, NdiRepresentation};
use crate::{Error, Itemset, Result, TransactionDatabase};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RepresentationKind {
    AllFrequent,
    Closed,
    Free,
    FreeBorder,
    DFree,
    DFreeBorder,
    Ndi,
}

impl RepresentationKind {
    pub fn as_str(self) -> &'static str {
        match self {
            RepresentationKind::AllFrequent => "all-frequent",
            RepresentationKind::Closed => "closed",
            RepresentationKind::Free => "free",
            RepresentationKind::FreeBorder => "free+border",
            RepresentationKind::DFree => "dfree",
            RepresentationKind::DFreeBorder => "dfree+border",
            RepresentationKind::Ndi => "ndi",
        }
    }
}

#[derive(Debug, Clone)]
pub struct RepresentationReport {
    pub kind: RepresentationKind,
    pub threshold: u64,
    /// Non-empty members with their supports, border sets included.
    pub members: BTreeMap<Itemset, u64>,
    /// Members that belong to the border rather than the collection itself.
    pub border: BTreeSet<Itemset>,
    pub includes_empty: bool,
    pub scans: usize,
}

impl RepresentationReport {
    pub fn cardinality(&self) -> usize {
        self.members.len()
    }

    /// Cardinality with the empty itemset counted when it is a member.
    pub fn cardinality_with_empty(&self) -> usize {
        self.members.len() + usize::from(self.includes_empty)
    }

    pub fn from_ndi(rep: &NdiRepresentation) -> Self {
        RepresentationReport {
            kind: RepresentationKind::Ndi,
            threshold: rep.threshold,
            members: rep.entries.clone(),
            border: BTreeSet::new(),
            includes_empty: false,
            scans: rep.scans,
        }
    }
}

/// All itemsets with support at least `threshold`, the empty one excluded.
pub fn mine_apriori(db: &TransactionDatabase, threshold: u64) -> BTreeMap<Itemset, u64> {
    let mut out = BTreeMap::new();
    if (db.len() as u64) < threshold {
        return out;
    }
    let mut candidates: Vec<Itemset> = (0..db.item_count() as u32).map(Itemset::singleton).collect();
    while !candidates.is_empty() {
        let counts = count_supports(db, &candidates);
        let frequent: Vec<Itemset> = candidates
            .into_iter()
            .zip(counts)
            .filter(|&(_, s)| s >= threshold)
            .map(|(set, s)| {
                out.insert(set.clone(), s);
                set
            })
            .collect();
        candidates = apriori_generate(&frequent);
    }
    out
}

pub fn mine_all_frequent(db: &TransactionDatabase, threshold: u64) -> RepresentationReport {
    let passes = db.passes();
    let members = mine_apriori(db, threshold);
    RepresentationReport {
        kind: RepresentationKind::AllFrequent,
        threshold,
        members,
        border: BTreeSet::new(),
        includes_empty: db.len() as u64 >= threshold,
        scans: db.passes() - passes,
    }
}

/// An itemset is free when no proper subset has the same support. Checking
/// the immediate subsets suffices.
fn is_free(set: &Itemset, support: u64, supports: &HashMap<Itemset, u64>) -> bool {
    set.immediate_subsets().all(|sub| supports[&sub] != support)
}

/// No pair `i1, i2` (possibly equal) with
/// `s(I) = s(I - i1) + s(I - i2) - s(I - {i1, i2})`.
fn is_disjunction_free(set: &Itemset, support: u64, supports: &HashMap<Itemset, u64>) -> bool {
    let items = set.items();
    let s = support as i64;
    for (a, &i1) in items.iter().enumerate() {
        let without1 = set.without(i1);
        for &i2 in &items[a..] {
            let value = if i1 == i2 {
                supports[&without1] as i64
            } else {
                supports[&without1] as i64 + supports[&set.without(i2)] as i64
                    - supports[&without1.without(i2)] as i64
            };
            if value == s {
                return false;
            }
        }
    }
    true
}

/// Level-wise search for the frequent itemsets satisfying an anti-monotone
/// predicate, together with the border of that collection.
fn mine_anti_monotone(
    db: &TransactionDatabase,
    threshold: u64,
    kind: RepresentationKind,
    include_border: bool,
    keep: fn(&Itemset, u64, &HashMap<Itemset, u64>) -> bool,
) -> RepresentationReport {
    let passes = db.passes();
    let mut supports = HashMap::new();
    supports.insert(Itemset::empty(), db.len() as u64);
    let mut members = BTreeMap::new();
    let mut border = BTreeSet::new();
    let includes_empty = db.len() as u64 >= threshold;
    let mut candidates: Vec<Itemset> = if includes_empty {
        (0..db.item_count() as u32).map(Itemset::singleton).collect()
    } else {
        Vec::new()
    };
    while !candidates.is_empty() {
        let counts = count_supports(db, &candidates);
        let mut accepted = Vec::new();
        for (set, s) in candidates.into_iter().zip(counts) {
            supports.insert(set.clone(), s);
            if s >= threshold && keep(&set, s, &supports) {
                members.insert(set.clone(), s);
                accepted.push(set);
            } else if include_border {
                members.insert(set.clone(), s);
                border.insert(set);
            }
        }
        candidates = apriori_generate(&accepted);
    }
    RepresentationReport {
        kind,
        threshold,
        members,
        border,
        includes_empty,
        scans: db.passes() - passes,
    }
}

/// Frequent free itemsets, optionally with their border.
pub fn mine_free(db: &TransactionDatabase, threshold: u64, include_border: bool) -> RepresentationReport {
    let kind = if include_border {
        RepresentationKind::FreeBorder
    } else {
        RepresentationKind::Free
    };
    mine_anti_monotone(db, threshold, kind, include_border, is_free)
}

/// Frequent disjunction-free itemsets, optionally with their border.
pub fn mine_dfree(db: &TransactionDatabase, threshold: u64, include_border: bool) -> RepresentationReport {
    let kind = if include_border {
        RepresentationKind::DFreeBorder
    } else {
        RepresentationKind::DFree
    };
    mine_anti_monotone(db, threshold, kind, include_border, is_disjunction_free)
}

/// Intersection of all transactions containing `set`; the whole item
/// universe when no transaction does.
pub fn closure(db: &TransactionDatabase, set: &Itemset) -> Itemset {
    let cover = db.cover(set);
    let Some((&first, rest)) = cover.split_first() else {
        return (0..db.item_count() as u32).collect();
    };
    let mut acc = db.transactions()[first as usize].items.clone();
    for &tid in rest {
        let t = &db.transactions()[tid as usize].items;
        acc = Itemset::new(acc.items().iter().copied().filter(|&i| t.contains(i)).collect());
        if acc.len() == set.len() {
            break;
        }
    }
    acc
}

/// Frequent closed itemsets, obtained as the closures of the frequent free
/// itemsets (the empty one included).
pub fn mine_closed(db: &TransactionDatabase, threshold: u64) -> RepresentationReport {
    let free = mine_free(db, threshold, false);
    let mut members = BTreeMap::new();
    let mut includes_empty = false;
    let generators = free
        .members
        .iter()
        .map(|(set, &s)| (set.clone(), s))
        .chain(free.includes_empty.then(|| (Itemset::empty(), db.len() as u64)));
    for (set, s) in generators {
        let closed = closure(db, &set);
        if closed.is_empty() {
            includes_empty = true;
        } else {
            members.insert(closed, s);
        }
    }
    RepresentationReport {
        kind: RepresentationKind::Closed,
        threshold,
        members,
        border: BTreeSet::new(),
        includes_empty,
        scans: free.scans,
    }
}

/// Rebuilds all frequent itemsets from a free+border or dfree+border
/// representation, using only rules of depth 1 or 2 respectively.
///
/// A non-member whose subsets are all frequent has a subset satisfying an
/// exact shallow rule; lifting that rule gives its support.
pub fn reconstruct(report: &RepresentationReport, transactions: u64) -> Result<BTreeMap<Itemset, u64>> {
    let depth = match report.kind {
        RepresentationKind::FreeBorder => Depth::Limited(1),
        RepresentationKind::DFreeBorder => Depth::Limited(2),
        other => {
            return Err(Error::InvalidArgument(format!(
                "cannot reconstruct from a `{}` report",
                other.as_str()
            )))
        }
    };
    let mut known: HashMap<Itemset, u64> = HashMap::new();
    known.insert(Itemset::empty(), transactions);
    let mut exact: HashMap<Itemset, Rule> = HashMap::new();
    let mut out = BTreeMap::new();
    if transactions < report.threshold {
        return Ok(out);
    }
    let universe = report
        .members
        .keys()
        .flat_map(|s| s.items().last().copied())
        .max()
        .map_or(0, |m| m + 1);
    let mut frontier: Vec<Itemset> = (0..universe).map(Itemset::singleton).collect();
    while !frontier.is_empty() {
        let mut frequent = Vec::new();
        for set in frontier {
            let support = match report.members.get(&set) {
                Some(&s) => {
                    known.insert(set.clone(), s);
                    let found = bounds::evaluate_rules(&set, &known, depth)?
                        .into_iter()
                        .find(|rv| rv.value == s as i64);
                    if let Some(rv) = found {
                        exact.insert(set.clone(), rv.rule);
                    }
                    s
                }
                None => {
                    let lifted = set.items().iter().find_map(|&i| {
                        exact
                            .get(&set.without(i))
                            .map(|r| Rule::new(set.clone(), r.base.with(i)))
                    });
                    let Some(rule) = lifted else {
                        return Err(Error::CorruptedRepresentation(format!(
                            "{set} is neither stored nor derivable"
                        )));
                    };
                    let value = rule.evaluate(&known)?;
                    if value < 0 {
                        return Err(Error::CorruptedRepresentation(format!(
                            "negative support derived for {set}"
                        )));
                    }
                    known.insert(set.clone(), value as u64);
                    exact.insert(set.clone(), rule);
                    value as u64
                }
            };
            if support >= report.threshold {
                out.insert(set.clone(), support);
                frequent.push(set);
            }
        }
        frontier = apriori_generate(&frequent);
    }
    Ok(out)
}
