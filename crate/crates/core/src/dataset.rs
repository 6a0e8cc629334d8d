//! Transaction databases in the FIMI flat-file format.
//!
//! Each non-empty line is one transaction: whitespace separated non-negative
//! integer labels. Labels are remapped to dense internal ids in order of first
//! occurrence; [`TransactionDatabase::label`] maps them back.

use std::collections::HashMap;
use std::io::BufRead;
use std::sync::atomic::{AtomicUsize, Ordering};

use crate::{Error, Itemset, Result};

/// Largest itemset for which `2^|J|`-sized tables are materialised.
pub const MAX_ENUMERATED: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transaction {
    pub tid: usize,
    pub items: Itemset,
}

/// Immutable multiset of transactions with per-item cover lists.
///
/// The only interior state is a counter of full passes over the
/// transactions, used to account for database scans.
#[derive(Debug)]
pub struct TransactionDatabase {
    transactions: Vec<Transaction>,
    labels: Vec<u64>,
    index: HashMap<u64, u32>,
    covers: Vec<Vec<u32>>,
    passes: AtomicUsize,
}

impl Clone for TransactionDatabase {
    fn clone(&self) -> Self {
        TransactionDatabase {
            transactions: self.transactions.clone(),
            labels: self.labels.clone(),
            index: self.index.clone(),
            covers: self.covers.clone(),
            passes: AtomicUsize::new(0),
        }
    }
}

impl TransactionDatabase {
    /// Parses a FIMI stream. Empty lines are skipped and repeated labels
    /// within a line are collapsed.
    pub fn from_fimi<R: BufRead>(source: R) -> Result<Self> {
        let mut labels = Vec::new();
        let mut index = HashMap::new();
        let mut rows = Vec::new();
        for (n, line) in source.lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let mut row = Vec::new();
            for token in line.split_whitespace() {
                let label: u64 = token.parse().map_err(|_| Error::Parse {
                    line: n + 1,
                    token: token.to_string(),
                })?;
                let id = *index.entry(label).or_insert_with(|| {
                    labels.push(label);
                    (labels.len() - 1) as u32
                });
                row.push(id);
            }
            rows.push(Itemset::new(row));
        }
        Ok(Self::build(rows, labels, index))
    }

    pub fn from_path(path: impl AsRef<std::path::Path>) -> Result<Self> {
        let file = std::fs::File::open(path)?;
        Self::from_fimi(std::io::BufReader::new(file))
    }

    /// Builds a database over the universe `0..item_count` where every
    /// internal id is its own label. Ids at or beyond `item_count` widen the
    /// universe.
    pub fn from_itemsets(item_count: usize, rows: Vec<Itemset>) -> Self {
        let max = rows
            .iter()
            .flat_map(|r| r.items().last().copied())
            .map(|i| i as usize + 1)
            .max()
            .unwrap_or(0);
        let n = item_count.max(max);
        let labels: Vec<u64> = (0..n as u64).collect();
        let index = labels.iter().map(|&l| (l, l as u32)).collect();
        Self::build(rows, labels, index)
    }

    fn build(rows: Vec<Itemset>, labels: Vec<u64>, index: HashMap<u64, u32>) -> Self {
        let mut covers = vec![Vec::new(); labels.len()];
        let transactions = rows
            .into_iter()
            .enumerate()
            .map(|(tid, items)| {
                for &i in items.items() {
                    covers[i as usize].push(tid as u32);
                }
                Transaction { tid, items }
            })
            .collect();
        TransactionDatabase {
            transactions,
            labels,
            index,
            covers,
            passes: AtomicUsize::new(0),
        }
    }

    pub fn len(&self) -> usize {
        self.transactions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.transactions.is_empty()
    }

    pub fn item_count(&self) -> usize {
        self.labels.len()
    }

    pub fn transactions(&self) -> &[Transaction] {
        &self.transactions
    }

    /// External label of an internal id.
    pub fn label(&self, item: u32) -> u64 {
        self.labels[item as usize]
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    /// Internal id of an external label, if the label occurs.
    pub fn item(&self, label: u64) -> Option<u32> {
        self.index.get(&label).copied()
    }

    /// Maps labels to an itemset; `None` if any label is absent.
    pub fn itemset_from_labels(&self, labels: &[u64]) -> Option<Itemset> {
        labels.iter().map(|&l| self.item(l)).collect()
    }

    /// Support of an itemset given by external labels. Absent labels give 0.
    pub fn support_of_labels(&self, labels: &[u64]) -> u64 {
        self.itemset_from_labels(labels)
            .map_or(0, |set| self.support(&set))
    }

    pub fn item_cover(&self, item: u32) -> &[u32] {
        self.covers
            .get(item as usize)
            .map_or(&[][..], |c| c.as_slice())
    }

    /// Runs `visit` over every transaction and records one database pass.
    pub fn scan(&self, mut visit: impl FnMut(&Transaction)) {
        self.passes.fetch_add(1, Ordering::Relaxed);
        self.transactions.iter().for_each(&mut visit);
    }

    /// Number of full passes made through [`TransactionDatabase::scan`].
    pub fn passes(&self) -> usize {
        self.passes.load(Ordering::Relaxed)
    }

    /// Transactions containing every item of `set`, ascending by tid.
    pub fn cover(&self, set: &Itemset) -> Vec<u32> {
        if set.is_empty() {
            return (0..self.len() as u32).collect();
        }
        if set.items().iter().any(|&i| i as usize >= self.item_count()) {
            return Vec::new();
        }
        let mut lists: Vec<&[u32]> = set.items().iter().map(|&i| self.item_cover(i)).collect();
        lists.sort_by_key(|l| l.len());
        let mut acc = lists[0].to_vec();
        for list in &lists[1..] {
            acc = intersect(&acc, list);
            if acc.is_empty() {
                break;
            }
        }
        acc
    }

    pub fn support(&self, set: &Itemset) -> u64 {
        match set.len() {
            0 => self.len() as u64,
            1 => self.item_cover(set.items()[0]).len() as u64,
            _ => self.cover(set).len() as u64,
        }
    }

    /// The database with every transaction intersected with `onto`.
    pub fn project(&self, onto: &Itemset) -> TransactionDatabase {
        let rows = self
            .transactions
            .iter()
            .map(|t| {
                t.items
                    .items()
                    .iter()
                    .copied()
                    .filter(|&i| onto.contains(i))
                    .collect()
            })
            .collect();
        Self::build(rows, self.labels.clone(), self.index.clone())
    }

    /// Counts, for every `I ⊆ target`, the transactions whose projection on
    /// `target` is exactly `I`.
    pub fn fractions(&self, target: &Itemset) -> Result<FractionVector> {
        check_enumerable(target)?;
        let mut values = vec![0u64; 1 << target.len()];
        for t in &self.transactions {
            let mask = target
                .items()
                .iter()
                .enumerate()
                .filter(|(_, &i)| t.items.contains(i))
                .fold(0usize, |m, (b, _)| m | 1 << b);
            values[mask] += 1;
        }
        Ok(FractionVector {
            target: target.clone(),
            values,
        })
    }

    /// Supports of all subsets of `target` (including `target` itself and
    /// the empty set), counted from the covers.
    pub fn subset_supports(&self, target: &Itemset) -> Result<HashMap<Itemset, u64>> {
        check_enumerable(target)?;
        Ok((0..1u64 << target.len())
            .map(|mask| {
                let set = target.select(mask);
                let s = self.support(&set);
                (set, s)
            })
            .collect())
    }
}

fn check_enumerable(target: &Itemset) -> Result<()> {
    if target.len() > MAX_ENUMERATED {
        return Err(Error::TooLarge {
            size: target.len(),
            limit: MAX_ENUMERATED,
        });
    }
    Ok(())
}

/// Merge intersection of two ascending tid lists.
pub fn intersect(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len().min(b.len()));
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Exact-projection counts `f_I^J` for every `I ⊆ J`, indexed by the bit
/// mask of `I` over the items of `J`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionVector {
    pub target: Itemset,
    pub values: Vec<u64>,
}

impl FractionVector {
    pub fn get(&self, subset: &Itemset) -> Option<u64> {
        self.target
            .mask_of(subset)
            .map(|mask| self.values[mask as usize])
    }

    pub fn total(&self) -> u64 {
        self.values.iter().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Itemset, u64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(|(mask, &v)| (self.target.select(mask as u64), v))
    }

    /// Support of `subset` implied by the fractions: the sum over all
    /// supersets of `subset` within the target.
    pub fn implied_support(&self, subset: &Itemset) -> Option<u64> {
        let mask = self.target.mask_of(subset)? as usize;
        Some(
            self.values
                .iter()
                .enumerate()
                .filter(|(m, _)| m & mask == mask)
                .map(|(_, v)| v)
                .sum(),
        )
    }
}
