//! Independent ground truth for tests and debugging.
//!
//! Nothing here goes through the deduction rules: frequent itemsets are
//! enumerated exhaustively, and the feasible range of a support is obtained
//! by writing every fraction as a Möbius inversion of the subset supports and
//! intersecting the half-lines where all of them are non-negative.

use std::collections::BTreeMap;

use crate::bounds::SupportLookup;
use crate::dataset::MAX_ENUMERATED;
use crate::{Error, FractionVector, Itemset, Result, TransactionDatabase};

/// Largest target accepted by [`feasible_support_range`].
pub const MAX_RANGE_TARGET: usize = 12;

/// Every non-empty itemset over the item universe with support at least
/// `threshold`, counted by scanning the transactions directly.
pub fn brute_force_frequent(db: &TransactionDatabase, threshold: u64) -> Result<BTreeMap<Itemset, u64>> {
    let n = db.item_count();
    if n > MAX_ENUMERATED {
        return Err(Error::TooLarge {
            size: n,
            limit: MAX_ENUMERATED,
        });
    }
    let universe: Itemset = (0..n as u32).collect();
    // histogram of transactions by their item mask
    let mut rows: BTreeMap<u64, u64> = BTreeMap::new();
    for t in db.transactions() {
        let mask = universe.mask_of(&t.items).expect("items lie in the universe");
        *rows.entry(mask).or_default() += 1;
    }
    let mut out = BTreeMap::new();
    for mask in 1..1u64 << n {
        let support: u64 = rows
            .iter()
            .filter(|(&row, _)| row & mask == mask)
            .map(|(_, &c)| c)
            .sum();
        if support >= threshold {
            out.insert(universe.select(mask), support);
        }
    }
    Ok(out)
}

/// Range of supports of a target that some database reproducing the given
/// subset supports can have, with witness fractions at both ends.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibleRange {
    pub min_support: u64,
    pub max_support: u64,
    pub witness_fractions_at_min: FractionVector,
    pub witness_fractions_at_max: FractionVector,
}

/// Feasible supports of `target` given the supports of all its proper subsets.
///
/// With the unknown support `x`, each fraction is
/// `f_I = Σ_{I ⊆ K ⊆ J} (-1)^|K \ I| s_K`, an affine function of `x` with
/// slope ±1; requiring all of them to be non-negative leaves an interval.
pub fn feasible_support_range(target: &Itemset, lookup: &impl SupportLookup) -> Result<FeasibleRange> {
    let k = target.len();
    if k == 0 {
        return Err(Error::EmptyTarget);
    }
    if k > MAX_RANGE_TARGET {
        return Err(Error::TooLarge {
            size: k,
            limit: MAX_RANGE_TARGET,
        });
    }
    let full = (1u64 << k) - 1;
    let mut known = vec![0i64; 1 << k];
    for mask in 0..full {
        let set = target.select(mask);
        known[mask as usize] = lookup
            .support_of(&set)
            .ok_or(Error::IncompleteLookup { missing: set })? as i64;
    }
    // f_I = constant[I] + slope[I] * x
    let mut constant = vec![0i64; 1 << k];
    let mut slope = vec![0i64; 1 << k];
    for base in 0..=full {
        for sup in base..=full {
            if sup & base != base {
                continue;
            }
            let sign = if (sup ^ base).count_ones() % 2 == 0 { 1 } else { -1 };
            if sup == full {
                slope[base as usize] = sign;
            } else {
                constant[base as usize] += sign * known[sup as usize];
            }
        }
    }
    let mut lo = i64::MIN;
    let mut hi = i64::MAX;
    for (c, m) in constant.iter().zip(&slope) {
        if *m > 0 {
            lo = lo.max(-c);
        } else {
            hi = hi.min(*c);
        }
    }
    if lo > hi || hi < 0 {
        return Err(Error::Infeasible {
            target: target.clone(),
        });
    }
    let fractions_at = |x: i64| FractionVector {
        target: target.clone(),
        values: constant
            .iter()
            .zip(&slope)
            .map(|(c, m)| (c + m * x) as u64)
            .collect(),
    };
    Ok(FeasibleRange {
        min_support: lo as u64,
        max_support: hi as u64,
        witness_fractions_at_min: fractions_at(lo),
        witness_fractions_at_max: fractions_at(hi),
    })
}

/// A database holding `values[I]` copies of each transaction `I`. Item ids
/// are kept as-is (each id is its own label).
pub fn database_from_fractions(fv: &FractionVector) -> TransactionDatabase {
    let universe = fv.target.items().last().map_or(0, |&m| m as usize + 1);
    let rows = fv
        .iter()
        .flat_map(|(set, count)| std::iter::repeat(set).take(count as usize))
        .collect();
    TransactionDatabase::from_itemsets(universe, rows)
}
