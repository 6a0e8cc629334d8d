//! Seeded synthetic transaction databases.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Itemset, TransactionDatabase};

/// Independent items, each present with probability `density`.
pub fn random_database(rng: &mut impl Rng, items: usize, transactions: usize, density: f64) -> TransactionDatabase {
    let rows = (0..transactions)
        .map(|_| (0..items as u32).filter(|_| rng.gen_bool(density)).collect())
        .collect();
    TransactionDatabase::from_itemsets(items, rows)
}

/// Parameters of [`correlated_database`].
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelatedConfig {
    pub transactions: usize,
    pub items: usize,
    /// Number of hidden item groups.
    pub patterns: usize,
    pub pattern_len: usize,
    /// Chance that a transaction draws on a given pattern.
    pub pattern_prob: f64,
    /// Chance that each item of a drawn pattern is kept.
    pub keep_prob: f64,
    /// Chance of each item appearing independently.
    pub noise: f64,
}

impl Default for CorrelatedConfig {
    fn default() -> Self {
        CorrelatedConfig {
            transactions: 400,
            items: 24,
            patterns: 4,
            pattern_len: 8,
            pattern_prob: 0.35,
            keep_prob: 0.9,
            noise: 0.03,
        }
    }
}

/// Transactions built from overlapping hidden item groups plus noise, which
/// produces many long, strongly correlated frequent itemsets.
pub fn correlated_database(seed: u64, cfg: &CorrelatedConfig) -> TransactionDatabase {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let universe: Vec<u32> = (0..cfg.items as u32).collect();
    let patterns: Vec<Vec<u32>> = (0..cfg.patterns)
        .map(|_| {
            universe
                .choose_multiple(&mut rng, cfg.pattern_len.min(cfg.items))
                .copied()
                .collect()
        })
        .collect();
    let rows = (0..cfg.transactions)
        .map(|_| {
            let mut row: Vec<u32> = universe
                .iter()
                .copied()
                .filter(|_| rng.gen_bool(cfg.noise))
                .collect();
            for pattern in &patterns {
                if rng.gen_bool(cfg.pattern_prob) {
                    row.extend(pattern.iter().copied().filter(|_| rng.gen_bool(cfg.keep_prob)));
                }
            }
            Itemset::new(row)
        })
        .collect();
    TransactionDatabase::from_itemsets(cfg.items, rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_generation_is_reproducible() {
        let cfg = CorrelatedConfig::default();
        let a = correlated_database(7, &cfg);
        let b = correlated_database(7, &cfg);
        assert_eq!(a.transactions(), b.transactions());
        assert_eq!(a.len(), cfg.transactions);
        assert_eq!(a.item_count(), cfg.items);
    }

    #[test]
    fn random_database_shape() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let db = random_database(&mut rng, 6, 30, 0.5);
        assert_eq!((db.len(), db.item_count()), (30, 6));
        assert!(db.transactions().iter().all(|t| t.items.items().iter().all(|&i| i < 6)));
    }
}
