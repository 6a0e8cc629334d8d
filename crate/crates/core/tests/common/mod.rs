#![allow(dead_code)]

use std::path::PathBuf;

use ndi::{synth, TransactionDatabase};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const CORPUS_SEED: u64 = 0x5eed_2002;
pub const CORPUS_SIZE: usize = 120;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn load(name: &str) -> TransactionDatabase {
    TransactionDatabase::from_path(fixture(name)).unwrap()
}

pub fn example1() -> TransactionDatabase {
    load("example1.dat")
}

/// Random databases with at most 8 items and 40 transactions, densities 0.15 to 0.85.
pub fn corpus() -> Vec<TransactionDatabase> {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    (0..CORPUS_SIZE)
        .map(|_| {
            let items = rng.gen_range(1..=8);
            let transactions = rng.gen_range(0..=40);
            let density = rng.gen_range(0.15..0.85);
            synth::random_database(&mut rng, items, transactions, density)
        })
        .collect()
}
