//! Compare the rule interval with the exact range of supports consistent with
//! the subset supports, and build databases realising both ends.
//!
//! ```bash
//! cargo run -p ndi --example tightness_oracle -- [seed]
//! ```

use std::collections::HashMap;

use ndi::bounds::bounds;
use ndi::oracle::{database_from_fractions, feasible_support_range};
use ndi::synth::random_database;
use ndi::{Depth, Itemset};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> ndi::Result<()> {
    let seed = std::env::args().nth(1).map_or(7, |s| s.parse().expect("seed"));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for round in 0..5 {
        let db = random_database(&mut rng, 3, 40, 0.5);
        let target: Itemset = (0..3).collect();
        let mut lookup: HashMap<Itemset, u64> = db.subset_supports(&target)?;
        let actual = lookup.remove(&target).unwrap();
        let iv = bounds(&target, &lookup, Depth::Unbounded)?;
        let range = feasible_support_range(&target, &lookup)?;
        let low = database_from_fractions(&range.witness_fractions_at_min);
        let high = database_from_fractions(&range.witness_fractions_at_max);
        println!(
            "round {round}: rules [{}, {}], feasible [{}, {}], counted {actual}, witnesses give {} and {}",
            iv.lower,
            iv.upper,
            range.min_support,
            range.max_support,
            low.support(&target),
            high.support(&target)
        );
    }
    Ok(())
}
