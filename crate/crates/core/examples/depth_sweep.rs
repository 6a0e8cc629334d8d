//! Representation size and run time against rule depth on a seeded,
//! strongly correlated synthetic database.
//!
//! ```bash
//! cargo run --release -p ndi --example depth_sweep -- [seed] [min_support]
//! ```

use std::time::Instant;

use ndi::baselines::mine_apriori;
use ndi::synth::{correlated_database, CorrelatedConfig};
use ndi::{expand, mine_ndi, Depth, MinerConfig};

fn main() {
    let mut args = std::env::args().skip(1);
    let seed = args.next().map_or(2002, |s| s.parse().expect("seed"));
    let threshold = args.next().map_or(40, |s| s.parse().expect("min_support"));
    let db = correlated_database(seed, &CorrelatedConfig::default());

    let started = Instant::now();
    let all = mine_apriori(&db, threshold);
    println!(
        "{} transactions, {} items, threshold {threshold}",
        db.len(),
        db.item_count()
    );
    println!("apriori: {} frequent itemsets in {:.1} ms", all.len(), ms(started));
    println!("{:>6} {:>8} {:>10} {:>12} {:>6}", "depth", "ndis", "mine ms", "mine+di ms", "scans");
    for depth in [1, 2, 3, 4, 5].map(Depth::Limited).into_iter().chain([Depth::Unbounded]) {
        let started = Instant::now();
        let rep = mine_ndi(&db, &MinerConfig::new(threshold).with_depth(depth));
        let mine_ms = ms(started);
        let frequent = expand(&rep).expect("representation is consistent").frequent;
        assert_eq!(frequent, all);
        println!(
            "{:>6} {:>8} {:>10.1} {:>12.1} {:>6}",
            depth.to_string(),
            rep.len(),
            mine_ms,
            ms(started),
            rep.scans
        );
    }
}

fn ms(since: Instant) -> f64 {
    since.elapsed().as_secs_f64() * 1e3
}
