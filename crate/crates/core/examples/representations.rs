//! Sizes of competing condensed representations on the same database, and a
//! check that the border-based ones rebuild the frequent itemsets.
//!
//! ```bash
//! cargo run --release -p ndi --example representations -- [file] [min_support]
//! ```

use ndi::baselines::{self, RepresentationReport};
use ndi::{mine_ndi, Itemset, MinerConfig, TransactionDatabase};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let path = args
        .next()
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/data/example1.dat").into());
    let threshold: u64 = args.next().as_deref().unwrap_or("1").parse()?;
    let db = TransactionDatabase::from_path(&path)?;
    let frequent = baselines::mine_apriori(&db, threshold);

    let reports = [
        baselines::mine_all_frequent(&db, threshold),
        baselines::mine_closed(&db, threshold),
        baselines::mine_free(&db, threshold, true),
        baselines::mine_dfree(&db, threshold, true),
        RepresentationReport::from_ndi(&mine_ndi(&db, &MinerConfig::new(threshold))),
    ];
    for report in &reports {
        println!("{:>13}: {:>6} itemsets", report.kind.as_str(), report.cardinality());
    }
    for report in &reports[2..4] {
        let rebuilt = baselines::reconstruct(report, db.len() as u64)?;
        println!("{} rebuilds all frequent itemsets: {}", report.kind.as_str(), rebuilt == frequent);
    }
    for item in 0..db.item_count() as u32 {
        let closed = baselines::closure(&db, &Itemset::singleton(item));
        let labels: Vec<u64> = closed.items().iter().map(|&i| db.label(i)).collect();
        println!("closure of {{{}}} is {labels:?}", db.label(item));
    }
    Ok(())
}
