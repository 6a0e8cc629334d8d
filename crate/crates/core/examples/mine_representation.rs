//! Mine the non-derivable itemsets of a FIMI file and print them with
//! per-level statistics.
//!
//! ```bash
//! cargo run --release -p ndi --example mine_representation -- data/example1.dat 2 inf
//! ```

use ndi::{mine_ndi, Depth, MinSupport, MinerConfig, TransactionDatabase};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let path = args
        .next()
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/data/example1.dat").into());
    let min_support: MinSupport = args.next().as_deref().unwrap_or("1").parse()?;
    let max_depth: Depth = args.next().as_deref().unwrap_or("inf").parse()?;

    let db = TransactionDatabase::from_path(&path)?;
    let rep = mine_ndi(&db, &MinerConfig { min_support, max_depth });
    println!("{}: {} itemsets at threshold {} ({} scans)", rep.name(), rep.len(), rep.threshold, rep.scans);
    for stats in &rep.level_stats {
        println!(
            "  level {}: {} candidates, {} kept, mean interval width {:.2}",
            stats.level, stats.candidates, stats.ndis, stats.avg_width
        );
    }
    let mut out = std::io::stdout().lock();
    ndi::format::write_results(&mut out, rep.entries.iter().map(|(s, &v)| (s, v)), |i| rep.label(i))?;
    Ok(())
}
