//! Every deduction rule for {1,2,3,4} in the bundled ten-transaction
//! database, and the interval they pin down.
//!
//! ```bash
//! cargo run -p ndi --example support_bounds
//! ```

use ndi::bounds::{bounds, evaluate_rules};
use ndi::{BoundKind, Depth, Itemset, TransactionDatabase};

fn main() -> ndi::Result<()> {
    let db = TransactionDatabase::from_path(concat!(env!("CARGO_MANIFEST_DIR"), "/data/example1.dat"))?;
    let target = db.itemset_from_labels(&[1, 2, 3, 4]).expect("labels present");
    let mut lookup = db.subset_supports(&target)?;
    let actual = lookup.remove(&target).unwrap();
    let name = |set: &Itemset| {
        let labels: Vec<String> = set.items().iter().map(|&i| db.label(i).to_string()).collect();
        format!("{{{}}}", labels.join(","))
    };

    for rv in evaluate_rules(&target, &lookup, Depth::Unbounded)? {
        let side = match rv.rule.kind {
            BoundKind::Lower => ">=",
            BoundKind::Upper => "<=",
        };
        println!("depth {}  base {:<10} support {side} {}", rv.rule.depth, name(&rv.rule.base), rv.value);
    }
    for depth in [1, 2, 3].map(Depth::Limited).into_iter().chain([Depth::Unbounded]) {
        let iv = bounds(&target, &lookup, depth)?;
        println!(
            "depth {depth:>3}: [{}, {}]{}",
            iv.lower,
            iv.upper,
            if iv.is_derivable() { "  derivable" } else { "" }
        );
    }
    println!("counted support {actual}");
    Ok(())
}
