//! Rebuild every frequent itemset from a mined representation, then answer
//! single queries without expanding everything.
//!
//! ```bash
//! cargo run -p ndi --example derive_frequent
//! ```

use ndi::{expand, mine_ndi, Itemset, MinerConfig, QueryAnswer, Reconstructor, TransactionDatabase};

fn main() -> ndi::Result<()> {
    let db = TransactionDatabase::from_path(concat!(env!("CARGO_MANIFEST_DIR"), "/data/example1.dat"))?;
    let rep = mine_ndi(&db, &MinerConfig::new(2));
    let result = expand(&rep)?;
    println!(
        "{} stored, {} frequent after expansion ({} derivations, {} by a lifted rule)",
        rep.len(),
        result.frequent.len(),
        result.derived,
        result.lifted
    );
    let labels = |set: &Itemset| set.items().iter().map(|&i| rep.label(i)).collect::<Vec<_>>();
    for (set, rule) in result.witnesses.iter() {
        println!(
            "  {:?} = {} by the rule with base {:?}",
            labels(set),
            result.frequent[set],
            labels(&rule.base)
        );
    }

    let mut reconstructor = Reconstructor::new(&rep)?;
    for labels in [[1, 2, 3, 4].as_slice(), &[2, 4], &[1, 3, 4]] {
        let set: Itemset = labels.iter().map(|&l| rep.item(l).unwrap()).collect();
        match reconstructor.query(&set)? {
            QueryAnswer::Frequent(s) => println!("{labels:?}: frequent, support {s}"),
            QueryAnswer::Infrequent => println!("{labels:?}: infrequent"),
        }
    }
    Ok(())
}
