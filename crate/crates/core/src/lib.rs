//! Mining frequent itemsets through their non-derivable core.
//!
//! Given the supports of every proper subset of an itemset `J`, the
//! inclusion-exclusion deduction rules bound the support of `J` from below
//! and above, and those bounds are tight. Itemsets whose bounds collapse to a
//! single value are *derivable*: their support never has to be counted. The
//! frequent non-derivable itemsets form a concise representation from which
//! every frequent itemset and its exact support can be rebuilt without
//! touching the database again.
//!
//! The crate is organised by capability:
//!
//! - [`dataset`]: FIMI loading, covers, supports, projections and fractions.
//! - [`bounds`]: deduction rules and the support interval of an itemset.
//! - [`miner`]: level-wise mining of the frequent non-derivable itemsets.
//! - [`derive`]: rebuilding all frequent itemsets from a representation.
//! - [`baselines`]: Apriori, free, disjunction-free and closed itemsets.
//! - [`oracle`]: brute-force references used to validate everything above.
//! - [`format`] and [`cli`]: the text formats and the `ndi` command line.
//!
//! ```
//! use ndi::{bounds, dataset::TransactionDatabase, Depth, Itemset};
//!
//! let db = TransactionDatabase::from_fimi("1 2\n1\n2\n1 2\n".as_bytes()).unwrap();
//! let lookup = db.subset_supports(&Itemset::from([0, 1])).unwrap();
//! let interval = bounds::bounds(&Itemset::from([0, 1]), &lookup, Depth::Unbounded).unwrap();
//! assert_eq!((interval.lower, interval.upper), (2, 3));
//! ```

pub mod baselines;
pub mod bounds;
pub mod cli;
pub mod dataset;
pub mod derive;
mod error;
pub mod format;
mod itemset;
pub mod miner;
pub mod oracle;
pub mod synth;

pub use bounds::{BoundKind, Depth, Rule, SupportInterval, SupportLookup};
pub use dataset::{FractionVector, Transaction, TransactionDatabase};
pub use derive::{expand, query, DerivationResult, QueryAnswer, Reconstructor};
pub use error::{Error, Result};
pub use itemset::Itemset;
pub use miner::{mine_ndi, LevelStats, MinSupport, MinerConfig, NdiRepresentation};
