//! Rebuilding frequent itemsets from a non-derivable representation.
//!
//! Nothing here reads a database. Every frequent itemset is either stored in
//! the representation or derivable from its subsets; an itemset that is
//! neither stored nor derivable is infrequent. Expansion is level-wise:
//! candidates come from joining the frequent itemsets of the previous level.
//!
//! When a subset `X = Y \ {i}` was derived through an exact rule `R_X(B)`,
//! the lifted rule `R_Y(B ∪ {i})` is exact for `Y` as well, so only that one
//! rule is evaluated. Otherwise all rules are tried.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::bounds::{self, Depth, Rule, SupportLookup};
use crate::miner::{apriori_generate, NdiRepresentation};
use crate::{Error, Itemset, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QueryAnswer {
    Frequent(u64),
    Infrequent,
}

/// Exact rules found for frequent derived itemsets, keyed by the derived itemset.
#[derive(Debug, Clone, Default)]
pub struct WitnessCache {
    rules: HashMap<Itemset, Rule>,
}

impl WitnessCache {
    pub fn get(&self, set: &Itemset) -> Option<&Rule> {
        self.rules.get(set)
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Itemset, &Rule)> {
        self.rules.iter()
    }
}

#[derive(Debug, Clone)]
pub struct DerivationResult {
    /// Every frequent non-empty itemset with its support.
    pub frequent: BTreeMap<Itemset, u64>,
    /// Itemsets read from the representation.
    pub from_representation: usize,
    /// Itemsets whose support was derived.
    pub derived: usize,
    /// Derived itemsets settled by a single lifted rule.
    pub lifted: usize,
    pub witnesses: WitnessCache,
    pub transactions: u64,
}

/// Supports of the frequent itemsets, with the empty itemset answering the
/// number of transactions.
impl SupportLookup for DerivationResult {
    fn support_of(&self, set: &Itemset) -> Option<u64> {
        if set.is_empty() {
            Some(self.transactions)
        } else {
            self.frequent.get(set).copied()
        }
    }
}

/// All frequent itemsets and their supports, from the representation alone.
pub fn expand(rep: &NdiRepresentation) -> Result<DerivationResult> {
    let mut rc = Reconstructor::new(rep)?;
    rc.close_over(None)?;
    if let Some(missing) = rep.entries.keys().find(|e| !rc.known.contains_key(*e)) {
        return Err(Error::CorruptedRepresentation(format!(
            "entry {missing} has a subset that is not frequent"
        )));
    }
    let frequent = rc
        .known
        .iter()
        .filter(|(set, _)| !set.is_empty())
        .map(|(set, &s)| (set.clone(), s))
        .collect();
    Ok(DerivationResult {
        frequent,
        from_representation: rc.from_representation,
        derived: rc.derived,
        lifted: rc.lifted,
        witnesses: rc.witnesses,
        transactions: rep.transactions,
    })
}

/// Decides whether `set` is frequent and, if so, its support.
pub fn query(rep: &NdiRepresentation, set: &Itemset) -> Result<QueryAnswer> {
    Reconstructor::new(rep)?.query(set)
}

/// Memoising evaluator over one representation. Answers accumulate across
/// queries, so repeated queries share work.
pub struct Reconstructor<'a> {
    rep: &'a NdiRepresentation,
    known: HashMap<Itemset, u64>,
    infrequent: HashSet<Itemset>,
    witnesses: WitnessCache,
    from_representation: usize,
    derived: usize,
    lifted: usize,
}

impl<'a> Reconstructor<'a> {
    pub fn new(rep: &'a NdiRepresentation) -> Result<Self> {
        for (set, &s) in &rep.entries {
            if set.is_empty() {
                return Err(corrupt("the empty itemset cannot be an entry"));
            }
            if set.items().iter().any(|&i| i as usize >= rep.labels.len()) {
                return Err(corrupt(format!("entry {set} uses an unknown item")));
            }
            if s < rep.threshold || s > rep.transactions {
                return Err(corrupt(format!(
                    "entry {set} has support {s} outside [{}, {}]",
                    rep.threshold, rep.transactions
                )));
            }
        }
        let mut known = HashMap::new();
        known.insert(Itemset::empty(), rep.transactions);
        Ok(Reconstructor {
            rep,
            known,
            infrequent: HashSet::new(),
            witnesses: WitnessCache::default(),
            from_representation: 0,
            derived: 0,
            lifted: 0,
        })
    }

    pub fn query(&mut self, set: &Itemset) -> Result<QueryAnswer> {
        if set.is_empty() {
            return Ok(if self.rep.transactions >= self.rep.threshold {
                QueryAnswer::Frequent(self.rep.transactions)
            } else {
                QueryAnswer::Infrequent
            });
        }
        if set.items().iter().any(|&i| i as usize >= self.rep.labels.len()) {
            return Ok(QueryAnswer::Infrequent);
        }
        self.close_over(Some(set))?;
        Ok(match self.known.get(set) {
            Some(&s) => QueryAnswer::Frequent(s),
            None => QueryAnswer::Infrequent,
        })
    }

    /// Level-wise closure over the frequent itemsets, restricted to subsets
    /// of `within` when given.
    fn close_over(&mut self, within: Option<&Itemset>) -> Result<()> {
        let mut frontier: Vec<Itemset> = match within {
            Some(set) => set.items().iter().map(|&i| Itemset::singleton(i)).collect(),
            None => (0..self.rep.labels.len() as u32).map(Itemset::singleton).collect(),
        };
        let mut frequent = Vec::new();
        while !frontier.is_empty() {
            frequent.clear();
            for cand in frontier.drain(..) {
                if self.classify(&cand)?.is_some() {
                    frequent.push(cand);
                }
            }
            if let Some(set) = within {
                let k = frequent.first().map_or(0, Itemset::len);
                if k == set.len() || frequent.len() < k + 1 {
                    // the next level needs all k+1 of its k-subsets
                    break;
                }
            }
            frontier = apriori_generate(&frequent);
        }
        Ok(())
    }

    /// Support of `set` when frequent. All proper subsets must already be
    /// known frequent.
    fn classify(&mut self, set: &Itemset) -> Result<Option<u64>> {
        if let Some(&s) = self.known.get(set) {
            return Ok(Some(s));
        }
        if self.infrequent.contains(set) {
            return Ok(None);
        }
        let ceiling = set
            .immediate_subsets()
            .map(|sub| self.known.get(&sub).copied())
            .min()
            .flatten();
        let Some(ceiling) = ceiling else {
            self.infrequent.insert(set.clone());
            return Ok(None);
        };

        let mut witness = None;
        let support = if let Some(&stored) = self.rep.entries.get(set) {
            if stored > ceiling {
                return Err(corrupt(format!(
                    "entry {set} has support {stored} above a subset's {ceiling}"
                )));
            }
            self.from_representation += 1;
            stored
        } else {
            let Some((rule, value)) = self.derive_exact(set)? else {
                self.infrequent.insert(set.clone());
                return Ok(None);
            };
            if value < 0 || value as u64 > ceiling {
                return Err(corrupt(format!(
                    "derived support {value} of {set} is outside [0, {ceiling}]"
                )));
            }
            witness = Some(rule);
            self.derived += 1;
            value as u64
        };

        if support >= self.rep.threshold {
            if let Some(rule) = witness {
                self.witnesses.rules.insert(set.clone(), rule);
            }
            self.known.insert(set.clone(), support);
            Ok(Some(support))
        } else {
            self.infrequent.insert(set.clone());
            Ok(None)
        }
    }

    /// Exact rule and value for an itemset absent from the representation,
    /// or `None` when its bounds do not meet.
    fn derive_exact(&mut self, set: &Itemset) -> Result<Option<(Rule, i64)>> {
        for &item in set.items() {
            let Some(sub_rule) = self.witnesses.get(&set.without(item)) else {
                continue;
            };
            let rule = Rule::new(set.clone(), sub_rule.base.with(item));
            let value = rule.evaluate(&self.known)?;
            self.lifted += 1;
            return Ok(Some((rule, value)));
        }
        let interval = bounds::bounds(set, &self.known, Depth::Unbounded)?;
        if interval.is_derivable() {
            Ok(Some((interval.lower_witness, interval.lower)))
        } else {
            Ok(None)
        }
    }
}

fn corrupt(msg: impl Into<String>) -> Error {
    Error::CorruptedRepresentation(msg.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::miner::{mine_ndi, MinerConfig};
    use crate::TransactionDatabase;

    fn example() -> TransactionDatabase {
        TransactionDatabase::from_fimi(include_str!("../data/example1.dat").as_bytes()).unwrap()
    }

    fn abcd() -> Itemset {
        Itemset::from([0, 1, 2, 3])
    }

    #[test]
    fn example_expansion() {
        let rep = mine_ndi(&example(), &MinerConfig::new(1));
        let out = expand(&rep).unwrap();
        assert_eq!(out.frequent.get(&abcd()), Some(&1));
        assert_eq!(out.frequent.len(), 15);
        for (set, s) in &rep.entries {
            assert_eq!(out.frequent.get(set), Some(s));
        }
        assert_eq!(out.from_representation, rep.len());
    }

    #[test]
    fn example_queries() {
        let db = example();
        let rep = mine_ndi(&db, &MinerConfig::new(1));
        assert_eq!(query(&rep, &abcd()).unwrap(), QueryAnswer::Frequent(1));
        assert_eq!(query(&rep, &Itemset::from([0, 9])).unwrap(), QueryAnswer::Infrequent);

        let rep = mine_ndi(&db, &MinerConfig::new(11));
        assert!(rep.is_empty());
        assert_eq!(query(&rep, &Itemset::from([0])).unwrap(), QueryAnswer::Infrequent);

        let rep = mine_ndi(&db, &MinerConfig::new(5));
        assert_eq!(query(&rep, &Itemset::from([0, 1])).unwrap(), QueryAnswer::Infrequent);
        assert_eq!(query(&rep, &Itemset::from([1, 3])).unwrap(), QueryAnswer::Frequent(6));
    }

    #[test]
    fn queries_share_memo() {
        let rep = mine_ndi(&example(), &MinerConfig::new(1));
        let mut rc = Reconstructor::new(&rep).unwrap();
        assert_eq!(rc.query(&Itemset::from([0, 1, 2])).unwrap(), QueryAnswer::Frequent(2));
        assert_eq!(rc.query(&abcd()).unwrap(), QueryAnswer::Frequent(1));
        assert_eq!(rc.query(&Itemset::empty()).unwrap(), QueryAnswer::Frequent(10));
    }

    #[test]
    fn corrupted_entries_are_rejected() {
        let mut rep = mine_ndi(&example(), &MinerConfig::new(1));
        rep.entries.insert(Itemset::from([0, 1]), 6);
        assert!(matches!(expand(&rep), Err(Error::CorruptedRepresentation(_))));

        let mut rep = mine_ndi(&example(), &MinerConfig::new(3));
        rep.entries.insert(Itemset::from([0, 1]), 1);
        assert!(matches!(expand(&rep), Err(Error::CorruptedRepresentation(_))));

        let mut rep = mine_ndi(&example(), &MinerConfig::new(5));
        rep.entries.insert(Itemset::from([0, 1, 2]), 5);
        assert!(expand(&rep).is_err());
    }

    #[test]
    fn derived_witnesses_are_exact() {
        let rep = mine_ndi(&example(), &MinerConfig::new(1));
        let out = expand(&rep).unwrap();
        assert!(!out.witnesses.is_empty());
        for (set, rule) in out.witnesses.iter() {
            assert_eq!(rule.evaluate(&out).unwrap(), out.frequent[set] as i64);
        }
    }
}
