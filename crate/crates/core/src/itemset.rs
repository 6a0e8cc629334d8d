use std::fmt;

/// A set of dense item ids kept in strictly ascending order.
///
/// Ordering is lexicographic on the id sequence, which is the processing
/// order used throughout the miners.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Itemset(Vec<u32>);

impl Itemset {
    pub fn empty() -> Self {
        Itemset(Vec::new())
    }

    /// Builds an itemset from arbitrary ids, sorting and dropping duplicates.
    pub fn new(mut items: Vec<u32>) -> Self {
        items.sort_unstable();
        items.dedup();
        Itemset(items)
    }

    pub fn singleton(item: u32) -> Self {
        Itemset(vec![item])
    }

    pub fn items(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, item: u32) -> bool {
        self.0.binary_search(&item).is_ok()
    }

    pub fn is_subset_of(&self, other: &Itemset) -> bool {
        let mut rest = other.0.iter();
        self.0.iter().all(|a| rest.by_ref().any(|b| b == a))
    }

    pub fn with(&self, item: u32) -> Itemset {
        match self.0.binary_search(&item) {
            Ok(_) => self.clone(),
            Err(pos) => {
                let mut items = self.0.clone();
                items.insert(pos, item);
                Itemset(items)
            }
        }
    }

    pub fn without(&self, item: u32) -> Itemset {
        Itemset(self.0.iter().copied().filter(|&i| i != item).collect())
    }

    pub fn union(&self, other: &Itemset) -> Itemset {
        let mut items = Vec::with_capacity(self.len() + other.len());
        let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&x), Some(&&y)) => {
                    if x <= y {
                        items.push(x);
                        a.next();
                        if x == y {
                            b.next();
                        }
                    } else {
                        items.push(y);
                        b.next();
                    }
                }
                (Some(_), None) => items.extend(a.by_ref().copied()),
                (None, Some(_)) => items.extend(b.by_ref().copied()),
                (None, None) => break,
            }
        }
        Itemset(items)
    }

    /// Items of `self` that are not in `other`.
    pub fn difference(&self, other: &Itemset) -> Itemset {
        Itemset(self.0.iter().copied().filter(|&i| !other.contains(i)).collect())
    }

    /// The subset selected by the bits of `mask` (bit `b` selects the `b`-th item).
    pub fn select(&self, mask: u64) -> Itemset {
        Itemset(
            self.0
                .iter()
                .enumerate()
                .filter(|(b, _)| mask >> b & 1 == 1)
                .map(|(_, &i)| i)
                .collect(),
        )
    }

    /// Inverse of [`Itemset::select`]; `None` when `subset` is not contained in `self`.
    pub fn mask_of(&self, subset: &Itemset) -> Option<u64> {
        subset.0.iter().try_fold(0u64, |mask, item| {
            self.0.binary_search(item).ok().map(|b| mask | 1 << b)
        })
    }

    /// All subsets obtained by removing exactly one item, in item order.
    pub fn immediate_subsets(&self) -> impl Iterator<Item = Itemset> + '_ {
        self.0.iter().map(move |&i| self.without(i))
    }
}

impl<const N: usize> From<[u32; N]> for Itemset {
    fn from(items: [u32; N]) -> Self {
        Itemset::new(items.to_vec())
    }
}

impl From<Vec<u32>> for Itemset {
    fn from(items: Vec<u32>) -> Self {
        Itemset::new(items)
    }
}

impl FromIterator<u32> for Itemset {
    fn from_iter<T: IntoIterator<Item = u32>>(iter: T) -> Self {
        Itemset::new(iter.into_iter().collect())
    }
}

impl fmt::Debug for Itemset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Itemset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (n, item) in self.0.iter().enumerate() {
            if n > 0 {
                f.write_str(",")?;
            }
            write!(f, "{item}")?;
        }
        f.write_str("}")
    }
}
