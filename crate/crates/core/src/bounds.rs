//! Inclusion-exclusion deduction rules.
//!
//! For `I ⊆ J` the rule `R_J(I)` evaluates
//!
//! ```text
//! sigma(I, J) = Σ_{I ⊆ I' ⊊ J} (-1)^(|J \ I'| + 1) · support(I')
//! ```
//!
//! which is a lower bound on `support(J)` when `|J \ I|` is even and an upper
//! bound when it is odd; the gap is exactly the number of transactions whose
//! projection on `J` equals `I`. Taking the best bound of each kind over all
//! bases gives the tight interval of `J`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::BuildHasher;
use std::str::FromStr;

use crate::{Error, Itemset, Result};

/// Source of exact supports for the subsets of a target itemset.
///
/// Must answer for the empty itemset with the number of transactions.
pub trait SupportLookup {
    fn support_of(&self, set: &Itemset) -> Option<u64>;
}

impl<S: BuildHasher> SupportLookup for HashMap<Itemset, u64, S> {
    fn support_of(&self, set: &Itemset) -> Option<u64> {
        self.get(set).copied()
    }
}

impl SupportLookup for BTreeMap<Itemset, u64> {
    fn support_of(&self, set: &Itemset) -> Option<u64> {
        self.get(set).copied()
    }
}

impl<L: SupportLookup + ?Sized> SupportLookup for &L {
    fn support_of(&self, set: &Itemset) -> Option<u64> {
        (**self).support_of(set)
    }
}

/// Maximum rule depth `|J \ I|` considered when bounding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Depth {
    Limited(u32),
    Unbounded,
}

impl Depth {
    pub fn limited(k: u32) -> Result<Depth> {
        if k == 0 {
            return Err(Error::InvalidArgument("rule depth must be at least 1".into()));
        }
        Ok(Depth::Limited(k))
    }

    /// Deepest rule usable on a target of `size` items.
    pub fn cap(self, size: usize) -> usize {
        match self {
            Depth::Limited(k) => size.min(k as usize),
            Depth::Unbounded => size,
        }
    }
}

impl Default for Depth {
    fn default() -> Self {
        Depth::Unbounded
    }
}

impl fmt::Display for Depth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Depth::Limited(k) => write!(f, "{k}"),
            Depth::Unbounded => f.write_str("inf"),
        }
    }
}

impl FromStr for Depth {
    type Err = Error;

    fn from_str(s: &str) -> Result<Depth> {
        match s.trim() {
            "inf" | "unbounded" | "∞" => Ok(Depth::Unbounded),
            other => other
                .parse::<u32>()
                .map_err(|_| Error::InvalidArgument(format!("invalid depth `{other}`")))
                .and_then(Depth::limited),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundKind {
    Lower,
    Upper,
}

/// The deduction rule `R_target(base)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rule {
    pub target: Itemset,
    pub base: Itemset,
    pub depth: usize,
    pub kind: BoundKind,
}

impl Rule {
    /// `base` must be a subset of `target`.
    pub fn new(target: Itemset, base: Itemset) -> Rule {
        let depth = target.len() - base.len();
        let kind = if depth % 2 == 0 {
            BoundKind::Lower
        } else {
            BoundKind::Upper
        };
        Rule {
            target,
            base,
            depth,
            kind,
        }
    }

    pub fn evaluate(&self, lookup: &impl SupportLookup) -> Result<i64> {
        sigma(&self.base, &self.target, lookup)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R_{}({})", self.target, self.base)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleValue {
    pub rule: Rule,
    pub value: i64,
}

/// Derived bounds `[lower, upper]` on a support, with one achieving rule per side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportInterval {
    pub lower: i64,
    pub upper: i64,
    pub lower_witness: Rule,
    pub upper_witness: Rule,
}

impl SupportInterval {
    pub fn width(&self) -> i64 {
        self.upper - self.lower
    }

    pub fn is_derivable(&self) -> bool {
        is_derivable(self)
    }

    pub fn contains(&self, support: u64) -> bool {
        self.lower <= support as i64 && support as i64 <= self.upper
    }
}

pub fn is_derivable(interval: &SupportInterval) -> bool {
    interval.lower == interval.upper
}

/// `sigma(base, target)`; zero when `base == target`.
pub fn sigma(base: &Itemset, target: &Itemset, lookup: &impl SupportLookup) -> Result<i64> {
    check_size(target)?;
    let Some(base_mask) = target.mask_of(base) else {
        return Err(Error::InvalidArgument(format!("{base} is not a subset of {target}")));
    };
    let full = full_mask(target.len());
    RuleEvaluator::new(target, lookup).sigma(full & !base_mask)
}

/// Tight interval for `target` from the supports of its subsets, using every
/// rule of depth at most `depth`. The depth-0 rule (support ≥ 0) is always
/// included. Shallow rules are evaluated first and evaluation stops once the
/// bounds meet.
pub fn bounds(target: &Itemset, lookup: &impl SupportLookup, depth: Depth) -> Result<SupportInterval> {
    if target.is_empty() {
        return Err(Error::EmptyTarget);
    }
    check_size(target)?;
    let k = target.len();
    let mut eval = RuleEvaluator::new(target, lookup);
    let mut lower = (0i64, 0u64);
    let mut upper: Option<(i64, u64)> = None;
    'levels: for d in 1..=depth.cap(k) {
        for removed in combinations(k, d) {
            let value = eval.sigma(removed)?;
            if d % 2 == 1 {
                if upper.map_or(true, |(u, _)| value < u) {
                    upper = Some((value, removed));
                }
            } else if value > lower.0 {
                lower = (value, removed);
            }
            if upper.is_some_and(|(u, _)| u == lower.0) {
                break 'levels;
            }
        }
    }
    // k >= 1 and depth >= 1, so at least one odd rule ran
    let upper = upper.expect("depth-1 rules always exist");
    let full = full_mask(k);
    let rule = |removed: u64| Rule::new(target.clone(), target.select(full & !removed));
    Ok(SupportInterval {
        lower: lower.0,
        upper: upper.0,
        lower_witness: rule(lower.1),
        upper_witness: rule(upper.1),
    })
}

/// Evaluates every rule `R_target(I)` with `|target \ I| <= depth`, shallow
/// rules first.
pub fn evaluate_rules(
    target: &Itemset,
    lookup: &impl SupportLookup,
    depth: Depth,
) -> Result<Vec<RuleValue>> {
    check_size(target)?;
    let k = target.len();
    let full = full_mask(k);
    let mut eval = RuleEvaluator::new(target, lookup);
    let mut out = Vec::new();
    for d in 0..=depth.cap(k) {
        for removed in combinations(k, d) {
            out.push(RuleValue {
                rule: Rule::new(target.clone(), target.select(full & !removed)),
                value: eval.sigma(removed)?,
            });
        }
    }
    Ok(out)
}

const MAX_TARGET: usize = 63;

fn check_size(target: &Itemset) -> Result<()> {
    if target.len() > MAX_TARGET {
        return Err(Error::TooLarge {
            size: target.len(),
            limit: MAX_TARGET,
        });
    }
    Ok(())
}

fn full_mask(k: usize) -> u64 {
    if k == 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

/// All `d`-bit masks over `k` bits in increasing numeric order.
fn combinations(k: usize, d: usize) -> impl Iterator<Item = u64> {
    let limit = 1u64 << k;
    let first = if d > k { limit } else { full_mask(d) };
    std::iter::successors(Some(first), move |&m| {
        if m == 0 {
            return None;
        }
        // Gosper's hack
        let c = m & m.wrapping_neg();
        let r = m + c;
        Some((((r ^ m) >> 2) / c) | r)
    })
    .take_while(move |&m| m < limit)
}

/// Evaluates rules for one target, caching subset supports by the mask of
/// removed items.
struct RuleEvaluator<'a, L: ?Sized> {
    target: &'a Itemset,
    lookup: &'a L,
    cache: HashMap<u64, i64>,
}

impl<'a, L: SupportLookup + ?Sized> RuleEvaluator<'a, L> {
    fn new(target: &'a Itemset, lookup: &'a L) -> Self {
        RuleEvaluator {
            target,
            lookup,
            cache: HashMap::new(),
        }
    }

    fn support_without(&mut self, removed: u64) -> Result<i64> {
        if let Some(&s) = self.cache.get(&removed) {
            return Ok(s);
        }
        let set = self.target.select(full_mask(self.target.len()) & !removed);
        let s = self
            .lookup
            .support_of(&set)
            .ok_or(Error::IncompleteLookup { missing: set })? as i64;
        self.cache.insert(removed, s);
        Ok(s)
    }

    /// sigma for the base `target \ removed`: a signed sum over every
    /// non-empty `S ⊆ removed` of `support(target \ S)`.
    fn sigma(&mut self, removed: u64) -> Result<i64> {
        let mut total = 0i64;
        let mut sub = removed;
        while sub != 0 {
            let s = self.support_without(sub)?;
            if sub.count_ones() % 2 == 1 {
                total += s;
            } else {
                total -= s;
            }
            sub = (sub - 1) & removed;
        }
        Ok(total)
    }
}
