//! Query complexity, skew-dimension and binary-set machinery, subset
//! extraction with query witnesses, greedy covering, and the
//! sumset-growth / averaging checkers.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_traits::{Signed, Zero};

use crate::arith::{prime_support, rat, rat_pow, Rat};
use crate::energy::{
    self, energy_e_fg, energy_e_g, vector_fold_difference, EnergyError, Method, VectorMap,
};
use crate::ground::{GroundSet, WeightFn};
use crate::padic::{fiber, valuation};

pub const EXACT_QC_LIMIT: usize = 10;
pub const BINARY_SUBSET_LIMIT: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StructureError {
    EmptySet,
    ZeroElement,
    /// Two elements share every valuation vector (equal absolute value):
    /// no prime-valuation decision tree can tell them apart.
    Inseparable(String, String),
    SizeOverLimit { size: usize, limit: usize },
    NotPositiveIntegers,
    HypothesisFailed(String),
    InvalidWitness(String),
    PostconditionFailed(String),
}

impl fmt::Display for StructureError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructureError::EmptySet => write!(f, "empty set"),
            StructureError::ZeroElement => write!(f, "zero element"),
            StructureError::Inseparable(a, b) => {
                write!(f, "elements {a} and {b} have identical valuation vectors")
            }
            StructureError::SizeOverLimit { size, limit } => {
                write!(f, "size {size} over exhaustive limit {limit}")
            }
            StructureError::NotPositiveIntegers => write!(f, "set must lie in positive integers"),
            StructureError::HypothesisFailed(m) => write!(f, "hypothesis failed: {m}"),
            StructureError::InvalidWitness(m) => write!(f, "invalid witness: {m}"),
            StructureError::PostconditionFailed(m) => write!(f, "postcondition failed: {m}"),
        }
    }
}

impl From<EnergyError> for StructureError {
    fn from(e: EnergyError) -> Self {
        StructureError::HypothesisFailed(e.to_string())
    }
}

// ---------------------------------------------------------------------------
// query strategies
// ---------------------------------------------------------------------------

/// An adaptive prime-valuation decision tree: query `ν_prime`, then descend
/// into the child keyed by the observed valuation. A missing child (`None`)
/// is a leaf — the fiber there must already be a singleton.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueryStrategy {
    pub prime: u64,
    pub children: BTreeMap<i64, Option<QueryStrategy>>,
}

impl QueryStrategy {
    /// Number of queries along the longest root-to-leaf path.
    pub fn depth(&self) -> u32 {
        1 + self
            .children
            .values()
            .map(|c| c.as_ref().map_or(0, QueryStrategy::depth))
            .max()
            .unwrap_or(0)
    }
}

/// Replays a strategy against a set: every fiber must be covered by a child,
/// and every leaf fiber must be a singleton (so the observed valuation
/// vectors are pairwise distinct).
pub fn validate_strategy(a: &GroundSet, strategy: &QueryStrategy) -> Result<(), StructureError> {
    if a.contains_zero() {
        return Err(StructureError::ZeroElement);
    }
    let fib = fiber(a, strategy.prime)
        .map_err(|e| StructureError::InvalidWitness(e.to_string()))?;
    for (&n, g) in fib.fibers() {
        match strategy.children.get(&n) {
            None => {
                return Err(StructureError::InvalidWitness(alloc::format!(
                    "no child for valuation {n} at prime {}",
                    strategy.prime
                )))
            }
            Some(None) => {
                if g.len() > 1 {
                    return Err(StructureError::InvalidWitness(alloc::format!(
                        "unresolved fiber of size {} at prime {} valuation {n}",
                        g.len(),
                        strategy.prime
                    )));
                }
            }
            Some(Some(sub)) => validate_strategy(g, sub)?,
        }
    }
    Ok(())
}

fn check_separable(a: &GroundSet) -> Result<(), StructureError> {
    if a.contains_zero() {
        return Err(StructureError::ZeroElement);
    }
    for x in a.iter() {
        let neg = -x;
        if x.is_positive() && a.contains(&neg) {
            return Err(StructureError::Inseparable(neg.to_string(), x.to_string()));
        }
    }
    Ok(())
}

fn leaf_strategy(a: &GroundSet) -> QueryStrategy {
    // one query against any prime resolves a singleton
    let x = a.iter().next().expect("nonempty");
    QueryStrategy {
        prime: 2,
        children: [(valuation(2, x).expect("non-zero"), None)].into_iter().collect(),
    }
}

type Memo = BTreeMap<Vec<Rat>, (u32, QueryStrategy)>;

/// Minimal number of queries separating a set of size ≥ 2, with a witness.
fn separate(a: &GroundSet, memo: &mut Memo) -> Result<(u32, QueryStrategy), StructureError> {
    let key: Vec<Rat> = a.elems().to_vec();
    if let Some(hit) = memo.get(&key) {
        return Ok(hit.clone());
    }
    let primes = prime_support(a.iter());
    let mut best: Option<(u32, QueryStrategy)> = None;
    for &p in &primes {
        let fib = fiber(a, p).map_err(|_| StructureError::ZeroElement)?;
        if fib.fibers().len() == 1 {
            continue;
        }
        let mut cost = 0u32;
        let mut children: BTreeMap<i64, Option<QueryStrategy>> = BTreeMap::new();
        let mut feasible = true;
        for (&n, g) in fib.fibers() {
            if g.len() == 1 {
                children.insert(n, None);
            } else {
                match separate(g, memo) {
                    Ok((c, sub)) => {
                        cost = cost.max(c);
                        children.insert(n, Some(sub));
                    }
                    Err(StructureError::Inseparable(_, _)) => {
                        feasible = false;
                        break;
                    }
                    Err(e) => return Err(e),
                }
            }
        }
        if !feasible {
            continue;
        }
        let total = 1 + cost;
        let candidate = (total, QueryStrategy { prime: p, children });
        if best.as_ref().map_or(true, |(b, _)| total < *b) {
            best = Some(candidate);
        }
    }
    let result = best.ok_or_else(|| {
        // nothing splits: all valuation vectors coincide
        let mut it = a.iter();
        let x = it.next().map(|x| x.to_string()).unwrap_or_default();
        let y = it.next().map(|x| x.to_string()).unwrap_or_default();
        StructureError::Inseparable(x, y)
    })?;
    memo.insert(key, result.clone());
    Ok(result)
}

/// Exact query complexity by exhaustive memoized search over the prime
/// support. Convention: `q({a}) = 1` (a single query separates a singleton).
pub fn query_complexity_exact(a: &GroundSet) -> Result<(u32, QueryStrategy), StructureError> {
    query_complexity_exact_with_limit(a, EXACT_QC_LIMIT)
}

pub fn query_complexity_exact_with_limit(
    a: &GroundSet,
    limit: usize,
) -> Result<(u32, QueryStrategy), StructureError> {
    if a.is_empty() {
        return Err(StructureError::EmptySet);
    }
    if a.len() > limit {
        return Err(StructureError::SizeOverLimit {
            size: a.len(),
            limit,
        });
    }
    check_separable(a)?;
    if a.len() == 1 {
        return Ok((1, leaf_strategy(a)));
    }
    let mut memo = Memo::new();
    separate(a, &mut memo)
}

/// Upper bound on query complexity: greedily pick the prime giving the most
/// fibers at every node. Output is a valid witness, depth ≥ exact q.
pub fn query_complexity_greedy(a: &GroundSet) -> Result<(u32, QueryStrategy), StructureError> {
    if a.is_empty() {
        return Err(StructureError::EmptySet);
    }
    check_separable(a)?;
    if a.len() == 1 {
        return Ok((1, leaf_strategy(a)));
    }
    fn go(a: &GroundSet) -> Result<(u32, QueryStrategy), StructureError> {
        let primes = prime_support(a.iter());
        let mut best: Option<(usize, u64)> = None;
        for &p in &primes {
            let count = fiber(a, p)
                .map_err(|_| StructureError::ZeroElement)?
                .fibers()
                .len();
            if count >= 2 && best.map_or(true, |(c, _)| count > c) {
                best = Some((count, p));
            }
        }
        let (_, p) = best.ok_or_else(|| {
            let mut it = a.iter();
            StructureError::Inseparable(
                it.next().map(|x| x.to_string()).unwrap_or_default(),
                it.next().map(|x| x.to_string()).unwrap_or_default(),
            )
        })?;
        let fib = fiber(a, p).map_err(|_| StructureError::ZeroElement)?;
        let mut cost = 0u32;
        let mut children: BTreeMap<i64, Option<QueryStrategy>> = BTreeMap::new();
        for (&n, g) in fib.fibers() {
            if g.len() == 1 {
                children.insert(n, None);
            } else {
                let (c, sub) = go(g)?;
                cost = cost.max(c);
                children.insert(n, Some(sub));
            }
        }
        Ok((1 + cost, QueryStrategy { prime: p, children }))
    }
    go(a)
}

// ---------------------------------------------------------------------------
// valuation vectors, skew-dimension, binary sets
// ---------------------------------------------------------------------------

/// The map `a ↦ (ν_{p₁}(a), …, ν_{p_r}(a))` over the prime support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValuationVectors {
    pub primes: Vec<u64>,
    pub entries: Vec<(Rat, Vec<i64>)>,
}

impl ValuationVectors {
    pub fn vectors(&self) -> Vec<Vec<i64>> {
        self.entries.iter().map(|(_, v)| v.clone()).collect()
    }
}

pub fn valuation_vectors(a: &GroundSet) -> Result<ValuationVectors, StructureError> {
    if a.contains_zero() {
        return Err(StructureError::ZeroElement);
    }
    let primes = prime_support(a.iter());
    let entries = a
        .iter()
        .map(|x| {
            let v = primes
                .iter()
                .map(|&p| valuation(p, x).expect("non-zero"))
                .collect();
            (x.clone(), v)
        })
        .collect();
    Ok(ValuationVectors { primes, entries })
}

/// Skew-dimension `d_*` by the literal recursion: 0 for a singleton;
/// otherwise split on the highest coordinate taking more than one value.
pub fn skew_dimension(vectors: &[Vec<i64>]) -> Result<u32, StructureError> {
    if vectors.is_empty() {
        return Err(StructureError::EmptySet);
    }
    let mut vs: Vec<Vec<i64>> = vectors.to_vec();
    vs.sort();
    vs.dedup();
    fn go(vs: &[Vec<i64>]) -> u32 {
        if vs.len() <= 1 {
            return 0;
        }
        let r = vs[0].len();
        let split = (0..r)
            .rev()
            .find(|&i| vs.iter().map(|v| v[i]).collect::<BTreeSet<_>>().len() > 1)
            .expect("distinct vectors differ somewhere");
        let mut classes: BTreeMap<i64, Vec<Vec<i64>>> = BTreeMap::new();
        for v in vs {
            classes.entry(v[split]).or_default().push(v.clone());
        }
        1 + classes.values().map(|c| go(c)).max().unwrap_or(0)
    }
    Ok(go(&vs))
}

/// A binary set is a subset of a quasicube: at most two values in the last
/// coordinate, and both slices binary; in dimension 0 at most one point.
pub fn is_binary(vectors: &[Vec<i64>]) -> bool {
    let mut vs: Vec<Vec<i64>> = vectors.to_vec();
    vs.sort();
    vs.dedup();
    fn go(vs: &[Vec<i64>], dim: usize) -> bool {
        if vs.len() <= 1 {
            return true;
        }
        if dim == 0 {
            return false;
        }
        let last: BTreeSet<i64> = vs.iter().map(|v| v[dim - 1]).collect();
        if last.len() > 2 {
            return false;
        }
        last.iter().all(|&y| {
            let slice: Vec<Vec<i64>> = vs
                .iter()
                .filter(|v| v[dim - 1] == y)
                .map(|v| v[..dim - 1].to_vec())
                .collect();
            go(&slice, dim - 1)
        })
    }
    let dim = vs.first().map_or(0, Vec::len);
    go(&vs, dim)
}

/// Maximum-cardinality binary subset, by subset enumeration.
pub fn largest_binary_subset(
    vectors: &[Vec<i64>],
    limit: usize,
) -> Result<Vec<Vec<i64>>, StructureError> {
    let mut vs: Vec<Vec<i64>> = vectors.to_vec();
    vs.sort();
    vs.dedup();
    if vs.len() > limit {
        return Err(StructureError::SizeOverLimit {
            size: vs.len(),
            limit,
        });
    }
    let n = vs.len();
    let mut best: Vec<Vec<i64>> = Vec::new();
    for mask in 0u32..(1 << n) {
        if (mask.count_ones() as usize) <= best.len() {
            continue;
        }
        let subset: Vec<Vec<i64>> = (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| vs[i].clone())
            .collect();
        if is_binary(&subset) {
            best = subset;
        }
    }
    Ok(best)
}

// ---------------------------------------------------------------------------
// low-query-complexity subset extraction
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtractReport {
    pub subset: GroundSet,
    pub witness: QueryStrategy,
    /// The certified depth budget `⌈log₂(2K)⌉`.
    pub depth_budget: u32,
}

/// Smallest `t ≥ 1` with `2^t ≥ x`.
fn ceil_log2_rat(x: &Rat) -> u32 {
    let mut t = 1u32;
    let mut pow = rat(2);
    while &pow < x {
        pow = pow * rat(2);
        t += 1;
    }
    t
}

/// Under the hypothesis `|A·X·X| ≤ K|X|`, extracts `B ⊆ A` with
/// `|B| ≥ |A|/K` and a query witness of depth ≤ `⌈log₂(2K)⌉`.
///
/// At `|A| ≤ 12` the subset is found exhaustively (largest subset admitting
/// a witness within budget); beyond that a greedy coordinate-split on the
/// valuation vectors is used. Postconditions are re-verified either way.
pub fn extract_low_qc_subset(
    a: &GroundSet,
    x: &GroundSet,
    k: &Rat,
) -> Result<ExtractReport, StructureError> {
    if a.is_empty() || x.is_empty() {
        return Err(StructureError::EmptySet);
    }
    if !a.is_positive_integers() || !x.is_positive_integers() {
        return Err(StructureError::NotPositiveIntegers);
    }
    let axx = energy::product_set(&energy::product_set(a, x), x);
    let lhs = rat(axx.len() as i64);
    let rhs = k * rat(x.len() as i64);
    if lhs > rhs {
        return Err(StructureError::HypothesisFailed(alloc::format!(
            "|A·X·X|/|X| = {}/{} exceeds K = {k}",
            axx.len(),
            x.len()
        )));
    }
    let budget = ceil_log2_rat(&(rat(2) * k));
    let min_size = {
        // smallest integer ≥ |A|/K
        let need = rat(a.len() as i64) / k;
        need.ceil().to_integer()
    };

    let found = if a.len() <= 12 {
        exhaustive_extract(a, budget)
    } else {
        greedy_split_extract(a, budget)?
    };
    let (subset, witness) = found.ok_or_else(|| {
        StructureError::PostconditionFailed(alloc::format!(
            "no subset with witness depth <= {budget}"
        ))
    })?;
    if rat(subset.len() as i64) < rat(1) * Rat::from(min_size.clone()) {
        return Err(StructureError::PostconditionFailed(alloc::format!(
            "subset size {} below |A|/K",
            subset.len()
        )));
    }
    validate_strategy(&subset, &witness)?;
    if witness.depth() > budget {
        return Err(StructureError::PostconditionFailed(
            "witness depth over budget".to_string(),
        ));
    }
    Ok(ExtractReport {
        subset,
        witness,
        depth_budget: budget,
    })
}

pub(crate) fn witness_within(b: &GroundSet, budget: u32) -> Option<QueryStrategy> {
    let exact = if b.len() <= EXACT_QC_LIMIT {
        query_complexity_exact(b).ok()
    } else {
        None
    };
    let (t, strat) = match exact {
        Some(r) => r,
        None => query_complexity_greedy(b).ok()?,
    };
    (t <= budget).then_some(strat)
}

fn exhaustive_extract(a: &GroundSet, budget: u32) -> Option<(GroundSet, QueryStrategy)> {
    let elems = a.elems();
    let n = elems.len();
    let mut masks: Vec<u32> = (1..(1u32 << n)).collect();
    masks.sort_by_key(|m| core::cmp::Reverse(m.count_ones()));
    for mask in masks {
        let subset = GroundSet::new(
            (0..n)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| elems[i].clone()),
        );
        if let Some(w) = witness_within(&subset, budget) {
            return Some((subset, w));
        }
    }
    None
}

fn greedy_split_extract(
    a: &GroundSet,
    budget: u32,
) -> Result<Option<(GroundSet, QueryStrategy)>, StructureError> {
    let mut b = a.clone();
    loop {
        if let Some(w) = witness_within(&b, budget) {
            return Ok(Some((b, w)));
        }
        // split on the highest prime-coordinate still taking ≥ 2 values,
        // keep the larger side (mirrors the skew-dimension recursion)
        let vv = valuation_vectors(&b)?;
        let r = vv.primes.len();
        let split = (0..r).rev().find(|&i| {
            vv.entries
                .iter()
                .map(|(_, v)| v[i])
                .collect::<BTreeSet<_>>()
                .len()
                > 1
        });
        let Some(i) = split else {
            return Ok(None);
        };
        let mut classes: BTreeMap<i64, Vec<Rat>> = BTreeMap::new();
        for (x, v) in &vv.entries {
            classes.entry(v[i]).or_default().push(x.clone());
        }
        let largest = classes
            .into_values()
            .max_by_key(Vec::len)
            .expect("nonempty");
        b = GroundSet::new(largest);
    }
}

// ---------------------------------------------------------------------------
// greedy covering
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverReport {
    pub cover: GroundSet,
    /// `C = |A·B|/|B|`.
    pub c: Rat,
    /// The asserted size bound `⌈C·(L+1)⌉` with `L` a rational upper bound
    /// on `ln|A|`.
    pub size_bound: usize,
    pub holds: bool,
}

/// Rational upper bound on `ln n` via the trapezoid rule on `1/x`:
/// `ln n ≤ H_n − 1/2 − 1/(2n)`.
fn ln_upper(n: usize) -> Rat {
    if n <= 1 {
        return Rat::zero();
    }
    let h: Rat = (1..=n as i64).map(|k| rat(1) / rat(k)).sum();
    h - crate::arith::ratio(1, 2) - rat(1) / rat(2 * n as i64)
}

/// Greedy multiplicative covering: finds `S ⊆ A·B⁻¹` with `A ⊆ S·B`,
/// picking the quotient covering the most uncovered elements each round.
pub fn greedy_cover(a: &GroundSet, b: &GroundSet) -> Result<CoverReport, StructureError> {
    if a.is_empty() || b.is_empty() {
        return Err(StructureError::EmptySet);
    }
    if a.contains_zero() || b.contains_zero() {
        return Err(StructureError::ZeroElement);
    }
    let candidates = energy::ratio_set(a, b)?;
    let ab = energy::product_set(a, b);
    let c = rat(ab.len() as i64) / rat(b.len() as i64);
    let mut uncovered = a.clone();
    let mut cover: Vec<Rat> = Vec::new();
    while !uncovered.is_empty() {
        let mut best: Option<(usize, &Rat)> = None;
        for s in candidates.iter() {
            let hits = b.iter().filter(|y| uncovered.contains(&(s * *y))).count();
            if hits > 0 && best.map_or(true, |(h, _)| hits > h) {
                best = Some((hits, s));
            }
        }
        let (_, s) = best.expect("every a ∈ A is covered by a/b for b ∈ B");
        let covered = GroundSet::new(b.iter().map(|y| s * y));
        uncovered = uncovered.difference(&covered);
        cover.push(s.clone());
    }
    let cover = GroundSet::new(cover);
    let bound_rat = &c * (ln_upper(a.len()) + rat(1));
    let size_bound = bound_rat.ceil().to_integer().try_into().unwrap_or(usize::MAX);
    let holds = cover.len() <= size_bound.max(1);
    Ok(CoverReport {
        cover,
        c,
        size_bound: size_bound.max(1),
        holds,
    })
}

// ---------------------------------------------------------------------------
// sumset growth and averaging checkers
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlunneckeReport {
    pub k: Rat,
    pub lhs: usize,
    pub rhs: Rat,
    pub holds: bool,
}

/// `|mA − nA| ≤ K^{m+n}|A|` with `K = |A+A|/|A|`.
pub fn check_plunnecke(a: &GroundSet, m: u32, n: u32) -> Result<PlunneckeReport, StructureError> {
    if a.is_empty() {
        return Err(StructureError::EmptySet);
    }
    let k = rat(energy::sum_set(a, a).len() as i64) / rat(a.len() as i64);
    let lhs = energy::m_sum_minus_n_sum(a, m, n).len();
    let rhs = rat_pow(&k, m + n) * rat(a.len() as i64);
    let holds = rat(lhs as i64) <= rhs;
    Ok(PlunneckeReport { k, lhs, rhs, holds })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AveragingReport {
    pub lhs: Rat,
    /// `|s·f(A) − s·f(A)|`.
    pub factor: usize,
    pub rhs: Rat,
    pub holds: bool,
}

/// `E_{s,𝔞}(A; g) ≤ |s·f(A) − s·f(A)| · E_{s,𝔞}(A; f, g)`.
pub fn check_averaging(
    a: &GroundSet,
    w: &WeightFn,
    f: &VectorMap,
    g: &VectorMap,
    s: u32,
) -> Result<AveragingReport, StructureError> {
    let lhs = energy_e_g(a, w, g, s, Method::Auto)?.value;
    let factor = vector_fold_difference(a, f, s)?.len();
    let coupled = energy_e_fg(a, w, f, g, s, Method::Auto)?.value;
    let rhs = rat(factor as i64) * coupled;
    let holds = lhs <= rhs;
    Ok(AveragingReport {
        lhs,
        factor,
        rhs,
        holds,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthReport {
    pub u_size: usize,
    /// `max_{x ∈ U′−A} |(A+x) ∩ U′|`.
    pub max_overlap: usize,
    /// `|U′| / |A|`.
    pub size_ratio: Rat,
    /// Per requested `(m,n)`: `|mU′ − nU′|` and its ratio to `|U′|`.
    pub fold_sizes: Vec<(u32, u32, usize, Rat)>,
}

/// Measures every quantity in the slow-growth conclusion exactly; ratios
/// only, no pass/fail (the comparison constants are unspecified).
pub fn verify_growth_conclusion(
    a: &GroundSet,
    u_prime: &GroundSet,
    pairs: &[(u32, u32)],
) -> Result<GrowthReport, StructureError> {
    if u_prime.is_empty() || a.is_empty() {
        return Err(StructureError::EmptySet);
    }
    let shifts = energy::difference_set(u_prime, a);
    let max_overlap = shifts
        .iter()
        .map(|x| {
            a.iter()
                .filter(|y| u_prime.contains(&(*y + x)))
                .count()
        })
        .max()
        .unwrap_or(0);
    let fold_sizes = pairs
        .iter()
        .map(|&(m, n)| {
            let size = energy::m_sum_minus_n_sum(u_prime, m, n).len();
            let ratio = rat(size as i64) / rat(u_prime.len() as i64);
            (m, n, size, ratio)
        })
        .collect();
    Ok(GrowthReport {
        u_size: u_prime.len(),
        max_overlap,
        size_ratio: rat(u_prime.len() as i64) / rat(a.len() as i64),
        fold_sizes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::PolyQ;

    #[test]
    fn qc_fixtures() {
        let (t, strat) = query_complexity_exact(&GroundSet::from_ints([2, 4, 8])).unwrap();
        assert_eq!(t, 1);
        assert_eq!(strat.prime, 2);

        let (t, strat) = query_complexity_exact(&GroundSet::from_ints([6, 10, 15])).unwrap();
        assert_eq!(t, 2);
        validate_strategy(&GroundSet::from_ints([6, 10, 15]), &strat).unwrap();

        let (t, _) = query_complexity_exact(&GroundSet::from_ints([7])).unwrap();
        assert_eq!(t, 1);

        assert!(matches!(
            query_complexity_exact(&GroundSet::from_ints([-3, 3])),
            Err(StructureError::Inseparable(_, _))
        ));
        assert!(query_complexity_exact(&GroundSet::from_ints([0, 2])).is_err());
    }

    #[test]
    fn qc_greedy_is_valid_upper_bound() {
        for elems in [
            alloc::vec![2i64, 4, 8],
            alloc::vec![6, 10, 15],
            alloc::vec![6, 36, 216, 5],
            alloc::vec![2, 3, 5, 7, 11],
            alloc::vec![12, 18, 30, 45],
        ] {
            let a = GroundSet::from_ints(elems);
            let (tg, sg) = query_complexity_greedy(&a).unwrap();
            let (te, _) = query_complexity_exact(&a).unwrap();
            validate_strategy(&a, &sg).unwrap();
            assert!(tg >= te);
            assert_eq!(sg.depth(), tg);
        }
    }

    #[test]
    fn skew_dimension_examples() {
        assert_eq!(skew_dimension(&[alloc::vec![3, 1, 4]]).unwrap(), 0);
        assert_eq!(
            skew_dimension(&[alloc::vec![0, 0], alloc::vec![1, 0]]).unwrap(),
            1
        );
        let vv = valuation_vectors(&GroundSet::from_ints([6, 10, 15])).unwrap();
        assert_eq!(vv.primes, alloc::vec![2, 3, 5]);
        assert_eq!(skew_dimension(&vv.vectors()).unwrap(), 2);
        assert!(skew_dimension(&[]).is_err());
    }

    #[test]
    fn skew_dimension_bounds_query_complexity() {
        for elems in [
            alloc::vec![2i64, 4, 8],
            alloc::vec![6, 10, 15],
            alloc::vec![2, 3, 5, 7],
            alloc::vec![12, 18, 30, 45, 50],
        ] {
            let a = GroundSet::from_ints(elems);
            let (t, _) = query_complexity_exact(&a).unwrap();
            let d = skew_dimension(&valuation_vectors(&a).unwrap().vectors()).unwrap();
            assert!(t <= d + 1);
        }
    }

    #[test]
    fn binary_sets() {
        let grid = [
            alloc::vec![0, 0],
            alloc::vec![1, 0],
            alloc::vec![0, 1],
            alloc::vec![1, 1],
        ];
        assert!(is_binary(&grid));
        assert_eq!(largest_binary_subset(&grid, 12).unwrap().len(), 4);

        let line = [alloc::vec![0], alloc::vec![1], alloc::vec![2]];
        assert!(!is_binary(&line));
        assert_eq!(largest_binary_subset(&line, 12).unwrap().len(), 2);

        let single = [alloc::vec![5, 5]];
        assert_eq!(largest_binary_subset(&single, 12).unwrap().len(), 1);
    }

    #[test]
    fn extract_subset_examples() {
        let a = GroundSet::from_ints([1, 2, 4, 8]);
        let r = extract_low_qc_subset(&a, &a, &crate::arith::ratio(5, 2)).unwrap();
        assert_eq!(r.subset, a);
        assert!(r.witness.depth() <= r.depth_budget);

        let b = GroundSet::from_ints([6, 10, 15]);
        let x = GroundSet::from_ints([1]);
        let r = extract_low_qc_subset(&b, &x, &rat(3)).unwrap();
        assert!(!r.subset.is_empty());
        validate_strategy(&r.subset, &r.witness).unwrap();

        let single = GroundSet::from_ints([5]);
        let r = extract_low_qc_subset(&single, &x, &rat(1)).unwrap();
        assert_eq!(r.subset, single);

        // hypothesis failure reported with the ratio
        assert!(matches!(
            extract_low_qc_subset(&a, &a, &rat(1)),
            Err(StructureError::HypothesisFailed(_))
        ));
    }

    #[test]
    fn greedy_cover_examples() {
        let a = GroundSet::from_ints([2, 4]);
        let b = GroundSet::from_ints([1, 2]);
        let r = greedy_cover(&a, &b).unwrap();
        assert_eq!(r.cover, GroundSet::from_ints([2]));
        assert!(r.holds);

        let r = greedy_cover(&GroundSet::from_ints([3]), &GroundSet::from_ints([1])).unwrap();
        assert_eq!(r.cover, GroundSet::from_ints([3]));

        let a = GroundSet::from_ints([2, 3, 4, 6]);
        let b = GroundSet::from_ints([1, 2, 3]);
        let r = greedy_cover(&a, &b).unwrap();
        // replay: A ⊆ S·B and S ⊆ A·B⁻¹
        let sb = energy::product_set(&r.cover, &b);
        assert!(a.is_subset_of(&sb));
        assert!(r.cover.is_subset_of(&energy::ratio_set(&a, &b).unwrap()));
        assert!(r.holds);
    }

    #[test]
    fn plunnecke_examples() {
        let r = check_plunnecke(&GroundSet::from_ints([1, 2, 4]), 2, 1).unwrap();
        assert_eq!(r.k, rat(2));
        assert_eq!(r.lhs, 10);
        assert_eq!(r.rhs, rat(24));
        assert!(r.holds);

        let r = check_plunnecke(&GroundSet::from_ints([0]), 3, 2).unwrap();
        assert!(r.holds);

        let r = check_plunnecke(&GroundSet::from_ints([1, 2, 3, 4, 5]), 3, 2).unwrap();
        assert_eq!(r.k, crate::arith::ratio(9, 5));
        assert!(r.holds);
    }

    #[test]
    fn averaging_examples() {
        let a = GroundSet::from_ints([1, 2]);
        let w = WeightFn::ones(&a);
        let f = VectorMap::from_poly(&a, &PolyQ::identity());
        let g = VectorMap::from_poly(&a, &PolyQ::from_ints([0, 0, 1]));
        let r = check_averaging(&a, &w, &f, &g, 1).unwrap();
        assert_eq!(r.lhs, rat(2));
        assert_eq!(r.factor, 3);
        assert_eq!(r.rhs, rat(6));
        assert!(r.holds);

        let single = GroundSet::from_ints([4]);
        let ws = WeightFn::ones(&single);
        let fs = VectorMap::from_poly(&single, &PolyQ::identity());
        let gs = VectorMap::from_poly(&single, &PolyQ::from_ints([0, 0, 1]));
        let r = check_averaging(&single, &ws, &fs, &gs, 1).unwrap();
        assert_eq!(r.lhs, rat(1));
        assert!(r.holds);

        let b = GroundSet::from_ints([1, 2, 3]);
        let wb = WeightFn::ones(&b);
        let fb = VectorMap::from_poly(&b, &PolyQ::identity());
        let gb = VectorMap::from_poly(&b, &PolyQ::from_ints([0, 0, 0, 1]));
        let r = check_averaging(&b, &wb, &fb, &gb, 2).unwrap();
        assert!(r.holds);
    }

    #[test]
    fn growth_report() {
        let a = GroundSet::from_ints([1, 2, 3, 4, 5, 6]);
        let u = energy::fold_sumset(&a, 2);
        let r = verify_growth_conclusion(&a, &u, &[(1, 1)]).unwrap();
        assert_eq!(r.u_size, 11);
        assert!(r.max_overlap >= 1);
        let (m, n, size, _) = r.fold_sizes[0];
        assert_eq!((m, n), (1, 1));
        assert_eq!(size, energy::difference_set(&u, &u).len());

        let single = GroundSet::from_ints([3]);
        let u = GroundSet::from_ints([6]);
        let r = verify_growth_conclusion(&single, &u, &[]).unwrap();
        assert_eq!(r.u_size, 1);
    }
}
