//! Finite ground sets of exact rationals and weight functions on them.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::arith::{Int, Rat};

/// A finite set of exact rationals, stored strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GroundSet {
    elems: Vec<Rat>,
}

impl GroundSet {
    /// Builds a set from arbitrary elements, sorting and removing duplicates.
    pub fn new<I: IntoIterator<Item = Rat>>(elems: I) -> Self {
        let mut elems: Vec<Rat> = elems.into_iter().collect();
        elems.sort();
        elems.dedup();
        GroundSet { elems }
    }

    pub fn from_ints<I: IntoIterator<Item = i64>>(elems: I) -> Self {
        Self::new(elems.into_iter().map(crate::arith::rat))
    }

    pub fn empty() -> Self {
        GroundSet { elems: Vec::new() }
    }

    pub fn singleton(x: Rat) -> Self {
        GroundSet { elems: alloc::vec![x] }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Rat> {
        self.elems.iter()
    }

    pub fn elems(&self) -> &[Rat] {
        &self.elems
    }

    pub fn contains(&self, x: &Rat) -> bool {
        self.elems.binary_search(x).is_ok()
    }

    pub fn min(&self) -> Option<&Rat> {
        self.elems.first()
    }

    pub fn max(&self) -> Option<&Rat> {
        self.elems.last()
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&Rat::zero())
    }

    /// True when every element is a positive integer.
    pub fn is_positive_integers(&self) -> bool {
        self.elems
            .iter()
            .all(|x| x.is_integer() && x.is_positive())
    }

    /// True when every element is an integer.
    pub fn is_integers(&self) -> bool {
        self.elems.iter().all(|x| x.is_integer())
    }

    pub fn is_subset_of(&self, other: &GroundSet) -> bool {
        self.elems.iter().all(|x| other.contains(x))
    }

    pub fn union(&self, other: &GroundSet) -> GroundSet {
        GroundSet::new(self.iter().chain(other.iter()).cloned())
    }

    pub fn difference(&self, other: &GroundSet) -> GroundSet {
        GroundSet::new(self.iter().filter(|x| !other.contains(x)).cloned())
    }

    pub fn intersection(&self, other: &GroundSet) -> GroundSet {
        GroundSet::new(self.iter().filter(|x| other.contains(x)).cloned())
    }

    pub fn is_disjoint_from(&self, other: &GroundSet) -> bool {
        self.elems.iter().all(|x| !other.contains(x))
    }

    /// The dilate `λ·A`.
    pub fn dilate(&self, lambda: &Rat) -> GroundSet {
        GroundSet::new(self.iter().map(|x| x * lambda))
    }

    /// Smallest positive integer `λ` such that `λ·A ⊆ ℤ`: the lcm of the
    /// element denominators.
    pub fn clearing_denominator(&self) -> Int {
        let mut l = Int::one();
        for x in &self.elems {
            l = num_integer::lcm(l, x.denom().clone());
        }
        l
    }
}

impl fmt::Display for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.elems.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

/// Error parsing the `{1, 2, 5/3}` set text form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseSetError(pub String);

impl fmt::Display for ParseSetError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid set literal: {}", self.0)
    }
}

impl FromStr for GroundSet {
    type Err = ParseSetError;

    /// Parses the text form `{1, 2, 5/3}`.
    fn from_str(s: &str) -> Result<Self, ParseSetError> {
        let t = s.trim();
        let inner = t
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(|| ParseSetError("expected braces".to_string()))?;
        let mut elems = Vec::new();
        for part in inner.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let x: Rat = part
                .parse()
                .map_err(|_| ParseSetError(part.to_string()))?;
            elems.push(x);
        }
        Ok(GroundSet::new(elems))
    }
}

/// A map from ground elements to non-negative exact rational weights;
/// elements outside the table weigh 0.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WeightFn {
    table: alloc::collections::BTreeMap<Rat, Rat>,
}

/// Error building a weight function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeightError {
    Negative(String),
}

impl fmt::Display for WeightError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightError::Negative(at) => write!(f, "negative weight at {at}"),
        }
    }
}

impl WeightFn {
    pub fn new<I: IntoIterator<Item = (Rat, Rat)>>(entries: I) -> Result<Self, WeightError> {
        let mut table = alloc::collections::BTreeMap::new();
        for (k, v) in entries {
            if v.is_negative() {
                return Err(WeightError::Negative(k.to_string()));
            }
            if !v.is_zero() {
                table.insert(k, v);
            }
        }
        Ok(WeightFn { table })
    }

    /// The constant weight 1 on every element of `a`.
    pub fn ones(a: &GroundSet) -> Self {
        WeightFn {
            table: a.iter().map(|x| (x.clone(), Rat::one())).collect(),
        }
    }

    pub fn get(&self, x: &Rat) -> Rat {
        self.table.get(x).cloned().unwrap_or_else(Rat::zero)
    }

    /// `Σ_a w(a)^2` over the support.
    pub fn sum_of_squares(&self) -> Rat {
        self.table.values().map(|v| v * v).sum()
    }

    pub fn support(&self) -> impl Iterator<Item = &Rat> {
        self.table.keys()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, ratio};

    #[test]
    fn parse_and_order() {
        let a: GroundSet = "{2, 1, 5/3}".parse().unwrap();
        assert_eq!(a.len(), 3);
        assert_eq!(a.elems(), &[rat(1), ratio(5, 3), rat(2)]);
        assert!(a.contains(&ratio(5, 3)));
        assert!(!a.contains(&rat(3)));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("1, 2".parse::<GroundSet>().is_err());
        assert!("{1, x}".parse::<GroundSet>().is_err());
        assert!("{}".parse::<GroundSet>().unwrap().is_empty());
    }

    #[test]
    fn clearing_denominator_is_lcm() {
        let a: GroundSet = "{1/2, 2/3, 5}".parse().unwrap();
        assert_eq!(a.clearing_denominator(), crate::arith::int(6));
    }

    #[test]
    fn weights_reject_negative() {
        assert!(WeightFn::new([(rat(1), rat(-1))]).is_err());
        let w = WeightFn::new([(rat(1), rat(2)), (rat(3), rat(0))]).unwrap();
        assert_eq!(w.get(&rat(1)), rat(2));
        assert_eq!(w.get(&rat(3)), rat(0));
        assert_eq!(w.sum_of_squares(), rat(4));
    }
}
