//! p-adic valuations, valuation fiberings, and the decoupling inequalities
//! with their explicit constants.
//!
//! The root inequalities `X^{1/s} ≤ C·Σ Yₙ^{1/s}` are certified in exact
//! arithmetic by [`crate::arith::root_sum_le`]; no floating point enters any
//! pass/fail decision.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::arith::{int, is_prime, rat, rat_pow, root_sum_le, Int, Rat};
use crate::energy::{
    self, energy_e, energy_j, energy_m, for_each_solution_e, for_each_solution_j, EnergyError,
    Method,
};
use crate::ground::{GroundSet, WeightFn};
use crate::poly::{PolyQ, PolyVec};
use crate::structure::QueryStrategy;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PadicError {
    ValuationOfZero,
    ZeroElement,
    NotPrime(u64),
    NonPositiveElement(String),
    ConstantPolynomial,
    HypothesisViolated(String),
    InvalidWitness(String),
}

impl fmt::Display for PadicError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PadicError::ValuationOfZero => write!(f, "valuation of zero"),
            PadicError::ZeroElement => write!(f, "zero element"),
            PadicError::NotPrime(p) => write!(f, "{p} is not prime"),
            PadicError::NonPositiveElement(x) => write!(f, "non-positive element {x}"),
            PadicError::ConstantPolynomial => write!(f, "polynomial must have degree >= 1"),
            PadicError::HypothesisViolated(m) => write!(f, "hypothesis violated: {m}"),
            PadicError::InvalidWitness(m) => write!(f, "invalid witness: {m}"),
        }
    }
}

impl From<EnergyError> for PadicError {
    fn from(e: EnergyError) -> Self {
        PadicError::HypothesisViolated(e.to_string())
    }
}

fn int_valuation(p: &Int, n: &Int) -> i64 {
    debug_assert!(!n.is_zero());
    let mut m = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        m = q;
        v += 1;
    }
}

/// Exact p-adic valuation of a non-zero rational, possibly negative.
pub fn valuation(p: u64, x: &Rat) -> Result<i64, PadicError> {
    if !is_prime(p) {
        return Err(PadicError::NotPrime(p));
    }
    if x.is_zero() {
        return Err(PadicError::ValuationOfZero);
    }
    let p = int(p as i64);
    Ok(int_valuation(&p, x.numer()) - int_valuation(&p, x.denom()))
}

/// The partition of a set by p-adic valuation: `A_{p,n} = {a ∈ A | ν_p(a) = n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fibering {
    base: GroundSet,
    prime: u64,
    fibers: BTreeMap<i64, GroundSet>,
}

impl Fibering {
    pub fn base(&self) -> &GroundSet {
        &self.base
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn fibers(&self) -> &BTreeMap<i64, GroundSet> {
        &self.fibers
    }

    /// `ν_p(A)`, the set of valuations attained.
    pub fn valuation_set(&self) -> Vec<i64> {
        self.fibers.keys().copied().collect()
    }

    pub fn fiber(&self, n: i64) -> Option<&GroundSet> {
        self.fibers.get(&n)
    }
}

/// Partitions `A` by p-adic valuation; errors when `0 ∈ A`.
pub fn fiber(a: &GroundSet, p: u64) -> Result<Fibering, PadicError> {
    if a.contains_zero() {
        return Err(PadicError::ZeroElement);
    }
    let mut fibers: BTreeMap<i64, Vec<Rat>> = BTreeMap::new();
    for x in a.iter() {
        fibers.entry(valuation(p, x)?).or_default().push(x.clone());
    }
    Ok(Fibering {
        base: a.clone(),
        prime: p,
        fibers: fibers
            .into_iter()
            .map(|(n, v)| (n, GroundSet::new(v)))
            .collect(),
    })
}

/// One decoupling comparison `E(A)^{1/s} ≤ C · Σₙ E(A_{p,n})^{1/s}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecouplingCheck {
    pub lhs_energy: Rat,
    /// A fully rational envelope of the right side raised to the s-th power:
    /// `C^s · r^{s-1} · Σₙ Eₙ` (power-mean bound), reported for context.
    pub rhs_bound: Rat,
    pub constant_used: Rat,
    pub holds: bool,
    pub fiber_energies: Vec<(i64, Rat)>,
}

fn decoupling_check(lhs: Rat, c: Rat, fiber_energies: Vec<(i64, Rat)>, s: u32) -> DecouplingCheck {
    let terms: Vec<Rat> = fiber_energies.iter().map(|(_, e)| e.clone()).collect();
    let holds = root_sum_le(&lhs, &c, &terms, s);
    let r = terms.len() as i64;
    let sum: Rat = terms.iter().sum();
    let rhs_bound = if r == 0 {
        Rat::zero()
    } else {
        rat_pow(&c, s) * rat_pow(&rat(r), s - 1) * sum
    };
    DecouplingCheck {
        lhs_energy: lhs,
        rhs_bound,
        constant_used: c,
        holds,
        fiber_energies,
    }
}

/// Additive decoupling over valuation fibers with constant `(d²+2)⁴(2s)²`.
/// The constant-term of φ is dropped internally (the additive equation is
/// translation invariant).
pub fn check_chang_additive(
    a: &GroundSet,
    w: &WeightFn,
    phi: &PolyQ,
    p: u64,
    s: u32,
) -> Result<DecouplingCheck, PadicError> {
    if !a.is_positive_integers() {
        let bad = a
            .iter()
            .find(|x| !x.is_integer() || !x.is_positive())
            .map(|x| x.to_string())
            .unwrap_or_default();
        return Err(PadicError::NonPositiveElement(bad));
    }
    let d = phi.degree().filter(|&d| d >= 1).ok_or(PadicError::ConstantPolynomial)?;
    let reduced = phi.drop_constant_term();
    let fib = fiber(a, p)?;
    let phis = PolyVec::uniform(reduced, s);
    let lhs = energy_e(a, w, &phis, Method::Auto)?.value;
    let fiber_energies: Vec<(i64, Rat)> = fib
        .fibers()
        .iter()
        .map(|(&n, f)| Ok((n, energy_e(f, w, &phis, Method::Auto)?.value)))
        .collect::<Result<_, EnergyError>>()?;
    let c = rat_pow(&rat(d as i64 * d as i64 + 2), 4) * rat(4 * s as i64 * s as i64);
    Ok(decoupling_check(lhs, c, fiber_energies, s))
}

/// Multiplicative (coupled-energy) decoupling over valuation fibers with
/// constant `(d+3)¹⁶(2s)²`. Requires `φ(0) ≠ 0`; when `interval_certified`
/// is set, additionally requires all of `A` inside one sign-constant
/// interval of `x` and `φ(x)`.
pub fn check_chang_multiplicative(
    a: &GroundSet,
    w: &WeightFn,
    phi: &PolyQ,
    p: u64,
    s: u32,
    interval_certified: bool,
) -> Result<DecouplingCheck, PadicError> {
    if phi.eval(&Rat::zero()).is_zero() {
        return Err(PadicError::HypothesisViolated("φ(0) = 0".to_string()));
    }
    let d = phi.degree().filter(|&d| d >= 1).ok_or(PadicError::ConstantPolynomial)?;
    if interval_certified {
        energy::certify_interval(a, phi)?;
    }
    let fib = fiber(a, p)?;
    let phis = PolyVec::uniform(phi.clone(), s);
    let lhs = energy_j(a, w, &phis, Method::Auto)?.value;
    let fiber_energies: Vec<(i64, Rat)> = fib
        .fibers()
        .iter()
        .map(|(&n, f)| Ok((n, energy_j(f, w, &phis, Method::Auto)?.value)))
        .collect::<Result<_, EnergyError>>()?;
    let c = rat_pow(&rat(d as i64 + 3), 16) * rat(4 * s as i64 * s as i64);
    Ok(decoupling_check(lhs, c, fiber_energies, s))
}

fn weight_sum_sq(a: &GroundSet, w: &WeightFn) -> Rat {
    a.iter()
        .map(|x| {
            let wx = w.get(x);
            &wx * &wx
        })
        .sum()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QcEnergyBound {
    pub energy: Rat,
    /// `((d²+2)^{4t}(2s)^{2t} Σ𝔞²)^s`, the iterated decoupling bound raised
    /// to the s-th power for exact comparison.
    pub bound: Rat,
    pub depth: u32,
    pub holds: bool,
}

/// Iterated additive decoupling: `E^{1/s} ≤ (d²+2)^{4t}(2s)^{2t} Σ𝔞(a)²`
/// with `t` the depth of a validated query-complexity witness.
pub fn bound_e_via_qc(
    a: &GroundSet,
    w: &WeightFn,
    phi: &PolyQ,
    s: u32,
    strategy: &QueryStrategy,
) -> Result<QcEnergyBound, PadicError> {
    if !a.is_positive_integers() {
        return Err(PadicError::NonPositiveElement(String::new()));
    }
    let d = phi.degree().filter(|&d| d >= 1).ok_or(PadicError::ConstantPolynomial)?;
    crate::structure::validate_strategy(a, strategy)
        .map_err(|e| PadicError::InvalidWitness(e.to_string()))?;
    let t = strategy.depth();
    let energy = energy_e(a, w, &PolyVec::uniform(phi.clone(), s), Method::Auto)?.value;
    let c = rat_pow(&rat(d as i64 * d as i64 + 2), 4 * t) * rat_pow(&rat(2 * s as i64), 2 * t);
    let bound = rat_pow(&(c * weight_sum_sq(a, w)), s);
    let holds = energy <= bound;
    Ok(QcEnergyBound {
        energy,
        bound,
        depth: t,
        holds,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QcRatioReport {
    pub energy: Rat,
    /// `|A^{(s)}/A^{(s)}| (d+3)^{16qs} (2s)^{2qs} (Σ𝔞²)^s` — the explicit
    /// part of a bound carrying an unspecified implicit constant.
    pub bound_part: Rat,
    pub depth: u32,
    /// energy / bound_part; informational only, never pass/fail.
    pub ratio: Rat,
}

/// Multiplicative-energy bound through query complexity. The inequality has
/// an implicit constant, so only the explicit part and the ratio are
/// reported.
pub fn bound_m_via_qc(
    a: &GroundSet,
    w: &WeightFn,
    phi: &PolyQ,
    s: u32,
    strategy: &QueryStrategy,
) -> Result<QcRatioReport, PadicError> {
    if a.contains_zero() {
        return Err(PadicError::ZeroElement);
    }
    if let Some(x) = a.iter().find(|x| phi.eval(x).is_zero()) {
        return Err(PadicError::HypothesisViolated(alloc::format!(
            "root {x} of φ in A"
        )));
    }
    let d = phi.degree().filter(|&d| d >= 1).ok_or(PadicError::ConstantPolynomial)?;
    crate::structure::validate_strategy(a, strategy)
        .map_err(|e| PadicError::InvalidWitness(e.to_string()))?;
    let q = strategy.depth();
    let energy = energy_m(a, w, &PolyVec::uniform(phi.clone(), s), Method::Auto)?.value;
    let quot = energy::quotient_set(a, s)?;
    let bound_part = rat(quot.len() as i64)
        * rat_pow(&rat(d as i64 + 3), 16 * q * s)
        * rat_pow(&rat(2 * s as i64), 2 * q * s)
        * rat_pow(&weight_sum_sq(a, w), s);
    let ratio = if bound_part.is_zero() {
        Rat::zero()
    } else {
        &energy / &bound_part
    };
    Ok(QcRatioReport {
        energy,
        bound_part,
        depth: q,
        ratio,
    })
}

// ---------------------------------------------------------------------------
// the repeated-valuation proof step
// ---------------------------------------------------------------------------

/// Outcome of replaying the key combinatorial step of the fiber decoupling
/// proofs: inside one valuation interval (cut by the coefficient-valuation
/// ratios), every solution tuple must repeat a valuation among its
/// coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepReport {
    pub intervals_checked: usize,
    pub solutions_checked: usize,
    pub dominance_verified: bool,
    pub holds: bool,
}

/// The cut points `(ν_p(β_j) − ν_p(β_i))/(i−j)` over pairs of exponents
/// with non-zero coefficients.
fn valuation_cuts(phi: &PolyQ, p: u64, include_constant: bool) -> Result<Vec<Rat>, PadicError> {
    let coeffs = phi.coeffs();
    let mut idx: Vec<(usize, i64)> = Vec::new();
    for (i, b) in coeffs.iter().enumerate() {
        if b.is_zero() || (i == 0 && !include_constant) {
            continue;
        }
        idx.push((i, valuation(p, b)?));
    }
    let mut cuts = Vec::new();
    for &(i, vi) in &idx {
        for &(j, vj) in &idx {
            if i != j {
                cuts.push(rat(vj - vi) / rat(i as i64 - j as i64));
            }
        }
    }
    cuts.sort();
    cuts.dedup();
    Ok(cuts)
}

/// Groups the elements of `a` whose `ν_p` lies strictly inside a common open
/// interval between consecutive cut points; elements with `ν_p(a)` on a cut
/// are set aside (the proofs treat that fiber separately).
fn interval_groups(
    a: &GroundSet,
    p: u64,
    cuts: &[Rat],
) -> Result<Vec<GroundSet>, PadicError> {
    let mut groups: BTreeMap<usize, Vec<Rat>> = BTreeMap::new();
    for x in a.iter() {
        let m = rat(valuation(p, x)?);
        if cuts.contains(&m) {
            continue;
        }
        let pos = cuts.iter().filter(|c| **c < m).count();
        groups.entry(pos).or_default().push(x.clone());
    }
    Ok(groups.into_values().map(GroundSet::new).collect())
}

fn has_repeated_valuation(tuple: &[&Rat], p: u64) -> bool {
    let mut vals: Vec<i64> = tuple
        .iter()
        .map(|x| valuation(p, x).expect("non-zero by construction"))
        .collect();
    vals.sort_unstable();
    vals.windows(2).any(|w| w[0] == w[1])
}

/// Replays the additive proof step: with the constant term dropped, inside
/// each valuation interval some exponent `j` dominates (`ν_p(φ(a)) =
/// ν_p(βⱼ aʲ)` for every element), and every solution of the additive
/// φ-equation repeats a valuation.
pub fn check_repeated_valuation_additive(
    a: &GroundSet,
    phi: &PolyQ,
    p: u64,
    s: u32,
) -> Result<StepReport, PadicError> {
    if !a.is_positive_integers() {
        return Err(PadicError::NonPositiveElement(String::new()));
    }
    phi.degree().filter(|&d| d >= 1).ok_or(PadicError::ConstantPolynomial)?;
    let reduced = phi.drop_constant_term();
    let cuts = valuation_cuts(&reduced, p, false)?;
    let groups = interval_groups(a, p, &cuts)?;
    let mut report = StepReport {
        intervals_checked: 0,
        solutions_checked: 0,
        dominance_verified: true,
        holds: true,
    };
    for g in &groups {
        report.intervals_checked += 1;
        // dominance: a single exponent j has ν_p(βⱼ aʲ) = ν_p(φ(a)) on all of g
        let coeffs = reduced.coeffs();
        let dominant = (1..coeffs.len()).find(|&j| {
            if coeffs[j].is_zero() {
                return false;
            }
            let vb = valuation(p, &coeffs[j]).unwrap();
            g.iter().all(|x| {
                let v = reduced.eval(x);
                !v.is_zero()
                    && valuation(p, &v).unwrap()
                        == vb + j as i64 * valuation(p, x).unwrap()
            })
        });
        if dominant.is_none() {
            report.dominance_verified = false;
            report.holds = false;
            continue;
        }
        let sets: Vec<&GroundSet> = core::iter::repeat(g).take(2 * s as usize).collect();
        let phis = PolyVec::uniform(reduced.clone(), s);
        let mut ok = true;
        let mut count = 0usize;
        for_each_solution_e(&sets, phis.polys(), |t| {
            count += 1;
            if !has_repeated_valuation(t, p) {
                ok = false;
            }
        });
        report.solutions_checked += count;
        if !ok {
            report.holds = false;
        }
    }
    Ok(report)
}

/// Replays the multiplicative proof step: with all of `a` inside one
/// sign-constant interval and `φ(0) ≠ 0`, inside each valuation interval
/// every solution of the coupled system repeats a valuation.
pub fn check_repeated_valuation_multiplicative(
    a: &GroundSet,
    phi: &PolyQ,
    p: u64,
    s: u32,
) -> Result<StepReport, PadicError> {
    if phi.eval(&Rat::zero()).is_zero() {
        return Err(PadicError::HypothesisViolated("φ(0) = 0".to_string()));
    }
    phi.degree().filter(|&d| d >= 1).ok_or(PadicError::ConstantPolynomial)?;
    energy::certify_interval(a, phi)?;
    let cuts = valuation_cuts(phi, p, true)?;
    let groups = interval_groups(a, p, &cuts)?;
    let mut report = StepReport {
        intervals_checked: 0,
        solutions_checked: 0,
        dominance_verified: true,
        holds: true,
    };
    for g in &groups {
        report.intervals_checked += 1;
        let sets: Vec<&GroundSet> = core::iter::repeat(g).take(2 * s as usize).collect();
        let phis = PolyVec::uniform(phi.clone(), s);
        let mut ok = true;
        let mut count = 0usize;
        for_each_solution_j(&sets, phis.polys(), |t| {
            count += 1;
            if !has_repeated_valuation(t, p) {
                ok = false;
            }
        });
        report.solutions_checked += count;
        if !ok {
            report.holds = false;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;
    use num_traits::One;

    #[test]
    fn valuation_examples() {
        assert_eq!(valuation(2, &rat(12)).unwrap(), 2);
        assert_eq!(valuation(3, &rat(12)).unwrap(), 1);
        assert_eq!(valuation(2, &ratio(3, 8)).unwrap(), -3);
        assert_eq!(valuation(5, &rat(-50)).unwrap(), 2);
        assert!(valuation(2, &Rat::zero()).is_err());
        assert!(valuation(4, &rat(3)).is_err());
    }

    #[test]
    fn fiber_examples() {
        let a = GroundSet::from_ints([2, 3, 4, 6, 8]);
        let f = fiber(&a, 2).unwrap();
        assert_eq!(f.valuation_set(), alloc::vec![0, 1, 2, 3]);
        assert_eq!(f.fiber(0).unwrap(), &GroundSet::from_ints([3]));
        assert_eq!(f.fiber(1).unwrap(), &GroundSet::from_ints([2, 6]));
        assert_eq!(f.fiber(2).unwrap(), &GroundSet::from_ints([4]));
        assert_eq!(f.fiber(3).unwrap(), &GroundSet::from_ints([8]));

        let odd = GroundSet::from_ints([1, 3, 5]);
        let f = fiber(&odd, 2).unwrap();
        assert_eq!(f.fibers().len(), 1);

        let b = GroundSet::from_ints([6, 10, 15]);
        let f = fiber(&b, 5).unwrap();
        assert_eq!(f.fiber(0).unwrap(), &GroundSet::from_ints([6]));
        assert_eq!(f.fiber(1).unwrap(), &GroundSet::from_ints([10, 15]));

        assert!(fiber(&GroundSet::from_ints([0, 1]), 2).is_err());
    }

    #[test]
    fn fibers_partition_base() {
        let a = GroundSet::from_ints([2, 3, 4, 6, 8, 9, 12, 27]);
        for p in [2, 3, 5, 7] {
            let f = fiber(&a, p).unwrap();
            let mut union = GroundSet::empty();
            for (_, g) in f.fibers() {
                assert!(union.is_disjoint_from(g));
                union = union.union(g);
            }
            assert_eq!(&union, &a);
        }
    }

    #[test]
    fn chang_additive_examples() {
        let w2 = WeightFn::ones(&GroundSet::from_ints([1, 2]));
        let r = check_chang_additive(
            &GroundSet::from_ints([1, 2]),
            &w2,
            &PolyQ::identity(),
            2,
            2,
        )
        .unwrap();
        assert_eq!(r.lhs_energy, rat(6));
        assert_eq!(r.constant_used, rat(1296));
        assert_eq!(
            r.fiber_energies,
            alloc::vec![(0, rat(1)), (1, rat(1))]
        );
        assert!(r.holds);

        let gp = GroundSet::from_ints([2, 4, 8]);
        let r = check_chang_additive(&gp, &WeightFn::ones(&gp), &PolyQ::identity(), 2, 2).unwrap();
        assert_eq!(r.lhs_energy, rat(15));
        assert!(r.holds);

        // single fiber: reduces to E ≤ C^s · E
        let odd = GroundSet::from_ints([1, 3, 5]);
        let r = check_chang_additive(&odd, &WeightFn::ones(&odd), &PolyQ::identity(), 2, 2).unwrap();
        assert_eq!(r.fiber_energies.len(), 1);
        assert!(r.holds);

        assert!(check_chang_additive(
            &GroundSet::from_ints([-1, 2]),
            &w2,
            &PolyQ::identity(),
            2,
            2
        )
        .is_err());
        assert!(check_chang_additive(
            &GroundSet::from_ints([1, 2]),
            &w2,
            &PolyQ::from_ints([5]),
            2,
            2
        )
        .is_err());
    }

    #[test]
    fn chang_multiplicative_examples() {
        let a = GroundSet::from_ints([2, 6]);
        let phi = PolyQ::from_ints([1, 1]);
        let r =
            check_chang_multiplicative(&a, &WeightFn::ones(&a), &phi, 3, 2, true).unwrap();
        assert!(r.holds);
        assert_eq!(r.constant_used, rat_pow(&rat(4), 16) * rat(16));

        let gp = GroundSet::from_ints([2, 4, 8]);
        let r =
            check_chang_multiplicative(&gp, &WeightFn::ones(&gp), &phi, 2, 2, true).unwrap();
        assert!(r.holds);

        let single = GroundSet::from_ints([5]);
        let r = check_chang_multiplicative(&single, &WeightFn::ones(&single), &phi, 7, 2, true)
            .unwrap();
        assert_eq!(r.lhs_energy, rat(1));
        assert!(r.holds);

        // φ(0) = 0 rejected
        assert!(check_chang_multiplicative(
            &a,
            &WeightFn::ones(&a),
            &PolyQ::identity(),
            2,
            2,
            false
        )
        .is_err());
    }

    #[test]
    fn qc_energy_bound_examples() {
        let gp = GroundSet::from_ints([2, 4, 8]);
        let (t, strat) = crate::structure::query_complexity_exact(&gp).unwrap();
        assert_eq!(t, 1);
        let r = bound_e_via_qc(&gp, &WeightFn::ones(&gp), &PolyQ::identity(), 2, &strat).unwrap();
        assert_eq!(r.energy, rat(15));
        assert_eq!(r.bound, rat_pow(&rat(81 * 16 * 3), 2));
        assert!(r.holds);

        let b = GroundSet::from_ints([6, 10, 15]);
        let (t, strat) = crate::structure::query_complexity_exact(&b).unwrap();
        assert_eq!(t, 2);
        let r = bound_e_via_qc(&b, &WeightFn::ones(&b), &PolyQ::identity(), 2, &strat).unwrap();
        assert!(r.holds);
        assert_eq!(r.depth, 2);

        // mismatched witness rejected
        let other = GroundSet::from_ints([3, 9, 27]);
        let (_, bad) = crate::structure::query_complexity_exact(&other).unwrap();
        assert!(bound_e_via_qc(&b, &WeightFn::ones(&b), &PolyQ::identity(), 2, &bad).is_err());
    }

    #[test]
    fn qc_m_ratio_examples() {
        let gp = GroundSet::from_ints([2, 4, 8]);
        let (_, strat) = crate::structure::query_complexity_exact(&gp).unwrap();
        let phi = PolyQ::from_ints([1, 1]);
        let r = bound_m_via_qc(&gp, &WeightFn::ones(&gp), &phi, 2, &strat).unwrap();
        assert!(r.ratio <= Rat::one());
        assert!(r.ratio.is_positive());

        let single = GroundSet::from_ints([3]);
        let (_, strat) = crate::structure::query_complexity_exact(&single).unwrap();
        let r = bound_m_via_qc(&single, &WeightFn::ones(&single), &phi, 2, &strat).unwrap();
        assert_eq!(r.energy, rat(1));
        assert!(r.ratio <= Rat::one());
    }

    #[test]
    fn repeated_valuation_steps() {
        let a = GroundSet::from_ints([2, 3, 4, 6, 8, 12]);
        for p in [2, 3, 5] {
            let r =
                check_repeated_valuation_additive(&a, &PolyQ::from_ints([0, 1, 1]), p, 2).unwrap();
            assert!(r.holds, "additive step failed at p={p}");
            assert!(r.dominance_verified);
        }
        let r = check_repeated_valuation_multiplicative(&a, &PolyQ::from_ints([1, 1]), 2, 2)
            .unwrap();
        assert!(r.holds);
        assert!(r.solutions_checked > 0);
    }
}
