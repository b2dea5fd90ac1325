//! Low-energy decomposition `A = B ∪ C`: iteratively peel structured pieces
//! with query-complexity witnesses until the remainder has small
//! multiplicative energy, then certify everything exactly.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::arith::{ceil_log2, rat, rat_pow, Int, Rat};
use crate::energy::{self, EnergyError, Method};
use crate::ground::{GroundSet, WeightFn};
use crate::poly::PolyVec;
use crate::structure::{self, QueryStrategy, StructureError};

/// Exhaustive subset search cap for the exact finder.
const EXACT_FINDER_LIMIT: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Finder {
    /// Largest subset with `q ≤ τ` by exhaustive search (tiny sets only).
    ExactQc,
    /// Repeated valuation-fiber splitting, keeping the largest side, until a
    /// witness of depth `≤ τ` exists.
    GreedyFiber,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecomposeConfig {
    /// The denominator constant in the piece-count formula for `k`.
    pub d_const: u32,
    /// Override for the energy-threshold exponent deficit `k`.
    pub k: Option<u32>,
    /// Witness depth budget; default `max(1, ⌈log₂|A|⌉)`.
    pub tau: Option<u32>,
    pub finder: Finder,
}

impl Default for DecomposeConfig {
    fn default() -> Self {
        DecomposeConfig {
            d_const: 4,
            k: None,
            tau: None,
            finder: Finder::GreedyFiber,
        }
    }
}

/// `k = max(1, ⌈log s / (𝒟 log log s)⌉)` with base-2 logarithms rounded up.
pub fn k_from_formula(s: u32, d_const: u32) -> u32 {
    let log_s = ceil_log2(&rat(s.max(1) as i64));
    let log_log_s = ceil_log2(&rat(log_s.max(1) as i64)).max(1);
    let denom = d_const.max(1) * log_log_s;
    log_s.div_ceil(denom).max(1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecomposeError {
    EmptySet,
    InvalidBudget,
    SizeOverLimit(usize),
    Unsplittable(String),
    PhiRootAtZero,
    Energy(String),
    Structure(String),
}

impl fmt::Display for DecomposeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecomposeError::EmptySet => write!(f, "empty set"),
            DecomposeError::InvalidBudget => write!(f, "depth budget must be at least 1"),
            DecomposeError::SizeOverLimit(n) => {
                write!(f, "exact finder limited to {EXACT_FINDER_LIMIT} elements, got {n}")
            }
            DecomposeError::Unsplittable(m) => write!(f, "cannot extract a piece: {m}"),
            DecomposeError::PhiRootAtZero => {
                write!(f, "coupled certificate needs every map nonzero at 0")
            }
            DecomposeError::Energy(m) => write!(f, "energy error: {m}"),
            DecomposeError::Structure(m) => write!(f, "structure error: {m}"),
        }
    }
}

impl From<EnergyError> for DecomposeError {
    fn from(e: EnergyError) -> Self {
        DecomposeError::Energy(e.to_string())
    }
}

impl From<StructureError> for DecomposeError {
    fn from(e: StructureError) -> Self {
        DecomposeError::Structure(e.to_string())
    }
}

/// One extracted piece, in the original coordinates. The witness replays on
/// the piece dilated by the run's clearing factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    pub set: GroundSet,
    pub witness: QueryStrategy,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionResult {
    pub b: GroundSet,
    pub c: GroundSet,
    pub pieces: Vec<Piece>,
    pub rounds: u32,
    pub s: u32,
    pub k: u32,
    pub tau: u32,
    /// Least integer `λ` with `λ·A ⊆ ℤ`; witnesses live on `λ`-dilated pieces.
    pub dilation: Int,
}

impl DecompositionResult {
    /// Replays the partition invariants and every witness; panics on failure.
    pub fn assert_valid(&self, a: &GroundSet) {
        assert!(self.b.is_disjoint_from(&self.c), "B and C must be disjoint");
        assert_eq!(self.b.union(&self.c), *a, "B ∪ C must equal A");
        let mut acc = GroundSet::empty();
        for p in &self.pieces {
            assert!(acc.is_disjoint_from(&p.set), "pieces must be disjoint");
            acc = acc.union(&p.set);
            let lam = Rat::from(self.dilation.clone());
            let dilated = p.set.dilate(&lam);
            structure::validate_strategy(&dilated, &p.witness).expect("witness must replay");
            assert!(p.witness.depth() <= self.tau, "witness over budget");
        }
        assert_eq!(acc, self.b, "pieces must partition B");
    }
}

/// Stopping rule: `M_s(X) ≤ |X|^{2s−k}`, compared exactly.
fn threshold_met(x: &GroundSet, s: u32, k: u32) -> bool {
    let exp = (2 * s).saturating_sub(k);
    energy::plain_energy_m(x, s) <= rat_pow(&rat(x.len() as i64), exp)
}

pub fn decompose(
    a: &GroundSet,
    s: u32,
    config: &DecomposeConfig,
) -> Result<DecompositionResult, DecomposeError> {
    if a.is_empty() {
        return Err(DecomposeError::EmptySet);
    }
    let tau = config
        .tau
        .unwrap_or_else(|| ceil_log2(&rat(a.len() as i64)).max(1));
    if tau < 1 {
        return Err(DecomposeError::InvalidBudget);
    }
    let k = config.k.unwrap_or_else(|| k_from_formula(s, config.d_const));
    let dilation = a.clearing_denominator();
    let lam = Rat::from(dilation.clone());
    let inv = Rat::one() / &lam;

    let mut cur = a.dilate(&lam);
    let mut pieces = Vec::new();
    let c;
    loop {
        if cur.is_empty() || threshold_met(&cur, s, k) {
            c = cur;
            break;
        }
        let (piece, witness) = match config.finder {
            Finder::ExactQc => exact_qc_piece(&cur, tau)?,
            Finder::GreedyFiber => greedy_fiber_piece(&cur, tau)?,
        };
        cur = cur.difference(&piece);
        pieces.push(Piece {
            set: piece.dilate(&inv),
            witness,
        });
    }

    let b = pieces
        .iter()
        .fold(GroundSet::empty(), |acc, p| acc.union(&p.set));
    Ok(DecompositionResult {
        b,
        c: c.dilate(&inv),
        rounds: pieces.len() as u32,
        pieces,
        s,
        k,
        tau,
        dilation,
    })
}

/// Largest subset admitting a witness of depth `≤ τ`, by exhaustive search
/// over subsets in decreasing size.
fn exact_qc_piece(
    cur: &GroundSet,
    tau: u32,
) -> Result<(GroundSet, QueryStrategy), DecomposeError> {
    let n = cur.len();
    if n > EXACT_FINDER_LIMIT {
        return Err(DecomposeError::SizeOverLimit(n));
    }
    let elems: Vec<&Rat> = cur.iter().collect();
    let mut masks: Vec<u32> = (1..(1u32 << n)).collect();
    masks.sort_by_key(|m| core::cmp::Reverse(m.count_ones()));
    for m in masks {
        let b = GroundSet::new(
            (0..n)
                .filter(|i| m >> i & 1 == 1)
                .map(|i| elems[i].clone()),
        );
        if let Some(w) = structure::witness_within(&b, tau) {
            return Ok((b, w));
        }
    }
    Err(DecomposeError::Unsplittable(
        "no nonempty subset admits a query witness".into(),
    ))
}

/// Shrinks the set by keeping the largest valuation fiber (splitting by sign
/// when valuations no longer separate) until a witness of depth `≤ τ` exists.
fn greedy_fiber_piece(
    cur: &GroundSet,
    tau: u32,
) -> Result<(GroundSet, QueryStrategy), DecomposeError> {
    let mut b = cur.clone();
    loop {
        if let Some(w) = structure::witness_within(&b, tau) {
            return Ok((b, w));
        }
        let vv = structure::valuation_vectors(&b)?;
        let mut split = None;
        for i in (0..vv.primes.len()).rev() {
            let mut classes: alloc::collections::BTreeMap<i64, Vec<Rat>> =
                alloc::collections::BTreeMap::new();
            for (x, v) in &vv.entries {
                classes.entry(v[i]).or_default().push(x.clone());
            }
            if classes.len() > 1 {
                split = classes.into_values().max_by_key(Vec::len);
                break;
            }
        }
        let kept = match split {
            Some(v) => GroundSet::new(v),
            None => {
                // identical valuation vectors: elements agree up to sign
                let pos = GroundSet::new(b.iter().filter(|x| x.is_positive()).cloned());
                if !pos.is_empty() && pos.len() < b.len() {
                    pos
                } else {
                    GroundSet::singleton(b.iter().next().expect("nonempty").clone())
                }
            }
        };
        if kept.len() >= b.len() {
            return Err(DecomposeError::Unsplittable(alloc::format!(
                "fiber splitting stalled on {b}"
            )));
        }
        b = kept;
    }
}

/// Exact energy certificates for a decomposition. Realized exponents are
/// left to callers that can afford floating point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificates {
    /// `E_{s,φ⃗}(B)`, exact (0 for empty `B`).
    pub e_b: Rat,
    /// `M_s(C)`, exact (0 for empty `C`).
    pub m_c: Rat,
    /// `M_{s,φ⃗}(B)` when requested and every `φᵢ(0) ≠ 0`.
    pub m_phi_b: Option<Rat>,
    /// Re-check of the stopping rule: `M_s(C) ≤ |C|^{2s−k}`.
    pub threshold_holds: bool,
}

pub fn certify(
    result: &DecompositionResult,
    phis: &PolyVec,
    want_coupled: bool,
) -> Result<Certificates, DecomposeError> {
    let s = result.s;
    let e_b = if result.b.is_empty() {
        Rat::zero()
    } else {
        energy::energy_e(&result.b, &WeightFn::ones(&result.b), phis, Method::Auto)?.value
    };
    let m_c = if result.c.is_empty() {
        Rat::zero()
    } else {
        energy::plain_energy_m(&result.c, s)
    };
    let exp = (2 * s).saturating_sub(result.k);
    let threshold_holds = m_c <= rat_pow(&rat(result.c.len() as i64), exp);
    let m_phi_b = if want_coupled {
        if phis.polys().iter().any(|p| p.eval(&Rat::zero()).is_zero()) {
            return Err(DecomposeError::PhiRootAtZero);
        }
        Some(if result.b.is_empty() {
            Rat::zero()
        } else {
            energy::energy_m(&result.b, &WeightFn::ones(&result.b), phis, Method::Auto)?.value
        })
    } else {
        None
    };
    Ok(Certificates {
        e_b,
        m_c,
        m_phi_b,
        threshold_holds,
    })
}

/// Fully explicit union bound on `E_{s,φ⃗}(B)` from the piece witnesses:
/// `E ≤ r^{2s} · max_i ((d²+2)^{4tᵢ}(2s)^{2tᵢ}|Bᵢ|)^s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnionBoundCertificate {
    pub lhs: Rat,
    pub rhs: Rat,
    pub holds: bool,
}

pub fn union_bound_certificate(
    result: &DecompositionResult,
    phis: &PolyVec,
) -> Result<UnionBoundCertificate, DecomposeError> {
    let s = result.s;
    let d = phis.max_degree().max(1) as i64;
    let lhs = if result.b.is_empty() {
        Rat::zero()
    } else {
        energy::energy_e(&result.b, &WeightFn::ones(&result.b), phis, Method::Auto)?.value
    };
    let lam = Rat::from(result.dilation.clone());
    let mut per_piece_max = Rat::zero();
    for p in &result.pieces {
        structure::validate_strategy(&p.set.dilate(&lam), &p.witness)?;
        let t = p.witness.depth();
        let factor = rat_pow(&rat(d * d + 2), 4 * t)
            * rat_pow(&rat(2 * s as i64), 2 * t)
            * rat(p.set.len() as i64);
        per_piece_max = per_piece_max.max(rat_pow(&factor, s));
    }
    let rhs = rat_pow(&rat(result.pieces.len() as i64), 2 * s) * per_piece_max;
    Ok(UnionBoundCertificate {
        holds: lhs <= rhs,
        lhs,
        rhs,
    })
}

/// Four-way split isolating negatives, map roots, and zero, with the
/// reflected maps for the negative part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NegativeSplit {
    /// Positive elements that are not roots of any map.
    pub positive: GroundSet,
    /// Negative elements that are not roots of any map.
    pub negative: GroundSet,
    /// Nonzero roots of some map entry.
    pub roots: GroundSet,
    /// `A ∩ {0}`.
    pub zero: GroundSet,
    /// `φⱼ′(x) = φⱼ(−x)`, for use on `−negative`.
    pub reflected: PolyVec,
}

pub fn negative_reduction(a: &GroundSet, phis: &PolyVec) -> NegativeSplit {
    let is_root = |x: &Rat| phis.polys().iter().any(|p| p.eval(x).is_zero());
    let mut positive = Vec::new();
    let mut negative = Vec::new();
    let mut roots = Vec::new();
    let mut zero = Vec::new();
    for x in a.iter() {
        if x.is_zero() {
            zero.push(x.clone());
        } else if is_root(x) {
            roots.push(x.clone());
        } else if x.is_positive() {
            positive.push(x.clone());
        } else {
            negative.push(x.clone());
        }
    }
    NegativeSplit {
        positive: GroundSet::new(positive),
        negative: GroundSet::new(negative),
        roots: GroundSet::new(roots),
        zero: GroundSet::new(zero),
        reflected: phis.reflect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::PolyQ;

    fn gp(n: usize) -> GroundSet {
        GroundSet::new((0..n).map(|i| rat_pow(&rat(2), i as u32)))
    }

    #[test]
    fn k_formula_values() {
        assert_eq!(k_from_formula(2, 4), 1);
        assert_eq!(k_from_formula(16, 1), 2);
        assert_eq!(k_from_formula(1, 4), 1);
    }

    #[test]
    fn gp_is_one_structured_piece() {
        let a = gp(5);
        let cfg = DecomposeConfig {
            k: Some(2),
            tau: Some(1),
            ..DecomposeConfig::default()
        };
        let r = decompose(&a, 2, &cfg).unwrap();
        r.assert_valid(&a);
        assert_eq!(r.b, a);
        assert!(r.c.is_empty());
        assert_eq!(r.pieces.len(), 1);
        assert_eq!(r.pieces[0].witness.depth(), 1);
    }

    #[test]
    fn unstructured_primes_stop_immediately() {
        let a = GroundSet::from_ints([3, 5, 7, 11, 13]);
        let cfg = DecomposeConfig {
            k: Some(1),
            ..DecomposeConfig::default()
        };
        let r = decompose(&a, 2, &cfg).unwrap();
        r.assert_valid(&a);
        assert_eq!(r.c, a);
        assert!(r.b.is_empty());
        assert_eq!(r.rounds, 0);
    }

    #[test]
    fn singleton_is_terminal() {
        let a = GroundSet::from_ints([7]);
        let r = decompose(&a, 2, &DecomposeConfig::default()).unwrap();
        r.assert_valid(&a);
        assert_eq!(r.c, a);
    }

    #[test]
    fn exact_finder_takes_largest_separable_subset() {
        let a = GroundSet::from_ints([6, 10, 15]);
        let cfg = DecomposeConfig {
            k: Some(3),
            tau: Some(1),
            finder: Finder::ExactQc,
            ..DecomposeConfig::default()
        };
        let r = decompose(&a, 2, &cfg).unwrap();
        r.assert_valid(&a);
        assert_eq!(r.pieces[0].set.len(), 2);
        assert!(r.b.union(&r.c) == a);
    }

    #[test]
    fn rational_input_is_dilated() {
        let a: GroundSet = "{1/2, 1, 2, 4}".parse().unwrap();
        let cfg = DecomposeConfig {
            k: Some(2),
            tau: Some(1),
            ..DecomposeConfig::default()
        };
        let r = decompose(&a, 2, &cfg).unwrap();
        assert_eq!(r.dilation, crate::arith::int(2));
        r.assert_valid(&a);
        assert_eq!(r.b, a);
    }

    #[test]
    fn certificates_on_gp_union_primes() {
        let a = gp(8).union(&GroundSet::from_ints([3, 5, 7, 11, 13, 17, 19]));
        let cfg = DecomposeConfig {
            k: Some(2),
            ..DecomposeConfig::default()
        };
        let r = decompose(&a, 2, &cfg).unwrap();
        r.assert_valid(&a);
        assert!(r.b.intersection(&gp(8)).len() >= 6, "B should hold most of the progression");
        let phis = PolyVec::identity(2);
        let cert = certify(&r, &phis, false).unwrap();
        assert!(cert.threshold_holds);
        assert_eq!(cert.e_b, energy::plain_energy_e(&r.b, 2));
        let ub = union_bound_certificate(&r, &phis).unwrap();
        assert!(ub.holds);
        assert_eq!(ub.lhs, cert.e_b);
    }

    #[test]
    fn coupled_certificate_guards_zero_root() {
        let a = gp(4);
        let cfg = DecomposeConfig {
            k: Some(2),
            tau: Some(1),
            ..DecomposeConfig::default()
        };
        let r = decompose(&a, 2, &cfg).unwrap();
        let ident = PolyVec::identity(2);
        assert_eq!(
            certify(&r, &ident, true),
            Err(DecomposeError::PhiRootAtZero)
        );
        let shifted = PolyVec::uniform(PolyQ::from_ints([1, 1]), 2);
        let cert = certify(&r, &shifted, true).unwrap();
        assert!(cert.m_phi_b.is_some());
    }

    #[test]
    fn empty_set_rejected() {
        assert_eq!(
            decompose(&GroundSet::empty(), 2, &DecomposeConfig::default()),
            Err(DecomposeError::EmptySet)
        );
    }

    #[test]
    fn negative_reduction_examples() {
        let a = GroundSet::from_ints([-2, -1, 0, 1, 2]);
        let phis = PolyVec::uniform(PolyQ::from_ints([1, 1]), 2);
        let split = negative_reduction(&a, &phis);
        assert_eq!(split.zero, GroundSet::from_ints([0]));
        assert_eq!(split.roots, GroundSet::from_ints([-1]));
        assert_eq!(split.positive, GroundSet::from_ints([1, 2]));
        assert_eq!(split.negative, GroundSet::from_ints([-2]));
        // reflected maps evaluate as φ(−x)
        for (p, q) in phis.polys().iter().zip(split.reflected.polys()) {
            assert_eq!(p.eval(&rat(-3)), q.eval(&rat(3)));
        }

        let b = GroundSet::from_ints([1, 2, 3]);
        let s2 = negative_reduction(&b, &phis);
        assert_eq!(s2.positive, b);
        assert!(s2.negative.is_empty() && s2.roots.is_empty() && s2.zero.is_empty());

        let z = GroundSet::from_ints([0]);
        assert_eq!(negative_reduction(&z, &phis).zero, z);
    }
}
