//! Sidon-type subsets: `B⁺_{s,φ}[1]` / `B×_s[1]` testing with replayable
//! certificates, greedy extraction, exact maximization at desk scale, and
//! the alternating additive/multiplicative partition pipeline.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::arith::{ceil_log2, rat, Rat};
use crate::energy::{self, Method};
use crate::ground::{GroundSet, WeightFn};
use crate::poly::{PolyQ, PolyVec};

pub const MAX_SIDON_LIMIT: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SidonKind {
    /// Values `φ(x₁) + … + φ(x_s)` must be multiset-injective.
    Additive,
    /// Values `φ(x₁) ⋯ φ(x_s)` must be multiset-injective.
    Multiplicative,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SidonError {
    /// A root of φ in the set for the multiplicative kind.
    RootInSet(String),
    SizeOverLimit { size: usize, limit: usize },
    EmptySet,
}

impl fmt::Display for SidonError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SidonError::RootInSet(x) => write!(f, "root {x} of φ in set"),
            SidonError::SizeOverLimit { size, limit } => {
                write!(f, "size {size} over exhaustive limit {limit}")
            }
            SidonError::EmptySet => write!(f, "empty set"),
        }
    }
}

/// A replayable verdict: either the set is Sidon of the given kind, or a
/// collision witness — two distinct s-multisets with the same value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SidonCertificate {
    pub subset: GroundSet,
    pub kind: SidonKind,
    pub s: u32,
    pub phi: PolyQ,
    pub verified: bool,
    pub collision: Option<(Vec<Rat>, Vec<Rat>)>,
}

fn multiset_value(kind: SidonKind, phi: &PolyQ, multiset: &[&Rat]) -> Rat {
    match kind {
        SidonKind::Additive => multiset.iter().map(|x| phi.eval(x)).sum(),
        SidonKind::Multiplicative => multiset.iter().map(|x| phi.eval(x)).product(),
    }
}

fn for_each_multiset<'a, F: FnMut(&[&'a Rat])>(elems: &'a [Rat], s: u32, mut visit: F) {
    fn rec<'a, F: FnMut(&[&'a Rat])>(
        elems: &'a [Rat],
        start: usize,
        left: u32,
        cur: &mut Vec<&'a Rat>,
        visit: &mut F,
    ) {
        if left == 0 {
            visit(cur);
            return;
        }
        for i in start..elems.len() {
            cur.push(&elems[i]);
            rec(elems, i, left - 1, cur, visit);
            cur.pop();
        }
    }
    let mut cur = Vec::new();
    rec(elems, 0, s, &mut cur, &mut visit);
}

/// Tests the Sidon property by enumerating every s-multiset.
pub fn is_sidon(
    x: &GroundSet,
    s: u32,
    phi: &PolyQ,
    kind: SidonKind,
) -> Result<SidonCertificate, SidonError> {
    if kind == SidonKind::Multiplicative {
        if let Some(r) = x.iter().find(|e| phi.eval(e).is_zero()) {
            return Err(SidonError::RootInSet(r.to_string()));
        }
    }
    let mut seen: BTreeMap<Rat, Vec<Rat>> = BTreeMap::new();
    let mut collision: Option<(Vec<Rat>, Vec<Rat>)> = None;
    for_each_multiset(x.elems(), s, |m| {
        if collision.is_some() {
            return;
        }
        let v = multiset_value(kind, phi, m);
        let owned: Vec<Rat> = m.iter().map(|r| (*r).clone()).collect();
        if let Some(prev) = seen.get(&v) {
            collision = Some((prev.clone(), owned));
        } else {
            seen.insert(v, owned);
        }
    });
    Ok(SidonCertificate {
        subset: x.clone(),
        kind,
        s,
        phi: phi.clone(),
        verified: collision.is_none(),
        collision,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanOrder {
    Ascending,
    Descending,
    /// Deterministic seeded shuffle.
    Shuffled(u64),
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

fn scan_sequence(a: &GroundSet, order: ScanOrder) -> Vec<Rat> {
    let mut elems: Vec<Rat> = a.elems().to_vec();
    match order {
        ScanOrder::Ascending => {}
        ScanOrder::Descending => elems.reverse(),
        ScanOrder::Shuffled(seed) => {
            let mut state = seed;
            for i in (1..elems.len()).rev() {
                let j = (splitmix64(&mut state) % (i as u64 + 1)) as usize;
                elems.swap(i, j);
            }
        }
    }
    elems
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreedyReport {
    pub certificate: SidonCertificate,
    /// `E_s(A)` (additive) or `M_s(A)` (multiplicative) of the *source* set,
    /// the quantity the extraction lemma trades against.
    pub source_energy: Rat,
}

/// Greedily builds a verified Sidon subset: scan in the configured order,
/// keep an element whenever it creates no collision. The output is maximal —
/// every rejected element still collides with the final subset.
pub fn greedy_sidon_extract(
    a: &GroundSet,
    s: u32,
    phi: &PolyQ,
    kind: SidonKind,
    order: ScanOrder,
) -> Result<GreedyReport, SidonError> {
    let mut current = GroundSet::empty();
    for x in scan_sequence(a, order) {
        if kind == SidonKind::Multiplicative && phi.eval(&x).is_zero() {
            continue;
        }
        let candidate = current.union(&GroundSet::singleton(x));
        if is_sidon(&candidate, s, phi, kind)?.verified {
            current = candidate;
        }
    }
    let certificate = is_sidon(&current, s, phi, kind)?;
    debug_assert!(certificate.verified);
    let w = WeightFn::ones(a);
    let source_energy = match kind {
        SidonKind::Additive => {
            energy::energy_e(a, &w, &PolyVec::uniform(phi.clone(), s), Method::Auto)
                .map(|r| r.value)
                .unwrap_or_else(|_| Rat::zero())
        }
        SidonKind::Multiplicative => energy::plain_energy_m(a, s),
    };
    Ok(GreedyReport {
        certificate,
        source_energy,
    })
}

/// Maximum-cardinality Sidon subset by branch-and-bound over subsets,
/// elements scanned in ascending order (first maximal answer wins ties
/// lexicographically).
pub fn max_sidon_exact(
    a: &GroundSet,
    s: u32,
    phi: &PolyQ,
    kind: SidonKind,
    limit: usize,
) -> Result<SidonCertificate, SidonError> {
    if a.len() > limit {
        return Err(SidonError::SizeOverLimit {
            size: a.len(),
            limit,
        });
    }
    let elems: Vec<Rat> = a
        .elems()
        .iter()
        .filter(|x| !(kind == SidonKind::Multiplicative && phi.eval(x).is_zero()))
        .cloned()
        .collect();
    fn rec(
        elems: &[Rat],
        idx: usize,
        current: &mut Vec<Rat>,
        best: &mut Vec<Rat>,
        s: u32,
        phi: &PolyQ,
        kind: SidonKind,
    ) {
        if current.len() + (elems.len() - idx) <= best.len() {
            return;
        }
        if idx == elems.len() {
            if current.len() > best.len() {
                *best = current.clone();
            }
            return;
        }
        let candidate = GroundSet::new(current.iter().cloned().chain([elems[idx].clone()]));
        if is_sidon(&candidate, s, phi, kind)
            .map(|c| c.verified)
            .unwrap_or(false)
        {
            current.push(elems[idx].clone());
            rec(elems, idx + 1, current, best, s, phi, kind);
            current.pop();
        }
        rec(elems, idx + 1, current, best, s, phi, kind);
    }
    let mut best = Vec::new();
    let mut current = Vec::new();
    rec(&elems, 0, &mut current, &mut best, s, phi, kind);
    is_sidon(&GroundSet::new(best), s, phi, kind)
}

/// One piece of the alternating partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionPiece {
    pub kind: SidonKind,
    pub certificate: SidonCertificate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionReport {
    pub pieces: Vec<PartitionPiece>,
    /// Union of the additive pieces.
    pub b: GroundSet,
    /// Union of the multiplicative pieces.
    pub c: GroundSet,
    pub rounds: u32,
    /// `E_{s,(φ..φ)}(B)` exactly.
    pub energy_b: Rat,
    /// `M_s(C)` exactly.
    pub energy_c: Rat,
    /// Round budget `2(⌈log₂|A|⌉+2) + ⌈|A|/m⌉` with `m` the observed
    /// minimum piece size.
    pub round_budget: u32,
    pub within_budget: bool,
}

/// Iteratively peels Sidon pieces: each round extracts both a greedy
/// `B⁺_{s,φ}` piece and a greedy `B×_s` piece from what remains and keeps
/// the larger (ties favour additive).
pub fn rev4_partition(a: &GroundSet, s: u32, phi: &PolyQ) -> Result<PartitionReport, SidonError> {
    if a.is_empty() {
        return Err(SidonError::EmptySet);
    }
    let mut remaining = a.clone();
    let mut pieces: Vec<PartitionPiece> = Vec::new();
    let identity = PolyQ::identity();
    while !remaining.is_empty() {
        let add = greedy_sidon_extract(&remaining, s, phi, SidonKind::Additive, ScanOrder::Ascending)?
            .certificate;
        let mul = greedy_sidon_extract(
            &remaining,
            s,
            &identity,
            SidonKind::Multiplicative,
            ScanOrder::Ascending,
        )?
        .certificate;
        let (kind, cert) = if mul.subset.len() > add.subset.len() {
            (SidonKind::Multiplicative, mul)
        } else {
            (SidonKind::Additive, add)
        };
        debug_assert!(!cert.subset.is_empty());
        remaining = remaining.difference(&cert.subset);
        pieces.push(PartitionPiece {
            kind,
            certificate: cert,
        });
    }
    let mut b = GroundSet::empty();
    let mut c = GroundSet::empty();
    for p in &pieces {
        match p.kind {
            SidonKind::Additive => b = b.union(&p.certificate.subset),
            SidonKind::Multiplicative => c = c.union(&p.certificate.subset),
        }
    }
    let energy_b = if b.is_empty() {
        Rat::zero()
    } else {
        energy::energy_e(
            &b,
            &WeightFn::ones(&b),
            &PolyVec::uniform(phi.clone(), s),
            Method::Auto,
        )
        .map(|r| r.value)
        .unwrap_or_else(|_| Rat::zero())
    };
    let energy_c = if c.is_empty() {
        Rat::zero()
    } else {
        energy::plain_energy_m(&c, s)
    };
    let rounds = pieces.len() as u32;
    let min_piece = pieces
        .iter()
        .map(|p| p.certificate.subset.len())
        .min()
        .unwrap_or(1)
        .max(1);
    let log_a = ceil_log2(&rat(a.len() as i64));
    let round_budget = 2 * (log_a + 2) + a.len().div_ceil(min_piece) as u32;
    let within_budget = rounds <= round_budget;
    Ok(PartitionReport {
        pieces,
        b,
        c,
        rounds,
        energy_b,
        energy_c,
        round_budget,
        within_budget,
    })
}
