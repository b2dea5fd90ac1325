//! Exact energy functionals and set algebra.
//!
//! Every energy comes in two independent routes: a brute-force oracle that
//! walks the full `2s`-fold Cartesian product, and a split-count engine that
//! meets in the middle over value-indexed weighted tables. The two must agree
//! exactly on every instance; the oracle is the ground truth the fast path is
//! checked against.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::arith::{prime_support, rat_pow, Rat};
use crate::ground::{GroundSet, WeightFn};
use crate::poly::{PolyQ, PolyVec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Oracle,
    Split,
    /// Oracle when `|A|^{2s} <= 10^7`, split-count otherwise.
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnergyKind {
    /// Additive mixed energy `E_{s,φ⃗}`.
    E,
    /// Multiplicative mixed energy `M_{s,φ⃗}`.
    M,
    /// Coupled energy `J_{s,𝔞,φ⃗}`: raw products and φ-products balance.
    J,
    /// Vector-map energy `E_{s,𝔞}(A; f, g)`.
    EFg,
}

impl fmt::Display for EnergyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EnergyKind::E => write!(f, "E"),
            EnergyKind::M => write!(f, "M"),
            EnergyKind::J => write!(f, "J"),
            EnergyKind::EFg => write!(f, "E_fg"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnergyReport {
    pub kind: EnergyKind,
    pub s: u32,
    pub value: Rat,
    /// Method actually used (Auto is resolved).
    pub method: Method,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EnergyError {
    LengthMismatch { expected: usize, got: usize },
    /// 0 occurs where a quotient or coupled energy forbids it.
    ZeroDivisor,
    /// An element is 0 or a root of some φᵢ where the hypotheses exclude it.
    ExcludedElement(String),
    UndefinedMapValue(String),
    EmptySet,
}

impl fmt::Display for EnergyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EnergyError::LengthMismatch { expected, got } => {
                write!(f, "polynomial vector length {got}, expected {expected}")
            }
            EnergyError::ZeroDivisor => write!(f, "zero divisor"),
            EnergyError::ExcludedElement(x) => write!(f, "excluded element {x}"),
            EnergyError::UndefinedMapValue(x) => write!(f, "undefined map value at {x}"),
            EnergyError::EmptySet => write!(f, "empty set"),
        }
    }
}

// ---------------------------------------------------------------------------
// set algebra
// ---------------------------------------------------------------------------

/// The s-fold sumset `sA`.
pub fn fold_sumset(a: &GroundSet, s: u32) -> GroundSet {
    assert!(s >= 1);
    let mut acc = GroundSet::singleton(Rat::zero());
    for _ in 0..s {
        acc = GroundSet::new(
            acc.iter()
                .flat_map(|x| a.iter().map(move |y| x + y)),
        );
    }
    acc
}

/// The s-fold product set `A^{(s)}`.
pub fn fold_productset(a: &GroundSet, s: u32) -> GroundSet {
    assert!(s >= 1);
    let mut acc = GroundSet::singleton(Rat::one());
    for _ in 0..s {
        acc = GroundSet::new(
            acc.iter()
                .flat_map(|x| a.iter().map(move |y| x * y)),
        );
    }
    acc
}

/// The quotient set `A^{(s)} / A^{(s)}`; errors when `0 ∈ A`.
pub fn quotient_set(a: &GroundSet, s: u32) -> Result<GroundSet, EnergyError> {
    if a.contains_zero() {
        return Err(EnergyError::ZeroDivisor);
    }
    let p = fold_productset(a, s);
    Ok(GroundSet::new(
        p.iter().flat_map(|x| p.iter().map(move |y| x / y)),
    ))
}

/// `X + Y`.
pub fn sum_set(x: &GroundSet, y: &GroundSet) -> GroundSet {
    GroundSet::new(x.iter().flat_map(|a| y.iter().map(move |b| a + b)))
}

/// `X · Y`.
pub fn product_set(x: &GroundSet, y: &GroundSet) -> GroundSet {
    GroundSet::new(x.iter().flat_map(|a| y.iter().map(move |b| a * b)))
}

/// `X - Y`.
pub fn difference_set(x: &GroundSet, y: &GroundSet) -> GroundSet {
    GroundSet::new(x.iter().flat_map(|a| y.iter().map(move |b| a - b)))
}

/// `X · Y^{-1}`; errors when `0 ∈ Y`.
pub fn ratio_set(x: &GroundSet, y: &GroundSet) -> Result<GroundSet, EnergyError> {
    if y.contains_zero() {
        return Err(EnergyError::ZeroDivisor);
    }
    Ok(GroundSet::new(
        x.iter().flat_map(|a| y.iter().map(move |b| a / b)),
    ))
}

/// `mA - nA` (with `0A = {0}`).
pub fn m_sum_minus_n_sum(a: &GroundSet, m: u32, n: u32) -> GroundSet {
    let left = if m == 0 {
        GroundSet::singleton(Rat::zero())
    } else {
        fold_sumset(a, m)
    };
    let right = if n == 0 {
        GroundSet::singleton(Rat::zero())
    } else {
        fold_sumset(a, n)
    };
    difference_set(&left, &right)
}

/// `A^{(m)} / A^{(n)}` (with `A^{(0)} = {1}`); errors when `0 ∈ A`.
pub fn m_prod_over_n_prod(a: &GroundSet, m: u32, n: u32) -> Result<GroundSet, EnergyError> {
    if a.contains_zero() {
        return Err(EnergyError::ZeroDivisor);
    }
    let left = if m == 0 {
        GroundSet::singleton(Rat::one())
    } else {
        fold_productset(a, m)
    };
    let right = if n == 0 {
        GroundSet::singleton(Rat::one())
    } else {
        fold_productset(a, n)
    };
    ratio_set(&left, &right)
}

/// `φ(A)` as a set.
pub fn image_set(a: &GroundSet, phi: &PolyQ) -> GroundSet {
    GroundSet::new(a.iter().map(|x| phi.eval(x)))
}

// ---------------------------------------------------------------------------
// solution enumeration (the oracle route)
// ---------------------------------------------------------------------------

/// Walks every `(a_1, ..., a_{2s})` in `A_1 × ... × A_{2s}` satisfying the
/// additive balance `φ_1(a_1) + ... + φ_s(a_s) = φ_{s+1}(a_{s+1}) + ... `,
/// invoking `visit` with the tuple.
pub fn for_each_solution_e<F: FnMut(&[&Rat])>(
    sets: &[&GroundSet],
    phis: &[PolyQ],
    mut visit: F,
) {
    let s = sets.len() / 2;
    let mut tuple: Vec<&Rat> = Vec::with_capacity(sets.len());
    fn rec<'a, F: FnMut(&[&'a Rat])>(
        sets: &[&'a GroundSet],
        phis: &[PolyQ],
        s: usize,
        pos: usize,
        sum: Rat,
        tuple: &mut Vec<&'a Rat>,
        visit: &mut F,
    ) {
        if pos == sets.len() {
            if sum.is_zero() {
                visit(tuple);
            }
            return;
        }
        for x in sets[pos].iter() {
            let v = phis[pos].eval(x);
            let nsum = if pos < s { &sum + v } else { &sum - v };
            tuple.push(x);
            rec(sets, phis, s, pos + 1, nsum, tuple, visit);
            tuple.pop();
        }
    }
    rec(sets, phis, s, 0, Rat::zero(), &mut tuple, &mut visit);
}

/// Additive-balance enumeration, tracking both block sums so callers can
/// also see non-trivial structure; `visit` runs on each solution tuple.
/// Walks every tuple satisfying the multiplicative balance
/// `φ_1(a_1) ⋯ φ_s(a_s) = φ_{s+1}(a_{s+1}) ⋯ φ_{2s}(a_{2s})`.
pub fn for_each_solution_m<F: FnMut(&[&Rat])>(
    sets: &[&GroundSet],
    phis: &[PolyQ],
    mut visit: F,
) {
    let s = sets.len() / 2;
    let mut tuple: Vec<&Rat> = Vec::with_capacity(sets.len());
    fn rec<'a, F: FnMut(&[&'a Rat])>(
        sets: &[&'a GroundSet],
        phis: &[PolyQ],
        s: usize,
        pos: usize,
        left: Rat,
        right: Rat,
        tuple: &mut Vec<&'a Rat>,
        visit: &mut F,
    ) {
        if pos == sets.len() {
            if left == right {
                visit(tuple);
            }
            return;
        }
        for x in sets[pos].iter() {
            let v = phis[pos].eval(x);
            let (nl, nr) = if pos < s {
                (&left * v, right.clone())
            } else {
                (left.clone(), &right * v)
            };
            tuple.push(x);
            rec(sets, phis, s, pos + 1, nl, nr, tuple, visit);
            tuple.pop();
        }
    }
    rec(
        sets,
        phis,
        s,
        0,
        Rat::one(),
        Rat::one(),
        &mut tuple,
        &mut visit,
    );
}

/// Walks every tuple satisfying the coupled system: raw products balance and
/// φ-products balance simultaneously.
pub fn for_each_solution_j<F: FnMut(&[&Rat])>(
    sets: &[&GroundSet],
    phis: &[PolyQ],
    mut visit: F,
) {
    let s = sets.len() / 2;
    let mut tuple: Vec<&Rat> = Vec::with_capacity(sets.len());
    #[allow(clippy::too_many_arguments)]
    fn rec<'a, F: FnMut(&[&'a Rat])>(
        sets: &[&'a GroundSet],
        phis: &[PolyQ],
        s: usize,
        pos: usize,
        raw: (Rat, Rat),
        img: (Rat, Rat),
        tuple: &mut Vec<&'a Rat>,
        visit: &mut F,
    ) {
        if pos == sets.len() {
            if raw.0 == raw.1 && img.0 == img.1 {
                visit(tuple);
            }
            return;
        }
        for x in sets[pos].iter() {
            let v = phis[pos].eval(x);
            let (nraw, nimg) = if pos < s {
                ((&raw.0 * x, raw.1.clone()), (&img.0 * v, img.1.clone()))
            } else {
                ((raw.0.clone(), &raw.1 * x), (img.0.clone(), &img.1 * v))
            };
            tuple.push(x);
            rec(sets, phis, s, pos + 1, nraw, nimg, tuple, visit);
            tuple.pop();
        }
    }
    rec(
        sets,
        phis,
        s,
        0,
        (Rat::one(), Rat::one()),
        (Rat::one(), Rat::one()),
        &mut tuple,
        &mut visit,
    );
}

fn weight_product(w: &WeightFn, tuple: &[&Rat]) -> Rat {
    let mut acc = Rat::one();
    for x in tuple {
        let wx = w.get(x);
        if wx.is_zero() {
            return Rat::zero();
        }
        acc *= wx;
    }
    acc
}

// ---------------------------------------------------------------------------
// split-count engine
// ---------------------------------------------------------------------------

/// Builds the weighted counting table of `key(a_1..a_s)` over a block of
/// positions, where keys combine associatively position by position.
fn block_table<K: Ord + Clone, G: Fn(usize, &Rat) -> K, C: Fn(&K, &K) -> K>(
    sets: &[&GroundSet],
    w: &WeightFn,
    positions: core::ops::Range<usize>,
    key_of: G,
    combine: C,
    identity: K,
) -> BTreeMap<K, Rat> {
    let mut table = BTreeMap::new();
    fn rec<K: Ord + Clone, G: Fn(usize, &Rat) -> K, C: Fn(&K, &K) -> K>(
        sets: &[&GroundSet],
        w: &WeightFn,
        positions: &core::ops::Range<usize>,
        idx: usize,
        acc_key: K,
        acc_w: Rat,
        key_of: &G,
        combine: &C,
        table: &mut BTreeMap<K, Rat>,
    ) {
        if idx == positions.end {
            *table.entry(acc_key).or_insert_with(Rat::zero) += acc_w;
            return;
        }
        for x in sets[idx].iter() {
            let wx = w.get(x);
            if wx.is_zero() {
                continue;
            }
            let k = combine(&acc_key, &key_of(idx, x));
            rec(
                sets,
                w,
                positions,
                idx + 1,
                k,
                &acc_w * wx,
                key_of,
                combine,
                table,
            );
        }
    }
    rec(
        sets,
        w,
        &positions,
        positions.start,
        identity,
        Rat::one(),
        &key_of,
        &combine,
        &mut table,
    );
    table
}

fn table_inner_product<K: Ord>(l: &BTreeMap<K, Rat>, r: &BTreeMap<K, Rat>) -> Rat {
    let mut total = Rat::zero();
    for (k, lv) in l {
        if let Some(rv) = r.get(k) {
            total += lv * rv;
        }
    }
    total
}

fn resolve_method(method: Method, sets: &[&GroundSet]) -> Method {
    match method {
        Method::Auto => {
            let mut size = 1u128;
            for a in sets {
                size = size.saturating_mul(a.len() as u128);
            }
            if size <= 10_000_000 {
                Method::Oracle
            } else {
                Method::Split
            }
        }
        m => m,
    }
}

fn check_shape(sets: &[&GroundSet], phis: &PolyVec) -> Result<u32, EnergyError> {
    if phis.polys().len() != sets.len() {
        return Err(EnergyError::LengthMismatch {
            expected: sets.len(),
            got: phis.polys().len(),
        });
    }
    Ok((sets.len() / 2) as u32)
}

// ---------------------------------------------------------------------------
// energies
// ---------------------------------------------------------------------------

/// Mixed additive energy over distinct operand sets `A_1, ..., A_{2s}`.
pub fn energy_e_sets(
    sets: &[&GroundSet],
    w: &WeightFn,
    phis: &PolyVec,
    method: Method,
) -> Result<EnergyReport, EnergyError> {
    let s = check_shape(sets, phis)?;
    let method = resolve_method(method, sets);
    let value = match method {
        Method::Oracle => {
            let mut total = Rat::zero();
            for_each_solution_e(sets, phis.polys(), |t| total += weight_product(w, t));
            total
        }
        _ => {
            let half = sets.len() / 2;
            let key = |i: usize, x: &Rat| phis.polys()[i].eval(x);
            let comb = |a: &Rat, b: &Rat| a + b;
            let l = block_table(sets, w, 0..half, key, comb, Rat::zero());
            let r = block_table(sets, w, half..sets.len(), key, comb, Rat::zero());
            table_inner_product(&l, &r)
        }
    };
    Ok(EnergyReport {
        kind: EnergyKind::E,
        s,
        value,
        method,
    })
}

/// Mixed multiplicative energy over distinct operand sets.
pub fn energy_m_sets(
    sets: &[&GroundSet],
    w: &WeightFn,
    phis: &PolyVec,
    method: Method,
) -> Result<EnergyReport, EnergyError> {
    let s = check_shape(sets, phis)?;
    let method = resolve_method(method, sets);
    let value = match method {
        Method::Oracle => {
            let mut total = Rat::zero();
            for_each_solution_m(sets, phis.polys(), |t| total += weight_product(w, t));
            total
        }
        _ => {
            let half = sets.len() / 2;
            let key = |i: usize, x: &Rat| phis.polys()[i].eval(x);
            let comb = |a: &Rat, b: &Rat| a * b;
            let l = block_table(sets, w, 0..half, key, comb, Rat::one());
            let r = block_table(sets, w, half..sets.len(), key, comb, Rat::one());
            table_inner_product(&l, &r)
        }
    };
    Ok(EnergyReport {
        kind: EnergyKind::M,
        s,
        value,
        method,
    })
}

/// Coupled energy over distinct operand sets. Hypotheses: no operand
/// contains 0 or a root of any entry of `φ⃗`.
pub fn energy_j_sets(
    sets: &[&GroundSet],
    w: &WeightFn,
    phis: &PolyVec,
    method: Method,
) -> Result<EnergyReport, EnergyError> {
    let s = check_shape(sets, phis)?;
    for a in sets {
        for x in a.iter() {
            if x.is_zero() {
                return Err(EnergyError::ExcludedElement(x.to_string()));
            }
            if phis.polys().iter().any(|p| p.eval(x).is_zero()) {
                return Err(EnergyError::ExcludedElement(x.to_string()));
            }
        }
    }
    let method = resolve_method(method, sets);
    let value = match method {
        Method::Oracle => {
            let mut total = Rat::zero();
            for_each_solution_j(sets, phis.polys(), |t| total += weight_product(w, t));
            total
        }
        _ => {
            let half = sets.len() / 2;
            let key = |i: usize, x: &Rat| (x.clone(), phis.polys()[i].eval(x));
            let comb = |a: &(Rat, Rat), b: &(Rat, Rat)| (&a.0 * &b.0, &a.1 * &b.1);
            let identity = (Rat::one(), Rat::one());
            let l = block_table(sets, w, 0..half, key, comb, identity.clone());
            let r = block_table(sets, w, half..sets.len(), key, comb, identity);
            table_inner_product(&l, &r)
        }
    };
    Ok(EnergyReport {
        kind: EnergyKind::J,
        s,
        value,
        method,
    })
}

fn replicate<'a>(a: &'a GroundSet, n: usize) -> Vec<&'a GroundSet> {
    core::iter::repeat(a).take(n).collect()
}

/// `E_{s,𝔞,φ⃗}(A)`.
pub fn energy_e(
    a: &GroundSet,
    w: &WeightFn,
    phis: &PolyVec,
    method: Method,
) -> Result<EnergyReport, EnergyError> {
    energy_e_sets(&replicate(a, phis.polys().len()), w, phis, method)
}

/// `M_{s,𝔞,φ⃗}(A)`.
pub fn energy_m(
    a: &GroundSet,
    w: &WeightFn,
    phis: &PolyVec,
    method: Method,
) -> Result<EnergyReport, EnergyError> {
    energy_m_sets(&replicate(a, phis.polys().len()), w, phis, method)
}

/// `J_{s,𝔞,φ⃗}(A)`.
pub fn energy_j(
    a: &GroundSet,
    w: &WeightFn,
    phis: &PolyVec,
    method: Method,
) -> Result<EnergyReport, EnergyError> {
    energy_j_sets(&replicate(a, phis.polys().len()), w, phis, method)
}

/// Plain additive energy `E_s(A)` with unit weights.
pub fn plain_energy_e(a: &GroundSet, s: u32) -> Rat {
    energy_e(a, &WeightFn::ones(a), &PolyVec::identity(s), Method::Auto)
        .expect("identity vector is well-formed")
        .value
}

/// Plain multiplicative energy `M_s(A)` with unit weights.
pub fn plain_energy_m(a: &GroundSet, s: u32) -> Rat {
    energy_m(a, &WeightFn::ones(a), &PolyVec::identity(s), Method::Auto)
        .expect("identity vector is well-formed")
        .value
}

// ---------------------------------------------------------------------------
// vector maps and E(A; f, g)
// ---------------------------------------------------------------------------

/// An element-wise table of exact rational vectors: the computable stand-in
/// for maps like `log` (valuation vectors) in the averaging arguments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorMap {
    table: BTreeMap<Rat, Vec<Rat>>,
    dim: usize,
}

impl VectorMap {
    pub fn new<I: IntoIterator<Item = (Rat, Vec<Rat>)>>(entries: I) -> Self {
        let table: BTreeMap<Rat, Vec<Rat>> = entries.into_iter().collect();
        let dim = table.values().map(Vec::len).max().unwrap_or(0);
        assert!(
            table.values().all(|v| v.len() == dim),
            "vector map entries must share a dimension"
        );
        VectorMap { table, dim }
    }

    /// Builds the map `a ↦ p(a)` (dimension 1) on the given set.
    pub fn from_poly(a: &GroundSet, p: &PolyQ) -> Self {
        Self::new(a.iter().map(|x| (x.clone(), alloc::vec![p.eval(x)])))
    }

    /// The exact `log`-surrogate on non-zero rationals: a sign bit plus the
    /// p-adic valuation vector over the prime support of the set. Additive
    /// balance of these vectors refines multiplicative balance of the values.
    pub fn valuation_map(a: &GroundSet) -> Result<Self, EnergyError> {
        if a.contains_zero() {
            return Err(EnergyError::ExcludedElement("0".to_string()));
        }
        let primes = prime_support(a.iter());
        let entries = a.iter().map(|x| {
            let mut v = Vec::with_capacity(primes.len() + 1);
            v.push(if x.is_negative() {
                Rat::one()
            } else {
                Rat::zero()
            });
            for &p in &primes {
                v.push(crate::arith::rat(crate::padic::valuation(p, x).unwrap()));
            }
            (x.clone(), v)
        });
        Ok(Self::new(entries))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, x: &Rat) -> Result<&[Rat], EnergyError> {
        self.table
            .get(x)
            .map(Vec::as_slice)
            .ok_or_else(|| EnergyError::UndefinedMapValue(x.to_string()))
    }

    fn check_defined_on(&self, a: &GroundSet) -> Result<(), EnergyError> {
        for x in a.iter() {
            self.get(x)?;
        }
        Ok(())
    }
}

fn vec_add(acc: &mut [Rat], v: &[Rat], negate: bool) {
    for (a, b) in acc.iter_mut().zip(v) {
        if negate {
            *a -= b;
        } else {
            *a += b;
        }
    }
}

/// `E_{s,𝔞}(A; f, g)`: weighted count of `2s`-tuples whose `f`-sums and
/// `g`-sums both balance.
pub fn energy_e_fg(
    a: &GroundSet,
    w: &WeightFn,
    f: &VectorMap,
    g: &VectorMap,
    s: u32,
    method: Method,
) -> Result<EnergyReport, EnergyError> {
    f.check_defined_on(a)?;
    g.check_defined_on(a)?;
    let sets = replicate(a, 2 * s as usize);
    let method = resolve_method(method, &sets);
    let value = match method {
        Method::Oracle => {
            let mut total = Rat::zero();
            let mut tuple: Vec<&Rat> = Vec::new();
            oracle_fg(
                a,
                w,
                f,
                g,
                s,
                0,
                &mut alloc::vec![Rat::zero(); f.dim()],
                &mut alloc::vec![Rat::zero(); g.dim()],
                &mut tuple,
                &mut total,
            );
            total
        }
        _ => {
            let key = |_: usize, x: &Rat| {
                (
                    f.get(x).expect("checked").to_vec(),
                    g.get(x).expect("checked").to_vec(),
                )
            };
            let comb = |a: &(Vec<Rat>, Vec<Rat>), b: &(Vec<Rat>, Vec<Rat>)| {
                let mut fa = a.0.clone();
                let mut ga = a.1.clone();
                vec_add(&mut fa, &b.0, false);
                vec_add(&mut ga, &b.1, false);
                (fa, ga)
            };
            let identity = (
                alloc::vec![Rat::zero(); f.dim()],
                alloc::vec![Rat::zero(); g.dim()],
            );
            let half = s as usize;
            let l = block_table(&sets, w, 0..half, key, comb, identity.clone());
            let r = block_table(&sets, w, half..2 * half, key, comb, identity);
            table_inner_product(&l, &r)
        }
    };
    Ok(EnergyReport {
        kind: EnergyKind::EFg,
        s,
        value,
        method,
    })
}

#[allow(clippy::too_many_arguments)]
fn oracle_fg<'a>(
    a: &'a GroundSet,
    w: &WeightFn,
    f: &VectorMap,
    g: &VectorMap,
    s: u32,
    pos: usize,
    f_sum: &mut Vec<Rat>,
    g_sum: &mut Vec<Rat>,
    tuple: &mut Vec<&'a Rat>,
    total: &mut Rat,
) {
    let n = 2 * s as usize;
    if pos == n {
        if f_sum.iter().all(Rat::is_zero) && g_sum.iter().all(Rat::is_zero) {
            *total += weight_product(w, tuple);
        }
        return;
    }
    let negate = pos >= s as usize;
    for x in a.iter() {
        let fv = f.get(x).expect("checked").to_vec();
        let gv = g.get(x).expect("checked").to_vec();
        vec_add(f_sum, &fv, negate);
        vec_add(g_sum, &gv, negate);
        tuple.push(x);
        oracle_fg(a, w, f, g, s, pos + 1, f_sum, g_sum, tuple, total);
        tuple.pop();
        vec_add(f_sum, &fv, !negate);
        vec_add(g_sum, &gv, !negate);
    }
}

/// `E_{s,𝔞}(A; g)`: only the `g`-sums must balance.
pub fn energy_e_g(
    a: &GroundSet,
    w: &WeightFn,
    g: &VectorMap,
    s: u32,
    method: Method,
) -> Result<EnergyReport, EnergyError> {
    let zero = VectorMap::new(a.iter().map(|x| (x.clone(), alloc::vec![Rat::zero()])));
    energy_e_fg(a, w, &zero, g, s, method)
}

/// `s·f(A) - s·f(A)` for a vector map: the difference set of s-fold sums of
/// image vectors.
pub fn vector_fold_difference(
    a: &GroundSet,
    f: &VectorMap,
    s: u32,
) -> Result<Vec<Vec<Rat>>, EnergyError> {
    f.check_defined_on(a)?;
    let mut sums: Vec<Vec<Rat>> = alloc::vec![alloc::vec![Rat::zero(); f.dim()]];
    for _ in 0..s {
        let mut next = Vec::new();
        for base in &sums {
            for x in a.iter() {
                let mut v = base.clone();
                vec_add(&mut v, f.get(x)?, false);
                next.push(v);
            }
        }
        next.sort();
        next.dedup();
        sums = next;
    }
    let mut diffs = Vec::new();
    for u in &sums {
        for v in &sums {
            let mut d = u.clone();
            vec_add(&mut d, v, true);
            diffs.push(d);
        }
    }
    diffs.sort();
    diffs.dedup();
    Ok(diffs)
}

// ---------------------------------------------------------------------------
// inequality checkers
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CsKind {
    Additive,
    Multiplicative,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CsReport {
    pub kind: CsKind,
    pub set_size: usize,
    pub fold_size: usize,
    pub energy: Rat,
    /// `|sA| · E_s(A)` (resp. multiplicative), the certified larger side.
    pub lhs: Rat,
    /// `|A|^{2s}`.
    pub rhs: Rat,
    pub holds: bool,
}

/// `|sA| ≥ |A|^{2s} E_s(A)^{-1}` and its multiplicative twin, checked as
/// `|sA| · E_s(A) ≥ |A|^{2s}` in exact arithmetic.
pub fn check_cauchy_schwarz(a: &GroundSet, s: u32, kind: CsKind) -> Result<CsReport, EnergyError> {
    if a.is_empty() {
        return Err(EnergyError::EmptySet);
    }
    let (fold_size, energy) = match kind {
        CsKind::Additive => (fold_sumset(a, s).len(), plain_energy_e(a, s)),
        CsKind::Multiplicative => (fold_productset(a, s).len(), plain_energy_m(a, s)),
    };
    let lhs = crate::arith::rat(fold_size as i64) * &energy;
    let rhs = rat_pow(&crate::arith::rat(a.len() as i64), 2 * s);
    let holds = lhs >= rhs;
    Ok(CsReport {
        kind,
        set_size: a.len(),
        fold_size,
        energy,
        lhs,
        rhs,
        holds,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitCheck {
    /// Left side raised to the power that clears all roots.
    pub lhs: Rat,
    /// Right side raised to the same power.
    pub rhs: Rat,
    pub holds: bool,
}

/// Hölder product split for additive energies:
/// `E_{s,𝔞,φ⃗}(A_1,…,A_{2s})^{2s} ≤ ∏ᵢ E_{s,𝔞,(φᵢ..φᵢ)}(Aᵢ)`.
pub fn check_holder_product_e(
    sets: &[&GroundSet],
    w: &WeightFn,
    phis: &PolyVec,
) -> Result<SplitCheck, EnergyError> {
    let s = check_shape(sets, phis)?;
    let mixed = energy_e_sets(sets, w, phis, Method::Auto)?.value;
    let mut rhs = Rat::one();
    for (i, a) in sets.iter().enumerate() {
        let uniform = PolyVec::uniform(phis.polys()[i].clone(), s);
        rhs *= energy_e(a, w, &uniform, Method::Auto)?.value;
    }
    let lhs = rat_pow(&mixed, 2 * s);
    let holds = lhs <= rhs;
    Ok(SplitCheck { lhs, rhs, holds })
}

/// Hölder product split for coupled energies, with the `(d+2)^{2s}` loss:
/// `J(A_1,…,A_{2s})^{2s} ≤ (d+2)^{4s²} ∏ᵢ J_{φᵢ}(Aᵢ)`. When every operand is
/// certified inside one sign-constant interval of its polynomial, the
/// constant drops to 1.
pub fn check_holder_product_j(
    sets: &[&GroundSet],
    w: &WeightFn,
    phis: &PolyVec,
    interval_certified: bool,
) -> Result<SplitCheck, EnergyError> {
    let s = check_shape(sets, phis)?;
    if interval_certified {
        for (i, a) in sets.iter().enumerate() {
            certify_interval(a, &phis.polys()[i])?;
        }
    }
    let mixed = energy_j_sets(sets, w, phis, Method::Auto)?.value;
    let mut rhs = Rat::one();
    for (i, a) in sets.iter().enumerate() {
        let uniform = PolyVec::uniform(phis.polys()[i].clone(), s);
        rhs *= energy_j(a, w, &uniform, Method::Auto)?.value;
    }
    if !interval_certified {
        let d = phis.max_degree() as i64;
        rhs *= rat_pow(&crate::arith::rat(d + 2), 4 * s * s);
    }
    let lhs = rat_pow(&mixed, 2 * s);
    let holds = lhs <= rhs;
    Ok(SplitCheck { lhs, rhs, holds })
}

/// Requires all of `a` inside one open interval on which both `x` and
/// `φ(x)` keep constant sign.
pub fn certify_interval(a: &GroundSet, phi: &PolyQ) -> Result<(), EnergyError> {
    let mut witness: Option<&Rat> = None;
    for x in a.iter() {
        if x.is_zero() || phi.eval(x).is_zero() {
            return Err(EnergyError::ExcludedElement(x.to_string()));
        }
        match witness {
            None => witness = Some(x),
            Some(w0) => {
                if !phi.same_sign_interval(w0, x) {
                    return Err(EnergyError::ExcludedElement(x.to_string()));
                }
            }
        }
    }
    Ok(())
}

/// Union split for additive energies:
/// `E_{s,𝔞,φ⃗}(A_1 ∪ … ∪ A_r) ≤ r^{2s} supᵢⱼ E_{s,𝔞,(φⱼ..φⱼ)}(Aᵢ)`.
pub fn check_union_e(
    parts: &[&GroundSet],
    w: &WeightFn,
    phis: &PolyVec,
) -> Result<SplitCheck, EnergyError> {
    let s = phis.s();
    let union = parts
        .iter()
        .fold(GroundSet::empty(), |acc, p| acc.union(p));
    let lhs = energy_e(&union, w, phis, Method::Auto)?.value;
    let mut sup = Rat::zero();
    for a in parts {
        for phi in phis.polys() {
            let uniform = PolyVec::uniform(phi.clone(), s);
            let e = energy_e(a, w, &uniform, Method::Auto)?.value;
            if e > sup {
                sup = e;
            }
        }
    }
    let rhs = rat_pow(&crate::arith::rat(parts.len() as i64), 2 * s) * sup;
    let holds = lhs <= rhs;
    Ok(SplitCheck { lhs, rhs, holds })
}

/// Union split for coupled energies with the `(d+2)^{2s}` loss:
/// `J_{s,𝔞,φ⃗}(A_1 ∪ … ∪ A_r) ≤ (d+2)^{2s} r^{2s} supᵢⱼ J_{s,𝔞,φⱼ}(Aᵢ)`.
pub fn check_union_j(
    parts: &[&GroundSet],
    w: &WeightFn,
    phis: &PolyVec,
) -> Result<SplitCheck, EnergyError> {
    let s = phis.s();
    let union = parts
        .iter()
        .fold(GroundSet::empty(), |acc, p| acc.union(p));
    let lhs = energy_j(&union, w, phis, Method::Auto)?.value;
    let mut sup = Rat::zero();
    for a in parts {
        for phi in phis.polys() {
            let uniform = PolyVec::uniform(phi.clone(), s);
            let e = energy_j(a, w, &uniform, Method::Auto)?.value;
            if e > sup {
                sup = e;
            }
        }
    }
    let d = phis.max_degree() as i64;
    let rhs = rat_pow(&crate::arith::rat(d + 2), 2 * s)
        * rat_pow(&crate::arith::rat(parts.len() as i64), 2 * s)
        * sup;
    let holds = lhs <= rhs;
    Ok(SplitCheck { lhs, rhs, holds })
}

/// Drop to a lower moment, unit weights: `E_s(A) ≤ |A|^{2s-2l} E_l(A)`.
pub fn check_drop_e(a: &GroundSet, s: u32, l: u32) -> SplitCheck {
    assert!(l >= 1 && l < s);
    let lhs = plain_energy_e(a, s);
    let rhs = rat_pow(&crate::arith::rat(a.len() as i64), 2 * (s - l)) * plain_energy_e(a, l);
    let holds = lhs <= rhs;
    SplitCheck { lhs, rhs, holds }
}

/// Drop to a lower moment for coupled energies, unit weights, with the
/// explicit interval-splitting loss: `J_{s,φ}(A) ≤ (d+2)^{4s} |A|^{2s-2l} J_{l,φ}(A)`.
pub fn check_drop_j(a: &GroundSet, phi: &PolyQ, s: u32, l: u32) -> Result<SplitCheck, EnergyError> {
    assert!(l >= 1 && l < s);
    let w = WeightFn::ones(a);
    let lhs = energy_j(a, &w, &PolyVec::uniform(phi.clone(), s), Method::Auto)?.value;
    let jl = energy_j(a, &w, &PolyVec::uniform(phi.clone(), l), Method::Auto)?.value;
    let d = phi.degree().unwrap_or(0) as i64;
    let rhs = rat_pow(&crate::arith::rat(d + 2), 4 * s)
        * rat_pow(&crate::arith::rat(a.len() as i64), 2 * (s - l))
        * jl;
    let holds = lhs <= rhs;
    Ok(SplitCheck { lhs, rhs, holds })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceReport {
    /// `#{(a_1, a_2) ∈ A² | a_1 = φ(a_2)}`.
    pub incidences: usize,
    /// `|A·A| / |A|`.
    pub doubling: Rat,
}

/// Points of `A × A` on the curve `y = φ(x)`, with the multiplicative
/// doubling constant for context.
pub fn count_curve_incidences(a: &GroundSet, phi: &PolyQ) -> Result<IncidenceReport, EnergyError> {
    if a.is_empty() {
        return Err(EnergyError::EmptySet);
    }
    let incidences = a.iter().filter(|x| a.contains(&phi.eval(x))).count();
    let doubling = crate::arith::rat(product_set(a, a).len() as i64)
        / crate::arith::rat(a.len() as i64);
    Ok(IncidenceReport {
        incidences,
        doubling,
    })
}
