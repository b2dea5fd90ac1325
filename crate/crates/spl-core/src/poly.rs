//! Univariate polynomials with exact rational coefficients.
//!
//! Besides evaluation and rational-root enumeration, this module carries the
//! real-root machinery needed for sign analysis: Sturm sequences for exact
//! root counting, bisection-based root isolation, and the partition of the
//! punctured line into maximal intervals on which both `x` and `p(x)` keep a
//! constant sign.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::arith::{factorize, int, rat, sign, Int, Rat};
use crate::ground::GroundSet;

/// Polynomial over ℚ, coefficients lowest-degree first, highest-index
/// coefficient non-zero. The empty coefficient list is the zero polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyQ {
    coeffs: Vec<Rat>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyError {
    /// Operation undefined for the identically-zero polynomial.
    IdenticallyZero,
    Parse(String),
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::IdenticallyZero => write!(f, "identically zero"),
            PolyError::Parse(s) => write!(f, "invalid polynomial literal: {s}"),
        }
    }
}

impl PolyQ {
    pub fn new<I: IntoIterator<Item = Rat>>(coeffs: I) -> Self {
        let mut coeffs: Vec<Rat> = coeffs.into_iter().collect();
        while coeffs.last().is_some_and(Rat::is_zero) {
            coeffs.pop();
        }
        PolyQ { coeffs }
    }

    pub fn from_ints<I: IntoIterator<Item = i64>>(coeffs: I) -> Self {
        Self::new(coeffs.into_iter().map(rat))
    }

    pub fn zero() -> Self {
        PolyQ { coeffs: Vec::new() }
    }

    pub fn constant(c: Rat) -> Self {
        Self::new([c])
    }

    /// The identity map `x`.
    pub fn identity() -> Self {
        Self::from_ints([0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    /// Exact Horner evaluation.
    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Evaluation by naive power expansion; independent cross-check for Horner.
    pub fn eval_naive(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        let mut xp = Rat::one();
        for c in &self.coeffs {
            acc += c * &xp;
            xp *= x;
        }
        acc
    }

    pub fn derivative(&self) -> PolyQ {
        PolyQ::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64)),
        )
    }

    /// `φ(-x)`.
    pub fn reflect(&self) -> PolyQ {
        PolyQ::new(self.coeffs.iter().enumerate().map(|(i, c)| {
            if i % 2 == 1 {
                -c
            } else {
                c.clone()
            }
        }))
    }

    /// `φ_λ(x) = φ(λx)`.
    pub fn scale_arg(&self, lambda: &Rat) -> PolyQ {
        let mut pw = Rat::one();
        PolyQ::new(self.coeffs.iter().map(|c| {
            let out = c * &pw;
            pw *= lambda;
            out
        }))
    }

    pub fn mul_scalar(&self, c: &Rat) -> PolyQ {
        PolyQ::new(self.coeffs.iter().map(|a| a * c))
    }

    /// `φ - φ(0)`: forces the constant term to zero.
    pub fn drop_constant_term(&self) -> PolyQ {
        let mut coeffs = self.coeffs.clone();
        if let Some(c0) = coeffs.first_mut() {
            *c0 = Rat::zero();
        }
        PolyQ::new(coeffs)
    }

    fn sub(&self, other: &PolyQ) -> PolyQ {
        let n = self.coeffs.len().max(other.coeffs.len());
        PolyQ::new((0..n).map(|i| self.coeff(i) - other.coeff(i)))
    }


    /// Euclidean remainder of `self` by `other` (`other` non-zero).
    fn rem(&self, other: &PolyQ) -> PolyQ {
        let mut r = self.clone();
        let d = other.degree().expect("division by zero polynomial");
        let lead = other.leading().unwrap().clone();
        while let Some(rd) = r.degree() {
            if rd < d {
                break;
            }
            let factor = r.leading().unwrap() / &lead;
            let mut shifted = alloc::vec![Rat::zero(); rd - d];
            shifted.extend(other.coeffs.iter().map(|c| c * &factor));
            r = r.sub(&PolyQ::new(shifted));
        }
        r
    }

    fn monic(&self) -> PolyQ {
        match self.leading() {
            Some(l) => self.mul_scalar(&(Rat::one() / l)),
            None => PolyQ::zero(),
        }
    }

    fn gcd(&self, other: &PolyQ) -> PolyQ {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `p / gcd(p, p')`: same roots, all simple.
    fn squarefree_part(&self) -> PolyQ {
        let g = self.gcd(&self.derivative());
        match g.degree() {
            Some(0) | None => self.clone(),
            Some(_) => {
                // exact division by the gcd
                let mut q_coeffs = Vec::new();
                let mut r = self.clone();
                let d = g.degree().unwrap();
                let lead = g.leading().unwrap().clone();
                while let Some(rd) = r.degree() {
                    if rd < d {
                        break;
                    }
                    let factor = r.leading().unwrap() / &lead;
                    q_coeffs.push((rd - d, factor.clone()));
                    let mut shifted = alloc::vec![Rat::zero(); rd - d];
                    shifted.extend(g.coeffs.iter().map(|c| c * &factor));
                    r = r.sub(&PolyQ::new(shifted));
                }
                let deg = q_coeffs.iter().map(|(i, _)| *i).max().unwrap_or(0);
                let mut coeffs = alloc::vec![Rat::zero(); deg + 1];
                for (i, c) in q_coeffs {
                    coeffs[i] = c;
                }
                PolyQ::new(coeffs)
            }
        }
    }

    /// All rational roots, by rational-root enumeration on the primitive
    /// integer form. Errors on the zero polynomial.
    pub fn rational_roots(&self) -> Result<GroundSet, PolyError> {
        if self.is_zero() {
            return Err(PolyError::IdenticallyZero);
        }
        if self.degree() == Some(0) {
            return Ok(GroundSet::empty());
        }
        // clear denominators to an integer polynomial
        let mut lcm = Int::one();
        for c in &self.coeffs {
            lcm = num_integer::lcm(lcm, c.denom().clone());
        }
        let int_coeffs: Vec<Int> = self
            .coeffs
            .iter()
            .map(|c| (c * Rat::from_integer(lcm.clone())).to_integer())
            .collect();
        // strip x^k to expose the root 0
        let low = int_coeffs
            .iter()
            .position(|c| !c.is_zero())
            .expect("non-zero polynomial");
        let mut roots = Vec::new();
        if low > 0 {
            roots.push(Rat::zero());
        }
        let trailing = int_coeffs[low].clone();
        let leading = int_coeffs.last().unwrap().clone();
        for p in divisors(&trailing) {
            for q in divisors(&leading) {
                for cand in [
                    Rat::new(p.clone(), q.clone()),
                    Rat::new(-p.clone(), q.clone()),
                ] {
                    if self.eval(&cand).is_zero() {
                        roots.push(cand);
                    }
                }
            }
        }
        Ok(GroundSet::new(roots))
    }

    /// Sturm chain of the squarefree part.
    fn sturm_chain(&self) -> Vec<PolyQ> {
        let p = self.squarefree_part();
        let mut chain = alloc::vec![p.clone()];
        let dp = p.derivative();
        if !dp.is_zero() {
            chain.push(dp);
            loop {
                let n = chain.len();
                let r = chain[n - 2].rem(&chain[n - 1]);
                if r.is_zero() {
                    break;
                }
                chain.push(r.mul_scalar(&rat(-1)));
            }
        }
        chain
    }

    /// Number of distinct real roots in the open interval `(lo, hi)`, where
    /// `None` bounds mean ∓∞. Endpoint roots are not counted.
    pub fn count_real_roots_in(&self, lo: Option<&Rat>, hi: Option<&Rat>) -> usize {
        assert!(!self.is_zero(), "root counting on zero polynomial");
        let chain = self.sturm_chain();
        let va = sign_variations_at(&chain, lo, true);
        let vb = sign_variations_at(&chain, hi, false);
        // V(lo) - V(hi) counts roots in (lo, hi]; drop hi if it is a root
        let closed = va.saturating_sub(vb);
        let hi_is_root = hi.is_some_and(|b| self.eval(b).is_zero());
        closed - usize::from(hi_is_root)
    }

    pub fn count_real_roots(&self) -> usize {
        self.count_real_roots_in(None, None)
    }

    /// Isolates every real root: rational roots exactly, irrational roots by
    /// shrinking open brackets `(lo, hi)` containing exactly one root each and
    /// excluding 0. Errors on the zero polynomial.
    pub fn real_root_brackets(&self) -> Result<Vec<RootBracket>, PolyError> {
        if self.is_zero() {
            return Err(PolyError::IdenticallyZero);
        }
        if self.degree() == Some(0) {
            return Ok(Vec::new());
        }
        let bound = self.cauchy_root_bound();
        let mut lo = -bound.clone();
        let mut hi = bound;
        // nudge endpoints off roots
        while self.eval(&lo).is_zero() {
            lo -= rat(1);
        }
        while self.eval(&hi).is_zero() {
            hi += rat(1);
        }
        let mut out = Vec::new();
        self.isolate(&lo, &hi, &mut out);
        // keep irrational brackets clear of 0
        for b in &mut out {
            if b.exact.is_none() {
                while b.lo.is_negative() && b.hi.is_positive() {
                    let (l, h) = self.bisect_bracket(&b.lo, &b.hi);
                    b.lo = l;
                    b.hi = h;
                }
            }
        }
        Ok(out)
    }

    /// `1 + max |a_i| / |a_d|`: every real root lies in `(-B, B)`.
    fn cauchy_root_bound(&self) -> Rat {
        let lead = self.leading().expect("non-zero polynomial").abs();
        let max = self
            .coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Rat::zero);
        Rat::one() + max / lead
    }

    fn isolate(&self, lo: &Rat, hi: &Rat, out: &mut Vec<RootBracket>) {
        // precondition: p(lo) != 0, p(hi) != 0
        let n = self.count_real_roots_in(Some(lo), Some(hi));
        if n == 0 {
            return;
        }
        if n == 1 {
            // pin down a rational root exactly if this bracket holds one
            if let Ok(rs) = self.rational_roots() {
                for r in rs.iter() {
                    if r > lo && r < hi {
                        out.push(RootBracket::exact(r.clone()));
                        return;
                    }
                }
            }
            out.push(RootBracket {
                lo: lo.clone(),
                hi: hi.clone(),
                exact: None,
            });
            return;
        }
        let mut mid = (lo + hi) / rat(2);
        while self.eval(&mid).is_zero() {
            // midpoint hit a root; shift it while staying inside
            mid = (lo + &mid) / rat(2);
        }
        self.isolate(lo, &mid, out);
        self.isolate(&mid, hi, out);
    }

    /// One bisection step on a bracket known to contain exactly one root.
    fn bisect_bracket(&self, lo: &Rat, hi: &Rat) -> (Rat, Rat) {
        let mut mid = (lo + hi) / rat(2);
        while self.eval(&mid).is_zero() {
            mid = (lo + &mid) / rat(2);
        }
        if self.count_real_roots_in(Some(lo), Some(&mid)) == 1 {
            (lo.clone(), mid)
        } else {
            (mid, hi.clone())
        }
    }

    /// Partition of `ℝ \ ({0} ∪ roots)` into maximal open intervals on which
    /// both `x` and `p(x)` have constant sign.
    pub fn sign_intervals(&self) -> Result<Vec<SignInterval>, PolyError> {
        if self.is_zero() {
            return Err(PolyError::IdenticallyZero);
        }
        let mut cuts: Vec<RootBracket> = self.real_root_brackets()?;
        if !self.eval(&Rat::zero()).is_zero() {
            cuts.push(RootBracket::exact(Rat::zero()));
        }
        cuts.sort_by(|a, b| a.lower().cmp(&b.lower()));
        let mut intervals = Vec::new();
        for i in 0..=cuts.len() {
            let lo = if i == 0 {
                Endpoint::NegInf
            } else {
                Endpoint::from_bracket(&cuts[i - 1])
            };
            let hi = if i == cuts.len() {
                Endpoint::PosInf
            } else {
                Endpoint::from_bracket(&cuts[i])
            };
            let sample = sample_between(
                i.checked_sub(1).map(|j| &cuts[j]),
                cuts.get(i),
            );
            intervals.push(SignInterval {
                lo,
                hi,
                sign_x: sign(&sample),
                sign_p: sign(&self.eval(&sample)),
                sample,
            });
        }
        Ok(intervals)
    }

    /// Index of the sign-constant interval containing the rational `x`
    /// (`x != 0`, `p(x) != 0`): the number of cut points below `x`.
    pub fn interval_index(&self, x: &Rat) -> usize {
        assert!(!x.is_zero() && !self.eval(x).is_zero());
        let roots_below = self.count_real_roots_in(None, Some(x));
        let zero_cut_below =
            x.is_positive() && !self.eval(&Rat::zero()).is_zero();
        roots_below + usize::from(zero_cut_below)
    }

    /// True when `x` and `y` lie in a common open interval on which both the
    /// identity and `p` keep constant sign.
    pub fn same_sign_interval(&self, x: &Rat, y: &Rat) -> bool {
        if x.is_zero() || y.is_zero() || self.eval(x).is_zero() || self.eval(y).is_zero() {
            return false;
        }
        if x == y {
            return true;
        }
        self.interval_index(x) == self.interval_index(y)
    }
}

/// Divisors of `|n|`, positive, unordered.
fn divisors(n: &Int) -> Vec<Int> {
    let mut out = alloc::vec![Int::one()];
    for (p, e) in factorize(n) {
        let base: Vec<Int> = out.clone();
        let mut pw = Int::one();
        for _ in 0..e {
            pw *= int(p as i64);
            out.extend(base.iter().map(|d| d * &pw));
        }
    }
    out
}

fn sign_variations_at(chain: &[PolyQ], x: Option<&Rat>, neg_inf: bool) -> usize {
    let signs: Vec<i32> = chain
        .iter()
        .map(|p| match x {
            Some(x) => sign(&p.eval(x)),
            None => {
                // sign at ∓∞ from the leading coefficient and degree parity
                match p.leading() {
                    None => 0,
                    Some(l) => {
                        let ls = sign(l);
                        let deg = p.degree().unwrap();
                        if neg_inf && deg % 2 == 1 {
                            -ls
                        } else {
                            ls
                        }
                    }
                }
            }
        })
        .collect();
    let mut count = 0;
    let mut last = 0;
    for s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Picks a rational strictly between two consecutive cut points.
fn sample_between(left: Option<&RootBracket>, right: Option<&RootBracket>) -> Rat {
    match (left, right) {
        (None, None) => rat(1),
        (None, Some(r)) => r.lower() - rat(1),
        (Some(l), None) => l.upper() + rat(1),
        (Some(l), Some(r)) => {
            if l.upper() < r.lower() {
                (l.upper() + r.lower()) / rat(2)
            } else {
                // adjacent brackets sharing an endpoint: the shared rational
                // endpoint lies strictly between the two roots
                l.upper()
            }
        }
    }
}

/// An isolated real root: either an exact rational or an open bracket
/// `(lo, hi)` containing exactly one (irrational) root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootBracket {
    pub lo: Rat,
    pub hi: Rat,
    pub exact: Option<Rat>,
}

impl RootBracket {
    fn exact(r: Rat) -> Self {
        RootBracket {
            lo: r.clone(),
            hi: r.clone(),
            exact: Some(r),
        }
    }

    /// A rational lower bound on the root.
    pub fn lower(&self) -> Rat {
        self.lo.clone()
    }

    /// A rational upper bound on the root.
    pub fn upper(&self) -> Rat {
        self.hi.clone()
    }
}

/// One endpoint of a sign-constant interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Endpoint {
    NegInf,
    PosInf,
    /// Exact rational cut (0 or a rational root).
    At(Rat),
    /// Irrational root isolated inside the open bracket.
    Bracket(Rat, Rat),
}

impl Endpoint {
    fn from_bracket(b: &RootBracket) -> Endpoint {
        match &b.exact {
            Some(r) => Endpoint::At(r.clone()),
            None => Endpoint::Bracket(b.lo.clone(), b.hi.clone()),
        }
    }
}

/// Maximal open interval on which both `x` and `p(x)` keep constant sign,
/// with a rational witness point inside.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignInterval {
    pub lo: Endpoint,
    pub hi: Endpoint,
    pub sign_x: i32,
    pub sign_p: i32,
    pub sample: Rat,
}

/// A vector `(φ_1, ..., φ_{2s})` of polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyVec {
    polys: Vec<PolyQ>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyVecError {
    OddLength(usize),
    Empty,
}

impl fmt::Display for PolyVecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyVecError::OddLength(n) => write!(f, "polynomial vector length {n} is odd"),
            PolyVecError::Empty => write!(f, "empty polynomial vector"),
        }
    }
}

impl PolyVec {
    pub fn new(polys: Vec<PolyQ>) -> Result<Self, PolyVecError> {
        if polys.is_empty() {
            return Err(PolyVecError::Empty);
        }
        if polys.len() % 2 != 0 {
            return Err(PolyVecError::OddLength(polys.len()));
        }
        Ok(PolyVec { polys })
    }

    /// `(φ, ..., φ)` of length `2s`.
    pub fn uniform(p: PolyQ, s: u32) -> Self {
        PolyVec {
            polys: alloc::vec![p; 2 * s as usize],
        }
    }

    pub fn identity(s: u32) -> Self {
        Self::uniform(PolyQ::identity(), s)
    }

    pub fn s(&self) -> u32 {
        (self.polys.len() / 2) as u32
    }

    pub fn polys(&self) -> &[PolyQ] {
        &self.polys
    }

    /// Maximum degree over the entries (0 for all-constant vectors).
    pub fn max_degree(&self) -> usize {
        self.polys
            .iter()
            .filter_map(|p| p.degree())
            .max()
            .unwrap_or(0)
    }

    /// True when some entry vanishes at some element of `a`.
    pub fn has_root_in(&self, a: &GroundSet) -> bool {
        a.iter()
            .any(|x| self.polys.iter().any(|p| p.eval(x).is_zero()))
    }

    pub fn reflect(&self) -> PolyVec {
        PolyVec {
            polys: self.polys.iter().map(PolyQ::reflect).collect(),
        }
    }
}

impl fmt::Display for PolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for PolyQ {
    type Err = PolyError;

    /// Parses the coefficient-list form `[1, 0, -2]`, lowest degree first.
    fn from_str(s: &str) -> Result<Self, PolyError> {
        let t = s.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| PolyError::Parse("expected brackets".to_string()))?;
        let mut coeffs = Vec::new();
        for part in inner.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let c: Rat = part
                .parse()
                .map_err(|_| PolyError::Parse(part.to_string()))?;
            coeffs.push(c);
        }
        Ok(PolyQ::new(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;

    fn p(coeffs: &[i64]) -> PolyQ {
        PolyQ::from_ints(coeffs.iter().copied())
    }

    #[test]
    fn eval_examples() {
        // x^2 at 3 -> 9
        assert_eq!(p(&[0, 0, 1]).eval(&rat(3)), rat(9));
        // zero polynomial at 7 -> 0
        assert_eq!(PolyQ::zero().eval(&rat(7)), rat(0));
        // 2x+1 at 1/2 -> 2
        assert_eq!(p(&[1, 2]).eval(&ratio(1, 2)), rat(2));
    }

    #[test]
    fn rational_roots_examples() {
        // x^2 - 1 -> {-1, 1}
        let r = p(&[-1, 0, 1]).rational_roots().unwrap();
        assert_eq!(r, GroundSet::from_ints([-1, 1]));
        // x^2 + 1 -> {}
        assert!(p(&[1, 0, 1]).rational_roots().unwrap().is_empty());
        // 2x^2 - x -> {0, 1/2}
        let r = p(&[0, -1, 2]).rational_roots().unwrap();
        assert_eq!(r, GroundSet::new([rat(0), ratio(1, 2)]));
        assert!(PolyQ::zero().rational_roots().is_err());
    }

    #[test]
    fn sturm_counts() {
        assert_eq!(p(&[-1, 0, 1]).count_real_roots(), 2);
        assert_eq!(p(&[1, 0, 1]).count_real_roots(), 0);
        assert_eq!(p(&[-2, 0, 1]).count_real_roots(), 2); // ±√2
        assert_eq!(
            p(&[-2, 0, 1]).count_real_roots_in(Some(&rat(0)), Some(&rat(2))),
            1
        );
        // repeated root: (x-1)^2
        assert_eq!(p(&[1, -2, 1]).count_real_roots(), 1);
    }

    #[test]
    fn sign_interval_examples() {
        // x^2 - 1 -> 4 intervals
        let iv = p(&[-1, 0, 1]).sign_intervals().unwrap();
        assert_eq!(iv.len(), 4);
        assert_eq!(
            iv.iter().map(|i| (i.sign_x, i.sign_p)).collect::<Vec<_>>(),
            alloc::vec![(-1, 1), (-1, -1), (1, -1), (1, 1)]
        );
        // x -> 2 intervals
        assert_eq!(p(&[0, 1]).sign_intervals().unwrap().len(), 2);
        // x^2 + 1 -> 2 intervals (only 0 splits)
        assert_eq!(p(&[1, 0, 1]).sign_intervals().unwrap().len(), 2);
        // x^2 - 2 -> 4 intervals, irrational endpoints
        let iv = p(&[-2, 0, 1]).sign_intervals().unwrap();
        assert_eq!(iv.len(), 4);
        assert!(iv
            .iter()
            .any(|i| matches!(i.lo, Endpoint::Bracket(_, _))));
    }

    #[test]
    fn interval_classification() {
        let q = p(&[-2, 0, 1]); // roots ±√2, cuts {-√2, 0, √2}
        assert_eq!(q.interval_index(&rat(-2)), 0);
        assert_eq!(q.interval_index(&rat(-1)), 1);
        assert_eq!(q.interval_index(&rat(1)), 2);
        assert_eq!(q.interval_index(&rat(2)), 3);
        assert!(q.same_sign_interval(&rat(2), &rat(3)));
        assert!(!q.same_sign_interval(&rat(1), &rat(2)));
    }

    #[test]
    fn horner_matches_naive() {
        let q = PolyQ::new([ratio(1, 3), rat(-2), rat(0), ratio(5, 7)]);
        for x in [rat(-3), ratio(-1, 2), rat(0), ratio(2, 5), rat(4)] {
            assert_eq!(q.eval(&x), q.eval_naive(&x));
        }
    }

    #[test]
    fn parse_roundtrip() {
        let q: PolyQ = "[1, 0, -2]".parse().unwrap();
        assert_eq!(q, PolyQ::from_ints([1, 0, -2]));
        assert!("1, 0".parse::<PolyQ>().is_err());
    }

    #[test]
    fn polyvec_shape() {
        assert!(PolyVec::new(alloc::vec![PolyQ::identity(); 3]).is_err());
        let v = PolyVec::identity(2);
        assert_eq!(v.s(), 2);
        assert_eq!(v.max_degree(), 1);
    }
}
