//! Exact scalar arithmetic: arbitrary-precision integers and rationals,
//! integer k-th roots, and certified comparisons involving s-th roots.
//!
//! Every quantity in this crate is an exact integer or rational; no value is
//! ever rounded. Inequalities that formally involve irrational s-th roots are
//! decided through integer root brackets at increasing precision, with an
//! exact sufficient condition as a terminal fallback.

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision signed integer.
pub type Int = BigInt;
/// Arbitrary-precision rational, kept in lowest terms with positive denominator.
pub type Rat = BigRational;

pub fn int(n: i64) -> Int {
    Int::from(n)
}

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

/// `base^exp` for a rational base and non-negative integer exponent.
pub fn rat_pow(base: &Rat, exp: u32) -> Rat {
    let mut acc = Rat::one();
    let mut b = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &b;
        }
        b = &b * &b;
        e >>= 1;
    }
    acc
}

/// `base^exp` for an integer base and non-negative integer exponent.
pub fn int_pow(base: &Int, exp: u32) -> Int {
    base.pow(exp)
}

/// Sign of a rational as -1, 0, or +1.
pub fn sign(x: &Rat) -> i32 {
    match x.cmp(&Rat::zero()) {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

/// Floor of `x^(1/k)` for `x >= 0`.
pub fn floor_kth_root(x: &Int, k: u32) -> Int {
    debug_assert!(!x.is_negative());
    x.nth_root(k)
}

/// Floor of a non-negative rational as an integer.
fn floor_rat(x: &Rat) -> Int {
    x.floor().to_integer()
}

fn ceil_rat(x: &Rat) -> Int {
    x.ceil().to_integer()
}

/// Integer bracket `l` with `l <= y^(1/s) * scale`, for `y >= 0`.
fn root_lower(y: &Rat, s: u32, scale_pow_s: &Int) -> Int {
    let scaled = y * Rat::from_integer(scale_pow_s.clone());
    floor_kth_root(&floor_rat(&scaled), s)
}

/// Integer bracket `u` with `u >= y^(1/s) * scale`, for `y >= 0`.
fn root_upper(y: &Rat, s: u32, scale_pow_s: &Int) -> Int {
    let scaled = y * Rat::from_integer(scale_pow_s.clone());
    floor_kth_root(&ceil_rat(&scaled), s) + 1
}

/// Decides whether `lhs^(1/s) <= c * (y_1^(1/s) + ... + y_r^(1/s))` holds,
/// for non-negative rationals `lhs`, `y_i` and a rational constant `c >= 1`.
///
/// The comparison is certified exactly: root values are bracketed between
/// integer bounds at precision `10^m`, with `m` doubled until the inequality
/// is decided. If the two sides agree beyond the precision cap, the exact
/// sufficient condition `lhs <= c^s * (y_1 + ... + y_r)` is used, which is
/// valid since `(Σ y_i)^(1/s) <= Σ y_i^(1/s)` on non-negative terms.
pub fn root_sum_le(lhs: &Rat, c: &Rat, terms: &[Rat], s: u32) -> bool {
    debug_assert!(s >= 1);
    debug_assert!(!lhs.is_negative());
    debug_assert!(terms.iter().all(|t| !t.is_negative()));
    if lhs.is_zero() {
        return true;
    }
    // Commensurable fast path: if lhs and every term are rational s-th power
    // multiples of a common base, both sides are rational multiples of the
    // same radical and the comparison is exact. This also settles equality
    // cases, which the bracket loop below can never decide.
    let commensurable: Option<Rat> = terms
        .iter()
        .map(|y| exact_kth_root(&(y / lhs), s))
        .sum();
    if let Some(rhs_coeff) = commensurable {
        return Rat::one() <= c * rhs_coeff;
    }
    let mut digits = 6u32;
    while digits <= 384 {
        let scale_pow_s = int(10).pow(digits * s);
        let lhs_hi = Rat::from_integer(root_upper(lhs, s, &scale_pow_s));
        let rhs_lo: Int = terms.iter().map(|y| root_lower(y, s, &scale_pow_s)).sum();
        if lhs_hi <= c * Rat::from_integer(rhs_lo.clone()) {
            return true;
        }
        let lhs_lo = Rat::from_integer(root_lower(lhs, s, &scale_pow_s));
        let rhs_hi: Int = terms.iter().map(|y| root_upper(y, s, &scale_pow_s)).sum();
        if lhs_lo > c * Rat::from_integer(rhs_hi) {
            return false;
        }
        digits *= 2;
    }
    let term_sum: Rat = terms.iter().sum();
    lhs <= &(rat_pow(c, s) * term_sum)
}

/// The exact rational k-th root of a non-negative rational, if one exists.
pub fn exact_kth_root(y: &Rat, k: u32) -> Option<Rat> {
    debug_assert!(!y.is_negative());
    let num_root = floor_kth_root(y.numer(), k);
    let den_root = floor_kth_root(y.denom(), k);
    if &num_root.pow(k) == y.numer() && &den_root.pow(k) == y.denom() {
        Some(Rat::new(num_root, den_root))
    } else {
        None
    }
}

/// A decimal-precision lower bound on `y^(1/s)` as an exact rational.
pub fn kth_root_lower_bound(y: &Rat, s: u32, digits: u32) -> Rat {
    let scale_pow_s = int(10).pow(digits * s);
    Rat::new(root_lower(y, s, &scale_pow_s), int(10).pow(digits))
}

/// Sum of `Σ w(a)^2` style squares.
pub fn sum_of_squares<'a, I: Iterator<Item = &'a Rat>>(vals: I) -> Rat {
    vals.map(|v| v * v).sum()
}

/// `ceil(log2(x))` for a rational `x >= 1`.
pub fn ceil_log2(x: &Rat) -> u32 {
    assert!(*x >= Rat::one(), "ceil_log2 requires x >= 1");
    let mut k = 0u32;
    let mut pow = Rat::one();
    let two = rat(2);
    while pow < *x {
        pow *= &two;
        k += 1;
    }
    k
}

/// Collects the distinct prime factors of all numerators and denominators of
/// the given non-zero rationals, in increasing order.
pub fn prime_support<'a, I: Iterator<Item = &'a Rat>>(vals: I) -> Vec<u64> {
    let mut primes = Vec::new();
    for v in vals {
        for part in [v.numer().abs(), v.denom().abs()] {
            for (p, _) in factorize(&part) {
                if !primes.contains(&p) {
                    primes.push(p);
                }
            }
        }
    }
    primes.sort_unstable();
    primes
}

/// Prime factorization of `|n|` by trial division, as (prime, exponent) pairs.
///
/// Panics if a prime factor exceeds `u64::MAX`; inputs in this crate are
/// desk-scale set elements and polynomial values.
pub fn factorize(n: &Int) -> Vec<(u64, u32)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    if n <= Int::one() {
        return out;
    }
    let mut p = 2u64;
    while &Int::from(p) * Int::from(p) <= n {
        let mut e = 0u32;
        while (&n % Int::from(p)).is_zero() {
            n /= Int::from(p);
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p = if p == 2 { 3 } else { p + 2 };
    }
    if n > Int::one() {
        let p: u64 = u64::try_from(&n).expect("prime factor too large for u64");
        out.push((p, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// The first `count` prime numbers starting from `from` (inclusive if prime).
pub fn primes_from(from: u64, count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut n = from.max(2);
    while out.len() < count {
        if is_prime(n) {
            out.push(n);
        }
        n += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_brackets_decide_strict_inequalities() {
        // 2^(1/2) <= 1 * (1^(1/2) + 1^(1/2))
        assert!(root_sum_le(&rat(2), &rat(1), &[rat(1), rat(1)], 2));
        // 9^(1/2) > 1 * (1^(1/2) + 1^(1/2))
        assert!(!root_sum_le(&rat(9), &rat(1), &[rat(1), rat(1)], 2));
        // irrational vs irrational: 8^(1/2) <= 2^(1/2) + 2^(1/2) (equality)
        assert!(root_sum_le(&rat(8), &rat(1), &[rat(2), rat(2)], 2));
        // 8^(1/2) > 2^(1/2) + 1^(1/2)
        assert!(!root_sum_le(&rat(8), &rat(1), &[rat(2), rat(1)], 2));
    }

    #[test]
    fn factorize_small() {
        assert_eq!(factorize(&int(12)), alloc::vec![(2, 2), (3, 1)]);
        assert_eq!(factorize(&int(-97)), alloc::vec![(97, 1)]);
        assert!(factorize(&int(1)).is_empty());
    }

    #[test]
    fn ceil_log2_values() {
        assert_eq!(ceil_log2(&rat(1)), 0);
        assert_eq!(ceil_log2(&rat(2)), 1);
        assert_eq!(ceil_log2(&ratio(5, 2)), 2);
        assert_eq!(ceil_log2(&rat(8)), 3);
    }

    #[test]
    fn kth_root_floor() {
        assert_eq!(floor_kth_root(&int(26), 3), int(2));
        assert_eq!(floor_kth_root(&int(27), 3), int(3));
    }
}
