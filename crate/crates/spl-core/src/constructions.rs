//! Generators for the structured example families used as fixtures and
//! extremal witnesses.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::arith::{int_pow, primes_from, rat, rat_pow, Rat};
use crate::energy::{self, Method};
use crate::ground::{GroundSet, WeightFn};
use crate::padic;
use crate::poly::{PolyQ, PolyVec};

/// Per-element size cap: numerator and denominator must fit 64 bits.
const ELEMENT_BITS_CAP: u64 = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    /// `{start, start+step, …}` of the given length.
    Ap { start: Rat, step: Rat, len: usize },
    /// `{1, base, base², …}` of the given length.
    Gp { base: Rat, len: usize },
    /// `{(2i+1)·2^j | 1 ≤ i ≤ m, 1 ≤ j ≤ n}`.
    OddTimesPowers { m: u32, n: u32 },
    /// First `p_count` primes times the next `q_count` primes.
    PrimeProducts { p_count: usize, q_count: usize },
    Dilate { inner: Box<FamilySpec>, lambda: Rat },
    Union(Box<FamilySpec>, Box<FamilySpec>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    NonPositiveParameter(String),
    ElementOverflow,
    NotASubset(String),
}

impl fmt::Display for ConstructionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructionError::NonPositiveParameter(m) => write!(f, "non-positive parameter: {m}"),
            ConstructionError::ElementOverflow => {
                write!(f, "element exceeds the {ELEMENT_BITS_CAP}-bit size cap")
            }
            ConstructionError::NotASubset(m) => write!(f, "not a subset: {m}"),
        }
    }
}

pub fn gen(spec: &FamilySpec) -> Result<GroundSet, ConstructionError> {
    let set = match spec {
        FamilySpec::Ap { start, step, len } => {
            require_positive(*len, "len")?;
            if step.is_zero() {
                return Err(ConstructionError::NonPositiveParameter("step = 0".into()));
            }
            GroundSet::new((0..*len).map(|i| start + step * rat(i as i64)))
        }
        FamilySpec::Gp { base, len } => {
            require_positive(*len, "len")?;
            if base.is_zero() {
                return Err(ConstructionError::NonPositiveParameter("base = 0".into()));
            }
            GroundSet::new((0..*len).map(|i| rat_pow(base, i as u32)))
        }
        FamilySpec::OddTimesPowers { m, n } => {
            require_positive(*m as usize, "m")?;
            require_positive(*n as usize, "n")?;
            GroundSet::new((1..=*m).flat_map(|i| {
                (1..=*n).map(move |j| {
                    Rat::from(
                        crate::arith::int(2 * i as i64 + 1)
                            * int_pow(&crate::arith::int(2), j),
                    )
                })
            }))
        }
        FamilySpec::PrimeProducts { p_count, q_count } => {
            require_positive(*p_count, "p_count")?;
            require_positive(*q_count, "q_count")?;
            let p = primes_from(2, *p_count);
            let q = primes_from(p.last().copied().unwrap_or(1) + 1, *q_count);
            GroundSet::new(
                p.iter()
                    .flat_map(|&a| q.iter().map(move |&b| rat(a as i64) * rat(b as i64))),
            )
        }
        FamilySpec::Dilate { inner, lambda } => {
            if lambda.is_zero() {
                return Err(ConstructionError::NonPositiveParameter("lambda = 0".into()));
            }
            gen(inner)?.dilate(lambda)
        }
        FamilySpec::Union(left, right) => gen(left)?.union(&gen(right)?),
    };
    for x in set.iter() {
        if x.numer().bits() > ELEMENT_BITS_CAP || x.denom().bits() > ELEMENT_BITS_CAP {
            return Err(ConstructionError::ElementOverflow);
        }
    }
    Ok(set)
}

fn require_positive(v: usize, name: &str) -> Result<(), ConstructionError> {
    if v == 0 {
        Err(ConstructionError::NonPositiveParameter(alloc::format!(
            "{name} = 0"
        )))
    } else {
        Ok(())
    }
}

/// Exact measurements on the odd-times-powers family: product-set size, the
/// Cauchy–Schwarz lower bound on multiplicative energy, and per-dyadic-fiber
/// additive energies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddPowersReport {
    pub b_fold_size: usize,
    /// `|B|^{2s} / |B^{(s)}|`.
    pub cs_lower_bound: Rat,
    pub m_energy: Rat,
    /// `(j, E_{s,φ}(B ∩ S_j))` for each dyadic fiber `S_j = {2^j·odd}`.
    pub fiber_energies: Vec<(i64, Rat)>,
    /// `M_s(B) ≥ |B|^{2s}/|B^{(s)}|` — must hold.
    pub holds: bool,
}

pub fn bwex_report(
    m: u32,
    n: u32,
    s: u32,
    phi: &PolyQ,
    b: &GroundSet,
) -> Result<OddPowersReport, ConstructionError> {
    let a = gen(&FamilySpec::OddTimesPowers { m, n })?;
    if !b.is_subset_of(&a) {
        return Err(ConstructionError::NotASubset(alloc::format!(
            "{b} is not contained in the (m={m}, n={n}) family"
        )));
    }
    let fold = energy::fold_productset(b, s);
    let cs_lower_bound = rat_pow(&rat(b.len() as i64), 2 * s) / rat(fold.len() as i64);
    let m_energy = energy::plain_energy_m(b, s);
    let phis = PolyVec::uniform(phi.clone(), s);
    let w = WeightFn::ones(b);
    let fib = padic::fiber(b, 2).expect("family elements are positive");
    let fiber_energies = fib
        .fibers()
        .iter()
        .map(|(&j, g)| {
            let e = energy::energy_e(g, &w, &phis, Method::Auto)
                .expect("identity-shaped vector")
                .value;
            (j, e)
        })
        .collect();
    let holds = m_energy >= cs_lower_bound;
    Ok(OddPowersReport {
        b_fold_size: fold.len(),
        cs_lower_bound,
        m_energy,
        fiber_energies,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_examples() {
        assert_eq!(
            gen(&FamilySpec::OddTimesPowers { m: 2, n: 2 }).unwrap(),
            GroundSet::from_ints([6, 10, 12, 20])
        );
        assert_eq!(
            gen(&FamilySpec::PrimeProducts {
                p_count: 2,
                q_count: 3
            })
            .unwrap(),
            GroundSet::from_ints([10, 14, 15, 21, 22, 33])
        );
        assert_eq!(
            gen(&FamilySpec::Gp {
                base: rat(2),
                len: 5
            })
            .unwrap(),
            GroundSet::from_ints([1, 2, 4, 8, 16])
        );
        assert_eq!(
            gen(&FamilySpec::Ap {
                start: rat(1),
                step: rat(1),
                len: 6
            })
            .unwrap(),
            GroundSet::from_ints(1..=6)
        );
    }

    #[test]
    fn family_sizes() {
        for m in 1..=10u32 {
            for n in 1..=10u32 {
                let a = gen(&FamilySpec::OddTimesPowers { m, n }).unwrap();
                assert_eq!(a.len(), (m * n) as usize);
            }
        }
        let pq = gen(&FamilySpec::PrimeProducts {
            p_count: 4,
            q_count: 5,
        })
        .unwrap();
        assert_eq!(pq.len(), 20);
    }

    #[test]
    fn gp_matches_ap_energy() {
        for len in 2..=6usize {
            let gp = gen(&FamilySpec::Gp {
                base: rat(2),
                len,
            })
            .unwrap();
            let ap = GroundSet::from_ints(0..len as i64);
            assert_eq!(energy::plain_energy_m(&gp, 2), energy::plain_energy_e(&ap, 2));
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(gen(&FamilySpec::OddTimesPowers { m: 0, n: 3 }).is_err());
        assert!(gen(&FamilySpec::Gp {
            base: rat(0),
            len: 3
        })
        .is_err());
        assert!(gen(&FamilySpec::Gp {
            base: rat(2),
            len: 100
        })
        .is_err());
    }

    #[test]
    fn bwex_examples() {
        let a = gen(&FamilySpec::OddTimesPowers { m: 2, n: 2 }).unwrap();
        let r = bwex_report(2, 2, 2, &PolyQ::identity(), &a).unwrap();
        assert!(r.holds);
        assert_eq!(r.m_energy, energy::plain_energy_m(&a, 2));

        // single dyadic fiber
        let s1 = GroundSet::from_ints([6, 10]);
        let r = bwex_report(2, 2, 2, &PolyQ::identity(), &s1).unwrap();
        assert_eq!(r.fiber_energies.len(), 1);
        assert!(r.holds);

        let single = GroundSet::from_ints([6]);
        let r = bwex_report(2, 2, 2, &PolyQ::identity(), &single).unwrap();
        assert_eq!(r.m_energy, rat(1));
        assert_eq!(r.cs_lower_bound, rat(1));
        assert!(r.holds);

        assert!(bwex_report(2, 2, 2, &PolyQ::identity(), &GroundSet::from_ints([7])).is_err());
    }
}
