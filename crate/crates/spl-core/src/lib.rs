//! Exact-arithmetic toolkit for sum-product experiments over finite sets of
//! rationals: mixed additive/multiplicative energies, p-adic decoupling with
//! explicit constants, query-complexity witnesses, Sidon-set extraction, and
//! low-energy decompositions. Every pass/fail decision is made in exact
//! integer or rational arithmetic.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod arith;
pub mod constructions;
pub mod decompose;
pub mod energy;
pub mod ground;
pub mod padic;
pub mod poly;
pub mod sidon;
pub mod structure;

pub use arith::{Int, Rat};
pub use ground::{GroundSet, WeightFn};
pub use poly::{PolyQ, PolyVec};
