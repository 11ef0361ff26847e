//! Exact computational toolkit for classifying finite groups by the
//! fixed-point behaviour of their smooth actions.
//!
//! The crate is organised as a pipeline of exact subsystems:
//!
//! * [`perm`], [`group`], [`subgroup`] — permutation groups with full element
//!   enumeration under an order cap, conjugacy classes, subgroup lattice,
//!   quotients and Sylow subgroups;
//! * [`taxonomy`] — element-order predicates, the five-class and six-class
//!   labels, the Oliver chain test and co-Sylow subgroups;
//! * [`cyclo`], [`chartab`] — exact cyclotomic arithmetic and character
//!   tables computed by Dixon's modular method;
//! * [`matcher`] — integer-lattice decision procedure for the matched-module
//!   classes, with witness construction and independent re-verification;
//! * [`realizability`] — congruence verdicts for disk and template fixed-point
//!   questions, Oliver numbers and tangent-bundle recipes;
//! * [`gcw`] — equivariant cell complexes and fixed-set Euler characteristics;
//! * [`corpus`] — named group corpora and the classification sweep.
//!
//! All arithmetic is exact: integers, cyclotomic integers in the power basis,
//! and integer lattices. No floating point anywhere.

pub mod chartab;
pub mod corpus;
pub mod cyclo;
pub mod error;
pub mod gcw;
pub mod group;
pub mod intlin;
pub mod matcher;
pub mod modp;
pub mod parse;
pub mod perm;
pub mod realizability;
pub mod subgroup;
pub mod taxonomy;

pub use error::{Error, Result};
pub use group::FiniteGroup;
pub use perm::Permutation;

/// Default cap on group order for full element enumeration.
pub const DEFAULT_ORDER_CAP: u64 = 2000;

/// Environment variable overriding the order cap.
pub const ORDER_CAP_ENV: &str = "OLIVERKIT_ORDER_CAP";

/// Resolve the order cap from an explicit setting, the environment, or the default.
pub fn resolve_order_cap(explicit: Option<u64>) -> u64 {
    if let Some(cap) = explicit {
        return cap;
    }
    if let Ok(s) = std::env::var(ORDER_CAP_ENV) {
        if let Ok(v) = s.trim().parse::<u64>() {
            return v;
        }
    }
    DEFAULT_ORDER_CAP
}
