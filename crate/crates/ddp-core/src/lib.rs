//! Distinct-divisor sequencings of finite groups.
//!
//! A sequencing of a finite group G of order n is an ordering
//! g₀, g₁, …, g_{n−1} of all its elements. Its *divisors* are the
//! consecutive quotients dᵢ = gᵢ⁻¹·g_{i+1}. This crate is about orderings
//! that start at the identity and whose divisors are pairwise distinct —
//! for a full ordering the n−1 divisors then consume every non-identity
//! element exactly once.
//!
//! The crate provides:
//!
//! - explicit group tables built from a small descriptor language
//!   ([`group`]),
//! - verification of the distinct-divisor property and of the mirror-sum
//!   normal form for abelian groups ([`ddp`]),
//! - direct constructions: triangular-number orderings of 2-groups,
//!   inductive constructions for odd abelian groups, scalings, and the
//!   classification of abelian groups admitting such orderings
//!   ([`construct`]),
//! - lifting along quotient maps with abelian kernel of odd order, central
//!   series induction for nilpotent extensions, and semidirect-product
//!   constructions ([`lift`]),
//! - exhaustive backtracking search: existence, counting, and enumeration
//!   ([`search`]).
//!
//! The crate is `no_std` (with `alloc`); anything involving wall clocks,
//! threads, files, or terminals lives in the companion CLI crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod construct;
pub mod ddp;
pub mod error;
pub mod group;
pub mod lift;
pub mod search;

pub use error::Error;
pub use group::{
    build_group, build_group_with, direct_product, parse_descriptor, quotient, upper_central_series,
    Elem, Epimorphism, GroupBuildOptions, GroupDescriptor, GroupTable, Subgroup,
};

pub use ddp::{
    divisors, sequence_from_divisors, signed_divisors, verify_ddp, verify_slonimsky, DdpSequence,
    DdpVerdict, SlonimskyVerdict,
};

pub use construct::{
    abelian_ddp_exists, ddp_abelian, ddp_count_lower_bound, decompose_abelian,
    decompose_abelian_subgroup, power2_family, scale_sequence, slonimsky_abelian, slonimsky_cyclic,
    slonimsky_for_moduli, triangular_on, triangular_sequence, triangular_variant, variant_on,
};

pub use lift::{
    build_lift_plan, check_lift_precondition, enumerate_lifts, lift_ddp, lift_via_central_series,
    prime_semidirect_ddp, semidirect_ddp, sqrt_odd_abelian, LiftChoice, LiftPlan, PlanSelection,
};

pub use search::{
    a141599_prefix, count_ddp, count_ddp_monitored, count_ddp_subtree, enumerate_ddp, exists_ddp,
    exists_ddp_monitored, CountOutcome, DdpEnumerator, SearchMonitor, StepOutcome,
};
