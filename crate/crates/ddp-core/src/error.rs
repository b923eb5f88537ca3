//! Crate-wide error type.
//!
//! Verification outcomes ("this sequence is not a valid sequencing, and here
//! is why") are *not* errors; they are verdict values returned by the
//! verifiers in [`crate::ddp`]. Errors cover malformed inputs, violated
//! preconditions, and resource limits.

use alloc::string::String;

/// Everything that can go wrong when building groups, constructing
/// sequences, or planning lifts.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    // ---- group construction ----
    /// The descriptor text (or structure) is malformed.
    #[error("invalid group descriptor: {0}")]
    InvalidDescriptor(String),
    /// The requested group would exceed the configured order limit.
    #[error("group order {order} exceeds the limit {limit}")]
    OrderLimitExceeded { order: usize, limit: usize },
    /// The candidate multiplication table violates a group axiom.
    #[error("not a group: {0}")]
    NonGroup(String),
    /// Quotients require a normal subgroup.
    #[error("subgroup is not normal")]
    NotNormal,
    /// The supplied map is not a homomorphism.
    #[error("map is not a homomorphism")]
    NotHomomorphism,
    /// The supplied map does not cover the whole target group.
    #[error("map is not surjective")]
    NotSurjective,
    /// An element index is outside the group (or subgroup) it was used with.
    #[error("element index {index} is out of range for order {order}")]
    InvalidElement { index: usize, order: usize },

    // ---- sequence verification preconditions ----
    /// The sequence has the wrong number of terms.
    #[error("sequence has {found} terms, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },
    /// The input is not a permutation of the group's elements.
    #[error("sequence is not a permutation of the group")]
    NotPermutation,
    /// The sequence must start at the identity (index 0).
    #[error("sequence must start at the identity")]
    StartNotIdentity,
    /// Two divisors coincide, so the distinct-divisor property fails.
    #[error("divisors at positions {i} and {j} coincide")]
    DivisorsNotDistinct { i: usize, j: usize },
    /// The operation is only defined over abelian groups.
    #[error("group is not abelian")]
    NotAbelian,

    // ---- constructions ----
    /// An exponent or size parameter is outside the meaningful range.
    #[error("bad exponent: {0}")]
    BadExponent(String),
    /// Scaling requires a multiplier coprime to the group exponent.
    #[error("{value} is not a unit modulo {modulus}")]
    NotAUnit { value: u64, modulus: u64 },
    /// A modulus that must be odd was even.
    #[error("modulus {0} must be odd")]
    EvenModulus(u64),
    /// The group admits no distinct-divisor sequencing.
    #[error("no distinct-divisor sequencing exists for this group")]
    NoDdpExists,

    // ---- lifting ----
    /// The inputs do not satisfy a construction's hypotheses.
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    /// The requested plan choice is inconsistent with the plan shape.
    #[error("bad plan choice: {0}")]
    BadChoice(String),
    /// No kernel element conjugates the chosen fiber element to its inverse.
    #[error("no conjugator found for fixed position {position}")]
    ConjugatorNotFound { position: usize },
    /// The divisor set of the base sequence is not closed under inverses,
    /// so the pairing the plan relies on does not exist.
    #[error("base divisor set is not inverse-closed at divisor {divisor}")]
    PlanUnavailable { divisor: usize },
    /// An identity the lift construction guarantees failed to hold.
    #[error("internal assertion failed: {0}")]
    InternalAssertionFailed(String),
    /// 1 + u^s must generate Z_m for every s; it failed at this s.
    #[error("1 + u^s does not generate Z_m at s = {s}")]
    GeneratorConditionFailed { s: u64 },
    /// The upper central series does not reach the whole group.
    #[error("group is not nilpotent")]
    NotNilpotent,
    /// The operation requires a group (or subgroup) of odd order.
    #[error("odd order required")]
    NotOddOrder,
    /// A sequence was paired with a different group than expected.
    #[error("sequence belongs to a different group")]
    GroupMismatch,
    /// Primes for the semidirect family must be ≡ 3 (mod 4).
    #[error("{0} is not a prime congruent to 3 mod 4")]
    BadPrime(u64),

    // ---- search ----
    /// The requested exhaustive search exceeds the feasibility cap.
    #[error("order {n} is beyond the feasibility cap {cap}")]
    BeyondFeasibilityCap { n: u64, cap: u64 },
}
