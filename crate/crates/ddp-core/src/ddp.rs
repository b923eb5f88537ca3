//! The distinct-divisor property and its abelian normal form.
//!
//! An ordering g₀, g₁, …, g_{n−1} of all elements of a group G has the
//! *distinct-divisor property* when g₀ = 1 and the consecutive quotients
//! dᵢ = gᵢ⁻¹·g_{i+1} are pairwise distinct. Since a full ordering has
//! exactly n−1 divisors and none of them can be the identity, the divisors
//! of a valid ordering are precisely the non-identity elements, each once.
//!
//! For abelian groups (written additively here) there is a companion normal
//! form on orderings p with p₀ = 0, defined through the *signed
//! differences* h₀ = 0, hᵢ = (−1)^{i−1}(p_{i−1} − pᵢ):
//!
//! 1. the hᵢ are pairwise distinct,
//! 2. hᵢ + h_{n−i} = 0 for 0 < i < n,
//! 3. pᵢ + p_{n−1−i} = p_{n−1} for all i.
//!
//! Orderings in this normal form are generally *not* distinct-divisor
//! orderings themselves (the unsigned divisors ±hᵢ may collide); they are
//! the shape the lifting constructions require of a kernel ordering. Both
//! properties are checked by total verifiers returning verdict values:
//! structural defects (wrong length, out-of-range indices) are [`Error`]s,
//! while property violations are reported as verdicts pinpointing the first
//! failure.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::group::GroupTable;

/// Outcome of [`verify_ddp`]: either valid, or the first defect found.
///
/// Checks run in a fixed order — element distinctness, then the starting
/// element, then divisor distinctness — and the first failure wins.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DdpVerdict {
    /// The ordering has the distinct-divisor property.
    Ok,
    /// Positions `i` and `j` hold the same element.
    DuplicateElement { i: usize, j: usize },
    /// The first element is not the identity.
    WrongStart,
    /// The divisors at positions `i` and `j` coincide.
    DuplicateDivisor { i: usize, j: usize },
}

impl DdpVerdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, DdpVerdict::Ok)
    }
}

impl core::fmt::Display for DdpVerdict {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            DdpVerdict::Ok => write!(f, "valid"),
            DdpVerdict::DuplicateElement { i, j } => {
                write!(f, "positions {i} and {j} repeat the same element")
            }
            DdpVerdict::WrongStart => write!(f, "sequence must start at the identity"),
            DdpVerdict::DuplicateDivisor { i, j } => {
                write!(f, "divisors at positions {i} and {j} coincide")
            }
        }
    }
}

/// Outcome of [`verify_slonimsky`]: either valid, or the first violated
/// condition, in the order distinctness → mirror sums → endpoint sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlonimskyVerdict {
    /// All three conditions hold.
    Ok,
    /// Signed differences at positions `i` and `j` coincide.
    DistinctnessFailed { i: usize, j: usize },
    /// h_i + h_{n−i} is not zero.
    MirrorSumFailed { i: usize },
    /// p_i + p_{n−1−i} is not the last term.
    EndpointSumFailed { i: usize },
}

impl SlonimskyVerdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, SlonimskyVerdict::Ok)
    }
}

impl core::fmt::Display for SlonimskyVerdict {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            SlonimskyVerdict::Ok => write!(f, "valid"),
            SlonimskyVerdict::DistinctnessFailed { i, j } => {
                write!(f, "signed differences at positions {i} and {j} coincide")
            }
            SlonimskyVerdict::MirrorSumFailed { i } => {
                write!(f, "mirror sum at position {i} is not zero")
            }
            SlonimskyVerdict::EndpointSumFailed { i } => {
                write!(f, "endpoint sum at position {i} misses the last term")
            }
        }
    }
}

/// Range-check a sequence against a group and require full length.
fn check_shape(g: &GroupTable, seq: &[usize]) -> Result<(), Error> {
    if seq.len() != g.order() {
        return Err(Error::LengthMismatch {
            expected: g.order(),
            found: seq.len(),
        });
    }
    for &x in seq {
        if x >= g.order() {
            return Err(Error::InvalidElement {
                index: x,
                order: g.order(),
            });
        }
    }
    Ok(())
}

/// Consecutive quotients dᵢ = gᵢ⁻¹·g_{i+1} of any in-range sequence.
pub fn divisors(g: &GroupTable, seq: &[usize]) -> Result<Vec<usize>, Error> {
    for &x in seq {
        if x >= g.order() {
            return Err(Error::InvalidElement {
                index: x,
                order: g.order(),
            });
        }
    }
    Ok(seq
        .windows(2)
        .map(|w| g.mul(g.inv(w[0]), w[1]))
        .collect())
}

/// Rebuild a sequence from its divisor list by telescoping: p₀ = 1 and
/// p_{i+1} = pᵢ·dᵢ.
pub fn sequence_from_divisors(g: &GroupTable, divisors: &[usize]) -> Result<Vec<usize>, Error> {
    let mut seq = Vec::with_capacity(divisors.len() + 1);
    let mut acc = 0usize;
    seq.push(acc);
    for &d in divisors {
        if d >= g.order() {
            return Err(Error::InvalidElement {
                index: d,
                order: g.order(),
            });
        }
        acc = g.mul(acc, d);
        seq.push(acc);
    }
    Ok(seq)
}

/// Check the distinct-divisor property of a claimed full ordering.
///
/// Structural defects (wrong length, out-of-range indices) are errors; the
/// property itself is reported as a [`DdpVerdict`].
pub fn verify_ddp(g: &GroupTable, seq: &[usize]) -> Result<DdpVerdict, Error> {
    check_shape(g, seq)?;
    let n = g.order();
    let mut first_at = vec![usize::MAX; n];
    for (j, &x) in seq.iter().enumerate() {
        if first_at[x] != usize::MAX {
            return Ok(DdpVerdict::DuplicateElement { i: first_at[x], j });
        }
        first_at[x] = j;
    }
    if seq[0] != 0 {
        return Ok(DdpVerdict::WrongStart);
    }
    let mut div_at = vec![usize::MAX; n];
    for i in 0..n - 1 {
        let d = g.mul(g.inv(seq[i]), seq[i + 1]);
        if div_at[d] != usize::MAX {
            return Ok(DdpVerdict::DuplicateDivisor { i: div_at[d], j: i });
        }
        div_at[d] = i;
    }
    Ok(DdpVerdict::Ok)
}

/// Signed differences h₀ = 0, hᵢ = (−1)^{i−1}(p_{i−1} − pᵢ) of a sequence
/// over an abelian group. Defined for any in-range sequence; no length or
/// permutation requirement.
pub fn signed_divisors(g: &GroupTable, seq: &[usize]) -> Result<Vec<usize>, Error> {
    if !g.is_abelian() {
        return Err(Error::NotAbelian);
    }
    for &x in seq {
        if x >= g.order() {
            return Err(Error::InvalidElement {
                index: x,
                order: g.order(),
            });
        }
    }
    if seq.is_empty() {
        return Ok(Vec::new());
    }
    let mut h = Vec::with_capacity(seq.len());
    h.push(0);
    for i in 1..seq.len() {
        let v = if i % 2 == 1 {
            g.mul(seq[i - 1], g.inv(seq[i]))
        } else {
            g.mul(seq[i], g.inv(seq[i - 1]))
        };
        h.push(v);
    }
    Ok(h)
}

/// Check the abelian normal form (distinct signed differences, mirror sums,
/// endpoint sums) of a claimed full ordering of an abelian group.
///
/// Non-permutations and orderings not starting at the identity are rejected
/// as errors; the three conditions are evaluated in order and the first
/// violation is returned as the verdict.
pub fn verify_slonimsky(g: &GroupTable, seq: &[usize]) -> Result<SlonimskyVerdict, Error> {
    check_shape(g, seq)?;
    let n = g.order();
    let mut seen = vec![false; n];
    for &x in seq {
        if seen[x] {
            return Err(Error::NotPermutation);
        }
        seen[x] = true;
    }
    if seq[0] != 0 {
        return Err(Error::StartNotIdentity);
    }
    let h = signed_divisors(g, seq)?;
    let mut first_at = vec![usize::MAX; n];
    for (j, &x) in h.iter().enumerate() {
        if first_at[x] != usize::MAX {
            return Ok(SlonimskyVerdict::DistinctnessFailed { i: first_at[x], j });
        }
        first_at[x] = j;
    }
    for i in 1..n {
        if g.mul(h[i], h[n - i]) != 0 {
            return Ok(SlonimskyVerdict::MirrorSumFailed { i });
        }
    }
    for i in 0..n {
        if g.mul(seq[i], seq[n - 1 - i]) != seq[n - 1] {
            return Ok(SlonimskyVerdict::EndpointSumFailed { i });
        }
    }
    Ok(SlonimskyVerdict::Ok)
}

/// A verified distinct-divisor ordering of a whole group.
///
/// Construction re-runs [`verify_ddp`], so holding a value of this type is
/// proof the property holds. The divisor list is precomputed.
#[derive(Clone)]
pub struct DdpSequence {
    group: Arc<GroupTable>,
    elements: Vec<usize>,
    divisors: Vec<usize>,
}

impl core::fmt::Debug for DdpSequence {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("DdpSequence")
            .field("group", &self.group)
            .field("elements", &self.elements)
            .finish()
    }
}

impl DdpSequence {
    /// Wrap an ordering after verifying the distinct-divisor property.
    pub fn new(group: Arc<GroupTable>, elements: Vec<usize>) -> Result<DdpSequence, Error> {
        match verify_ddp(&group, &elements)? {
            DdpVerdict::Ok => {}
            DdpVerdict::DuplicateElement { .. } => return Err(Error::NotPermutation),
            DdpVerdict::WrongStart => return Err(Error::StartNotIdentity),
            DdpVerdict::DuplicateDivisor { i, j } => {
                return Err(Error::DivisorsNotDistinct { i, j })
            }
        }
        let divisors = divisors(&group, &elements)?;
        Ok(DdpSequence {
            group,
            elements,
            divisors,
        })
    }

    /// The underlying group.
    pub fn group(&self) -> &Arc<GroupTable> {
        &self.group
    }

    /// The ordering as element indices.
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    /// The n−1 consecutive quotients.
    pub fn divisors(&self) -> &[usize] {
        &self.divisors
    }

    /// Number of terms (the group order).
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// The ordering rendered through the group's element labels.
    pub fn labels(&self) -> Vec<String> {
        self.elements
            .iter()
            .map(|&x| String::from(self.group.label(x)))
            .collect()
    }

    /// Consume the wrapper, keeping the raw ordering.
    pub fn into_elements(self) -> Vec<usize> {
        self.elements
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group, parse_descriptor};

    fn table(desc: &str) -> Arc<GroupTable> {
        Arc::new(build_group(&parse_descriptor(desc).unwrap()).unwrap())
    }

    const MOTHER_CHORD: [usize; 12] = [0, 11, 7, 4, 2, 9, 3, 8, 10, 1, 5, 6];
    const GRANDMOTHER_CHORD: [usize; 12] = [0, 11, 1, 10, 2, 9, 3, 8, 4, 7, 5, 6];

    #[test]
    fn mother_chord_has_distinct_divisors() {
        let z12 = table("Z12");
        assert_eq!(verify_ddp(&z12, &MOTHER_CHORD).unwrap(), DdpVerdict::Ok);
        let d = divisors(&z12, &MOTHER_CHORD).unwrap();
        assert_eq!(d, vec![11, 8, 9, 10, 7, 6, 5, 2, 3, 4, 1]);
        // a full ordering's divisors are exactly the non-identity elements
        let mut sorted = d.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, (1..12).collect::<Vec<_>>());
    }

    #[test]
    fn grandmother_chord_is_ddp_but_not_normal_form() {
        let z12 = table("Z12");
        assert_eq!(verify_ddp(&z12, &GRANDMOTHER_CHORD).unwrap(), DdpVerdict::Ok);
        // 11 + 5 = 4 ≠ 6, so the endpoint sums break immediately
        assert_eq!(
            verify_slonimsky(&z12, &GRANDMOTHER_CHORD).unwrap(),
            SlonimskyVerdict::EndpointSumFailed { i: 1 }
        );
    }

    #[test]
    fn normal_form_examples() {
        let z7 = table("Z7");
        // alternating ordering: signed differences come out as 0,1,…,6
        let canonical = [0, 6, 1, 5, 2, 4, 3];
        assert_eq!(
            signed_divisors(&z7, &canonical).unwrap(),
            vec![0, 1, 2, 3, 4, 5, 6]
        );
        assert_eq!(verify_slonimsky(&z7, &canonical).unwrap(), SlonimskyVerdict::Ok);
        // …but its unsigned divisors collide, so it is not distinct-divisor
        assert_eq!(
            verify_ddp(&z7, &canonical).unwrap(),
            DdpVerdict::DuplicateDivisor { i: 2, j: 3 }
        );
        // the identity ordering repeats the signed difference 6 at 1 and 3
        let identity = [0, 1, 2, 3, 4, 5, 6];
        assert_eq!(signed_divisors(&z7, &identity).unwrap(), vec![0, 6, 1, 6, 1, 6, 1]);
        assert_eq!(
            verify_slonimsky(&z7, &identity).unwrap(),
            SlonimskyVerdict::DistinctnessFailed { i: 1, j: 3 }
        );
        let z3 = table("Z3");
        assert_eq!(verify_slonimsky(&z3, &[0, 1, 2]).unwrap(), SlonimskyVerdict::Ok);
    }

    #[test]
    fn first_defect_wins() {
        let z3 = table("Z3");
        assert_eq!(
            verify_ddp(&z3, &[1, 0, 2]).unwrap(),
            DdpVerdict::WrongStart
        );
        assert_eq!(
            verify_ddp(&z3, &[0, 1, 1]).unwrap(),
            DdpVerdict::DuplicateElement { i: 1, j: 2 }
        );
        // duplicated element is reported even though the start is wrong too
        assert_eq!(
            verify_ddp(&z3, &[2, 2, 1]).unwrap(),
            DdpVerdict::DuplicateElement { i: 0, j: 1 }
        );
    }

    #[test]
    fn structural_defects_are_errors() {
        let z3 = table("Z3");
        assert!(matches!(
            verify_ddp(&z3, &[0, 1]),
            Err(Error::LengthMismatch { expected: 3, found: 2 })
        ));
        assert!(matches!(
            verify_ddp(&z3, &[0, 1, 7]),
            Err(Error::InvalidElement { index: 7, order: 3 })
        ));
        assert!(matches!(
            verify_slonimsky(&z3, &[0, 1, 1]),
            Err(Error::NotPermutation)
        ));
        assert!(matches!(
            verify_slonimsky(&z3, &[1, 0, 2]),
            Err(Error::StartNotIdentity)
        ));
        let d5 = table("D5");
        let all: Vec<usize> = (0..10).collect();
        assert!(matches!(verify_slonimsky(&d5, &all), Err(Error::NotAbelian)));
    }

    #[test]
    fn trivial_group_is_vacuously_valid() {
        let z1 = table("Z1");
        assert_eq!(verify_ddp(&z1, &[0]).unwrap(), DdpVerdict::Ok);
        assert_eq!(verify_slonimsky(&z1, &[0]).unwrap(), SlonimskyVerdict::Ok);
    }

    #[test]
    fn divisors_round_trip() {
        let z12 = table("Z12");
        let d = divisors(&z12, &MOTHER_CHORD).unwrap();
        assert_eq!(sequence_from_divisors(&z12, &d).unwrap(), MOTHER_CHORD.to_vec());
        let d5 = table("D5");
        let seq = [0usize, 3, 7, 2, 9];
        let d = divisors(&d5, &seq).unwrap();
        assert_eq!(sequence_from_divisors(&d5, &d).unwrap(), seq.to_vec());
    }

    #[test]
    fn wrapper_validates_and_exposes() {
        let z12 = table("Z12");
        let s = DdpSequence::new(z12.clone(), MOTHER_CHORD.to_vec()).unwrap();
        assert_eq!(s.len(), 12);
        assert_eq!(s.divisors()[0], 11);
        assert_eq!(s.labels()[1], "11");
        assert!(matches!(
            DdpSequence::new(z12.clone(), GRANDMOTHER_CHORD.iter().rev().copied().collect()),
            Err(Error::StartNotIdentity)
        ));
        let mut dup = MOTHER_CHORD.to_vec();
        dup[3] = 11;
        assert!(matches!(DdpSequence::new(z12.clone(), dup), Err(Error::NotPermutation)));
        let not_ddp = (0..12).collect::<Vec<_>>();
        assert!(matches!(
            DdpSequence::new(z12, not_ddp),
            Err(Error::DivisorsNotDistinct { .. })
        ));
    }

    #[test]
    fn signed_divisors_reject_nonabelian() {
        let d5 = table("D5");
        assert!(matches!(signed_divisors(&d5, &[0, 1]), Err(Error::NotAbelian)));
    }
}
