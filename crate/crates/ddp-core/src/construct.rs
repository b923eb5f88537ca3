//! Direct constructions of distinct-divisor orderings and of the abelian
//! normal form.
//!
//! Three families are built here without search:
//!
//! - **Cyclic 2-groups.** The triangular numbers i(i+1)/2 reduced mod 2^m
//!   order Z_{2^m} with divisors 1, 2, …, 2^m−1; a variant shifts the middle
//!   half by 2^{m−1}. Scaling by odd units turns these two seeds into a
//!   family of 2^m distinct orderings for m ≥ 3 ([`power2_family`]).
//! - **Odd abelian groups.** The normal-form ordering (see [`crate::ddp`])
//!   is produced inductively, one cyclic factor at a time
//!   ([`slonimsky_abelian`]). These orderings feed the lifting
//!   constructions; they are not distinct-divisor orderings themselves.
//! - **General abelian groups.** An abelian group admits a distinct-divisor
//!   ordering exactly when it is trivial or has exactly one involution,
//!   i.e. when it is Z_{2^m} × H with m ≥ 1 and H of odd order. The
//!   ordering is assembled by lifting the triangular ordering of the
//!   2-group quotient through the projection with kernel H
//!   ([`ddp_abelian`]).
//!
//! A counting companion: [`ddp_count_lower_bound`] evaluates the closed-form
//! lower bound on the number of distinct-divisor orderings of
//! Z_{2^m} × Z_{n_1} × … × Z_{n_k} obtained from iterated lifting.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::One;

use crate::ddp::{verify_slonimsky, DdpSequence, SlonimskyVerdict};
use crate::error::Error;
use crate::group::{build_group, quotient, GroupDescriptor, GroupTable, Subgroup, MAX_ORDER};
use crate::lift::{lift_ddp, LiftChoice};

/// The triangular-number exponent pattern i(i+1)/2 mod 2^m, for i < 2^m.
pub fn triangular_exponents(m: u32) -> Result<Vec<u64>, Error> {
    if m > 15 {
        return Err(Error::BadExponent(format!(
            "2^{m} exceeds the representable order range"
        )));
    }
    let n = 1u64 << m;
    Ok((0..n).map(|i| (i * (i + 1) / 2) % n).collect())
}

/// The variant pattern: triangular exponents with 2^{m−1} added on the
/// middle half 2^{m−2} ≤ i < 3·2^{m−2}. For m ≤ 1 that range is empty
/// and the pattern coincides with the triangular one.
pub fn variant_exponents(m: u32) -> Result<Vec<u64>, Error> {
    let n = 1u64 << m;
    let quarter = n / 4;
    let xs = triangular_exponents(m)?;
    Ok(xs
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            if quarter <= i as u64 && (i as u64) < 3 * quarter {
                (x + n / 2) % n
            } else {
                x
            }
        })
        .collect())
}

/// Require a cyclic group of two-power order and return a generator
/// (the first element of maximal order).
fn cyclic_two_group_generator(g: &GroupTable) -> Result<(u32, usize), Error> {
    let n = g.order();
    if !n.is_power_of_two() || !g.is_abelian() || g.exponent() != n as u64 {
        return Err(Error::PreconditionFailed(
            "a cyclic group of two-power order is required".to_string(),
        ));
    }
    let z = (0..n)
        .find(|&x| g.element_order(x).expect("index in range") == n)
        .expect("exponent equals order");
    Ok((n.trailing_zeros(), z))
}

/// Triangular ordering of a cyclic group of two-power order, through its
/// first maximal-order generator.
pub fn triangular_on(g: &Arc<GroupTable>) -> Result<DdpSequence, Error> {
    let (m, z) = cyclic_two_group_generator(g)?;
    let elements = triangular_exponents(m)?
        .iter()
        .map(|&e| g.pow(z, e))
        .collect();
    DdpSequence::new(g.clone(), elements)
}

/// Variant ordering of a cyclic group of two-power order.
pub fn variant_on(g: &Arc<GroupTable>) -> Result<DdpSequence, Error> {
    let (m, z) = cyclic_two_group_generator(g)?;
    let elements = variant_exponents(m)?
        .iter()
        .map(|&e| g.pow(z, e))
        .collect();
    DdpSequence::new(g.clone(), elements)
}

/// Triangular ordering of the canonically presented Z_{2^m}.
pub fn triangular_sequence(m: u32) -> Result<DdpSequence, Error> {
    triangular_exponents(m)?; // range check before building the table
    let g = Arc::new(build_group(&GroupDescriptor::Cyclic(1u64 << m))?);
    triangular_on(&g)
}

/// Variant ordering of the canonically presented Z_{2^m}.
pub fn triangular_variant(m: u32) -> Result<DdpSequence, Error> {
    variant_exponents(m)?;
    let g = Arc::new(build_group(&GroupDescriptor::Cyclic(1u64 << m))?);
    variant_on(&g)
}

/// Apply the power automorphism x ↦ x^r to every term of an ordering of an
/// abelian group. `r` must be a unit modulo the group exponent; the result
/// is verified again on construction.
pub fn scale_sequence(seq: &DdpSequence, r: u64) -> Result<DdpSequence, Error> {
    let g = seq.group();
    if !g.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let e = g.exponent();
    if num_integer::gcd(r % e, e) != 1 {
        return Err(Error::NotAUnit {
            value: r,
            modulus: e,
        });
    }
    let elements = seq.elements().iter().map(|&x| g.pow(x, r)).collect();
    DdpSequence::new(g.clone(), elements)
}

/// All odd-unit scalings of the triangular and variant orderings of
/// Z_{2^m}, deduplicated. Yields 2 orderings for m = 2 and 2^m for m ≥ 3.
pub fn power2_family(m: u32) -> Result<Vec<DdpSequence>, Error> {
    if m < 2 {
        return Err(Error::BadExponent(
            "the scaled family needs order at least 4".to_string(),
        ));
    }
    variant_exponents(m)?; // enforces m ≤ 15 up front
    let g = Arc::new(build_group(&GroupDescriptor::Cyclic(1u64 << m))?);
    let seeds = [triangular_on(&g)?, variant_on(&g)?];
    let mut seen = BTreeSet::new();
    let mut family = Vec::new();
    for r in (1..(1u64 << m)).step_by(2) {
        for seed in &seeds {
            let scaled = scale_sequence(seed, r)?;
            if seen.insert(scaled.elements().to_vec()) {
                family.push(scaled);
            }
        }
    }
    Ok(family)
}

// ---------------------------------------------------------------------------
// the abelian normal form
// ---------------------------------------------------------------------------

/// Mixed-radix digits of `idx`, first modulus most significant.
fn decode_digits(mut idx: usize, moduli: &[u64]) -> Vec<u64> {
    let mut digits = vec![0u64; moduli.len()];
    for (d, &m) in digits.iter_mut().zip(moduli).rev() {
        *d = (idx % m as usize) as u64;
        idx /= m as usize;
    }
    digits
}

fn encode_digits(digits: &[u64], moduli: &[u64]) -> usize {
    digits
        .iter()
        .zip(moduli)
        .fold(0usize, |acc, (&d, &m)| acc * m as usize + d as usize)
}

/// Normal-form ordering of Z_{m_1} × … × Z_{m_d} with all mᵢ odd, one
/// modulus folded in at a time. Indices are mixed-radix with the first
/// modulus most significant, matching
/// [`GroupDescriptor::DirectProduct`].
pub fn slonimsky_for_moduli(moduli: &[u64]) -> Result<Vec<usize>, Error> {
    let mut total: u128 = 1;
    for &m in moduli {
        if m % 2 == 0 {
            return Err(Error::EvenModulus(m));
        }
        total *= m as u128;
        if total > MAX_ORDER as u128 {
            return Err(Error::OrderLimitExceeded {
                order: usize::MAX,
                limit: MAX_ORDER,
            });
        }
    }
    let mut p: Vec<usize> = vec![0];
    let mut n: usize = 1;
    for &modulus in moduli {
        let m = modulus as usize;
        let l = m.div_ceil(2);
        let mut next = Vec::with_capacity(n * m);
        for i in 0..n * m {
            let (q, r) = (i / n, i % n);
            let (inner, c) = match (q % 2 == 0, r % 2 == 0) {
                (true, true) => (p[r], q / 2),
                (true, false) => (p[r], (2 * m - l - q / 2) % m),
                (false, true) => (p[n - r - 1], (m - q.div_ceil(2)) % m),
                (false, false) => (p[n - r - 1], (m - l + q.div_ceil(2)) % m),
            };
            next.push(inner * m + c);
        }
        p = next;
        n *= m;
    }
    check_normal_form(&p, moduli)?;
    Ok(p)
}

/// Arithmetic re-check of the three normal-form conditions over mixed-radix
/// tuples; guards the closed-form construction above.
fn check_normal_form(p: &[usize], moduli: &[u64]) -> Result<(), Error> {
    let n = p.len();
    let fail = |msg: &str| Err(Error::InternalAssertionFailed(msg.to_string()));
    let sub = |a: &[u64], b: &[u64]| -> Vec<u64> {
        a.iter()
            .zip(b)
            .zip(moduli)
            .map(|((&x, &y), &m)| (x + m - y) % m)
            .collect()
    };
    let tuples: Vec<Vec<u64>> = p.iter().map(|&x| decode_digits(x, moduli)).collect();
    let mut h = Vec::with_capacity(n);
    h.push(vec![0u64; moduli.len()]);
    for i in 1..n {
        h.push(if i % 2 == 1 {
            sub(&tuples[i - 1], &tuples[i])
        } else {
            sub(&tuples[i], &tuples[i - 1])
        });
    }
    let mut seen = vec![false; n];
    for t in &h {
        let idx = encode_digits(t, moduli);
        if seen[idx] {
            return fail("signed differences collide");
        }
        seen[idx] = true;
    }
    for i in 1..n {
        if h[i]
            .iter()
            .zip(&h[n - i])
            .zip(moduli)
            .any(|((&a, &b), &m)| (a + b) % m != 0)
        {
            return fail("mirror sums do not cancel");
        }
    }
    for i in 0..n {
        let s: Vec<u64> = tuples[i]
            .iter()
            .zip(&tuples[n - 1 - i])
            .zip(moduli)
            .map(|((&a, &b), &m)| (a + b) % m)
            .collect();
        if s != tuples[n - 1] {
            return fail("endpoint sums miss the last term");
        }
    }
    Ok(())
}

/// Normal-form ordering of the canonically indexed Z_n, n odd.
pub fn slonimsky_cyclic(n: u64) -> Result<Vec<usize>, Error> {
    slonimsky_for_moduli(&[n])
}

/// Greedy decomposition of an abelian subgroup into cyclic factors.
///
/// Returns (order, generator) pairs with non-increasing orders: each step
/// picks the coset of maximal order modulo the span so far (first by
/// element index) and represents it by its smallest member whose own order
/// matches. The result is validated to span the subgroup as a direct sum;
/// indices are ambient-group element indices.
pub fn decompose_abelian_subgroup(
    g: &GroupTable,
    sub: &Subgroup,
) -> Result<Vec<(u64, usize)>, Error> {
    if !sub.is_abelian_in(g) {
        return Err(Error::NotAbelian);
    }
    let mut gens: Vec<(u64, usize)> = Vec::new();
    let mut span = Subgroup::trivial();
    while span.order() < sub.order() {
        // order of x modulo the span: least k ≥ 1 with x^k inside
        let quotient_order = |x: usize| -> u64 {
            let mut k = 1u64;
            let mut p = x;
            while !span.contains(p) {
                p = g.mul(p, x);
                k += 1;
            }
            k
        };
        let mut best = (1u64, 0usize);
        for &x in sub.members() {
            let k = quotient_order(x as usize);
            if k > best.0 {
                best = (k, x as usize);
            }
        }
        let (k, x) = best;
        if k == 1 {
            return Err(Error::InternalAssertionFailed(
                "span stalled below the subgroup".to_string(),
            ));
        }
        let mut coset: Vec<usize> = span
            .members()
            .iter()
            .map(|&s| g.mul(x, s as usize))
            .collect();
        coset.sort_unstable();
        let rep = coset
            .into_iter()
            .find(|&y| g.element_order(y).expect("index in range") as u64 == k)
            .ok_or_else(|| {
                Error::InternalAssertionFailed(
                    "no matching-order representative in the chosen coset".to_string(),
                )
            })?;
        gens.push((k, rep));
        let gen_list: Vec<usize> = gens.iter().map(|&(_, z)| z).collect();
        span = Subgroup::generated_by(g, &gen_list)?;
    }
    // the factors must fill the subgroup as a direct sum
    let claimed: u128 = gens.iter().map(|&(k, _)| k as u128).product();
    if claimed != sub.order() as u128 {
        return Err(Error::InternalAssertionFailed(
            "cyclic factor orders do not multiply to the subgroup order".to_string(),
        ));
    }
    let mut seen = vec![false; g.order()];
    let moduli: Vec<u64> = gens.iter().map(|&(k, _)| k).collect();
    for idx in 0..sub.order() {
        let digits = decode_digits(idx, &moduli);
        let e = digits
            .iter()
            .zip(&gens)
            .fold(0usize, |acc, (&d, &(_, z))| g.mul(acc, g.pow(z, d)));
        if seen[e] {
            return Err(Error::InternalAssertionFailed(
                "cyclic factors are not independent".to_string(),
            ));
        }
        seen[e] = true;
    }
    Ok(gens)
}

/// [`decompose_abelian_subgroup`] applied to a whole abelian group.
pub fn decompose_abelian(g: &GroupTable) -> Result<Vec<(u64, usize)>, Error> {
    if !g.is_abelian() {
        return Err(Error::NotAbelian);
    }
    decompose_abelian_subgroup(g, &Subgroup::full(g))
}

/// Normal-form ordering of an abelian group of odd order, in the group's
/// own element indices. The result is re-verified before being returned.
pub fn slonimsky_abelian(g: &Arc<GroupTable>) -> Result<Vec<usize>, Error> {
    if !g.is_abelian() {
        return Err(Error::NotAbelian);
    }
    if g.order().is_multiple_of(2) {
        return Err(Error::NotOddOrder);
    }
    let gens = decompose_abelian(g)?;
    let moduli: Vec<u64> = gens.iter().map(|&(k, _)| k).collect();
    let abstract_seq = slonimsky_for_moduli(&moduli)?;
    let seq: Vec<usize> = abstract_seq
        .iter()
        .map(|&idx| {
            decode_digits(idx, &moduli)
                .iter()
                .zip(&gens)
                .fold(0usize, |acc, (&d, &(_, z))| g.mul(acc, g.pow(z, d)))
        })
        .collect();
    match verify_slonimsky(g, &seq)? {
        SlonimskyVerdict::Ok => Ok(seq),
        v => Err(Error::InternalAssertionFailed(format!(
            "constructed normal form fails its own check: {v}"
        ))),
    }
}

// ---------------------------------------------------------------------------
// general abelian groups
// ---------------------------------------------------------------------------

/// Whether an abelian group admits a distinct-divisor ordering: true for
/// the trivial group and exactly-one-involution groups, false otherwise.
pub fn abelian_ddp_exists(g: &GroupTable) -> Result<bool, Error> {
    if !g.is_abelian() {
        return Err(Error::NotAbelian);
    }
    Ok(g.order() == 1 || g.involutions().len() == 1)
}

/// Construct a distinct-divisor ordering of an abelian group, or report
/// that none exists.
///
/// The even part must be cyclic (guaranteed by the single-involution
/// criterion); its triangular ordering is built on the quotient by the
/// odd-order subgroup and then lifted back.
pub fn ddp_abelian(g: &Arc<GroupTable>) -> Result<DdpSequence, Error> {
    if !abelian_ddp_exists(g)? {
        return Err(Error::NoDdpExists);
    }
    if g.order() == 1 {
        return DdpSequence::new(g.clone(), vec![0]);
    }
    let odd_members: Vec<usize> = (0..g.order())
        .filter(|&x| g.element_order(x).expect("index in range") % 2 == 1)
        .collect();
    if odd_members.len() == 1 {
        return triangular_on(g);
    }
    let odd_part = Subgroup::from_members(g, odd_members)?;
    let (two_quotient, projection) = quotient(g, &odd_part)?;
    let base = triangular_on(&two_quotient)?;
    lift_ddp(&projection, &base, &LiftChoice::Default)
}

/// Closed-form lower bound on the number of distinct-divisor orderings of
/// Z_{2^m} × Z_{n_1} × … × Z_{n_k} (each nⱼ odd, ≥ 3):
///
/// c_m · Π_j (2nⱼ)^(2^{m−1}·n_1⋯n_{j−1} − 1),
///
/// where c_1 = 1, c_2 = 2, and c_m = 2^m for m ≥ 3 counts the scaled
/// triangular family of the 2-part.
pub fn ddp_count_lower_bound(m: u32, odd_orders: &[u64]) -> Result<BigUint, Error> {
    if m == 0 {
        return Err(Error::BadExponent(
            "the two-part exponent must be at least 1".to_string(),
        ));
    }
    for &n in odd_orders {
        if n % 2 == 0 {
            return Err(Error::EvenModulus(n));
        }
        if n < 3 {
            return Err(Error::BadExponent(
                "odd factors must be at least 3".to_string(),
            ));
        }
    }
    let mut bound: BigUint = match m {
        1 => BigUint::one(),
        2 => BigUint::from(2u32),
        _ => BigUint::one() << m as usize,
    };
    if odd_orders.is_empty() {
        return Ok(bound);
    }
    let overflow = || Error::BadExponent("bound exponent exceeds the supported range".to_string());
    let half: u128 = 1u128.checked_shl(m - 1).ok_or_else(overflow)?;
    let mut prefix: u128 = 1;
    for &n in odd_orders {
        let exp: u32 = half
            .checked_mul(prefix)
            .and_then(|v| v.checked_sub(1))
            .and_then(|v| u32::try_from(v).ok())
            .ok_or_else(overflow)?;
        bound *= num_traits::Pow::pow(BigUint::from(2 * n), exp);
        prefix = prefix.checked_mul(n as u128).ok_or_else(overflow)?;
    }
    Ok(bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ddp::verify_ddp;
    use crate::group::parse_descriptor;

    fn table(desc: &str) -> Arc<GroupTable> {
        Arc::new(build_group(&parse_descriptor(desc).unwrap()).unwrap())
    }

    #[test]
    fn triangular_patterns() {
        assert_eq!(triangular_exponents(3).unwrap(), vec![0, 1, 3, 6, 2, 7, 5, 4]);
        assert_eq!(variant_exponents(3).unwrap(), vec![0, 1, 7, 2, 6, 3, 5, 4]);
        assert_eq!(triangular_sequence(1).unwrap().elements(), &[0, 1]);
        assert_eq!(triangular_sequence(2).unwrap().elements(), &[0, 1, 3, 2]);
        assert_eq!(triangular_variant(2).unwrap().elements(), &[0, 3, 1, 2]);
        let v = triangular_variant(3).unwrap();
        assert_eq!(v.elements(), &[0, 1, 7, 2, 6, 3, 5, 4]);
        assert_eq!(v.divisors(), &[1, 6, 3, 4, 5, 2, 7]);
        // the shifted range is empty below order 4
        assert_eq!(variant_exponents(1).unwrap(), vec![0, 1]);
        assert_eq!(triangular_variant(1).unwrap().elements(), &[0, 1]);
        assert!(matches!(triangular_exponents(16), Err(Error::BadExponent(_))));
        assert!(matches!(variant_exponents(16), Err(Error::BadExponent(_))));
        assert!(matches!(power2_family(1), Err(Error::BadExponent(_))));
    }

    #[test]
    fn triangular_needs_a_cyclic_two_group() {
        for desc in ["Z6", "Z2xZ2", "Z7"] {
            assert!(matches!(
                triangular_on(&table(desc)),
                Err(Error::PreconditionFailed(_))
            ));
        }
        // any presentation of a cyclic 2-group works, not just Z-descriptors
        let g = table("Perm[(0 1 2 3)]");
        let s = triangular_on(&g).unwrap();
        assert_eq!(s.len(), 4);
    }

    #[test]
    fn scaled_family_sizes() {
        assert_eq!(power2_family(2).unwrap().len(), 2);
        assert_eq!(power2_family(3).unwrap().len(), 8);
        assert_eq!(power2_family(4).unwrap().len(), 16);
    }

    #[test]
    fn scaling_the_mother_chord() {
        let z12 = table("Z12");
        let chord = DdpSequence::new(z12, vec![0, 11, 7, 4, 2, 9, 3, 8, 10, 1, 5, 6]).unwrap();
        let scaled = scale_sequence(&chord, 5).unwrap();
        assert_eq!(scaled.elements(), &[0, 7, 11, 8, 10, 9, 3, 4, 2, 5, 1, 6]);
        assert!(matches!(
            scale_sequence(&chord, 3),
            Err(Error::NotAUnit { value: 3, modulus: 12 })
        ));
    }

    #[test]
    fn normal_form_for_cyclic_groups() {
        assert_eq!(slonimsky_cyclic(1).unwrap(), vec![0]);
        assert_eq!(slonimsky_cyclic(3).unwrap(), vec![0, 2, 1]);
        assert_eq!(slonimsky_cyclic(7).unwrap(), vec![0, 6, 1, 5, 2, 4, 3]);
        assert!(matches!(slonimsky_cyclic(6), Err(Error::EvenModulus(6))));
    }

    #[test]
    fn normal_form_for_products() {
        let p = slonimsky_for_moduli(&[3, 3]).unwrap();
        assert_eq!(p, vec![0, 7, 3, 5, 8, 2, 1, 6, 4]);
        let g = table("Z3xZ3");
        assert_eq!(verify_slonimsky(&g, &p).unwrap(), SlonimskyVerdict::Ok);
        for moduli in [&[3u64, 5][..], &[5, 3], &[3, 3, 3], &[9, 3]] {
            let p = slonimsky_for_moduli(moduli).unwrap();
            let desc = moduli
                .iter()
                .map(|m| format!("Z{m}"))
                .collect::<Vec<_>>()
                .join("x");
            let g = table(&desc);
            assert_eq!(verify_slonimsky(&g, &p).unwrap(), SlonimskyVerdict::Ok, "{desc}");
        }
    }

    #[test]
    fn greedy_decomposition() {
        assert_eq!(decompose_abelian(&table("Z9")).unwrap(), vec![(9, 1)]);
        assert_eq!(decompose_abelian(&table("Z45")).unwrap(), vec![(45, 1)]);
        assert_eq!(
            decompose_abelian(&table("Z3xZ3")).unwrap(),
            vec![(3, 1), (3, 3)]
        );
        assert_eq!(
            decompose_abelian(&table("Z3xZ9")).unwrap(),
            vec![(9, 1), (3, 9)]
        );
        assert!(matches!(decompose_abelian(&table("D5")), Err(Error::NotAbelian)));
    }

    #[test]
    fn normal_form_for_arbitrary_odd_abelian_presentations() {
        for desc in ["Z15", "Z3xZ9", "Z45", "Z3xZ3xZ3", "Z105"] {
            let g = table(desc);
            let p = slonimsky_abelian(&g).unwrap();
            assert_eq!(verify_slonimsky(&g, &p).unwrap(), SlonimskyVerdict::Ok, "{desc}");
        }
        assert!(matches!(slonimsky_abelian(&table("Z6")), Err(Error::NotOddOrder)));
        assert!(matches!(slonimsky_abelian(&table("D5")), Err(Error::NotAbelian)));
    }

    #[test]
    fn abelian_classification() {
        let cases = [
            ("Z1", true),
            ("Z2", true),
            ("Z4", true),
            ("Z12", true),
            ("Z2xZ9", true),
            ("Z2xZ2", false),
            ("Z2xZ4", false),
            ("Z15", false),
            ("Z3", false),
        ];
        for (desc, expected) in cases {
            assert_eq!(abelian_ddp_exists(&table(desc)).unwrap(), expected, "{desc}");
        }
        assert!(matches!(abelian_ddp_exists(&table("D5")), Err(Error::NotAbelian)));
    }

    #[test]
    fn abelian_construction() {
        assert_eq!(ddp_abelian(&table("Z1")).unwrap().elements(), &[0]);
        assert_eq!(ddp_abelian(&table("Z2")).unwrap().elements(), &[0, 1]);
        assert_eq!(
            ddp_abelian(&table("Z8")).unwrap().elements(),
            &[0, 1, 3, 6, 2, 7, 5, 4]
        );
        assert_eq!(
            ddp_abelian(&table("Z12")).unwrap().elements(),
            &[0, 1, 3, 10, 2, 11, 5, 8, 4, 9, 7, 6]
        );
        for desc in ["Z6", "Z2xZ9", "Z4xZ3", "Z18", "Z50", "Z8xZ3"] {
            let g = table(desc);
            let s = ddp_abelian(&g).unwrap();
            assert_eq!(verify_ddp(&g, s.elements()).unwrap(), crate::ddp::DdpVerdict::Ok, "{desc}");
        }
        assert!(matches!(ddp_abelian(&table("Z15")), Err(Error::NoDdpExists)));
        assert!(matches!(ddp_abelian(&table("Z2xZ4")), Err(Error::NoDdpExists)));
        assert!(matches!(ddp_abelian(&table("D5")), Err(Error::NotAbelian)));
    }

    #[test]
    fn lower_bound_values() {
        assert_eq!(ddp_count_lower_bound(2, &[3]).unwrap(), BigUint::from(12u32));
        assert_eq!(ddp_count_lower_bound(1, &[3, 5]).unwrap(), BigUint::from(100u32));
        assert_eq!(ddp_count_lower_bound(3, &[]).unwrap(), BigUint::from(8u32));
        assert!(matches!(ddp_count_lower_bound(0, &[]), Err(Error::BadExponent(_))));
        assert!(matches!(ddp_count_lower_bound(2, &[4]), Err(Error::EvenModulus(4))));
        assert!(matches!(ddp_count_lower_bound(2, &[1]), Err(Error::BadExponent(_))));
    }
}
