//! Lifting distinct-divisor orderings along quotient maps.
//!
//! Given a surjection π: G → H whose kernel N is abelian of odd order m,
//! with no non-identity kernel element conjugate to its inverse, every
//! distinct-divisor ordering p of H lifts to one of G with |G| = m·n terms.
//! The lifted ordering is produced divisor-by-divisor:
//!
//! - Divisor positions 1..n of the first block project onto the divisors
//!   h_r of the base. Positions pair up through r ↦ σ(r) with
//!   h_{σ(r)} = h_r⁻¹; one side of each pair picks a fiber element freely
//!   (m choices) and the partner is determined by conjugation with the last
//!   term y of a normal-form ordering α of N. Self-paired positions (h_r an
//!   involution) are forced: a kernel conjugator v with v·f·v = f⁻¹ and the
//!   odd square root w of v·y^±1 yield the divisor w·f·w.
//! - Later blocks q = 1..m−1 reuse the first block conjugated by α_q and
//!   spliced with the signed differences of α at the block boundaries.
//!
//! The plan's free choices — which side of each pair leads, which fiber
//! element it takes, and a unit rescaling of α per cyclic factor of N — are
//! captured by [`PlanSelection`]; [`enumerate_lifts`] sweeps them all and
//! deduplicates, which yields Π φ(mⱼ) · m^(#pairs) distinct orderings.
//!
//! Built on top of the single-step lift: iterated lifting along an upper
//! central series ([`lift_via_central_series`]) and the cyclic semidirect
//! products Z_m ⋊ Z_n ([`semidirect_ddp`], [`prime_semidirect_ddp`]).
//!
//! Every internal identity the construction relies on is checked while
//! building, and the final ordering is re-verified from scratch; failures
//! surface as errors rather than silently wrong output.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::One;

use crate::construct::{ddp_abelian, decompose_abelian_subgroup, slonimsky_for_moduli};
use crate::ddp::DdpSequence;
use crate::error::Error;
use crate::group::{
    build_group, direct_product, mod_pow, quotient, upper_central_series, Epimorphism,
    GroupDescriptor, GroupTable,
};

/// Whether two tables define the same group on the same indices.
fn same_table(a: &Arc<GroupTable>, b: &Arc<GroupTable>) -> bool {
    Arc::ptr_eq(a, b) || (a.order() == b.order() && a.mul_table() == b.mul_table())
}

/// The square root of an element of odd order: x^((k+1)/2) where k is the
/// element order. Unique within ⟨x⟩ because squaring permutes it.
pub fn sqrt_odd_abelian(g: &GroupTable, x: usize) -> Result<usize, Error> {
    let k = g.element_order(x)?;
    if k % 2 == 0 {
        return Err(Error::NotOddOrder);
    }
    Ok(g.pow(x, (k as u64).div_ceil(2)))
}

/// Check the lifting hypotheses: abelian kernel of odd order, and no
/// non-identity kernel element conjugate (in the source) to its inverse.
pub fn check_lift_precondition(epi: &Epimorphism) -> Result<(), Error> {
    let g = epi.source();
    let n = epi.kernel();
    if !n.is_abelian_in(g) {
        return Err(Error::PreconditionFailed("kernel is not abelian".to_string()));
    }
    if n.order().is_multiple_of(2) {
        return Err(Error::NotOddOrder);
    }
    for &x in n.members() {
        let x = x as usize;
        if x == 0 {
            continue;
        }
        if (0..g.order()).any(|t| g.mul(g.mul(g.inv(t), x), t) == g.inv(x)) {
            return Err(Error::PreconditionFailed(format!(
                "kernel element {x} is conjugate to its inverse"
            )));
        }
    }
    Ok(())
}

/// The free choices of a lift plan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanSelection {
    /// Per pair: false takes the lower position as the leading side, true
    /// the higher.
    pub transversal_high: Vec<bool>,
    /// Per pair: which element of the leading side's fiber to take
    /// (0 ≤ index < kernel order, fibers sorted ascending).
    pub fiber_indices: Vec<usize>,
    /// Per cyclic factor of the kernel: a unit rescaling the normal-form
    /// ordering of that factor.
    pub kernel_units: Vec<u64>,
}

/// Either the canonical choice (lower sides, first fiber elements, no
/// rescaling) or an explicit [`PlanSelection`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LiftChoice {
    Default,
    Explicit(PlanSelection),
}

/// A prepared lift: the pairing of base divisor positions and the kernel's
/// cyclic decomposition, ready to execute under any [`LiftChoice`].
#[derive(Debug, Clone)]
pub struct LiftPlan {
    epi: Epimorphism,
    base: DdpSequence,
    /// h[0] = identity, h[r] = r-th base divisor.
    h: Vec<usize>,
    /// Position pairing with h_{σ(r)} = h_r⁻¹; σ(0) = 0.
    sigma: Vec<usize>,
    /// Self-paired positions, ascending, always starting with 0.
    fixed: Vec<usize>,
    /// Cross pairs (lo, hi) with lo < hi, ascending by lo.
    pairs: Vec<(usize, usize)>,
    /// Cyclic decomposition (order, generator) of the kernel.
    kernel_gens: Vec<(u64, usize)>,
}

/// Analyze an epimorphism and base ordering into a [`LiftPlan`].
pub fn build_lift_plan(epi: &Epimorphism, base: &DdpSequence) -> Result<LiftPlan, Error> {
    if !same_table(base.group(), epi.target()) {
        return Err(Error::GroupMismatch);
    }
    check_lift_precondition(epi)?;
    let n = base.len();
    if n == 1 && epi.kernel().order() > 1 {
        // a nontrivial group of odd order has no distinct-divisor ordering
        return Err(Error::NoDdpExists);
    }
    let target = epi.target();
    let mut h = vec![0usize; n];
    h[1..].copy_from_slice(base.divisors());
    let mut position = vec![usize::MAX; target.order()];
    for r in 1..n {
        position[h[r]] = r;
    }
    let mut sigma = vec![0usize; n];
    for r in 1..n {
        let s = position[target.inv(h[r])];
        if s == usize::MAX {
            return Err(Error::PlanUnavailable { divisor: h[r] });
        }
        sigma[r] = s;
    }
    let mut fixed = vec![0usize];
    let mut pairs = Vec::new();
    for (r, &s) in sigma.iter().enumerate().skip(1) {
        if s == r {
            fixed.push(r);
        } else if r < s {
            pairs.push((r, s));
        }
    }
    let kernel_gens = decompose_abelian_subgroup(epi.source(), epi.kernel())?;
    Ok(LiftPlan {
        epi: epi.clone(),
        base: base.clone(),
        h,
        sigma,
        fixed,
        pairs,
        kernel_gens,
    })
}

impl LiftPlan {
    /// Number of cross pairs (the positions with a free fiber choice).
    pub fn pair_count(&self) -> usize {
        self.pairs.len()
    }

    /// The cross pairs (lo, hi).
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Self-paired divisor positions, including 0.
    pub fn fixed_points(&self) -> &[usize] {
        &self.fixed
    }

    /// The position pairing σ.
    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    /// Orders of the kernel's cyclic factors, non-increasing.
    pub fn kernel_moduli(&self) -> Vec<u64> {
        self.kernel_gens.iter().map(|&(k, _)| k).collect()
    }

    /// How many distinct orderings the full choice sweep produces:
    /// Π φ(mⱼ) · m^(#pairs).
    pub fn distinct_lift_count(&self) -> BigUint {
        let mut count = BigUint::one();
        for &(k, _) in &self.kernel_gens {
            count *= euler_phi(k);
        }
        let m = BigUint::from(self.epi.kernel().order());
        count * num_traits::Pow::pow(m, self.pairs.len() as u32)
    }

    /// Execute the plan under the given choice. All intermediate identities
    /// are asserted and the result is verified before being returned.
    pub fn execute(&self, choice: &LiftChoice) -> Result<DdpSequence, Error> {
        let g = self.epi.source().clone();
        let n = self.base.len();
        let m = self.epi.kernel().order();
        let npairs = self.pairs.len();
        let d = self.kernel_gens.len();
        let (highs, fiber_idx, units) = match choice {
            LiftChoice::Default => (vec![false; npairs], vec![0usize; npairs], vec![1u64; d]),
            LiftChoice::Explicit(sel) => {
                if sel.transversal_high.len() != npairs || sel.fiber_indices.len() != npairs {
                    return Err(Error::BadChoice(format!(
                        "plan has {npairs} pairs, got {} side and {} fiber choices",
                        sel.transversal_high.len(),
                        sel.fiber_indices.len()
                    )));
                }
                if sel.kernel_units.len() != d {
                    return Err(Error::BadChoice(format!(
                        "kernel has {d} cyclic factors, got {} units",
                        sel.kernel_units.len()
                    )));
                }
                if let Some(&bad) = sel.fiber_indices.iter().find(|&&i| i >= m) {
                    return Err(Error::BadChoice(format!(
                        "fiber index {bad} out of range for kernel order {m}"
                    )));
                }
                for (&u, &(k, _)) in sel.kernel_units.iter().zip(&self.kernel_gens) {
                    if num_integer::gcd(u % k, k) != 1 {
                        return Err(Error::NotAUnit { value: u, modulus: k });
                    }
                }
                (
                    sel.transversal_high.clone(),
                    sel.fiber_indices.clone(),
                    sel.kernel_units.clone(),
                )
            }
        };
        let broken = |msg: &str| Error::InternalAssertionFailed(msg.to_string());

        // normal-form ordering of the kernel, rescaled per factor
        let moduli = self.kernel_moduli();
        let abstract_seq = slonimsky_for_moduli(&moduli)?;
        let scaled_gens: Vec<usize> = self
            .kernel_gens
            .iter()
            .zip(&units)
            .map(|(&(_, z), &u)| g.pow(z, u))
            .collect();
        let alpha: Vec<usize> = abstract_seq
            .iter()
            .map(|&idx| {
                let mut rest = idx;
                let mut acc = 0usize;
                for (j, &mj) in moduli.iter().enumerate().rev() {
                    let digit = (rest % mj as usize) as u64;
                    rest /= mj as usize;
                    acc = g.mul(g.pow(scaled_gens[j], digit), acc);
                }
                acc
            })
            .collect();
        let mut beta = vec![0usize; m];
        for q in 1..m {
            beta[q] = if q % 2 == 1 {
                g.mul(alpha[q - 1], g.inv(alpha[q]))
            } else {
                g.mul(alpha[q], g.inv(alpha[q - 1]))
            };
        }
        let y = alpha[m - 1];

        // first block of divisors
        let mut div = vec![usize::MAX; n * m];
        div[0] = 0;
        for (k, &(lo, hi)) in self.pairs.iter().enumerate() {
            let (r, s) = if highs[k] { (hi, lo) } else { (lo, hi) };
            let gr = self.epi.fiber(self.h[r])[fiber_idx[k]] as usize;
            div[r] = gr;
            div[s] = match (r % 2, s % 2) {
                (1, 1) => g.mul(g.mul(y, g.inv(gr)), y),
                (0, 0) => g.mul(g.mul(g.inv(y), g.inv(gr)), g.inv(y)),
                _ => g.inv(gr),
            };
        }
        for &r in self.fixed.iter().skip(1) {
            let f = self.epi.fiber(self.h[r])[0] as usize;
            let v = self
                .epi
                .kernel()
                .members()
                .iter()
                .map(|&v| v as usize)
                .find(|&v| g.mul(g.mul(v, f), v) == g.inv(f))
                .ok_or(Error::ConjugatorNotFound { position: r })?;
            let t = if r % 2 == 1 {
                g.mul(v, y)
            } else {
                g.mul(v, g.inv(y))
            };
            let w = sqrt_odd_abelian(&g, t)?;
            let gr = g.mul(g.mul(w, f), w);
            let conj = if r % 2 == 0 {
                g.mul(g.mul(y, gr), y)
            } else {
                g.mul(g.mul(g.inv(y), gr), g.inv(y))
            };
            if g.inv(gr) != conj {
                return Err(broken("self-paired divisor breaks its conjugation identity"));
            }
            div[r] = gr;
        }

        // later blocks: conjugates of the first, spliced with β
        for i in n..n * m {
            let (q, r) = (i / n, i % n);
            let aq = alpha[q];
            div[i] = if r == 0 {
                beta[q]
            } else {
                match (q % 2, r % 2) {
                    (1, 1) => g.mul(g.mul(aq, g.inv(div[n - r])), aq),
                    (1, 0) => g.mul(g.mul(g.inv(aq), g.inv(div[n - r])), g.inv(aq)),
                    (0, 1) => g.mul(g.mul(g.inv(aq), div[r]), g.inv(aq)),
                    _ => g.mul(g.mul(aq, div[r]), aq),
                }
            };
        }

        // telescope and check the partial-product identities
        let mut partial = Vec::with_capacity(n * m);
        partial.push(0usize);
        for i in 1..n * m {
            partial.push(g.mul(partial[i - 1], div[i]));
        }
        for (&p, &b) in partial.iter().zip(self.base.elements()) {
            if self.epi.apply(p) != b {
                return Err(broken("first block does not project onto the base"));
            }
        }
        for i in n..n * m {
            let (q, r) = (i / n, i % n);
            let aq = alpha[q];
            let expect = match (q % 2, r % 2) {
                (1, 1) => g.mul(partial[n - r - 1], aq),
                (1, 0) => g.mul(partial[n - r - 1], g.inv(aq)),
                (0, 1) => g.mul(partial[r], g.inv(aq)),
                _ => g.mul(partial[r], aq),
            };
            if partial[i] != expect {
                return Err(broken("partial products leave the predicted cosets"));
            }
        }
        DdpSequence::new(g, partial)
    }
}

/// Lift a base ordering through an epimorphism in one call.
pub fn lift_ddp(
    epi: &Epimorphism,
    base: &DdpSequence,
    choice: &LiftChoice,
) -> Result<DdpSequence, Error> {
    build_lift_plan(epi, base)?.execute(choice)
}

fn euler_phi(mut n: u64) -> u64 {
    let mut phi = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            phi -= phi / p;
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        phi -= phi / n;
    }
    phi
}

/// Advance a mixed-radix counter (rightmost digit least significant).
/// Returns false once it wraps past the last combination.
fn advance(digits: &mut [usize], radix_of: impl Fn(usize) -> usize) -> bool {
    for j in (0..digits.len()).rev() {
        digits[j] += 1;
        if digits[j] < radix_of(j) {
            return true;
        }
        digits[j] = 0;
    }
    false
}

/// Sweep every plan choice in lexicographic order (kernel units, then pair
/// sides, then fiber indices), deduplicate the resulting orderings, and
/// return up to `limit` of them in first-appearance order.
pub fn enumerate_lifts(
    epi: &Epimorphism,
    base: &DdpSequence,
    limit: usize,
) -> Result<Vec<DdpSequence>, Error> {
    let plan = build_lift_plan(epi, base)?;
    if limit == 0 {
        return Ok(Vec::new());
    }
    let m = epi.kernel().order();
    let npairs = plan.pairs.len();
    let unit_lists: Vec<Vec<u64>> = plan
        .kernel_gens
        .iter()
        .map(|&(k, _)| (1..=k).filter(|&u| num_integer::gcd(u, k) == 1).collect())
        .collect();
    let mut out: Vec<DdpSequence> = Vec::new();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut unit_digits = vec![0usize; unit_lists.len()];
    loop {
        let kernel_units: Vec<u64> = unit_digits
            .iter()
            .zip(&unit_lists)
            .map(|(&i, list)| list[i])
            .collect();
        let mut side_digits = vec![0usize; npairs];
        loop {
            let mut fiber_digits = vec![0usize; npairs];
            loop {
                let selection = PlanSelection {
                    transversal_high: side_digits.iter().map(|&b| b == 1).collect(),
                    fiber_indices: fiber_digits.clone(),
                    kernel_units: kernel_units.clone(),
                };
                let lifted = plan.execute(&LiftChoice::Explicit(selection))?;
                if seen.insert(lifted.elements().to_vec()) {
                    out.push(lifted);
                    if out.len() == limit {
                        return Ok(out);
                    }
                }
                if !advance(&mut fiber_digits, |_| m) {
                    break;
                }
            }
            if !advance(&mut side_digits, |_| 2) {
                break;
            }
        }
        if !advance(&mut unit_digits, |j| unit_lists[j].len()) {
            break;
        }
    }
    Ok(out)
}

/// Combine a nilpotent group of odd order with a group that has a
/// distinct-divisor ordering: lift the ordering step by step along the
/// upper central series of the odd group, one abelian kernel at a time.
/// The result is an ordering of the direct product (odd factor first).
pub fn lift_via_central_series(
    g: &Arc<GroupTable>,
    k: &Arc<GroupTable>,
    k_seq: &DdpSequence,
) -> Result<DdpSequence, Error> {
    if !same_table(k_seq.group(), k) {
        return Err(Error::GroupMismatch);
    }
    if g.order().is_multiple_of(2) {
        return Err(Error::NotOddOrder);
    }
    let series = upper_central_series(g);
    if !series.nilpotent {
        return Err(Error::NotNilpotent);
    }
    let steps = series.terms.len() - 1;
    let mut quotients = Vec::with_capacity(steps + 1);
    for term in &series.terms {
        quotients.push(quotient(g, term)?);
    }
    let mut products: Vec<Arc<GroupTable>> = Vec::with_capacity(steps + 1);
    for (q, _) in &quotients {
        products.push(Arc::new(direct_product(q, k)?));
    }
    // the top quotient is trivial, so the top product is k on identical
    // indices; plant the seed ordering there
    let mut current = DdpSequence::new(products[steps].clone(), k_seq.elements().to_vec())?;
    let ko = k.order();
    for j in (0..steps).rev() {
        let (_, ref to_j) = quotients[j];
        let (_, ref to_j1) = quotients[j + 1];
        let source = products[j].clone();
        let map: Vec<usize> = (0..source.order())
            .map(|idx| {
                let (a, kk) = (idx / ko, idx % ko);
                let representative = to_j.fiber(a)[0] as usize;
                to_j1.apply(representative) * ko + kk
            })
            .collect();
        let pi = Epimorphism::new(source, products[j + 1].clone(), map)?;
        current = lift_ddp(&pi, &current, &LiftChoice::Default)?;
    }
    // the bottom product has the same table as G × K built directly;
    // re-wrap so the descriptor reads cleanly
    let product_table = Arc::new(direct_product(g, k)?);
    DdpSequence::new(product_table, current.into_elements())
}

/// Distinct-divisor ordering of Z_m ⋊ Z_n (action k ↦ u^s·k) for odd m,
/// provided 1 + u^s is a unit mod m for every s. The ordering of the Z_n
/// quotient is lifted through the projection with kernel Z_m.
pub fn semidirect_ddp(m: u64, n: u64, u: u64) -> Result<DdpSequence, Error> {
    if m.is_multiple_of(2) {
        return Err(Error::EvenModulus(m));
    }
    if n > 1 && n % 2 == 1 {
        return Err(Error::PreconditionFailed(
            "the cyclic quotient must have even order".to_string(),
        ));
    }
    let g = Arc::new(build_group(&GroupDescriptor::SemidirectCyclic { m, n, u })?);
    let mut upow = 1 % m;
    for s in 0..n {
        if num_integer::gcd((1 + upow) % m, m) != 1 {
            return Err(Error::GeneratorConditionFailed { s });
        }
        upow = upow * (u % m) % m;
    }
    let target = Arc::new(build_group(&GroupDescriptor::Cyclic(n))?);
    let map: Vec<usize> = (0..g.order()).map(|idx| idx / m as usize).collect();
    let pi = Epimorphism::new(g.clone(), target.clone(), map)?;
    let base = ddp_abelian(&target)?;
    lift_ddp(&pi, &base, &LiftChoice::Default)
}

const fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn least_primitive_root(p: u64) -> u64 {
    let mut prime_factors = Vec::new();
    let mut rest = p - 1;
    let mut d = 2;
    while d * d <= rest {
        if rest.is_multiple_of(d) {
            prime_factors.push(d);
            while rest.is_multiple_of(d) {
                rest /= d;
            }
        }
        d += 1;
    }
    if rest > 1 {
        prime_factors.push(rest);
    }
    (2..p)
        .find(|&t| {
            prime_factors
                .iter()
                .all(|&q| mod_pow(t, (p - 1) / q, p) != 1)
        })
        .expect("a primitive root exists modulo a prime")
}

/// The semidirect construction specialised to primes p ≡ 3 (mod 4):
/// Z_p ⋊ Z_{p−1} acting through u = t² for the least primitive root t.
/// For such p the generator condition holds automatically.
pub fn prime_semidirect_ddp(p: u64) -> Result<DdpSequence, Error> {
    if !is_prime(p) || p % 4 != 3 {
        return Err(Error::BadPrime(p));
    }
    let t = least_primitive_root(p);
    semidirect_ddp(p, p - 1, t * t % p)
}
