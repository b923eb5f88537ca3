//! Finite groups as explicit multiplication tables.
//!
//! Everything downstream operates on a [`GroupTable`]: a complete n×n
//! multiplication table over element indices `0..n` with the identity fixed
//! at index 0. Tables are built from [`GroupDescriptor`]s, either parsed
//! from a compact textual syntax or assembled programmatically:
//!
//! ```text
//! desc   := atom ('x' atom)*
//! atom   := 'Z' INT                      cyclic
//!         | 'D' INT                      dihedral of order 2·INT
//!         | 'SD(' INT ',' INT ';' INT ')'  Z_m ⋊ Z_n, action k ↦ u^s·k
//!         | 'Heis' INT                   3×3 unipotent matrices over Z_p
//!         | 'Perm[' cycles (';' cycles)* ']'  closure of permutations
//! ```
//!
//! Examples: `Z12`, `D5`, `Z4xZ3`, `SD(7,3;2)`, `Heis3`,
//! `Perm[(0 1 2);(0 1)(2 3)]`.
//!
//! Every constructed table is validated: rows and columns must be
//! permutations, index 0 must be a two-sided identity, every element needs a
//! two-sided inverse, and associativity is checked exhaustively up to a size
//! bound (randomly sampled above it).

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;

/// Element index within a [`GroupTable`]. Orders are capped at 65 535 so
/// indices always fit in 16 bits, which keeps n×n tables compact.
pub type Elem = u16;

/// Hard ceiling on group order implied by the [`Elem`] representation.
pub const MAX_ORDER: usize = Elem::MAX as usize;

/// Structural description of a finite group; the recipe a [`GroupTable`] is
/// built from and the source of element labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupDescriptor {
    /// Cyclic group Z_n, written additively.
    Cyclic(u64),
    /// Direct product with mixed-radix element encoding; the first factor is
    /// the most significant digit, so indices follow lexicographic tuple
    /// order.
    DirectProduct(Vec<GroupDescriptor>),
    /// Dihedral group ⟨a, b | aⁿ = b² = 1, aba = b⟩ of order 2n, with
    /// b^j a^i encoded as j·n + i.
    Dihedral(u64),
    /// Z_m ⋊ Z_n where s acts by k ↦ u^s·k (requires uⁿ ≡ 1 mod m);
    /// the pair (k, s) is encoded as s·m + k.
    SemidirectCyclic { m: u64, n: u64, u: u64 },
    /// Upper-triangular unipotent 3×3 matrices over Z_p; the matrix with
    /// off-diagonal entries (a, b, c) is encoded as a·p² + b·p + c.
    Heisenberg(u64),
    /// Closure of a set of permutations on `points` ≤ 8 points. Elements are
    /// indexed in lexicographic one-line order, which puts the identity
    /// first.
    PermGroup { points: u8, generators: Vec<Vec<u8>> },
    /// Quotient of `parent` by the normal subgroup with the given members;
    /// cosets are indexed by their minimal member.
    Quotient {
        parent: Box<GroupDescriptor>,
        kernel: Vec<Elem>,
    },
}

impl core::fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            GroupDescriptor::Cyclic(n) => write!(f, "Z{n}"),
            GroupDescriptor::Dihedral(n) => write!(f, "D{n}"),
            GroupDescriptor::SemidirectCyclic { m, n, u } => write!(f, "SD({m},{n};{u})"),
            GroupDescriptor::Heisenberg(p) => write!(f, "Heis{p}"),
            GroupDescriptor::DirectProduct(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, "x")?;
                    }
                    write!(f, "{p}")?;
                }
                Ok(())
            }
            GroupDescriptor::PermGroup { points, generators } => {
                write!(f, "Perm[")?;
                for (i, g) in generators.iter().enumerate() {
                    if i > 0 {
                        write!(f, ";")?;
                    }
                    write!(f, "{}", cycle_notation(g, *points))?;
                }
                write!(f, "]")
            }
            GroupDescriptor::Quotient { parent, kernel } => {
                write!(f, "{parent}/N{}", kernel.len())
            }
        }
    }
}

/// One-line permutation → cycle notation, fixed points omitted; the
/// identity renders as `()`.
fn cycle_notation(perm: &[u8], points: u8) -> String {
    let mut seen = [false; 8];
    let mut out = String::new();
    for start in 0..points as usize {
        if seen[start] || perm[start] as usize == start {
            continue;
        }
        out.push('(');
        let mut x = start;
        let mut first = true;
        while !seen[x] {
            seen[x] = true;
            if !first {
                out.push(' ');
            }
            out.push_str(&x.to_string());
            first = false;
            x = perm[x] as usize;
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

// ---------------------------------------------------------------------------
// descriptor parsing
// ---------------------------------------------------------------------------

/// Parse the textual descriptor syntax described in the module docs.
pub fn parse_descriptor(input: &str) -> Result<GroupDescriptor, Error> {
    let s = input.trim();
    if s.is_empty() {
        return Err(Error::InvalidDescriptor("empty descriptor".into()));
    }
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => {
                depth = depth
                    .checked_sub(1)
                    .ok_or_else(|| Error::InvalidDescriptor(format!("unbalanced brackets in {s:?}")))?;
            }
            'x' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::InvalidDescriptor(format!("unbalanced brackets in {s:?}")));
    }
    parts.push(&s[start..]);
    let atoms = parts
        .into_iter()
        .map(|p| parse_atom(p.trim()))
        .collect::<Result<Vec<_>, _>>()?;
    if atoms.len() == 1 {
        Ok(atoms.into_iter().next().unwrap())
    } else {
        Ok(GroupDescriptor::DirectProduct(atoms))
    }
}

fn parse_atom(s: &str) -> Result<GroupDescriptor, Error> {
    let bad = |msg: &str| Error::InvalidDescriptor(format!("{msg} in {s:?}"));
    if let Some(rest) = s.strip_prefix("SD(") {
        let body = rest.strip_suffix(')').ok_or_else(|| bad("missing ')'"))?;
        let (mn, u) = body.split_once(';').ok_or_else(|| bad("expected 'SD(m,n;u)'"))?;
        let (m, n) = mn.split_once(',').ok_or_else(|| bad("expected 'SD(m,n;u)'"))?;
        return Ok(GroupDescriptor::SemidirectCyclic {
            m: parse_int(m).ok_or_else(|| bad("bad modulus"))?,
            n: parse_int(n).ok_or_else(|| bad("bad order"))?,
            u: parse_int(u).ok_or_else(|| bad("bad multiplier"))?,
        });
    }
    if let Some(rest) = s.strip_prefix("Heis") {
        return Ok(GroupDescriptor::Heisenberg(
            parse_int(rest).ok_or_else(|| bad("bad modulus"))?,
        ));
    }
    if let Some(rest) = s.strip_prefix("Perm[") {
        let body = rest.strip_suffix(']').ok_or_else(|| bad("missing ']'"))?;
        return parse_perm_atom(body).map_err(|msg| bad(&msg));
    }
    if let Some(rest) = s.strip_prefix('Z') {
        return Ok(GroupDescriptor::Cyclic(
            parse_int(rest).ok_or_else(|| bad("bad order"))?,
        ));
    }
    if let Some(rest) = s.strip_prefix('D') {
        return Ok(GroupDescriptor::Dihedral(
            parse_int(rest).ok_or_else(|| bad("bad order"))?,
        ));
    }
    Err(bad("unknown atom"))
}

fn parse_int(s: &str) -> Option<u64> {
    let s = s.trim();
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

fn parse_perm_atom(body: &str) -> Result<GroupDescriptor, String> {
    let mut cycle_lists: Vec<Vec<Vec<u8>>> = Vec::new();
    let mut max_point = 0u8;
    for gen in body.split(';') {
        let mut cycles = Vec::new();
        let mut rest = gen.trim();
        if rest.is_empty() {
            return Err("empty generator".into());
        }
        if rest == "()" {
            cycle_lists.push(cycles);
            continue;
        }
        while !rest.is_empty() {
            let inner = rest
                .strip_prefix('(')
                .ok_or_else(|| format!("expected '(' in generator {gen:?}"))?;
            let (cycle_str, tail) = inner
                .split_once(')')
                .ok_or_else(|| format!("missing ')' in generator {gen:?}"))?;
            let mut cycle = Vec::new();
            for tok in cycle_str.split_whitespace() {
                let p: u8 = tok.parse().map_err(|_| format!("bad point {tok:?}"))?;
                if p > 7 {
                    return Err(format!("point {p} out of range (at most 8 points)"));
                }
                max_point = max_point.max(p);
                cycle.push(p);
            }
            if cycle.is_empty() {
                return Err(format!("empty cycle in generator {gen:?}"));
            }
            cycles.push(cycle);
            rest = tail.trim_start();
        }
        cycle_lists.push(cycles);
    }
    let points = max_point + 1;
    let mut generators = Vec::new();
    for cycles in &cycle_lists {
        let mut one_line: Vec<u8> = (0..points).collect();
        let mut touched = [false; 8];
        for cycle in cycles {
            for window in 0..cycle.len() {
                let from = cycle[window] as usize;
                let to = cycle[(window + 1) % cycle.len()];
                if touched[from] {
                    return Err(format!("point {from} repeated within a generator"));
                }
                touched[from] = true;
                one_line[from] = to;
            }
        }
        generators.push(one_line);
    }
    Ok(GroupDescriptor::PermGroup { points, generators })
}

// ---------------------------------------------------------------------------
// table construction
// ---------------------------------------------------------------------------

/// Limits applied while building a table.
#[derive(Debug, Clone)]
pub struct GroupBuildOptions {
    /// Maximum group order; defaults to 10 000 and is additionally capped at
    /// [`MAX_ORDER`].
    pub order_limit: usize,
    /// Orders up to this bound get an exhaustive n³ associativity check;
    /// larger tables are spot-checked on 10⁶ pseudorandom triples.
    pub assoc_exhaustive_limit: usize,
}

impl Default for GroupBuildOptions {
    fn default() -> Self {
        GroupBuildOptions {
            order_limit: 10_000,
            assoc_exhaustive_limit: 512,
        }
    }
}

impl GroupBuildOptions {
    fn effective_limit(&self) -> usize {
        self.order_limit.min(MAX_ORDER)
    }
}

/// A finite group as a validated multiplication table.
///
/// Immutable after construction; share via [`Arc`] when several structures
/// need to reference the same group.
#[derive(Clone)]
pub struct GroupTable {
    order: usize,
    mul: Vec<Elem>,
    inv: Vec<Elem>,
    abelian: bool,
    labels: Vec<String>,
    descriptor: GroupDescriptor,
}

impl core::fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("GroupTable")
            .field("descriptor", &format!("{}", self.descriptor))
            .field("order", &self.order)
            .field("abelian", &self.abelian)
            .finish()
    }
}

impl GroupTable {
    /// Number of elements.
    pub fn order(&self) -> usize {
        self.order
    }

    /// The identity element, always index 0.
    pub fn identity(&self) -> usize {
        0
    }

    /// Product of two elements.
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    /// Inverse of an element.
    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `g` raised to a nonnegative power.
    pub fn pow(&self, g: usize, mut k: u64) -> usize {
        let mut acc = 0usize;
        let mut base = g;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// Multiplicative order of an element.
    pub fn element_order(&self, g: usize) -> Result<usize, Error> {
        if g >= self.order {
            return Err(Error::InvalidElement {
                index: g,
                order: self.order,
            });
        }
        let mut k = 1;
        let mut x = g;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        Ok(k)
    }

    /// Least common multiple of all element orders.
    pub fn exponent(&self) -> u64 {
        let mut e = 1u64;
        for g in 0..self.order {
            let o = self.element_order(g).expect("element in range") as u64;
            e = num_integer::lcm(e, o);
        }
        e
    }

    /// Whether the table is commutative (cached at construction).
    pub fn is_abelian(&self) -> bool {
        self.abelian
    }

    /// The recipe this table was built from.
    pub fn descriptor(&self) -> &GroupDescriptor {
        &self.descriptor
    }

    /// Human-readable label of an element, determined by the descriptor.
    pub fn label(&self, g: usize) -> &str {
        &self.labels[g]
    }

    /// The raw row-major multiplication table.
    pub fn mul_table(&self) -> &[Elem] {
        &self.mul
    }

    /// Elements of order exactly 2.
    pub fn involutions(&self) -> Vec<usize> {
        (1..self.order).filter(|&g| self.mul(g, g) == 0).collect()
    }

    /// Elements conjugate to their own inverse (the "real" elements).
    pub fn real_elements(&self) -> Vec<usize> {
        (0..self.order)
            .filter(|&h| {
                (0..self.order).any(|x| self.mul(self.mul(self.inv(x), h), x) == self.inv(h))
            })
            .collect()
    }

    /// The subgroup of elements commuting with everything.
    pub fn center(&self) -> Subgroup {
        let members: Vec<Elem> = (0..self.order)
            .filter(|&z| (0..self.order).all(|x| self.mul(z, x) == self.mul(x, z)))
            .map(|z| z as Elem)
            .collect();
        Subgroup { members }
    }
}

/// Build a table from a descriptor with default limits.
pub fn build_group(desc: &GroupDescriptor) -> Result<GroupTable, Error> {
    build_group_with(desc, &GroupBuildOptions::default())
}

/// Build a table from a descriptor with explicit limits.
pub fn build_group_with(desc: &GroupDescriptor, opts: &GroupBuildOptions) -> Result<GroupTable, Error> {
    let limit = opts.effective_limit();
    if let Some(order) = declared_order(desc) {
        if order == 0 {
            return Err(Error::InvalidDescriptor("order must be at least 1".into()));
        }
        if order > limit as u128 {
            return Err(Error::OrderLimitExceeded {
                order: order.min(usize::MAX as u128) as usize,
                limit,
            });
        }
    }
    let (order, mul, labels) = match desc {
        GroupDescriptor::Cyclic(n) => build_cyclic(*n as usize),
        GroupDescriptor::Dihedral(n) => build_dihedral(*n as usize),
        GroupDescriptor::SemidirectCyclic { m, n, u } => build_semidirect(*m, *n, *u)?,
        GroupDescriptor::Heisenberg(p) => build_heisenberg(*p as usize),
        GroupDescriptor::DirectProduct(parts) => {
            if parts.is_empty() {
                return Err(Error::InvalidDescriptor("empty direct product".into()));
            }
            let tables = parts
                .iter()
                .map(|p| build_group_with(p, opts))
                .collect::<Result<Vec<_>, _>>()?;
            build_product(&tables.iter().collect::<Vec<_>>())
        }
        GroupDescriptor::PermGroup { points, generators } => {
            build_perm_closure(*points, generators, limit)?
        }
        GroupDescriptor::Quotient { parent, kernel } => {
            let parent_table = Arc::new(build_group_with(parent, opts)?);
            let sub = Subgroup::from_members(&parent_table, kernel.iter().map(|&k| k as usize))?;
            let (q, _) = quotient(&parent_table, &sub)?;
            return Ok(Arc::try_unwrap(q).unwrap_or_else(|a| (*a).clone()));
        }
    };
    finish_table(order, mul, labels, desc.clone(), opts)
}

/// Predicted order, when it can be read off the descriptor without building.
fn declared_order(desc: &GroupDescriptor) -> Option<u128> {
    match desc {
        GroupDescriptor::Cyclic(n) => Some(*n as u128),
        GroupDescriptor::Dihedral(n) => Some(2 * *n as u128),
        GroupDescriptor::SemidirectCyclic { m, n, .. } => Some(*m as u128 * *n as u128),
        GroupDescriptor::Heisenberg(p) => Some((*p as u128).pow(3)),
        GroupDescriptor::DirectProduct(parts) => {
            let mut total: u128 = 1;
            for p in parts {
                total = total.checked_mul(declared_order(p)?)?;
                if total > MAX_ORDER as u128 + 1 {
                    return Some(total);
                }
            }
            Some(total)
        }
        GroupDescriptor::PermGroup { .. } | GroupDescriptor::Quotient { .. } => None,
    }
}

fn build_cyclic(n: usize) -> (usize, Vec<Elem>, Vec<String>) {
    let mut mul = vec![0 as Elem; n * n];
    for a in 0..n {
        for b in 0..n {
            mul[a * n + b] = ((a + b) % n) as Elem;
        }
    }
    let labels = (0..n).map(|i| i.to_string()).collect();
    (n, mul, labels)
}

fn build_dihedral(n: usize) -> (usize, Vec<Elem>, Vec<String>) {
    let order = 2 * n;
    let enc = |j: usize, i: usize| j * n + i;
    let mut mul = vec![0 as Elem; order * order];
    for j1 in 0..2 {
        for i1 in 0..n {
            for j2 in 0..2 {
                for i2 in 0..n {
                    // a^i b = b a^{-i}, so (b^{j1} a^{i1})(b^{j2} a^{i2})
                    // = b^{j1+j2} a^{±i1+i2}
                    let i = if j2 == 1 { (n - i1) % n + i2 } else { i1 + i2 } % n;
                    mul[enc(j1, i1) * order + enc(j2, i2)] = enc(j1 ^ j2, i) as Elem;
                }
            }
        }
    }
    let mut labels = Vec::with_capacity(order);
    for j in 0..2 {
        for i in 0..n {
            let mut s = String::new();
            if j == 1 {
                s.push('b');
            }
            match i {
                0 => {}
                1 => s.push('a'),
                _ => s.push_str(&format!("a^{i}")),
            }
            if s.is_empty() {
                s.push('1');
            }
            labels.push(s);
        }
    }
    (order, mul, labels)
}

fn build_semidirect(m: u64, n: u64, u: u64) -> Result<(usize, Vec<Elem>, Vec<String>), Error> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidDescriptor("SD moduli must be at least 1".into()));
    }
    let u = u % m;
    if mod_pow(u, n, m) != 1 % m {
        return Err(Error::NonGroup(format!("u^n = {u}^{n} is not 1 mod {m}")));
    }
    let (m, n) = (m as usize, n as usize);
    let order = m * n;
    // powers of u, one per Z_n layer
    let mut upow = vec![1u64 % m as u64; n];
    for s in 1..n {
        upow[s] = upow[s - 1] * u % m as u64;
    }
    let enc = |k: usize, s: usize| s * m + k;
    let mut mul = vec![0 as Elem; order * order];
    for k1 in 0..m {
        for s1 in 0..n {
            for k2 in 0..m {
                for s2 in 0..n {
                    let k = (k1 + (upow[s1] as usize) * k2) % m;
                    let s = (s1 + s2) % n;
                    mul[enc(k1, s1) * order + enc(k2, s2)] = enc(k, s) as Elem;
                }
            }
        }
    }
    let mut labels = Vec::with_capacity(order);
    for s in 0..n {
        for k in 0..m {
            let mut t = String::new();
            match k {
                0 => {}
                1 => t.push('a'),
                _ => t.push_str(&format!("a^{k}")),
            }
            match s {
                0 => {}
                1 => t.push('b'),
                _ => t.push_str(&format!("b^{s}")),
            }
            if t.is_empty() {
                t.push('1');
            }
            labels.push(t);
        }
    }
    Ok((order, mul, labels))
}

pub(crate) fn mod_pow(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = (acc as u128 * base as u128 % modulus as u128) as u64;
        }
        base = (base as u128 * base as u128 % modulus as u128) as u64;
        exp >>= 1;
    }
    acc
}

fn build_heisenberg(p: usize) -> (usize, Vec<Elem>, Vec<String>) {
    let order = p * p * p;
    let enc = |a: usize, b: usize, c: usize| (a * p + b) * p + c;
    let mut mul = vec![0 as Elem; order * order];
    for a1 in 0..p {
        for b1 in 0..p {
            for c1 in 0..p {
                let lhs = enc(a1, b1, c1) * order;
                for a2 in 0..p {
                    for b2 in 0..p {
                        for c2 in 0..p {
                            mul[lhs + enc(a2, b2, c2)] =
                                enc((a1 + a2) % p, (b1 + b2) % p, (c1 + c2 + a1 * b2) % p) as Elem;
                        }
                    }
                }
            }
        }
    }
    let mut labels = Vec::with_capacity(order);
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                labels.push(format!("({a},{b},{c})"));
            }
        }
    }
    (order, mul, labels)
}

fn build_product(parts: &[&GroupTable]) -> (usize, Vec<Elem>, Vec<String>) {
    let order: usize = parts.iter().map(|p| p.order()).product();
    let k = parts.len();
    let mut digits = vec![0usize; k];
    let decode = |mut idx: usize, digits: &mut [usize]| {
        for (d, part) in digits.iter_mut().zip(parts).rev() {
            *d = idx % part.order();
            idx /= part.order();
        }
    };
    // cache decoded tuples for each index
    let mut tuples = Vec::with_capacity(order);
    for idx in 0..order {
        decode(idx, &mut digits);
        tuples.push(digits.clone());
    }
    let mut mul = vec![0 as Elem; order * order];
    for a in 0..order {
        for b in 0..order {
            let mut idx = 0usize;
            for ((x, y), part) in tuples[a].iter().zip(&tuples[b]).zip(parts) {
                idx = idx * part.order() + part.mul(*x, *y);
            }
            mul[a * order + b] = idx as Elem;
        }
    }
    let labels = tuples
        .iter()
        .map(|t| {
            let inner = t
                .iter()
                .zip(parts)
                .map(|(&x, part)| part.label(x).to_string())
                .collect::<Vec<_>>()
                .join(",");
            format!("({inner})")
        })
        .collect();
    (order, mul, labels)
}

fn build_perm_closure(
    points: u8,
    generators: &[Vec<u8>],
    limit: usize,
) -> Result<(usize, Vec<Elem>, Vec<String>), Error> {
    if points == 0 || points > 8 {
        return Err(Error::InvalidDescriptor("permutations need 1..=8 points".into()));
    }
    for g in generators {
        let mut seen = [false; 8];
        if g.len() != points as usize {
            return Err(Error::InvalidDescriptor("generator on wrong point count".into()));
        }
        for &x in g {
            if x >= points || seen[x as usize] {
                return Err(Error::InvalidDescriptor("generator is not a permutation".into()));
            }
            seen[x as usize] = true;
        }
    }
    let p = points as usize;
    let identity: Vec<u8> = (0..points).collect();
    let mut elems = alloc::collections::BTreeSet::new();
    elems.insert(identity.clone());
    let mut frontier = vec![identity];
    while let Some(e) = frontier.pop() {
        for g in generators {
            let composed: Vec<u8> = (0..p).map(|i| g[e[i] as usize]).collect();
            if elems.insert(composed.clone()) {
                if elems.len() > limit {
                    return Err(Error::OrderLimitExceeded {
                        order: elems.len(),
                        limit,
                    });
                }
                frontier.push(composed);
            }
        }
    }
    let elems: Vec<Vec<u8>> = elems.into_iter().collect();
    let index: alloc::collections::BTreeMap<&[u8], usize> =
        elems.iter().enumerate().map(|(i, e)| (e.as_slice(), i)).collect();
    let order = elems.len();
    let mut mul = vec![0 as Elem; order * order];
    for (i, e1) in elems.iter().enumerate() {
        for (j, e2) in elems.iter().enumerate() {
            let composed: Vec<u8> = (0..p).map(|k| e1[e2[k] as usize]).collect();
            mul[i * order + j] = index[composed.as_slice()] as Elem;
        }
    }
    let labels = elems.iter().map(|e| cycle_notation(e, points)).collect();
    Ok((order, mul, labels))
}

/// Validate a candidate table and assemble the final structure.
fn finish_table(
    order: usize,
    mul: Vec<Elem>,
    labels: Vec<String>,
    descriptor: GroupDescriptor,
    opts: &GroupBuildOptions,
) -> Result<GroupTable, Error> {
    let limit = opts.effective_limit();
    if order > limit {
        return Err(Error::OrderLimitExceeded { order, limit });
    }
    debug_assert_eq!(mul.len(), order * order);
    debug_assert_eq!(labels.len(), order);
    // Latin square: every row and column is a permutation.
    let mut seen = vec![false; order];
    for a in 0..order {
        seen.iter_mut().for_each(|s| *s = false);
        for b in 0..order {
            let v = mul[a * order + b] as usize;
            if v >= order || seen[v] {
                return Err(Error::NonGroup(format!("row {a} is not a permutation")));
            }
            seen[v] = true;
        }
    }
    for b in 0..order {
        seen.iter_mut().for_each(|s| *s = false);
        for a in 0..order {
            let v = mul[a * order + b] as usize;
            if seen[v] {
                return Err(Error::NonGroup(format!("column {b} is not a permutation")));
            }
            seen[v] = true;
        }
    }
    // identity at index 0
    for g in 0..order {
        if mul[g] as usize != g || mul[g * order] as usize != g {
            return Err(Error::NonGroup("index 0 is not a two-sided identity".into()));
        }
    }
    // two-sided inverses
    let mut inv = vec![0 as Elem; order];
    for a in 0..order {
        let b = (0..order)
            .find(|&b| mul[a * order + b] == 0)
            .expect("latin square rows hit every value");
        if mul[b * order + a] != 0 {
            return Err(Error::NonGroup(format!("element {a} has no two-sided inverse")));
        }
        inv[a] = b as Elem;
    }
    // associativity
    let assoc = |a: usize, b: usize, c: usize| {
        mul[mul[a * order + b] as usize * order + c] == mul[a * order + mul[b * order + c] as usize]
    };
    if order <= opts.assoc_exhaustive_limit {
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if !assoc(a, b, c) {
                        return Err(Error::NonGroup(format!(
                            "associativity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
    } else {
        let mut state = 0x9e37_79b9_7f4a_7c15u64;
        for _ in 0..1_000_000 {
            let a = (splitmix64(&mut state) % order as u64) as usize;
            let b = (splitmix64(&mut state) % order as u64) as usize;
            let c = (splitmix64(&mut state) % order as u64) as usize;
            if !assoc(a, b, c) {
                return Err(Error::NonGroup(format!("associativity fails at ({a},{b},{c})")));
            }
        }
    }
    let abelian = (0..order).all(|a| (a..order).all(|b| mul[a * order + b] == mul[b * order + a]));
    Ok(GroupTable {
        order,
        mul,
        inv,
        abelian,
        labels,
        descriptor,
    })
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

// ---------------------------------------------------------------------------
// subgroups, quotients, morphisms
// ---------------------------------------------------------------------------

/// A subgroup, stored as its sorted member list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    members: Vec<Elem>,
}

impl Subgroup {
    /// The subgroup `{1}`.
    pub fn trivial() -> Subgroup {
        Subgroup { members: vec![0] }
    }

    /// The whole group as a subgroup of itself.
    pub fn full(g: &GroupTable) -> Subgroup {
        Subgroup {
            members: (0..g.order()).map(|x| x as Elem).collect(),
        }
    }

    /// Closure of a set of generators.
    pub fn generated_by(g: &GroupTable, gens: &[usize]) -> Result<Subgroup, Error> {
        for &x in gens {
            if x >= g.order() {
                return Err(Error::InvalidElement {
                    index: x,
                    order: g.order(),
                });
            }
        }
        let mut member = vec![false; g.order()];
        member[0] = true;
        let mut frontier = vec![0usize];
        while let Some(a) = frontier.pop() {
            for &b in gens {
                let c = g.mul(a, b);
                if !member[c] {
                    member[c] = true;
                    frontier.push(c);
                }
            }
        }
        let members = (0..g.order()).filter(|&x| member[x]).map(|x| x as Elem).collect();
        Ok(Subgroup { members })
    }

    /// Wrap an explicit member list, validating that it really is a subgroup.
    pub fn from_members(
        g: &GroupTable,
        members: impl IntoIterator<Item = usize>,
    ) -> Result<Subgroup, Error> {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        if members.first() != Some(&0) {
            return Err(Error::NonGroup("subgroup must contain the identity".into()));
        }
        for &x in &members {
            if x >= g.order() {
                return Err(Error::InvalidElement {
                    index: x,
                    order: g.order(),
                });
            }
        }
        for &a in &members {
            if members.binary_search(&g.inv(a)).is_err() {
                return Err(Error::NonGroup("subgroup not closed under inverse".into()));
            }
            for &b in &members {
                if members.binary_search(&g.mul(a, b)).is_err() {
                    return Err(Error::NonGroup("subgroup not closed under product".into()));
                }
            }
        }
        Ok(Subgroup {
            members: members.into_iter().map(|x| x as Elem).collect(),
        })
    }

    /// Number of members.
    pub fn order(&self) -> usize {
        self.members.len()
    }

    /// Sorted member list.
    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    /// Membership test.
    pub fn contains(&self, x: usize) -> bool {
        x <= MAX_ORDER && self.members.binary_search(&(x as Elem)).is_ok()
    }

    /// Whether `x·H·x⁻¹ = H` for every `x` in the ambient group.
    pub fn is_normal(&self, g: &GroupTable) -> bool {
        (0..g.order()).all(|x| {
            self.members
                .iter()
                .all(|&h| self.contains(g.mul(g.mul(x, h as usize), g.inv(x))))
        })
    }

    /// Whether the members commute pairwise under the ambient product.
    pub fn is_abelian_in(&self, g: &GroupTable) -> bool {
        self.members.iter().all(|&a| {
            self.members
                .iter()
                .all(|&b| g.mul(a as usize, b as usize) == g.mul(b as usize, a as usize))
        })
    }
}

/// A surjective homomorphism between two tables, with its kernel and fibers
/// precomputed.
#[derive(Debug, Clone)]
pub struct Epimorphism {
    source: Arc<GroupTable>,
    target: Arc<GroupTable>,
    map: Vec<Elem>,
    kernel: Subgroup,
    fibers: Vec<Vec<Elem>>,
}

impl Epimorphism {
    /// Validate `map` as a surjective homomorphism `source → target`.
    pub fn new(
        source: Arc<GroupTable>,
        target: Arc<GroupTable>,
        map: Vec<usize>,
    ) -> Result<Epimorphism, Error> {
        if map.len() != source.order() {
            return Err(Error::LengthMismatch {
                expected: source.order(),
                found: map.len(),
            });
        }
        for &v in &map {
            if v >= target.order() {
                return Err(Error::InvalidElement {
                    index: v,
                    order: target.order(),
                });
            }
        }
        for a in 0..source.order() {
            for b in 0..source.order() {
                if map[source.mul(a, b)] != target.mul(map[a], map[b]) {
                    return Err(Error::NotHomomorphism);
                }
            }
        }
        let mut fibers = vec![Vec::new(); target.order()];
        for (x, &t) in map.iter().enumerate() {
            fibers[t].push(x as Elem);
        }
        if fibers.iter().any(|f| f.is_empty()) {
            return Err(Error::NotSurjective);
        }
        let kernel = Subgroup {
            members: fibers[0].clone(),
        };
        Ok(Epimorphism {
            source,
            target,
            map: map.into_iter().map(|x| x as Elem).collect(),
            kernel,
            fibers,
        })
    }

    pub fn source(&self) -> &Arc<GroupTable> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GroupTable> {
        &self.target
    }

    /// Image of a source element.
    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x] as usize
    }

    /// Preimage of the target identity.
    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    /// Sorted preimage of a target element.
    pub fn fiber(&self, t: usize) -> &[Elem] {
        &self.fibers[t]
    }
}

/// Quotient of `g` by a normal subgroup.
///
/// Cosets are indexed by their minimal member in ascending order, which keeps
/// the identity coset at index 0. Returns the quotient table together with
/// the canonical projection.
pub fn quotient(g: &Arc<GroupTable>, n: &Subgroup) -> Result<(Arc<GroupTable>, Epimorphism), Error> {
    // re-validate against this group: the subgroup may have been built elsewhere
    let n = Subgroup::from_members(g, n.members().iter().map(|&x| x as usize))?;
    if !n.is_normal(g) {
        return Err(Error::NotNormal);
    }
    let order = g.order();
    let mut coset_of = vec![usize::MAX; order];
    let mut cosets: Vec<Vec<Elem>> = Vec::new();
    for x in 0..order {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let mut cs: Vec<Elem> = n.members().iter().map(|&h| g.mul(x, h as usize) as Elem).collect();
        cs.sort_unstable();
        for &y in &cs {
            coset_of[y as usize] = cosets.len();
        }
        cosets.push(cs);
    }
    // scanning in element order already yields cosets sorted by minimal member
    debug_assert!(cosets.windows(2).all(|w| w[0][0] < w[1][0]));
    let q = cosets.len();
    let mut mul = vec![0 as Elem; q * q];
    for i in 0..q {
        for j in 0..q {
            mul[i * q + j] =
                coset_of[g.mul(cosets[i][0] as usize, cosets[j][0] as usize)] as Elem;
        }
    }
    let labels = cosets
        .iter()
        .map(|cs| format!("[{}]", g.label(cs[0] as usize)))
        .collect();
    let descriptor = GroupDescriptor::Quotient {
        parent: Box::new(g.descriptor().clone()),
        kernel: n.members().to_vec(),
    };
    let table = Arc::new(finish_table(q, mul, labels, descriptor, &GroupBuildOptions::default())?);
    let epi = Epimorphism::new(g.clone(), table.clone(), coset_of)?;
    Ok((table, epi))
}

/// Direct product of two tables.
///
/// Element `(a, b)` is encoded as `a·|B| + b`, matching the mixed-radix
/// convention of [`GroupDescriptor::DirectProduct`].
pub fn direct_product(a: &GroupTable, b: &GroupTable) -> Result<GroupTable, Error> {
    direct_product_with(a, b, &GroupBuildOptions::default())
}

/// [`direct_product`] with explicit limits.
pub fn direct_product_with(
    a: &GroupTable,
    b: &GroupTable,
    opts: &GroupBuildOptions,
) -> Result<GroupTable, Error> {
    let (order, mul, labels) = build_product(&[a, b]);
    let descriptor = GroupDescriptor::DirectProduct(vec![a.descriptor().clone(), b.descriptor().clone()]);
    finish_table(order, mul, labels, descriptor, opts)
}

/// The upper central series `{1} = Z₀ ⊆ Z₁ ⊆ …` computed until it
/// stabilizes; `Z₁` is the center and `Z_{k+1}` collects the elements whose
/// commutators all land in `Z_k`.
#[derive(Debug, Clone)]
pub struct CentralSeries {
    /// Terms `Z₀, Z₁, …` up to and including the stable term.
    pub terms: Vec<Subgroup>,
    /// Whether the stable term is the whole group.
    pub nilpotent: bool,
}

/// Compute the upper central series of a group.
pub fn upper_central_series(g: &GroupTable) -> CentralSeries {
    let order = g.order();
    let mut member = vec![false; order];
    member[0] = true;
    let mut terms = vec![Subgroup::trivial()];
    loop {
        // x lands in the next term iff every commutator [x, y] is in the
        // current term
        let next: Vec<bool> = (0..order)
            .map(|x| {
                (0..order).all(|y| {
                    let c = g.mul(g.mul(g.mul(x, y), g.inv(x)), g.inv(y));
                    member[c]
                })
            })
            .collect();
        if next == member {
            break;
        }
        member = next;
        let members: Vec<Elem> = (0..order).filter(|&x| member[x]).map(|x| x as Elem).collect();
        terms.push(Subgroup { members });
    }
    let nilpotent = terms.last().map(|t| t.order()) == Some(order);
    CentralSeries { terms, nilpotent }
}
