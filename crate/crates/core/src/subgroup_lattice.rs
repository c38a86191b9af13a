//! Subgroups: closure, enumeration, normality, quotients, isolation.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::group_core::{
    check_element, generating_set, CayleyTableGroup, Element, FiniteGroup, GroupRef,
};

/// Default cap on the group order for [`all_subgroups`].
pub const DEFAULT_LATTICE_CAP: usize = 200;

/// Largest index accepted by [`quotient`].
pub const MAX_QUOTIENT_ORDER: usize = 512;

/// A subgroup of a parent group, stored as a sorted member list plus a
/// membership bitset over the parent's encodings.
#[derive(Clone)]
pub struct Subgroup {
    parent_order: usize,
    members: Vec<Element>,
    bits: Vec<u64>,
    generators: Vec<Element>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent_order == other.parent_order && self.members == other.members
    }
}

impl Eq for Subgroup {}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subgroup")
            .field("order", &self.order())
            .field("index", &self.index())
            .field("generators", &self.generators)
            .finish()
    }
}

impl Subgroup {
    fn from_members(parent_order: usize, mut members: Vec<Element>, generators: Vec<Element>) -> Self {
        members.sort_unstable();
        let mut bits = vec![0u64; parent_order.div_ceil(64)];
        for &m in &members {
            bits[m / 64] |= 1 << (m % 64);
        }
        Subgroup {
            parent_order,
            members,
            bits,
            generators,
        }
    }

    pub fn trivial(g: &dyn FiniteGroup) -> Self {
        Self::from_members(g.order(), vec![g.identity()], Vec::new())
    }

    pub fn whole(g: &dyn FiniteGroup) -> Self {
        Self::from_members(g.order(), g.elements().collect(), generating_set(g))
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn index(&self) -> usize {
        self.parent_order / self.members.len()
    }

    pub fn parent_order(&self) -> usize {
        self.parent_order
    }

    #[inline]
    pub fn contains(&self, x: Element) -> bool {
        x < self.parent_order && self.bits[x / 64] & (1 << (x % 64)) != 0
    }

    /// Members in ascending encoding order.
    pub fn members(&self) -> &[Element] {
        &self.members
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.members.len() == self.parent_order
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    /// Short label such as `<1,7> (order 7)`.
    pub fn describe(&self) -> String {
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        format!("<{}> (order {})", gens.join(","), self.order())
    }
}

/// Closes `seed` (assumed to be a subgroup, or just the identity) under
/// right multiplication by `gens`.
fn close(g: &dyn FiniteGroup, seed: &[Element], gens: &[Element]) -> Vec<Element> {
    let n = g.order();
    let mut member = vec![false; n];
    let mut out: Vec<Element> = Vec::with_capacity(seed.len() * 2);
    for &x in seed.iter().chain(std::iter::once(&g.identity())) {
        if !member[x] {
            member[x] = true;
            out.push(x);
        }
    }
    let mut i = 0;
    while i < out.len() {
        let x = out[i];
        for &s in gens {
            let y = g.multiply(x, s);
            if !member[y] {
                member[y] = true;
                out.push(y);
            }
        }
        i += 1;
    }
    out
}

/// The smallest subgroup containing `gens`.
pub fn generate(g: &dyn FiniteGroup, gens: &[Element]) -> Result<Subgroup> {
    for &x in gens {
        check_element(g, x)?;
    }
    let mut kept: Vec<Element> = gens.iter().copied().filter(|&x| x != g.identity()).collect();
    kept.dedup();
    let members = close(g, &[], &kept);
    Ok(Subgroup::from_members(g.order(), members, kept))
}

/// `<H, x>`.
pub(crate) fn join_element(g: &dyn FiniteGroup, h: &Subgroup, x: Element) -> Subgroup {
    let mut gens = h.generators.clone();
    gens.push(x);
    let members = close(g, &h.members, &gens);
    Subgroup::from_members(g.order(), members, gens)
}

/// Every subgroup of `g` exactly once, sorted by order and then by member
/// list. Built from the cyclic subgroups by repeatedly joining with cyclic
/// subgroups until no new subgroup appears.
pub fn all_subgroups(g: &dyn FiniteGroup, cap: usize) -> Result<Vec<Subgroup>> {
    if g.order() > cap {
        return Err(Error::BudgetExceeded {
            what: "subgroup enumeration",
            limit: cap,
            actual: g.order(),
        });
    }
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut cyclic_gens = Vec::new();
    let mut lattice = Vec::new();
    for x in g.elements() {
        let h = generate(g, &[x])?;
        if seen.insert(h.bits.clone()) {
            if x != g.identity() {
                cyclic_gens.push(x);
            }
            lattice.push(h);
        }
    }
    let mut i = 0;
    while i < lattice.len() {
        for &x in &cyclic_gens {
            if lattice[i].contains(x) {
                continue;
            }
            let joined = join_element(g, &lattice[i], x);
            if seen.insert(joined.bits.clone()) {
                lattice.push(joined);
            }
        }
        i += 1;
    }
    lattice.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.members.cmp(&b.members)));
    Ok(lattice)
}

pub fn conjugate(g: &dyn FiniteGroup, by: Element, x: Element) -> Element {
    g.multiply(g.multiply(by, x), g.inverse(by))
}

/// Whether `g h g^-1 ∈ H` for all generators of `G` and `H`.
pub fn is_normal(g: &dyn FiniteGroup, h: &Subgroup) -> bool {
    let gens_g = generating_set(g);
    let gens_h: &[Element] = if h.generators.is_empty() && !h.is_trivial() {
        &h.members
    } else {
        &h.generators
    };
    gens_g
        .iter()
        .all(|&s| gens_h.iter().all(|&x| h.contains(conjugate(g, s, x))))
}

/// The quotient `G/K` as a Cayley table. Cosets are numbered by their
/// smallest member, so the identity coset is 0.
pub fn quotient(g: &dyn FiniteGroup, k: &Subgroup) -> Result<GroupRef> {
    if !is_normal(g, k) {
        return Err(Error::NotNormal);
    }
    let m = k.index();
    if m > MAX_QUOTIENT_ORDER {
        return Err(Error::BudgetExceeded {
            what: "quotient order",
            limit: MAX_QUOTIENT_ORDER,
            actual: m,
        });
    }
    let mut coset = vec![usize::MAX; g.order()];
    let mut reps = Vec::with_capacity(m);
    for x in g.elements() {
        if coset[x] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(x);
        for &y in &k.members {
            coset[g.multiply(x, y)] = id;
        }
    }
    let table = reps
        .iter()
        .flat_map(|&a| reps.iter().map(move |&b| (a, b)))
        .map(|(a, b)| coset[g.multiply(a, b)] as u32)
        .collect();
    let label = format!("{} / {}", g.descriptor(), k.describe());
    Ok(std::sync::Arc::new(CayleyTableGroup::from_parts(m, table, label)))
}

/// `H` is isolated when every `x` lies in `H` or has `<x> ∩ H = 1`.
pub fn is_isolated(g: &dyn FiniteGroup, h: &Subgroup) -> bool {
    let e = g.identity();
    g.elements().filter(|&x| !h.contains(x)).all(|x| {
        let mut y = g.multiply(x, x);
        while y != e {
            if h.contains(y) {
                return false;
            }
            y = g.multiply(y, x);
        }
        true
    })
}

/// Whether `H ∩ gHg^-1 = 1` for every `g` outside `H`.
pub fn conjugates_intersect_trivially(g: &dyn FiniteGroup, h: &Subgroup) -> bool {
    let e = g.identity();
    g.elements().filter(|&s| !h.contains(s)).all(|s| {
        h.members
            .iter()
            .all(|&x| x == e || !h.contains(conjugate(g, s, x)))
    })
}

pub fn intersection(a: &Subgroup, b: &Subgroup) -> Subgroup {
    let members: Vec<Element> = a.members.iter().copied().filter(|&x| b.contains(x)).collect();
    Subgroup::from_members(a.parent_order, members.clone(), members.into_iter().skip(1).collect())
}
