//! Finite groups with canonical integer encodings.
//!
//! Every group fixes a bijection between its elements and `0..order`, with
//! the identity at 0. Multiplication and inversion are computed on demand;
//! only Cayley-table groups and small permutation groups materialize a table.

use std::fmt;
use std::ops::Range;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result, TableError};

mod cyclic;
mod dihedral;
mod frobenius;
mod permutation;
mod product;
mod spec;
mod table;

pub use cyclic::CyclicGroup;
pub use dihedral::{DicyclicGroup, DihedralGroup};
pub use frobenius::FrobeniusFieldGroup;
pub use permutation::PermutationGroup;
pub use product::DirectProductGroup;
pub use spec::GroupSpec;
pub use table::{format_cayley_table, parse_cayley_table, CayleyTableGroup};

/// Canonical encoding of a group element.
pub type Element = usize;

/// Shared handle to a group.
pub type GroupRef = Arc<dyn FiniteGroup>;

/// Upper bound on the parameter `n` of `cyclic`, `dihedral` and `dicyclic`.
pub const MAX_FAMILY_PARAMETER: usize = 1 << 22;

/// Largest permutation degree accepted by `symmetric` and `alternating`.
pub const MAX_PERMUTATION_DEGREE: usize = 8;

/// Groups up to this order get an exhaustive associativity check.
pub const FULL_ASSOCIATIVITY_LIMIT: usize = 512;

/// Random triples tested for associativity on larger groups.
pub const SPOT_CHECK_SAMPLES: usize = 100_000;

pub trait FiniteGroup: Send + Sync + fmt::Debug {
    fn order(&self) -> usize;

    fn multiply(&self, a: Element, b: Element) -> Element;

    fn inverse(&self, a: Element) -> Element;

    /// Human-readable name, stable across runs.
    fn descriptor(&self) -> String;

    fn identity(&self) -> Element {
        0
    }

    /// A generating set, when the construction knows one.
    fn generators(&self) -> Option<Vec<Element>> {
        None
    }

    /// All encodings in ascending order; the identity comes first.
    fn elements(&self) -> Range<Element> {
        0..self.order()
    }

    fn contains(&self, x: Element) -> bool {
        x < self.order()
    }
}

pub fn check_element(g: &dyn FiniteGroup, x: Element) -> Result<()> {
    if g.contains(x) {
        Ok(())
    } else {
        Err(Error::InvalidElement {
            element: x,
            order: g.order(),
        })
    }
}

pub fn power(g: &dyn FiniteGroup, x: Element, mut k: u64) -> Element {
    let mut base = x;
    let mut acc = g.identity();
    while k > 0 {
        if k & 1 == 1 {
            acc = g.multiply(acc, base);
        }
        base = g.multiply(base, base);
        k >>= 1;
    }
    acc
}

/// Smallest `m >= 1` with `x^m = 1`, by repeated multiplication.
pub fn element_order(g: &dyn FiniteGroup, x: Element) -> Result<usize> {
    check_element(g, x)?;
    Ok(element_order_unchecked(g, x))
}

pub(crate) fn element_order_unchecked(g: &dyn FiniteGroup, x: Element) -> usize {
    let e = g.identity();
    let mut y = x;
    let mut m = 1;
    while y != e {
        y = g.multiply(y, x);
        m += 1;
    }
    m
}

/// The elements `x, x^2, ..., x^o(x) = 1`.
pub fn cyclic_closure(g: &dyn FiniteGroup, x: Element) -> Vec<Element> {
    let e = g.identity();
    let mut out = vec![x];
    let mut y = x;
    while y != e {
        y = g.multiply(y, x);
        out.push(y);
    }
    out
}

pub fn is_cyclic(g: &dyn FiniteGroup) -> bool {
    let n = g.order();
    g.elements().any(|x| element_order_unchecked(g, x) == n)
}

pub fn is_abelian(g: &dyn FiniteGroup) -> bool {
    let gens = generating_set(g);
    gens.iter()
        .all(|&a| gens.iter().all(|&b| g.multiply(a, b) == g.multiply(b, a)))
}

/// The construction's generators when known, otherwise a greedy generating
/// set: scan elements in order and keep each one not yet generated.
pub fn generating_set(g: &dyn FiniteGroup) -> Vec<Element> {
    if let Some(gens) = g.generators() {
        return gens;
    }
    let n = g.order();
    let mut member = vec![false; n];
    member[g.identity()] = true;
    let mut members = vec![g.identity()];
    let mut gens = Vec::new();
    for x in g.elements() {
        if member[x] {
            continue;
        }
        gens.push(x);
        // Re-close: right-multiply every member by every generator.
        let mut i = 0;
        while i < members.len() {
            let m = members[i];
            for &s in &gens {
                let y = g.multiply(m, s);
                if !member[y] {
                    member[y] = true;
                    members.push(y);
                }
            }
            i += 1;
        }
        if members.len() == n {
            break;
        }
    }
    gens
}

/// Checks identity, inverse and associativity axioms. Associativity is
/// exhaustive up to [`FULL_ASSOCIATIVITY_LIMIT`] elements and sampled with a
/// seeded RNG above that.
pub fn verify_axioms(g: &dyn FiniteGroup, seed: u64) -> std::result::Result<(), TableError> {
    let e = g.identity();
    for a in g.elements() {
        if g.multiply(e, a) != a || g.multiply(a, e) != a {
            return Err(TableError::MissingIdentity);
        }
        let inv = g.inverse(a);
        if g.multiply(a, inv) != e || g.multiply(inv, a) != e {
            return Err(TableError::MissingInverse(a));
        }
    }
    if g.order() <= FULL_ASSOCIATIVITY_LIMIT {
        check_associativity_exhaustive(g)
    } else {
        spot_check_associativity(g, SPOT_CHECK_SAMPLES, seed)
    }
}

pub fn check_associativity_exhaustive(g: &dyn FiniteGroup) -> std::result::Result<(), TableError> {
    for a in g.elements() {
        for b in g.elements() {
            let ab = g.multiply(a, b);
            for c in g.elements() {
                if g.multiply(ab, c) != g.multiply(a, g.multiply(b, c)) {
                    return Err(TableError::NotAssociative(a, b, c));
                }
            }
        }
    }
    Ok(())
}

pub fn spot_check_associativity(
    g: &dyn FiniteGroup,
    samples: usize,
    seed: u64,
) -> std::result::Result<(), TableError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = g.order();
    for _ in 0..samples {
        let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
        if g.multiply(g.multiply(a, b), c) != g.multiply(a, g.multiply(b, c)) {
            return Err(TableError::NotAssociative(a, b, c));
        }
    }
    Ok(())
}

fn family_parameter(name: &str, n: usize) -> Result<()> {
    if n == 0 || n > MAX_FAMILY_PARAMETER {
        return Err(Error::InvalidArgument(format!(
            "{name} parameter must lie in [1, {MAX_FAMILY_PARAMETER}], got {n}"
        )));
    }
    Ok(())
}

pub fn cyclic(n: usize) -> Result<GroupRef> {
    family_parameter("cyclic", n)?;
    Ok(Arc::new(CyclicGroup::new(n)))
}

/// Dihedral group of order `2n`.
pub fn dihedral(n: usize) -> Result<GroupRef> {
    family_parameter("dihedral", n)?;
    Ok(Arc::new(DihedralGroup::new(n)))
}

/// Dicyclic group of order `4n`; `dicyclic(2)` is the quaternion group.
pub fn dicyclic(n: usize) -> Result<GroupRef> {
    family_parameter("dicyclic", n)?;
    Ok(Arc::new(DicyclicGroup::new(n)))
}

pub fn quaternion8() -> GroupRef {
    Arc::new(DicyclicGroup::new(2))
}

pub fn symmetric(d: usize) -> Result<GroupRef> {
    Ok(Arc::new(PermutationGroup::symmetric(d)?))
}

pub fn alternating(d: usize) -> Result<GroupRef> {
    Ok(Arc::new(PermutationGroup::alternating(d)?))
}

/// The affine group GF(p^r) ⋊ GF(p^r)^×.
pub fn frobenius_field(p: u32, r: u32) -> Result<GroupRef> {
    Ok(Arc::new(FrobeniusFieldGroup::new(p, r)?))
}

/// Abelian group from a list of `(prime, partition)` pairs: `(2, [2, 1])`
/// contributes `C_4 x C_2`.
pub fn abelian_of_type(parts: &[(u32, Vec<u32>)]) -> Result<GroupRef> {
    let mut orders = Vec::new();
    for (p, partition) in parts {
        if !crate::numtheory::is_prime(u64::from(*p)) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        for &lambda in partition {
            if lambda == 0 {
                return Err(Error::InvalidArgument("partition parts must be positive".into()));
            }
            let q = (*p as usize)
                .checked_pow(lambda)
                .filter(|&q| q <= MAX_FAMILY_PARAMETER)
                .ok_or_else(|| Error::InvalidArgument(format!("{p}^{lambda} is too large")))?;
            orders.push(q);
        }
    }
    if orders.is_empty() {
        return cyclic(1);
    }
    let label = format!(
        "abelian({})",
        orders.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(",")
    );
    let factors = orders.into_iter().map(cyclic).collect::<Result<Vec<_>>>()?;
    Ok(Arc::new(DirectProductGroup::with_label(factors, label)?))
}

pub fn direct_product(factors: Vec<GroupRef>) -> Result<GroupRef> {
    if factors.len() == 1 {
        return Ok(factors.into_iter().next().unwrap());
    }
    Ok(Arc::new(DirectProductGroup::new(factors)?))
}

pub fn from_cayley_table(rows: Vec<Vec<usize>>, label: &str, seed: u64) -> Result<GroupRef> {
    Ok(Arc::new(CayleyTableGroup::from_rows(rows, label, seed)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order_histogram(g: &dyn FiniteGroup) -> std::collections::BTreeMap<usize, usize> {
        let mut h = std::collections::BTreeMap::new();
        for x in g.elements() {
            *h.entry(element_order(g, x).unwrap()).or_insert(0) += 1;
        }
        h
    }

    fn catalog_sample() -> Vec<GroupRef> {
        vec![
            cyclic(1).unwrap(),
            cyclic(12).unwrap(),
            dihedral(1).unwrap(),
            dihedral(4).unwrap(),
            dihedral(15).unwrap(),
            dicyclic(2).unwrap(),
            dicyclic(5).unwrap(),
            symmetric(3).unwrap(),
            symmetric(4).unwrap(),
            alternating(4).unwrap(),
            alternating(5).unwrap(),
            frobenius_field(2, 1).unwrap(),
            frobenius_field(2, 3).unwrap(),
            frobenius_field(3, 2).unwrap(),
            frobenius_field(5, 1).unwrap(),
            abelian_of_type(&[(2, vec![2, 1]), (3, vec![1])]).unwrap(),
            direct_product(vec![symmetric(3).unwrap(), cyclic(4).unwrap()]).unwrap(),
        ]
    }

    #[test]
    fn axioms_hold_for_constructed_groups() {
        for g in catalog_sample() {
            verify_axioms(g.as_ref(), 0).unwrap_or_else(|e| panic!("{}: {e}", g.descriptor()));
        }
    }

    #[test]
    fn lagrange_for_element_orders() {
        for g in catalog_sample() {
            let n = g.order();
            for x in g.elements() {
                assert_eq!(n % element_order(g.as_ref(), x).unwrap(), 0);
            }
        }
    }

    #[test]
    fn element_order_examples() {
        let c12 = cyclic(12).unwrap();
        assert_eq!(element_order(c12.as_ref(), 0).unwrap(), 1);
        assert_eq!(element_order(c12.as_ref(), 2).unwrap(), 6);
        assert!(element_order(c12.as_ref(), 12).is_err());
        let f = frobenius_field(2, 3).unwrap();
        // (0, 1) encodes as 0 * 7 + 1.
        assert_eq!(element_order(f.as_ref(), 1).unwrap(), 7);
    }

    #[test]
    fn named_constructor_examples() {
        let s3 = symmetric(3).unwrap();
        assert_eq!(s3.order(), 6);
        let h = order_histogram(s3.as_ref());
        assert_eq!(h[&3], 2);
        assert_eq!(h[&2], 3);
        assert_eq!(dihedral(4).unwrap().order(), 8);
        assert_eq!(frobenius_field(2, 3).unwrap().order(), 56);
        assert!(symmetric(9).is_err());
        assert!(cyclic(0).is_err());
        assert!(cyclic(MAX_FAMILY_PARAMETER + 1).is_err());
    }

    #[test]
    fn frobenius_2_3_order_histogram() {
        let f = frobenius_field(2, 3).unwrap();
        let h = order_histogram(f.as_ref());
        assert_eq!(h, [(1, 1), (2, 7), (7, 48)].into_iter().collect());
    }

    #[test]
    fn quaternion_histogram() {
        let q = quaternion8();
        let h = order_histogram(q.as_ref());
        assert_eq!(h, [(1, 1), (2, 1), (4, 6)].into_iter().collect());
    }

    #[test]
    fn direct_product_examples() {
        let g = direct_product(vec![cyclic(2).unwrap(), cyclic(3).unwrap()]).unwrap();
        assert_eq!(g.order(), 6);
        // (1, 1) packs to 1 * 3 + 1.
        assert_eq!(element_order(g.as_ref(), 4).unwrap(), 6);
        assert!(is_cyclic(g.as_ref()));
        let single = direct_product(vec![symmetric(3).unwrap()]).unwrap();
        assert_eq!(single.descriptor(), "symmetric(3)");
        let big = direct_product(vec![frobenius_field(2, 3).unwrap(), cyclic(3).unwrap()]).unwrap();
        assert_eq!(big.order(), 168);
        assert!(DirectProductGroup::new(Vec::new()).is_err());
    }

    #[test]
    fn sum_of_orders_in_cyclic_groups_matches_closed_form() {
        for n in 1..=200u64 {
            let g = cyclic(n as usize).unwrap();
            let brute: u64 = g
                .elements()
                .map(|x| element_order(g.as_ref(), x).unwrap() as u64)
                .sum();
            assert_eq!(num_bigint::BigUint::from(brute), crate::numtheory::psi_cyclic(n).unwrap());
        }
    }

    #[test]
    fn generating_sets_generate() {
        for g in catalog_sample() {
            let gens = generating_set(g.as_ref());
            let table = from_cayley_table(
                g.elements()
                    .map(|a| g.elements().map(|b| g.multiply(a, b)).collect())
                    .collect(),
                "copy",
                0,
            );
            if g.order() <= 120 {
                let t = table.unwrap();
                assert_eq!(generating_set(t.as_ref()).is_empty(), g.order() == 1);
            }
            let mut seen = vec![false; g.order()];
            seen[0] = true;
            let mut stack = vec![0];
            while let Some(x) = stack.pop() {
                for &s in &gens {
                    let y = g.multiply(x, s);
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
            assert!(seen.iter().all(|&b| b), "{}", g.descriptor());
        }
    }

    #[test]
    fn large_group_spot_check_is_seeded() {
        let g = frobenius_field(2, 7).unwrap();
        assert_eq!(g.order(), 16256);
        spot_check_associativity(g.as_ref(), 10_000, 7).unwrap();
    }
}
