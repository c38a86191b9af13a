//! Solvability and nilpotency.

use crate::error::{Error, Result};
use crate::group_core::{element_order_unchecked, Element, FiniteGroup};
use crate::numtheory::factorize;
use crate::subgroup_lattice::{conjugate, generate, join_element, Subgroup};

/// Largest group order accepted by the classification queries.
pub const CLASSIFY_LIMIT: usize = 1 << 16;

fn check_budget(g: &dyn FiniteGroup) -> Result<()> {
    if g.order() > CLASSIFY_LIMIT {
        return Err(Error::BudgetExceeded {
            what: "classification",
            limit: CLASSIFY_LIMIT,
            actual: g.order(),
        });
    }
    Ok(())
}

fn commutator(g: &dyn FiniteGroup, a: Element, b: Element) -> Element {
    let ab = g.multiply(a, b);
    g.multiply(g.multiply(ab, g.inverse(a)), g.inverse(b))
}

/// `[H, H]`: the normal closure in `H` of the commutators of generators of `H`.
pub fn derived_subgroup_of(g: &dyn FiniteGroup, h: &Subgroup) -> Subgroup {
    let gens = h.generators();
    let comms: Vec<Element> = gens
        .iter()
        .flat_map(|&a| gens.iter().map(move |&b| (a, b)))
        .map(|(a, b)| commutator(g, a, b))
        .filter(|&c| c != g.identity())
        .collect();
    let mut d = generate(g, &comms).expect("commutators are elements of the group");
    loop {
        let escaped = gens.iter().find_map(|&s| {
            d.generators()
                .iter()
                .map(|&x| conjugate(g, s, x))
                .find(|&c| !d.contains(c))
        });
        match escaped {
            Some(c) => d = join_element(g, &d, c),
            None => return d,
        }
    }
}

/// The commutator subgroup `G'`.
pub fn derived_subgroup(g: &dyn FiniteGroup) -> Result<Subgroup> {
    check_budget(g)?;
    Ok(derived_subgroup_of(g, &Subgroup::whole(g)))
}

/// `G = G^(0) > G^(1) > ...` until the series stabilizes.
pub fn derived_series(g: &dyn FiniteGroup) -> Result<Vec<Subgroup>> {
    check_budget(g)?;
    let cap = (usize::BITS - g.order().leading_zeros()) as usize + 1;
    let mut series = vec![Subgroup::whole(g)];
    loop {
        let last = series.last().unwrap();
        if last.is_trivial() {
            return Ok(series);
        }
        let next = derived_subgroup_of(g, last);
        if next == *last {
            return Ok(series);
        }
        series.push(next);
        if series.len() > cap {
            panic!("derived series of {} did not stabilize", g.descriptor());
        }
    }
}

pub fn is_solvable(g: &dyn FiniteGroup) -> Result<bool> {
    Ok(derived_series(g)?.last().unwrap().is_trivial())
}

/// A finite group is nilpotent iff each Sylow subgroup is normal, iff for
/// each prime `p` the elements of `p`-power order number exactly `|G|_p`.
pub fn is_nilpotent(g: &dyn FiniteGroup) -> Result<bool> {
    check_budget(g)?;
    let f = factorize(g.order() as u64)?;
    let orders: Vec<u64> = g
        .elements()
        .map(|x| element_order_unchecked(g, x) as u64)
        .collect();
    for p in f.primes() {
        let is_p_power = |mut o: u64| {
            while o % p == 0 {
                o /= p;
            }
            o == 1
        };
        let count = orders.iter().filter(|&&o| is_p_power(o)).count() as u64;
        if count != f.prime_part(p) {
            return Ok(false);
        }
    }
    Ok(true)
}
