//! Relative element orders and their sums.
//!
//! `o_H(x)` is the least `m >= 1` with `x^m ∈ H`, `ψ_H(G)` sums it over `G`,
//! and `ψ'_H(G)` divides by the same quantity for the cyclic group of order
//! `|G|` and its subgroup of order `|H|`. That reference value is always
//! taken in closed form, `m · ψ(C_{n/m})`.

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group_core::{check_element, element_order_unchecked, power, Element, FiniteGroup};
use crate::numtheory::{factorize, is_prime, psi_cyclic, Factorization};
use crate::rational::ExactRational;
use crate::subgroup_lattice::Subgroup;

/// Hard limit on the number of elements summed by brute force.
pub const BRUTE_FORCE_LIMIT: usize = 1 << 24;

/// Groups larger than this are summed in parallel partitions.
pub const PARALLEL_THRESHOLD: usize = 20_000;

/// Everything reported for one `(G, H)` pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiReport {
    pub group: String,
    pub subgroup: String,
    pub group_order: usize,
    pub subgroup_order: usize,
    pub psi_h: BigUint,
    /// `m · ψ(C_{n/m})`, i.e. ψ of the order-`m` subgroup of the cyclic group of order `n`.
    pub psi_cyclic_reference: BigUint,
    pub ratio: ExactRational,
    /// `m (q^2 - q + 1)`.
    pub bound_vi: BigUint,
}

impl PsiReport {
    pub fn index(&self) -> usize {
        self.group_order / self.subgroup_order
    }
}

fn check_parent(g: &dyn FiniteGroup, h: &Subgroup) -> Result<()> {
    if h.parent_order() != g.order() {
        return Err(Error::InvalidArgument(format!(
            "subgroup belongs to a group of order {}, not {}",
            h.parent_order(),
            g.order()
        )));
    }
    Ok(())
}

#[inline]
fn relative_order_unchecked(g: &dyn FiniteGroup, h: &Subgroup, x: Element) -> usize {
    let mut y = x;
    let mut m = 1;
    while !h.contains(y) {
        y = g.multiply(y, x);
        m += 1;
    }
    m
}

/// Least `m >= 1` with `x^m ∈ H`, found by walking `x, x^2, ...`.
pub fn relative_order(g: &dyn FiniteGroup, h: &Subgroup, x: Element) -> Result<usize> {
    check_parent(g, h)?;
    check_element(g, x)?;
    Ok(relative_order_unchecked(g, h, x))
}

/// `o(x) / |<x> ∩ H|`, computed from the full cyclic subgroup of `x`.
pub fn relative_order_via_intersection(g: &dyn FiniteGroup, h: &Subgroup, x: Element) -> Result<usize> {
    check_parent(g, h)?;
    check_element(g, x)?;
    let cyc = crate::group_core::cyclic_closure(g, x);
    let meet = cyc.iter().filter(|&&y| h.contains(y)).count();
    Ok(cyc.len() / meet)
}

fn sum_range(g: &dyn FiniteGroup, h: &Subgroup, range: std::ops::Range<Element>) -> u64 {
    range.map(|x| relative_order_unchecked(g, h, x) as u64).sum()
}

/// ψ_H(G) by enumeration of `G`.
pub fn psi_relative(g: &dyn FiniteGroup, h: &Subgroup) -> Result<BigUint> {
    let n = g.order();
    let parts = if n > PARALLEL_THRESHOLD {
        rayon::current_num_threads() * 4
    } else {
        1
    };
    psi_relative_partitioned(g, h, parts)
}

/// ψ_H(G) summed over `parts` disjoint contiguous ranges of encodings. The
/// result does not depend on `parts`.
pub fn psi_relative_partitioned(g: &dyn FiniteGroup, h: &Subgroup, parts: usize) -> Result<BigUint> {
    check_parent(g, h)?;
    let n = g.order();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::BudgetExceeded {
            what: "brute-force sum (use the closed form instead)",
            limit: BRUTE_FORCE_LIMIT,
            actual: n,
        });
    }
    let parts = parts.clamp(1, n);
    let total: u64 = if parts == 1 {
        sum_range(g, h, 0..n)
    } else {
        let chunk = n.div_ceil(parts);
        (0..parts)
            .into_par_iter()
            .map(|i| sum_range(g, h, (i * chunk).min(n)..((i + 1) * chunk).min(n)))
            .sum()
    };
    Ok(BigUint::from(total))
}

/// ψ(G), the sum of element orders.
pub fn psi(g: &dyn FiniteGroup) -> Result<BigUint> {
    psi_relative(g, &Subgroup::trivial(g))
}

/// Element orders summed by repeated multiplication, independent of any
/// subgroup machinery.
pub fn psi_by_element_orders(g: &dyn FiniteGroup) -> BigUint {
    let total: u64 = g.elements().map(|x| element_order_unchecked(g, x) as u64).sum();
    BigUint::from(total)
}

/// ψ(G) with each `o(x)` found as the least divisor `d` of `|G|` with
/// `x^d = 1`, stripping one prime at a time. Costs `O(log² n)` per element
/// instead of `O(o(x))`, so cyclic groups up to the brute-force limit stay
/// cheap. Parallel above [`PARALLEL_THRESHOLD`].
pub fn psi_by_divisor_orders(g: &dyn FiniteGroup) -> Result<BigUint> {
    let n = g.order();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::BudgetExceeded {
            what: "brute-force sum (use the closed form instead)",
            limit: BRUTE_FORCE_LIMIT,
            actual: n,
        });
    }
    let primes: Vec<u64> = factorize(n as u64)?.primes().collect();
    let e = g.identity();
    let order_of = |x: Element| {
        let mut m = n as u64;
        for &p in &primes {
            while m % p == 0 && power(g, x, m / p) == e {
                m /= p;
            }
        }
        m
    };
    let total: u64 = if n > PARALLEL_THRESHOLD {
        g.elements().into_par_iter().map(order_of).sum()
    } else {
        g.elements().map(order_of).sum()
    };
    Ok(BigUint::from(total))
}

/// ψ of the order-`m` subgroup of `C_n`: `m · ψ(C_{n/m})`.
pub fn cyclic_reference(n: u64, m: u64) -> Result<BigUint> {
    if m == 0 || n % m != 0 {
        return Err(Error::InvalidArgument(format!("{m} does not divide {n}")));
    }
    Ok(BigUint::from(m) * psi_cyclic(n / m)?)
}

/// ψ'_H(G) = ψ_H(G) / (m · ψ(C_{n/m})).
pub fn psi_ratio(g: &dyn FiniteGroup, h: &Subgroup) -> Result<ExactRational> {
    let num = psi_relative(g, h)?;
    let den = cyclic_reference(g.order() as u64, h.order() as u64)?;
    ExactRational::from_biguints(&num, &den)
}

pub fn psi_report(g: &dyn FiniteGroup, h: &Subgroup) -> Result<PsiReport> {
    let psi_h = psi_relative(g, h)?;
    let (n, m) = (g.order(), h.order());
    let reference = cyclic_reference(n as u64, m as u64)?;
    let ratio = ExactRational::from_biguints(&psi_h, &reference)?;
    Ok(PsiReport {
        group: g.descriptor(),
        subgroup: h.describe(),
        group_order: n,
        subgroup_order: m,
        psi_h,
        psi_cyclic_reference: reference,
        ratio,
        bound_vi: psi_upper_bound_vi(m as u64, (n / m) as u64)?,
    })
}

/// `(p^r - 1)(ψ(C_{p^r - 1}) + p)`: ψ of the complement's relative orders in
/// the affine group over GF(p^r).
pub fn psi_relative_frobenius_formula(p: u64, r: u32) -> Result<BigUint> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    if r < 2 {
        return Err(Error::InvalidArgument(format!("r must be at least 2, got {r}")));
    }
    let q = p
        .checked_pow(r)
        .filter(|&q| q <= 1 << 63)
        .ok_or_else(|| Error::InvalidArgument(format!("{p}^{r} exceeds 2^63")))?;
    Ok(BigUint::from(q - 1) * (psi_cyclic(q - 1)? + p))
}

/// `m (q^2 - q + 1)`.
pub fn psi_upper_bound_vi(m: u64, q: u64) -> Result<BigUint> {
    if m == 0 || q == 0 {
        return Err(Error::InvalidArgument("order and index must be positive".into()));
    }
    let q = BigUint::from(q);
    Ok(BigUint::from(m) * (&q * &q - &q + 1u32))
}

/// Upper bounds on ψ'_H(G) in terms of the primes dividing the index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexBounds {
    /// `∏ (p_i + 1) / p_i`.
    pub product_bound: ExactRational,
    /// `(p_k + 1) / p_1`.
    pub spread_bound: ExactRational,
    /// `(p_k + 1) / p_k`. Reported, not asserted.
    pub stated_bound: ExactRational,
    /// `(3/2)^k`.
    pub power_bound: ExactRational,
}

pub fn prop23_bounds(index: &Factorization) -> Result<IndexBounds> {
    if index.value() < 2 {
        return Err(Error::InvalidArgument("index bounds need q >= 2".into()));
    }
    let one = ExactRational::one();
    let mut product = one.clone();
    let mut power = one;
    let three_halves = ExactRational::new(3, 2)?;
    for p in index.primes() {
        product = &product * &ExactRational::new(p + 1, p)?;
        power = &power * &three_halves;
    }
    let p1 = index.smallest_prime().unwrap();
    let pk = index.largest_prime().unwrap();
    Ok(IndexBounds {
        product_bound: product,
        spread_bound: ExactRational::new(pk + 1, p1)?,
        stated_bound: ExactRational::new(pk + 1, pk)?,
        power_bound: power,
    })
}

pub fn prop23_bounds_for_index(q: u64) -> Result<IndexBounds> {
    prop23_bounds(&factorize(q)?)
}
