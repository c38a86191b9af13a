//! Arithmetic in GF(p^r), represented as polynomials over F_p modulo a monic
//! irreducible polynomial of degree r.
//!
//! Elements are identified with their canonical encoding `Σ c_i p^i`, where
//! `c_i` is the coefficient of `x^i`. Encoding 0 is the additive identity and
//! encoding 1 the multiplicative identity.

use crate::error::{Error, Result};
use crate::numtheory::{factorize, is_prime};

/// Largest field order supported.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

/// A field element, stored as its canonical encoding.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(u32);

impl FieldElement {
    pub(crate) fn from_raw(encoding: u32) -> Self {
        FieldElement(encoding)
    }

    pub fn encoding(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Clone, Debug)]
pub struct FiniteField {
    p: u32,
    r: u32,
    size: u32,
    modulus: Vec<u32>,
    primitive: FieldElement,
}

impl FiniteField {
    /// Builds GF(p^r) with the smallest-encoding irreducible modulus and the
    /// smallest-encoding primitive element.
    pub fn new(p: u32, r: u32) -> Result<Self> {
        if !is_prime(u64::from(p)) {
            return Err(Error::InvalidArgument(format!("characteristic {p} is not prime")));
        }
        if r == 0 {
            return Err(Error::InvalidArgument("field degree must be positive".into()));
        }
        let size = u64::from(p).saturating_pow(r);
        if size > MAX_FIELD_ORDER {
            return Err(Error::BudgetExceeded {
                what: "field order",
                limit: MAX_FIELD_ORDER as usize,
                actual: size as usize,
            });
        }
        let mut field = FiniteField {
            p,
            r,
            size: size as u32,
            modulus: find_irreducible(p, r),
            primitive: FieldElement(1),
        };
        field.primitive = field.find_primitive_element();
        Ok(field)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.r
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    /// Coefficients of the modulus, constant term first; the last entry is 1.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn primitive_element(&self) -> FieldElement {
        self.primitive
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    pub fn element(&self, encoding: u32) -> Result<FieldElement> {
        if encoding >= self.size {
            return Err(Error::InvalidArgument(format!(
                "encoding {encoding} outside GF({})",
                self.size
            )));
        }
        Ok(FieldElement(encoding))
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.size).map(FieldElement)
    }

    pub fn coefficients(&self, a: FieldElement) -> Vec<u32> {
        let mut v = a.0;
        (0..self.r)
            .map(|_| {
                let c = v % self.p;
                v /= self.p;
                c
            })
            .collect()
    }

    pub fn from_coefficients(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() > self.r as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::InvalidArgument(format!(
                "coefficient vector {coeffs:?} does not describe an element of GF({})",
                self.size
            )));
        }
        Ok(FieldElement(encode(coeffs, self.p)))
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0;
        let mut place = 1;
        while x > 0 || y > 0 {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        FieldElement(out)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.p == 2 {
            return a;
        }
        let mut x = a.0;
        let mut out = 0;
        let mut place = 1;
        while x > 0 {
            out += ((self.p - x % self.p) % self.p) * place;
            x /= self.p;
            place *= self.p;
        }
        FieldElement(out)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement(0);
        }
        let p = u64::from(self.p);
        let x = self.coefficients(a);
        let y = self.coefficients(b);
        let mut prod = vec![0u64; 2 * self.r as usize];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + u64::from(xi) * u64::from(yj)) % p;
            }
        }
        let modulus: Vec<u64> = self.modulus.iter().map(|&c| u64::from(c)).collect();
        let reduced = poly_rem(prod, &modulus, p);
        let coeffs: Vec<u32> = reduced.iter().map(|&c| c as u32).collect();
        FieldElement(encode(&coeffs, self.p))
    }

    pub fn pow(&self, a: FieldElement, mut exp: u64) -> FieldElement {
        let mut base = a;
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, u64::from(self.size) - 2))
    }

    /// Multiplicative order of a nonzero element; `None` for zero.
    pub fn multiplicative_order(&self, a: FieldElement) -> Option<u64> {
        if a.is_zero() {
            return None;
        }
        let group_order = u64::from(self.size) - 1;
        let mut order = group_order;
        for &(l, e) in factorize(group_order).ok()?.factors() {
            for _ in 0..e {
                if self.pow(a, order / l) == self.one() {
                    order /= l;
                } else {
                    break;
                }
            }
        }
        Some(order)
    }

    fn find_primitive_element(&self) -> FieldElement {
        let target = u64::from(self.size) - 1;
        (1..self.size)
            .map(FieldElement)
            .find(|&a| self.multiplicative_order(a) == Some(target))
            .expect("the multiplicative group of a finite field is cyclic")
    }
}

fn encode(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Canonical encoding of a polynomial: its coefficients read as a base-p integer.
pub fn polynomial_encoding(coeffs: &[u32], p: u32) -> u64 {
    coeffs
        .iter()
        .rev()
        .fold(0u64, |acc, &c| acc * u64::from(p) + u64::from(c))
}

/// The monic irreducible polynomial of degree `r` over F_p with the smallest
/// canonical encoding, as coefficients with the constant term first.
pub fn find_irreducible(p: u32, r: u32) -> Vec<u32> {
    assert!(r >= 1, "degree must be positive");
    let pp = u64::from(p);
    let count = pp.pow(r);
    for low in 0..count {
        let mut coeffs: Vec<u64> = Vec::with_capacity(r as usize + 1);
        let mut v = low;
        for _ in 0..r {
            coeffs.push(v % pp);
            v /= pp;
        }
        coeffs.push(1);
        if is_irreducible(&coeffs, pp) {
            return coeffs.into_iter().map(|c| c as u32).collect();
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over every prime field")
}

/// Tests a monic polynomial for irreducibility over F_p via
/// `gcd(f, x^(p^i) - x) = 1` for all `1 <= i <= deg(f)/2`.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let f = trim(f.to_vec());
    let deg = f.len().saturating_sub(1);
    if deg == 0 {
        return false;
    }
    if deg == 1 {
        return true;
    }
    let x = vec![0, 1];
    let mut h = x.clone();
    for _ in 1..=deg / 2 {
        h = poly_powmod(&h, p, &f, p);
        let diff = poly_sub(&h, &x, p);
        let g = poly_gcd(f.clone(), diff, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut base = a % p;
    let mut exp = p - 2;
    let mut acc = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

fn poly_rem(a: Vec<u64>, m: &[u64], p: u64) -> Vec<u64> {
    let mut a = trim(a);
    let m = trim(m.to_vec());
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    while a.len() > dm {
        let da = a.len() - 1;
        let factor = a[da] * lead_inv % p;
        if factor != 0 {
            for (i, &mc) in m.iter().enumerate() {
                let idx = da - dm + i;
                a[idx] = (a[idx] + p - factor * mc % p) % p;
            }
        }
        a.pop();
        a = trim(a);
    }
    a
}

fn poly_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    poly_rem(prod, m, p)
}

fn poly_powmod(base: &[u64], mut exp: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = poly_rem(base.to_vec(), m, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = poly_mulmod(&acc, &b, m, p);
        }
        b = poly_mulmod(&b, &b, m, p);
        exp >>= 1;
    }
    acc
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let len = a.len().max(b.len());
    let out = (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

fn poly_gcd(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    a = trim(a);
    b = trim(b);
    while !b.is_empty() {
        let r = poly_rem(a, &b, p);
        a = b;
        b = r;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Exhaustive oracle: f is irreducible iff no monic polynomial of degree
    /// 1..=deg/2 divides it.
    fn irreducible_by_trial_division(f: &[u64], p: u64) -> bool {
        let deg = f.len() - 1;
        for d in 1..=deg / 2 {
            for low in 0..p.pow(d as u32) {
                let mut g = Vec::new();
                let mut v = low;
                for _ in 0..d {
                    g.push(v % p);
                    v /= p;
                }
                g.push(1);
                if poly_rem(f.to_vec(), &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn smallest_irreducibles() {
        assert_eq!(find_irreducible(2, 3), vec![1, 1, 0, 1]);
        assert_eq!(polynomial_encoding(&find_irreducible(2, 3), 2), 11);
        assert_eq!(find_irreducible(2, 1), vec![0, 1]);
        assert_eq!(polynomial_encoding(&find_irreducible(2, 1), 2), 2);
        assert_eq!(find_irreducible(3, 2), vec![1, 0, 1]);
        assert_eq!(polynomial_encoding(&find_irreducible(3, 2), 3), 10);
    }

    #[test]
    fn gcd_test_matches_trial_division() {
        for (p, max_deg) in [(2u64, 8u32), (3, 5), (5, 3), (7, 3)] {
            for deg in 1..=max_deg {
                for low in 0..p.pow(deg) {
                    let mut f = Vec::new();
                    let mut v = low;
                    for _ in 0..deg {
                        f.push(v % p);
                        v /= p;
                    }
                    f.push(1);
                    assert_eq!(
                        is_irreducible(&f, p),
                        irreducible_by_trial_division(&f, p),
                        "p={p} f={f:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn gf8_arithmetic() {
        let f = FiniteField::new(2, 3).unwrap();
        let x = f.element(2).unwrap();
        let x2 = f.element(4).unwrap();
        assert_eq!(f.mul(x, x2).encoding(), 3);
        assert_eq!(f.inv(x).unwrap().encoding(), 5);
        assert_eq!(f.inv(f.zero()), Err(Error::DivisionByZero));
        for a in f.elements() {
            assert_eq!(f.mul(a, f.one()), a);
        }
    }

    #[test]
    fn primitive_elements() {
        assert_eq!(FiniteField::new(2, 1).unwrap().primitive_element().encoding(), 1);
        let gf8 = FiniteField::new(2, 3).unwrap();
        assert_eq!(gf8.primitive_element().encoding(), 2);
        assert_eq!(gf8.multiplicative_order(gf8.primitive_element()), Some(7));
        assert_eq!(FiniteField::new(5, 1).unwrap().primitive_element().encoding(), 2);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(FiniteField::new(4, 2).is_err());
        assert!(FiniteField::new(2, 0).is_err());
        assert!(FiniteField::new(2, 21).is_err());
    }

    #[test]
    fn multiplicative_group_is_cyclic() {
        for (p, r) in [(2, 1), (2, 4), (2, 7), (3, 3), (5, 2), (7, 2), (2, 10), (13, 2)] {
            let f = FiniteField::new(p, r).unwrap();
            let q1 = u64::from(f.size()) - 1;
            assert_eq!(f.multiplicative_order(f.primitive_element()), Some(q1));
            for a in f.elements().skip(1) {
                let ord = f.multiplicative_order(a).unwrap();
                assert_eq!(q1 % ord, 0);
                assert_eq!(f.pow(a, ord), f.one());
            }
        }
    }

    #[test]
    fn frobenius_fixes_every_element() {
        for (p, r) in [(2, 12), (3, 7), (5, 5), (2, 16)] {
            let f = FiniteField::new(p, r).unwrap();
            let q = u64::from(f.size());
            let step = (f.size() / 4096).max(1) as usize;
            for a in f.elements().step_by(step) {
                assert_eq!(f.pow(a, q), a);
            }
        }
    }

    #[test]
    fn inverses_and_coefficients() {
        let f = FiniteField::new(3, 3).unwrap();
        for a in f.elements().skip(1) {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
            assert_eq!(f.from_coefficients(&f.coefficients(a)).unwrap(), a);
            assert_eq!(f.add(a, f.neg(a)), f.zero());
            assert_eq!(f.sub(a, a), f.zero());
        }
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for (p, r) in [(2, 3), (2, 6), (3, 2), (5, 2), (7, 1)] {
            let f = FiniteField::new(p, r).unwrap();
            let els: Vec<_> = f.elements().collect();
            for &a in &els {
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for &c in &els {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }
}
