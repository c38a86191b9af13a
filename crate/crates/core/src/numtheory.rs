//! Factorization, Mersenne exponents, and the ψ formulas that only depend on
//! the order of a group.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::ExactRational;

/// Prime factorization `n = p_1^a_1 ... p_k^a_k` with strictly increasing primes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Factorization {
    value: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn smallest_prime(&self) -> Option<u64> {
        self.factors.first().map(|&(p, _)| p)
    }

    pub fn largest_prime(&self) -> Option<u64> {
        self.factors.last().map(|&(p, _)| p)
    }

    pub fn is_prime(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }

    /// The largest power of `p` dividing the value.
    pub fn prime_part(&self, p: u64) -> u64 {
        self.factors
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(1, |&(q, a)| q.pow(a))
    }

    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &(p, a) in &self.factors {
            let current = divs.clone();
            let mut pk = 1u64;
            for _ in 0..a {
                pk *= p;
                divs.extend(current.iter().map(|d| d * pk));
            }
        }
        divs.sort_unstable();
        divs
    }
}

/// Trial-division factorization. Deterministic for every `n < 2^64`.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::InvalidArgument("cannot factorize 0".into()));
    }
    let mut rest = n;
    let mut factors = Vec::new();
    let mut push = |p: u64, rest: &mut u64| {
        let mut a = 0;
        while *rest % p == 0 {
            *rest /= p;
            a += 1;
        }
        if a > 0 {
            factors.push((p, a));
        }
    };
    push(2, &mut rest);
    let mut d = 3u64;
    while d.checked_mul(d).is_some_and(|sq| sq <= rest) {
        push(d, &mut rest);
        d += 2;
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    Ok(Factorization { value: n, factors })
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n).map(|f| f.is_prime()).unwrap_or(false)
}

/// True iff `2^r - 1` is prime. Uses the Lucas-Lehmer test for prime `r >= 3`.
pub fn is_mersenne_exponent(r: u32) -> Result<bool> {
    if r < 2 {
        return Err(Error::InvalidArgument(format!(
            "Mersenne exponent must be at least 2, got {r}"
        )));
    }
    if r == 2 {
        return Ok(true);
    }
    // 2^r - 1 is composite whenever r is.
    if !is_prime(u64::from(r)) {
        return Ok(false);
    }
    let modulus = (BigUint::one() << r) - 1u32;
    let two = BigUint::from(2u32);
    let mut s = BigUint::from(4u32);
    for _ in 0..r - 2 {
        s = (&s * &s + &modulus - &two) % &modulus;
    }
    Ok(s.is_zero())
}

/// ψ(C_n) = ∏ (p^(2a+1) + 1) / (p + 1).
pub fn psi_cyclic(n: u64) -> Result<BigUint> {
    let f = factorize(n)?;
    Ok(psi_cyclic_of(&f))
}

pub fn psi_cyclic_of(f: &Factorization) -> BigUint {
    f.factors
        .iter()
        .map(|&(p, a)| {
            let p = BigUint::from(p);
            let top = p.pow(2 * a + 1) + 1u32;
            let bottom = &p + 1u32;
            debug_assert!((&top % &bottom).is_zero());
            top / bottom
        })
        .product()
}

/// The lower bound `p_1 n^2 / (p_k + 1)` on ψ(C_n).
pub fn psi_cyclic_lower_bound(n: u64) -> Result<ExactRational> {
    if n < 2 {
        return Err(Error::InvalidArgument(
            "lower bound needs n >= 2 (at least one prime factor)".into(),
        ));
    }
    let f = factorize(n)?;
    let p1 = f.smallest_prime().unwrap();
    let pk = f.largest_prime().unwrap();
    let n = BigInt::from(n);
    ExactRational::new(BigInt::from(p1) * &n * &n, BigInt::from(pk) + 1)
}

/// `(3·4^r - 9·2^r + 15) / (2^(2r+1) + 1)`: the ratio ψ' of the complement in
/// the Frobenius group over GF(2^r).
pub fn frobenius_ratio_closed_form(r: u32) -> Result<ExactRational> {
    if r < 3 {
        return Err(Error::InvalidArgument(format!("r must be at least 3, got {r}")));
    }
    let two_r = BigInt::one() << r;
    let four_r = &two_r * &two_r;
    let num = BigInt::from(3) * &four_r - BigInt::from(9) * &two_r + 15;
    let den = (BigInt::one() << (2 * r + 1)) + 1;
    ExactRational::new(num, den)
}

/// f(q) = (q^2 - q + 1) / ψ(C_q).
pub fn f_ratio(q: u64) -> Result<ExactRational> {
    if q < 2 {
        return Err(Error::InvalidArgument(format!("f(q) needs q >= 2, got {q}")));
    }
    let qb = BigUint::from(q);
    let num = &qb * &qb - &qb + 1u32;
    ExactRational::from_biguints(&num, &psi_cyclic(q)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn factorize_examples() {
        assert!(factorize(1).unwrap().factors().is_empty());
        assert_eq!(factorize(56).unwrap().factors(), &[(2, 3), (7, 1)]);
        assert_eq!(factorize(12).unwrap().factors(), &[(2, 2), (3, 1)]);
        assert!(factorize(0).is_err());
        let big_prime = 999_999_999_989u64;
        assert_eq!(factorize(big_prime).unwrap().factors(), &[(big_prime, 1)]);
        assert_eq!(factorize(1 << 63).unwrap().factors(), &[(2, 63)]);
    }

    #[test]
    fn divisors_sorted() {
        assert_eq!(factorize(12).unwrap().divisors(), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(factorize(1).unwrap().divisors(), vec![1]);
    }

    #[test]
    fn mersenne_examples() {
        assert!(is_mersenne_exponent(2).unwrap());
        assert!(is_mersenne_exponent(3).unwrap());
        assert!(!is_mersenne_exponent(4).unwrap());
        assert!(!is_mersenne_exponent(11).unwrap());
        assert!(is_mersenne_exponent(13).unwrap());
        assert!(is_mersenne_exponent(127).unwrap());
        assert!(is_mersenne_exponent(1).is_err());
    }

    #[test]
    fn psi_cyclic_examples() {
        assert_eq!(psi_cyclic(1).unwrap(), big(1));
        assert_eq!(psi_cyclic(7).unwrap(), big(43));
        assert_eq!(psi_cyclic(12).unwrap(), big(77));
        assert_eq!(psi_cyclic(8).unwrap(), big(43));
    }

    #[test]
    fn lower_bound_examples() {
        assert_eq!(psi_cyclic_lower_bound(12).unwrap(), ExactRational::integer(72));
        assert_eq!(psi_cyclic_lower_bound(2).unwrap(), ExactRational::new(8, 3).unwrap());
        assert_eq!(psi_cyclic_lower_bound(7).unwrap(), ExactRational::new(343, 8).unwrap());
        assert!(psi_cyclic_lower_bound(1).is_err());
    }

    #[test]
    fn frobenius_ratio_examples() {
        assert_eq!(frobenius_ratio_closed_form(3).unwrap(), ExactRational::new(45, 43).unwrap());
        assert_eq!(frobenius_ratio_closed_form(5).unwrap(), ExactRational::new(933, 683).unwrap());
        let r13 = frobenius_ratio_closed_form(13).unwrap();
        assert!(r13 > ExactRational::one() && r13 < ExactRational::new(3, 2).unwrap());
        assert!(frobenius_ratio_closed_form(2).is_err());
    }

    #[test]
    fn f_ratio_examples() {
        assert_eq!(f_ratio(3).unwrap(), ExactRational::one());
        assert_eq!(f_ratio(6).unwrap(), ExactRational::new(31, 21).unwrap());
        assert!(f_ratio(1).is_err());
    }
}
