//! Exact rationals for ψ ratios and bounds.

use std::fmt;
use std::ops::{Div, Mul, Sub};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A rational number kept in lowest terms with a positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactRational(BigRational);

impl ExactRational {
    pub fn new(numerator: impl Into<BigInt>, denominator: impl Into<BigInt>) -> Result<Self> {
        let den = denominator.into();
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self(BigRational::new(numerator.into(), den)))
    }

    pub fn from_biguints(numerator: &BigUint, denominator: &BigUint) -> Result<Self> {
        Self::new(BigInt::from(numerator.clone()), BigInt::from(denominator.clone()))
    }

    pub fn integer(value: impl Into<BigInt>) -> Self {
        Self(BigRational::from_integer(value.into()))
    }

    pub fn one() -> Self {
        Self(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Self {
        Self(self.0.abs())
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Decimal rendering with 6 significant digits, for display only.
    pub fn display_approx(&self) -> String {
        let v = self.to_f64();
        if v == 0.0 || !v.is_finite() {
            return format!("{v}");
        }
        let magnitude = v.abs().log10().floor() as i32;
        let decimals = (5 - magnitude).max(0) as usize;
        format!("{v:.decimals$}")
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl From<u64> for ExactRational {
    fn from(v: u64) -> Self {
        Self::integer(v)
    }
}

impl Mul for &ExactRational {
    type Output = ExactRational;
    fn mul(self, rhs: Self) -> ExactRational {
        ExactRational(&self.0 * &rhs.0)
    }
}

impl Sub for &ExactRational {
    type Output = ExactRational;
    fn sub(self, rhs: Self) -> ExactRational {
        ExactRational(&self.0 - &rhs.0)
    }
}

impl Div for &ExactRational {
    type Output = ExactRational;
    fn div(self, rhs: Self) -> ExactRational {
        assert!(!rhs.0.is_zero(), "division by zero rational");
        ExactRational(&self.0 / &rhs.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_on_construction() {
        let r = ExactRational::new(2799, 2049).unwrap();
        assert_eq!(r.to_string(), "933/683");
        let neg = ExactRational::new(3, -6).unwrap();
        assert_eq!(neg.numer(), &BigInt::from(-1));
        assert_eq!(neg.denom(), &BigInt::from(2));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(ExactRational::new(1, 0), Err(Error::DivisionByZero));
    }

    #[test]
    fn integers_display_without_denominator() {
        assert_eq!(ExactRational::new(31, 31).unwrap().to_string(), "1");
        assert_eq!(ExactRational::new(45, 43).unwrap().display_approx(), "1.04651");
    }

    #[test]
    fn ordering_is_exact() {
        let a = ExactRational::new(45, 43).unwrap();
        let b = ExactRational::new(3, 2).unwrap();
        assert!(a < b);
        assert!(a > ExactRational::one());
    }
}
