//! Arbitrary-precision rational scalar.
//!
//! `Rational` wraps [`BigRational`], which keeps every value in lowest terms
//! with a positive denominator. The text form is `"p/q"` or `"p"` with an
//! optional leading minus, and the same string is used for serde.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    /// `numer / denom`; panics on a zero denominator.
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Rational(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_integer(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigints(numer: BigInt, denom: BigInt) -> Result<Self> {
        if denom.is_zero() {
            return Err(Error::Pole("rational with zero denominator".into()));
        }
        Ok(Rational(BigRational::new(numer, denom)))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Multiplicative inverse, or a pole error naming `what`.
    pub fn checked_recip(&self, what: &str) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Pole(what.to_string()));
        }
        Ok(Rational(self.0.recip()))
    }

    /// `self / rhs`, or a pole error naming `what` when `rhs` vanishes.
    pub fn checked_div(&self, rhs: &Rational, what: &str) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::Pole(what.to_string()));
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    /// Integer power; negative exponents invert. `0^k` for `k < 0` panics.
    pub fn pow(&self, exp: i32) -> Self {
        if exp >= 0 {
            Rational(num_traits::pow(self.0.clone(), exp as usize))
        } else {
            assert!(!self.is_zero(), "zero to a negative power");
            Rational(num_traits::pow(self.0.recip(), exp.unsigned_abs() as usize))
        }
    }

    /// Nearest double; `None` when the magnitude is outside the finite range.
    pub fn to_f64(&self) -> Option<f64> {
        self.0.to_f64().filter(|v| v.is_finite())
    }

    /// Float shadow, saturating to ±inf instead of failing.
    pub fn approx(&self) -> f64 {
        self.0.to_f64().unwrap_or(if self.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        })
    }

    pub fn inner(&self) -> &BigRational {
        &self.0
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_digits(s: &str, full: &str) -> Result<BigInt> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse(format!("malformed rational {full:?}")));
    }
    s.parse::<BigInt>()
        .map_err(|_| Error::Parse(format!("malformed rational {full:?}")))
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let s = text.trim();
        let (negative, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let (num, den) = match body.split_once('/') {
            Some((n, d)) => (parse_digits(n, text)?, parse_digits(d, text)?),
            None => (parse_digits(body, text)?, BigInt::one()),
        };
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {text:?}")));
        }
        let num = if negative { -num } else { num };
        Ok(Rational(BigRational::new(num, den)))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $assign_trait:ident, $assign_method:ident) => {
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl<'a> $trait<Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
        impl<'a, 'b> $trait<&'b Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'b Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<i64> for Rational {
            type Output = Rational;
            fn $method(self, rhs: i64) -> Rational {
                self.$method(Rational::from_integer(rhs))
            }
        }
        impl<'a> $trait<i64> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: i64) -> Rational {
                self.$method(Rational::from_integer(rhs))
            }
        }
        impl $trait<Rational> for i64 {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational::from_integer(self).$method(rhs)
            }
        }
        impl<'a> $trait<&'a Rational> for i64 {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational::from_integer(self).$method(rhs)
            }
        }
        impl $assign_trait<Rational> for Rational {
            fn $assign_method(&mut self, rhs: Rational) {
                self.0.$assign_method(rhs.0);
            }
        }
        impl<'a> $assign_trait<&'a Rational> for Rational {
            fn $assign_method(&mut self, rhs: &'a Rational) {
                self.0.$assign_method(&rhs.0);
            }
        }
    };
}

binop!(Add, add, AddAssign, add_assign);
binop!(Sub, sub, SubAssign, sub_assign);
binop!(Mul, mul, MulAssign, mul_assign);
binop!(Div, div, DivAssign, div_assign);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::one(), |acc, x| acc * x)
    }
}

impl<'a> Product<&'a Rational> for Rational {
    fn product<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::one(), |acc, x| acc * x)
    }
}

/// Shorthand for `Rational::new`.
pub fn q(numer: i64, denom: i64) -> Rational {
    Rational::new(numer, denom)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_prints_canonical_form() {
        assert_eq!("6/4".parse::<Rational>().unwrap().to_string(), "3/2");
        assert_eq!("-1/10".parse::<Rational>().unwrap(), q(-1, 10));
        assert_eq!("7".parse::<Rational>().unwrap().to_string(), "7");
        assert_eq!("-0".parse::<Rational>().unwrap().to_string(), "0");
        assert_eq!(q(4, -8).to_string(), "-1/2");
    }

    #[test]
    fn rejects_malformed_text() {
        for bad in ["", "1/0", "1/-2", "--1", "1.5", "a/b", "1/", "/3", "+2", "1/2/3"] {
            assert!(bad.parse::<Rational>().is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn powers_and_inverses() {
        assert_eq!(q(2, 3).pow(3), q(8, 27));
        assert_eq!(q(2, 3).pow(-2), q(9, 4));
        assert_eq!(q(5, 7).pow(0), Rational::one());
        assert!(Rational::zero().checked_recip("x").is_err());
    }

    #[test]
    fn float_shadow_of_huge_and_tiny_values() {
        let tiny = q(1, 3).pow(400);
        assert!(tiny.to_f64().unwrap() > 0.0);
        assert!((q(1, 3).to_f64().unwrap() - 1.0 / 3.0).abs() < 1e-16);
        let big = q(3, 1).pow(800);
        assert!(big.to_f64().is_none());
        assert_eq!(big.approx(), f64::INFINITY);
    }

    #[test]
    fn serde_uses_string_form() {
        let v = q(-22, 7);
        let json = serde_json::to_string(&v).unwrap();
        assert_eq!(json, "\"-22/7\"");
        let back: Rational = serde_json::from_str(&json).unwrap();
        assert_eq!(back, v);
    }
}
