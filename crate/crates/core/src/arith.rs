//! Exact rationals and the nonnegative extended reals `[0, ∞]`.
//!
//! Every measure value in the crate is an [`ExtReal`]. Multiplication follows
//! the measure-theoretic convention `0 · ∞ = ∞ · 0 = 0`. There is deliberately
//! no subtraction on `ExtReal`, so `∞ − ∞` can never arise.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("invalid rational literal `{0}`")]
    BadLiteral(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("negative value {0} is not a measure value")]
    Negative(Rational),
}

/// Arbitrary precision rational, always in lowest terms with a positive
/// denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    /// `numer / denom`. Panics on a zero denominator.
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Rational(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_integer(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_big(numer: BigInt, denom: BigInt) -> Result<Self, ArithError> {
        if denom.is_zero() {
            return Err(ArithError::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(numer, denom)))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn midpoint(a: &Rational, b: &Rational) -> Rational {
        Rational((&a.0 + &b.0) / BigRational::from_integer(BigInt::from(2)))
    }

    /// Integer value, if this is an integer that fits in `i64`.
    pub fn to_i64(&self) -> Option<i64> {
        if !self.is_integer() {
            return None;
        }
        i64::try_from(self.0.numer()).ok()
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
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

impl FromStr for Rational {
    type Err = ArithError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ArithError::BadLiteral(s.to_string());
        let t = s.trim();
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let digits = |x: &str| !x.is_empty() && x.bytes().all(|b| b.is_ascii_digit());
        let unsigned = num.strip_prefix('-').unwrap_or(num);
        if !digits(unsigned) || !digits(den) {
            return Err(bad());
        }
        let n: BigInt = num.parse().map_err(|_| bad())?;
        let d: BigInt = den.parse().map_err(|_| bad())?;
        Rational::from_big(n, d)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($trait::$method(&self.0, &rhs.0))
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(self.0, rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($trait::$method(self.0, &rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(&self.0, rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

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

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Repr {
    // Variant order gives `Finite(_) < Infinity`.
    Finite(Rational),
    Infinity,
}

/// A value in `[0, ∞]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExtReal(Repr);

impl ExtReal {
    pub const INFINITY: ExtReal = ExtReal(Repr::Infinity);

    pub fn finite(q: Rational) -> Result<Self, ArithError> {
        if q.is_negative() {
            Err(ArithError::Negative(q))
        } else {
            Ok(ExtReal(Repr::Finite(q)))
        }
    }

    pub fn zero() -> Self {
        ExtReal(Repr::Finite(Rational::zero()))
    }

    pub fn one() -> Self {
        ExtReal(Repr::Finite(Rational::one()))
    }

    /// Finite value from a nonnegative integer count.
    pub fn count(n: usize) -> Self {
        ExtReal(Repr::Finite(Rational::from_integer(n as i64)))
    }

    /// Finite value `numer / denom`; panics if negative.
    pub fn ratio(numer: i64, denom: i64) -> Self {
        ExtReal::finite(Rational::new(numer, denom)).expect("nonnegative ratio")
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self.0, Repr::Infinity)
    }

    pub fn is_zero(&self) -> bool {
        matches!(&self.0, Repr::Finite(q) if q.is_zero())
    }

    pub fn as_finite(&self) -> Option<&Rational> {
        match &self.0 {
            Repr::Finite(q) => Some(q),
            Repr::Infinity => None,
        }
    }
}

/// Exact sum; anything plus `∞` is `∞`.
pub fn ext_add(a: &ExtReal, b: &ExtReal) -> ExtReal {
    match (&a.0, &b.0) {
        (Repr::Finite(x), Repr::Finite(y)) => ExtReal(Repr::Finite(x + y)),
        _ => ExtReal::INFINITY,
    }
}

/// Exact product with `0 · ∞ = 0` in both operand orders.
pub fn ext_mul(a: &ExtReal, b: &ExtReal) -> ExtReal {
    match (&a.0, &b.0) {
        (Repr::Finite(x), Repr::Finite(y)) => ExtReal(Repr::Finite(x * y)),
        (Repr::Finite(x), Repr::Infinity) | (Repr::Infinity, Repr::Finite(x)) => {
            if x.is_zero() {
                ExtReal::zero()
            } else {
                ExtReal::INFINITY
            }
        }
        (Repr::Infinity, Repr::Infinity) => ExtReal::INFINITY,
    }
}

/// Left fold of [`ext_add`]; the empty sum is `0`.
pub fn ext_sum<'a, I: IntoIterator<Item = &'a ExtReal>>(values: I) -> ExtReal {
    values.into_iter().fold(ExtReal::zero(), |acc, v| ext_add(&acc, v))
}

impl Add for ExtReal {
    type Output = ExtReal;
    fn add(self, rhs: ExtReal) -> ExtReal {
        ext_add(&self, &rhs)
    }
}

impl Add<&ExtReal> for &ExtReal {
    type Output = ExtReal;
    fn add(self, rhs: &ExtReal) -> ExtReal {
        ext_add(self, rhs)
    }
}

impl Mul for ExtReal {
    type Output = ExtReal;
    fn mul(self, rhs: ExtReal) -> ExtReal {
        ext_mul(&self, &rhs)
    }
}

impl Mul<&ExtReal> for &ExtReal {
    type Output = ExtReal;
    fn mul(self, rhs: &ExtReal) -> ExtReal {
        ext_mul(self, rhs)
    }
}

impl Sum for ExtReal {
    fn sum<I: Iterator<Item = ExtReal>>(iter: I) -> ExtReal {
        iter.fold(ExtReal::zero(), |acc, v| ext_add(&acc, &v))
    }
}

impl<'a> Sum<&'a ExtReal> for ExtReal {
    fn sum<I: Iterator<Item = &'a ExtReal>>(iter: I) -> ExtReal {
        ext_sum(iter)
    }
}

impl PartialEq<Rational> for ExtReal {
    fn eq(&self, other: &Rational) -> bool {
        self.as_finite() == Some(other)
    }
}

impl PartialOrd<Rational> for ExtReal {
    fn partial_cmp(&self, other: &Rational) -> Option<Ordering> {
        Some(match &self.0 {
            Repr::Finite(q) => q.cmp(other),
            Repr::Infinity => Ordering::Greater,
        })
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Finite(q) => write!(f, "{q}"),
            Repr::Infinity => f.write_str("inf"),
        }
    }
}

impl fmt::Debug for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ExtReal {
    type Err = ArithError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.trim() == "inf" {
            return Ok(ExtReal::INFINITY);
        }
        ExtReal::finite(s.parse()?)
    }
}

impl TryFrom<Rational> for ExtReal {
    type Error = ArithError;
    fn try_from(q: Rational) -> Result<Self, Self::Error> {
        ExtReal::finite(q)
    }
}

impl Serialize for ExtReal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExtReal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn fin(n: i64, d: i64) -> ExtReal {
        ExtReal::ratio(n, d)
    }

    #[test]
    fn rationals_are_normalized() {
        assert_eq!(q(1, 2), q(2, 4));
        assert_eq!(q(3, -6), q(-1, 2));
        assert_eq!(q(-1, 2).denom(), &BigInt::from(2));
        assert_eq!("4/8".parse::<Rational>().unwrap(), q(1, 2));
        assert_eq!("-3".parse::<Rational>().unwrap(), q(-3, 1));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("1.5".parse::<Rational>().is_err());
        assert!("--1".parse::<Rational>().is_err());
    }

    #[test]
    fn add_examples() {
        assert_eq!(ext_add(&fin(1, 2), &fin(1, 3)), fin(5, 6));
        assert_eq!(ext_add(&ExtReal::INFINITY, &fin(0, 1)), ExtReal::INFINITY);
        assert_eq!(ext_add(&fin(0, 1), &fin(1, 1)), fin(1, 1));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(ext_mul(&ExtReal::INFINITY, &fin(0, 1)), fin(0, 1));
        assert_eq!(ext_mul(&fin(0, 1), &ExtReal::INFINITY), fin(0, 1));
        assert_eq!(ext_mul(&ExtReal::INFINITY, &fin(2, 1)), ExtReal::INFINITY);
        assert_eq!(ext_mul(&fin(3, 2), &fin(2, 3)), fin(1, 1));
        assert_eq!(ext_mul(&ExtReal::INFINITY, &ExtReal::INFINITY), ExtReal::INFINITY);
    }

    #[test]
    fn sum_examples() {
        assert_eq!(ext_sum([]), fin(0, 1));
        assert_eq!(ext_sum(&[fin(1, 4), fin(3, 4)]), fin(1, 1));
        assert_eq!(ext_sum(&[fin(1, 1), ExtReal::INFINITY, fin(2, 1)]), ExtReal::INFINITY);
    }

    #[test]
    fn negative_finite_is_rejected() {
        assert!(ExtReal::finite(q(-1, 3)).is_err());
        assert!("-1".parse::<ExtReal>().is_err());
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(fin(7, 2).to_string(), "7/2");
        assert_eq!(fin(4, 2).to_string(), "2");
        assert_eq!(ExtReal::INFINITY.to_string(), "inf");
        assert_eq!("inf".parse::<ExtReal>().unwrap(), ExtReal::INFINITY);
        assert_eq!(serde_json::to_string(&fin(1, 3)).unwrap(), "\"1/3\"");
    }

    #[test]
    fn infinity_dominates_order() {
        assert!(ExtReal::INFINITY > fin(1_000_000, 1));
        assert!(fin(1, 3) < fin(1, 2));
    }

    fn ext() -> impl Strategy<Value = ExtReal> {
        prop_oneof![
            1 => Just(ExtReal::INFINITY),
            1 => Just(ExtReal::zero()),
            4 => (0i64..50, 1i64..12).prop_map(|(n, d)| ExtReal::ratio(n, d)),
        ]
    }

    proptest! {
        #[test]
        fn add_mul_commutative_associative(a in ext(), b in ext(), c in ext()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }

        #[test]
        fn mul_distributes_over_add(a in ext(), b in ext(), c in ext()) {
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn results_never_negative(a in ext(), b in ext()) {
            for v in [&a + &b, &a * &b] {
                if let Some(x) = v.as_finite() {
                    prop_assert!(!x.is_negative());
                }
            }
        }
    }
}
