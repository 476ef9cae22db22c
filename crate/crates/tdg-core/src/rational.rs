//! Exact rational arithmetic for utilities and distance factors.
//!
//! Every quantity in the model is a [`Rational`]: an arbitrary-precision
//! fraction kept in canonical form (reduced, denominator positive). Whether a
//! utility is *exactly* zero decides individual rationality, so no floating
//! point is allowed anywhere.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer, Visitor};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

/// An exact rational number in canonical form: `gcd(|num|, den) = 1`, `den >= 1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

/// Error produced when a rational literal cannot be parsed.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RationalParseError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid rational literal `{0}`: expected `-?digits` or `-?digits/digits`")]
    Malformed(String),
    #[error("invalid rational literal `{0}`: denominator is zero")]
    ZeroDenominator(String),
}

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    /// Builds `numerator / denominator`, canonicalizing the sign and reducing.
    /// Fails on a zero denominator.
    pub fn new(numerator: BigInt, denominator: BigInt) -> Option<Self> {
        if denominator.is_zero() {
            None
        } else {
            Some(Rational(BigRational::new(numerator, denominator)))
        }
    }

    pub fn from_integer(value: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(value.into()))
    }

    /// `numerator / denominator` for machine integers; panics if `denominator == 0`.
    pub fn ratio(numerator: i64, denominator: i64) -> Self {
        assert!(denominator != 0, "zero denominator");
        Rational(BigRational::new(BigInt::from(numerator), BigInt::from(denominator)))
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigInt {
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

    /// Multiplicative inverse; `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }

    /// `self` raised to a non-negative integer power.
    pub fn pow(&self, exponent: u32) -> Self {
        let mut result = Rational::one();
        let mut base = self.clone();
        let mut e = exponent;
        while e > 0 {
            if e & 1 == 1 {
                result *= &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
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
        write!(f, "{self}")
    }
}

fn all_digits(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

impl FromStr for Rational {
    type Err = RationalParseError;

    /// Accepts `-?digits` and `-?digits/digits`. Non-canonical fractions such
    /// as `4/2` are accepted and reduced; a zero denominator is rejected.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() {
            return Err(RationalParseError::Empty);
        }
        let (num_part, den_part) = match s.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (s, None),
        };
        let unsigned = num_part.strip_prefix('-').unwrap_or(num_part);
        if !all_digits(unsigned) {
            return Err(RationalParseError::Malformed(s.to_string()));
        }
        let numerator: BigInt = num_part.parse().map_err(|_| RationalParseError::Malformed(s.to_string()))?;
        let denominator: BigInt = match den_part {
            None => BigInt::one(),
            Some(d) => {
                if !all_digits(d) {
                    return Err(RationalParseError::Malformed(s.to_string()));
                }
                d.parse().map_err(|_| RationalParseError::Malformed(s.to_string()))?
            }
        };
        Rational::new(numerator, denominator).ok_or_else(|| RationalParseError::ZeroDenominator(s.to_string()))
    }
}

impl From<i64> for Rational {
    fn from(value: i64) -> Self {
        Rational::from_integer(value)
    }
}

impl From<u64> for Rational {
    fn from(value: u64) -> Self {
        Rational::from_integer(value)
    }
}

impl From<BigInt> for Rational {
    fn from(value: BigInt) -> Self {
        Rational::from_integer(value)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((self.0).$method(rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((self.0).$method(&rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
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

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl AddAssign for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        self.0 += rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl std::ops::MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 *= &rhs.0;
    }
}

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

/// Rationals serialize as bare JSON integers when they are integral and fit
/// in an `i64`, and as canonical `"p/q"` strings otherwise. Floating-point
/// literals are rejected on input so exactness can never silently erode.
impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if self.is_integer() {
            if let Ok(small) = i64::try_from(self.numerator()) {
                return serializer.serialize_i64(small);
            }
        }
        serializer.serialize_str(&self.to_string())
    }
}

struct RationalVisitor;

impl Visitor<'_> for RationalVisitor {
    type Value = Rational;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("an integer or a rational string like \"3/4\"")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rational, E> {
        Ok(Rational::from_integer(v))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rational, E> {
        Ok(Rational::from_integer(v))
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> Result<Rational, E> {
        Err(E::custom(format!(
            "floating-point literal {v} is not allowed; write an exact rational string instead"
        )))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Rational, E> {
        v.parse().map_err(|e| E::custom(e))
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Rational, D::Error> {
        deserializer.deserialize_any(RationalVisitor)
    }
}

/// Shorthand used pervasively in tests: `rat("3/4")`, `rat("-2")`.
pub fn rat(s: &str) -> Rational {
    s.parse().expect("valid rational literal")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let r = rat("4/2");
        assert_eq!(r, Rational::from_integer(2));
        assert_eq!(r.to_string(), "2");
        let r = Rational::new(BigInt::from(3), BigInt::from(-6)).unwrap();
        assert_eq!(r.to_string(), "-1/2");
        assert!(r.denominator().is_positive());
    }

    #[test]
    fn rejects_bad_literals() {
        assert!("1/0".parse::<Rational>().is_err());
        assert!("".parse::<Rational>().is_err());
        assert!("3/".parse::<Rational>().is_err());
        assert!("a/2".parse::<Rational>().is_err());
        assert!("1/-2".parse::<Rational>().is_err());
        assert!("+1".parse::<Rational>().is_err());
        assert!("1.5".parse::<Rational>().is_err());
        assert!(" 1".parse::<Rational>().is_err());
    }

    #[test]
    fn exact_arithmetic() {
        let a = rat("1/3");
        let b = rat("1/6");
        assert_eq!(&a + &b, rat("1/2"));
        assert_eq!(&a - &b, rat("1/6"));
        assert_eq!(&a * &b, rat("1/18"));
        assert_eq!(&a / &b, rat("2"));
        assert_eq!(-&a, rat("-1/3"));
        assert_eq!(rat("1/2").pow(3), rat("1/8"));
        assert_eq!(rat("2/3").pow(0), rat("1"));
    }

    #[test]
    fn serde_round_trip() {
        for s in ["0", "-7", "1/2", "-355/113"] {
            let r = rat(s);
            let json = serde_json::to_string(&r).unwrap();
            let back: Rational = serde_json::from_str(&json).unwrap();
            assert_eq!(back, r);
        }
        // Huge integers must fall back to string form.
        let big = rat("9903520314283042199192993792"); // 2^93
        let json = serde_json::to_string(&big).unwrap();
        assert!(json.starts_with('"'));
        assert_eq!(serde_json::from_str::<Rational>(&json).unwrap(), big);
        // Bare integers and floats.
        assert_eq!(serde_json::from_str::<Rational>("-3").unwrap(), rat("-3"));
        assert!(serde_json::from_str::<Rational>("0.5").is_err());
    }
}
