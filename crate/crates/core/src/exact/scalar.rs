use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::ScalarParseError;

/// Exact rational scalar. Always stored in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Formats as `p/q`, or just `p` when the denominator is 1.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn parse_rational(s: &str) -> Result<Rational, ScalarParseError> {
    let t = s.trim().replace('−', "-");
    let bad = || ScalarParseError::Rational(s.to_string());
    match t.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(BigInt::from_str(&t).map_err(|_| bad())?)),
    }
}

/// An element of ½ℤ, stored doubled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct HalfInt {
    doubled: i64,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { doubled: 0 };
    pub const ONE: HalfInt = HalfInt { doubled: 2 };
    pub const HALF: HalfInt = HalfInt { doubled: 1 };

    pub const fn from_doubled(doubled: i64) -> Self {
        HalfInt { doubled }
    }

    pub const fn from_int(n: i64) -> Self {
        HalfInt { doubled: 2 * n }
    }

    pub const fn doubled(self) -> i64 {
        self.doubled
    }

    pub const fn is_integer(self) -> bool {
        self.doubled % 2 == 0
    }

    pub const fn is_zero(self) -> bool {
        self.doubled == 0
    }

    /// The integer value, if integral.
    pub fn to_int(self) -> Option<i64> {
        self.is_integer().then_some(self.doubled / 2)
    }

    /// A nonnegative integer value, if this is one.
    pub fn to_natural(self) -> Option<u64> {
        self.to_int().and_then(|n| u64::try_from(n).ok())
    }

    pub fn to_rational(self) -> Rational {
        ratio(self.doubled, 2)
    }

    /// Smallest integer ≥ self.
    pub fn ceil(self) -> i64 {
        self.doubled.div_euclid(2) + i64::from(self.doubled.rem_euclid(2) != 0)
    }

    /// Largest integer ≤ self.
    pub fn floor(self) -> i64 {
        self.doubled.div_euclid(2)
    }

    /// `(-1)^(2m)`: +1 on ℤ, −1 on ℤ+½.
    pub fn parity_sign(self) -> i64 {
        if self.is_integer() {
            1
        } else {
            -1
        }
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt::from_doubled(self.doubled.checked_add(rhs.doubled).expect("HalfInt overflow"))
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt::from_doubled(self.doubled.checked_sub(rhs.doubled).expect("HalfInt overflow"))
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt::from_doubled(-self.doubled)
    }
}

impl From<i64> for HalfInt {
    fn from(n: i64) -> Self {
        HalfInt::from_int(n)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.doubled / 2)
        } else {
            write!(f, "{}/2", self.doubled)
        }
    }
}

impl FromStr for HalfInt {
    type Err = ScalarParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().replace('−', "-");
        let bad = || ScalarParseError::HalfInt(s.to_string());
        match t.split_once('/') {
            Some((k, two)) => {
                if two.trim() != "2" {
                    return Err(bad());
                }
                let k: i64 = k.trim().parse().map_err(|_| bad())?;
                if k % 2 == 0 {
                    // "k/2" is reserved for odd k
                    return Err(bad());
                }
                Ok(HalfInt::from_doubled(k))
            }
            None => {
                let n: i64 = t.parse().map_err(|_| bad())?;
                Ok(HalfInt::from_int(n))
            }
        }
    }
}

impl Serialize for HalfInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for HalfInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Binomial coefficient with a half-integer upper argument: n(n−1)⋯(n−i+1)/i!.
pub fn gen_binomial(n: HalfInt, i: u32) -> Rational {
    let mut acc = Rational::one();
    let top = n.to_rational();
    for k in 0..i {
        acc *= &top - rat(i64::from(k));
        acc /= rat(i64::from(k) + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_examples() {
        assert_eq!(gen_binomial(HalfInt::HALF, 2), ratio(-1, 8));
        assert_eq!(gen_binomial(HalfInt::from_int(3), 2), rat(3));
        assert_eq!(gen_binomial(HalfInt::from_int(-1), 3), rat(-1));
        assert_eq!(gen_binomial(HalfInt::from_doubled(-7), 0), rat(1));
    }

    #[test]
    fn halfint_text() {
        assert_eq!(HalfInt::from_doubled(-3).to_string(), "-3/2");
        assert_eq!(HalfInt::from_int(4).to_string(), "4");
        assert_eq!("5/2".parse::<HalfInt>().unwrap(), HalfInt::from_doubled(5));
        assert_eq!("−1".parse::<HalfInt>().unwrap(), HalfInt::from_int(-1));
        assert!("4/2".parse::<HalfInt>().is_err());
        assert!("1/3".parse::<HalfInt>().is_err());
    }

    #[test]
    fn ceil_floor() {
        assert_eq!(HalfInt::from_doubled(-3).ceil(), -1);
        assert_eq!(HalfInt::from_doubled(-3).floor(), -2);
        assert_eq!(HalfInt::from_doubled(3).ceil(), 2);
        assert_eq!(HalfInt::from_int(-2).ceil(), -2);
    }

    proptest::proptest! {
        #[test]
        fn pascal_rule(doubled in -40i64..40, i in 1u32..=12) {
            let n = HalfInt::from_doubled(doubled);
            let lhs = gen_binomial(n, i);
            let rhs = gen_binomial(n - HalfInt::ONE, i) + gen_binomial(n - HalfInt::ONE, i - 1);
            proptest::prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn rational_text() {
        assert_eq!(format_rational(&ratio(6, -4)), "-3/2");
        assert_eq!(format_rational(&rat(5)), "5");
        assert_eq!(parse_rational("−3/2").unwrap(), ratio(-3, 2));
        assert!(parse_rational("1/0").is_err());
    }
}
