use std::fmt;
use std::ops::{Add, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ZhuError;
use crate::scalar::{rat, Rational};

/// A conformal weight in `(1/2)Z`, stored as a count of half-units.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Weight(i64);

impl Weight {
    pub const ZERO: Weight = Weight(0);

    pub fn from_half_units(h: i64) -> Self {
        Weight(h)
    }

    pub fn from_int(n: i64) -> Self {
        Weight(2 * n)
    }

    pub fn half_units(self) -> i64 {
        self.0
    }

    pub fn is_integral(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn to_rational(self) -> Rational {
        rat(self.0, 2)
    }

    /// Largest integer not exceeding the weight.
    pub fn floor(self) -> i64 {
        self.0.div_euclid(2)
    }

    /// Parses `"3"`, `"3/2"`, or `"1.5"`.
    pub fn parse(s: &str) -> Result<Self, ZhuError> {
        let bad = || ZhuError::Parse(format!("not a half-integer weight: {s:?}"));
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            match d.trim() {
                "1" => Ok(Weight(2 * n)),
                "2" => Ok(Weight(n)),
                _ => Err(bad()),
            }
        } else if let Some((i, f)) = s.split_once('.') {
            let i: i64 = i.parse().map_err(|_| bad())?;
            match f.trim_end_matches('0') {
                "" => Ok(Weight(2 * i)),
                "5" if i >= 0 => Ok(Weight(2 * i + 1)),
                _ => Err(bad()),
            }
        } else {
            let n: i64 = s.parse().map_err(|_| bad())?;
            Ok(Weight(2 * n))
        }
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, o: Weight) -> Weight {
        Weight(self.0 + o.0)
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, o: Weight) -> Weight {
        Weight(self.0 - o.0)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Weight::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Super-parity of a homogeneous vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(odd: bool) -> Self {
        if odd {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn bit(self) -> u8 {
        self as u8
    }

    /// Koszul sign `(-1)^{|a||b|}` as a boolean "negate" flag.
    pub fn koszul(self, other: Parity) -> bool {
        self.is_odd() && other.is_odd()
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, o: Parity) -> Parity {
        Parity::from_bit(self.is_odd() != o.is_odd())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_parsing() {
        assert_eq!(Weight::parse("3/2").unwrap(), Weight::from_half_units(3));
        assert_eq!(Weight::parse("2").unwrap(), Weight::from_int(2));
        assert_eq!(Weight::parse("2.5").unwrap(), Weight::from_half_units(5));
        assert_eq!(Weight::parse("4/1").unwrap(), Weight::from_int(4));
        assert!(Weight::parse("1/3").is_err());
        assert_eq!(Weight::from_half_units(7).to_string(), "7/2");
        assert_eq!(Weight::from_half_units(3).floor(), 1);
        assert_eq!(Weight::from_half_units(-1).floor(), -1);
    }

    #[test]
    fn parity_is_additive() {
        assert_eq!(Parity::Odd + Parity::Odd, Parity::Even);
        assert_eq!(Parity::Odd + Parity::Even, Parity::Odd);
        assert!(Parity::Odd.koszul(Parity::Odd));
        assert!(!Parity::Odd.koszul(Parity::Even));
    }
}
