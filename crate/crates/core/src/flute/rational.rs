use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::Error;

/// A reduced rational `p/r` with `r > 0`, written `"p/r"` (or `"p"`) in files.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(Ratio<i64>);

impl Rational {
    pub fn new(numer: i64, denom: i64) -> Result<Self, Error> {
        if denom == 0 {
            return Err(Error::InvalidParameter(format!("{numer}/0")));
        }
        Ok(Rational(Ratio::new(numer, denom)))
    }

    pub fn integer(n: i64) -> Self {
        Rational(Ratio::from_integer(n))
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn to_f64(&self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }

    pub fn to_big(&self) -> BigRational {
        BigRational::new(BigInt::from(self.numer()), BigInt::from(self.denom()))
    }

    /// `p/r > 1`, the admissible family parameters.
    pub fn exceeds_one(&self) -> bool {
        self.numer() > self.denom()
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::InvalidParameter(s.to_string());
        let (p, r) = match s.trim().split_once('/') {
            Some((p, r)) => (p.trim(), r.trim()),
            None => (s.trim(), "1"),
        };
        let p: i64 = p.parse().map_err(|_| bad())?;
        let r: i64 = r.parse().map_err(|_| bad())?;
        Rational::new(p, r).map_err(|_| bad())
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let q: Rational = "6/4".parse().unwrap();
        assert_eq!(q, Rational::new(3, 2).unwrap());
        assert_eq!(q.to_string(), "3/2");
        assert_eq!("9".parse::<Rational>().unwrap().to_string(), "9");
        assert_eq!("-3/-2".parse::<Rational>().unwrap(), q);
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
        assert!(!Rational::integer(1).exceeds_one());
        assert!(q.exceeds_one());
    }
}
