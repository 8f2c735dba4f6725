use std::fmt;
use std::str::FromStr;

use rug::{Integer, Rational};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::parse::parse_rational;
use crate::numerics::Enclosure;

/// A dyadic rational `p / 2^q` in `(-1, 1)`, kept in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DyadicPoint {
    numerator: i64,
    exponent: u32,
}

impl DyadicPoint {
    pub fn new(p: i64, q: u32) -> Result<Self> {
        let (mut p, mut q) = (p, q);
        while q > 0 && p % 2 == 0 {
            p /= 2;
            q -= 1;
        }
        if p == 0 {
            q = 0;
        }
        if q >= 63 || p.unsigned_abs() >= 1u64 << q && p != 0 {
            return Err(Error::InvalidArgument(format!("{p}/2^{q} is not inside (-1, 1)")));
        }
        Ok(DyadicPoint {
            numerator: p,
            exponent: q,
        })
    }

    /// Recognize a rational as a dyadic point.
    pub fn from_rational(x: &Rational) -> Option<Self> {
        let d = x.denom();
        if !d.is_power_of_two() {
            return None;
        }
        let q = d.significant_bits() - 1;
        DyadicPoint::new(x.numer().to_i64()?, q).ok()
    }

    pub fn numerator(&self) -> i64 {
        self.numerator
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn to_rational(&self) -> Rational {
        Rational::from((Integer::from(self.numerator), Integer::from(1) << self.exponent))
    }

    pub fn to_enclosure(&self) -> Enclosure {
        Enclosure::Exact(self.to_rational())
    }
}

impl From<DyadicPoint> for Enclosure {
    fn from(p: DyadicPoint) -> Self {
        p.to_enclosure()
    }
}

impl FromStr for DyadicPoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let x = parse_rational(s)?;
        DyadicPoint::from_rational(&x)
            .ok_or_else(|| Error::Parse(format!("{s:?} is not a dyadic rational in (-1, 1)")))
    }
}

impl fmt::Display for DyadicPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 0 {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "{}/{}", self.numerator, 1u64 << self.exponent)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes() {
        let p = DyadicPoint::new(4, 3).unwrap();
        assert_eq!((p.numerator(), p.exponent()), (1, 1));
        assert_eq!(DyadicPoint::new(0, 5).unwrap().exponent(), 0);
        assert!(DyadicPoint::new(4, 2).is_err());
        assert!(DyadicPoint::new(-3, 1).is_err());
    }

    #[test]
    fn parses() {
        let p: DyadicPoint = "-3/4".parse().unwrap();
        assert_eq!(p.to_rational(), Rational::from((-3, 4)));
        assert_eq!(p.to_string(), "-3/4");
        assert!("1/3".parse::<DyadicPoint>().is_err());
        assert_eq!("0.5".parse::<DyadicPoint>().unwrap().to_string(), "1/2");
    }
}
