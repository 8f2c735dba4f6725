use rug::float::{Round, Special};
use rug::Float;
use serde::Serialize;

use super::ball::rnd;
use super::{Ball, CertainOrdering, ComplexEnclosure, Enclosure};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Sign {
    Positive,
    Negative,
    Zero,
    /// The enclosure straddles zero.
    Mixed,
}

/// Base-2 logarithm of a magnitude, kept as a certified interval.
///
/// The lower end may be `-inf` when the magnitude is not bounded away from
/// zero; upper-bound checks still work in that case.
#[derive(Clone, Debug)]
pub struct LogMag {
    lo: Float,
    hi: Float,
    pub sign: Sign,
}

impl LogMag {
    pub fn from_bounds(mag_lo: &Float, mag_hi: &Float, sign: Sign) -> Self {
        let prec = mag_lo.prec().max(mag_hi.prec()).max(64);
        let lo = if mag_lo.is_zero() || mag_lo.is_sign_negative() {
            Float::with_val(prec, Special::NegInfinity)
        } else {
            rnd(prec, mag_lo.log2_ref(), Round::Down)
        };
        let hi = if mag_hi.is_zero() {
            Float::with_val(prec, Special::NegInfinity)
        } else {
            rnd(prec, mag_hi.log2_ref(), Round::Up)
        };
        LogMag { lo, hi, sign }
    }

    pub fn from_enclosure(e: &Enclosure, prec: u32) -> Self {
        let p = e.prec().unwrap_or(prec);
        let sign = match e {
            Enclosure::Exact(q) if q.is_zero() => Sign::Zero,
            _ if e.lower(p) > 0 => Sign::Positive,
            _ if e.upper(p) < 0 => Sign::Negative,
            _ => Sign::Mixed,
        };
        Self::from_bounds(&e.mag_lower(p), &e.mag_upper(p), sign)
    }

    pub fn from_complex(z: &ComplexEnclosure, prec: u32) -> Self {
        let p = z.prec().unwrap_or(prec);
        let lo = z.abs_lower(p);
        let hi = z.abs_upper(p);
        let sign = if hi.is_zero() {
            Sign::Zero
        } else if lo > 0 {
            Sign::Positive
        } else {
            Sign::Mixed
        };
        Self::from_bounds(&lo, &hi, sign)
    }

    /// Magnitude given directly by its log2 enclosure.
    pub fn from_log2(l: &Ball) -> Self {
        LogMag {
            lo: l.lower(),
            hi: l.upper(),
            sign: Sign::Positive,
        }
    }

    pub fn lo(&self) -> &Float {
        &self.lo
    }

    pub fn hi(&self) -> &Float {
        &self.hi
    }

    pub fn lo_f64(&self) -> f64 {
        self.lo.to_f64()
    }

    pub fn hi_f64(&self) -> f64 {
        self.hi.to_f64()
    }

    /// Midpoint of the log2 interval, when it is finite.
    pub fn log2_value(&self) -> Option<Ball> {
        if self.lo.is_finite() && self.hi.is_finite() {
            Some(Ball::from_endpoints(&self.lo, &self.hi, self.lo.prec()))
        } else {
            None
        }
    }

    /// Magnitude of a product.
    pub fn mul(&self, o: &LogMag) -> LogMag {
        let prec = self.lo.prec().max(o.lo.prec());
        let sign = match (self.sign, o.sign) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (Sign::Mixed, _) | (_, Sign::Mixed) => Sign::Mixed,
            (a, b) if a == b => Sign::Positive,
            _ => Sign::Negative,
        };
        LogMag {
            lo: rnd(prec, &self.lo + &o.lo, Round::Down),
            hi: rnd(prec, &self.hi + &o.hi, Round::Up),
            sign,
        }
    }

    /// Magnitude of a quotient.
    pub fn div(&self, o: &LogMag) -> LogMag {
        let prec = self.lo.prec().max(o.lo.prec());
        LogMag {
            lo: rnd(prec, &self.lo - &o.hi, Round::Down),
            hi: rnd(prec, &self.hi - &o.lo, Round::Up),
            sign: self.sign,
        }
    }

    /// Magnitude of the `k`-th power.
    pub fn pow_u(&self, k: u32) -> LogMag {
        let prec = self.lo.prec();
        LogMag {
            lo: rnd(prec, &self.lo * k, Round::Down),
            hi: rnd(prec, &self.hi * k, Round::Up),
            sign: if k % 2 == 0 { Sign::Positive } else { self.sign },
        }
    }
}

/// Compare two magnitudes in log space.
pub fn log_compare(a: &LogMag, b: &LogMag) -> CertainOrdering {
    if a.hi < b.lo {
        CertainOrdering::Less
    } else if a.lo > b.hi {
        CertainOrdering::Greater
    } else {
        CertainOrdering::Indeterminate
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::DEFAULT_PREC;
    use rug::Integer;

    fn lm(e: Enclosure) -> LogMag {
        LogMag::from_enclosure(&e, DEFAULT_PREC)
    }

    #[test]
    fn strict_factor_is_certain() {
        let f100 = Enclosure::from_integer(Integer::from(Integer::factorial(100)));
        let f101 = Enclosure::from_integer(Integer::from(Integer::factorial(101)));
        let a = lm(&f100 * &f100);
        let b = lm(&f101 * &f100);
        assert_eq!(log_compare(&a, &b), CertainOrdering::Less);
    }

    #[test]
    fn equal_inputs_are_indeterminate() {
        let a = lm(Enclosure::from_int(7));
        assert_eq!(log_compare(&a, &a.clone()), CertainOrdering::Indeterminate);
    }

    #[test]
    fn tiny_constant_against_bound() {
        let m10 = Enclosure::from_integer(Integer::from(Integer::factorial(10)));
        let f10 = m10.clone();
        let small = &(&Enclosure::from_ratio(1, 2) * &Enclosure::from_int(3).pow_u(10).recip())
            * &(&f10 * &m10);
        let big = &Enclosure::from_ratio(9, 2) * &(&f10 * &m10);
        assert_eq!(log_compare(&lm(small), &lm(big)), CertainOrdering::Less);
    }
}
