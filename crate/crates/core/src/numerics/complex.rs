use std::fmt;

use rug::float::Round;
use rug::Float;

use super::ball::rnd;
use super::enclosure::Enclosure;
use crate::error::{Error, Result};

/// Rectangular complex enclosure.
#[derive(Clone, Debug)]
pub struct ComplexEnclosure {
    pub re: Enclosure,
    pub im: Enclosure,
}

impl ComplexEnclosure {
    pub fn new(re: Enclosure, im: Enclosure) -> Self {
        ComplexEnclosure { re, im }
    }

    pub fn zero() -> Self {
        Self::new(Enclosure::zero(), Enclosure::zero())
    }

    pub fn one() -> Self {
        Self::new(Enclosure::one(), Enclosure::zero())
    }

    pub fn real(re: Enclosure) -> Self {
        Self::new(re, Enclosure::zero())
    }

    pub fn imag(im: Enclosure) -> Self {
        Self::new(Enclosure::zero(), im)
    }

    pub fn is_exact(&self) -> bool {
        self.re.is_exact() && self.im.is_exact()
    }

    pub fn prec(&self) -> Option<u32> {
        self.re.prec().or(self.im.prec())
    }

    pub fn ballify(&self, prec: u32) -> Self {
        Self::new(self.re.ballify(prec), self.im.ballify(prec))
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(&self.re + &o.re, &self.im + &o.im)
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(&self.re - &o.re, &self.im - &o.im)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.re.neg(), self.im.neg())
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), self.im.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.im.is_zero() && o.im.is_zero() {
            return Self::real(&self.re * &o.re);
        }
        let re = &(&self.re * &o.re) - &(&self.im * &o.im);
        let im = &(&self.re * &o.im) + &(&self.im * &o.re);
        Self::new(re, im)
    }

    pub fn scale(&self, s: &Enclosure) -> Self {
        Self::new(&self.re * s, &self.im * s)
    }

    pub fn mul_2si(&self, k: i32) -> Self {
        Self::new(self.re.mul_2si(k), self.im.mul_2si(k))
    }

    /// `1/z = conj(z)/|z|^2`; squares are taken with interval semantics so
    /// the denominator never picks up a spurious negative part.
    pub fn recip(&self) -> Self {
        let den = &self.re.pow_u(2) + &self.im.pow_u(2);
        Self::new(&self.re / &den, &self.im.neg() / &den)
    }

    pub fn div(&self, o: &Self) -> Self {
        self.mul(&o.recip())
    }

    pub fn pow_u(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Upper bound on `|z|`.
    pub fn abs_upper(&self, prec: u32) -> Float {
        let a = self.re.mag_upper(prec);
        let b = self.im.mag_upper(prec);
        let s: Float = rnd(prec, &a * &a + &b * &b, Round::Up);
        rnd(prec, s.sqrt_ref(), Round::Up)
    }

    /// Lower bound on `|z|`.
    pub fn abs_lower(&self, prec: u32) -> Float {
        let a = self.re.mag_lower(prec);
        let b = self.im.mag_lower(prec);
        let aa: Float = rnd(prec, &a * &a, Round::Down);
        let bb: Float = rnd(prec, &b * &b, Round::Down);
        let s: Float = rnd(prec, &aa + &bb, Round::Down);
        rnd(prec, s.sqrt_ref(), Round::Down)
    }

    /// `|z|` as an enclosure.
    pub fn abs(&self, prec: u32) -> Enclosure {
        if self.im.is_zero() {
            return self.re.abs();
        }
        if self.re.is_zero() {
            return self.im.abs();
        }
        let p = self.prec().unwrap_or(prec);
        let lo = self.abs_lower(p);
        let hi = self.abs_upper(p);
        Enclosure::Ball(super::Ball::from_endpoints(&lo, &hi, p))
    }

    /// Adds `[-e, e]` to both components, so any complex number within
    /// distance `e` of a point of `self` stays enclosed.
    pub fn widen(&self, e: &Float, prec: u32) -> Self {
        Self::new(self.re.widen(e, prec), self.im.widen(e, prec))
    }

    pub fn contains(&self, o: &Self) -> bool {
        self.re.contains(&o.re) && self.im.contains(&o.im)
    }

    pub fn max_rel_rad(&self, prec: u32) -> f64 {
        let hi = self.abs_upper(prec);
        if hi.is_zero() {
            return 0.0;
        }
        let r = self.re.rad_f64().max(self.im.rad_f64());
        r / hi.to_f64()
    }
}

/// Power of a complex enclosure with a blow-up guard.
///
/// Fails with `NeedMorePrecision` when the input excludes zero but the
/// output radius exceeds its own magnitude, the point where further
/// products only carry noise.
pub fn enclose_pow_int(z: &ComplexEnclosure, n: u32) -> Result<ComplexEnclosure> {
    let out = z.pow_u(n);
    if out.is_exact() {
        return Ok(out);
    }
    let prec = out.prec().unwrap_or(super::DEFAULT_PREC);
    let input_excludes_zero = z.abs_lower(prec) > 0;
    let out_hi = out.abs_upper(prec);
    let blown = !out_hi.is_finite()
        || (input_excludes_zero && out.abs_lower(prec).is_zero() && out_hi > 0);
    if blown {
        Err(Error::NeedMorePrecision { bits: prec })
    } else {
        Ok(out)
    }
}

impl fmt::Display for ComplexEnclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})i", self.re, self.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Ball;
    use rug::Rational;

    #[test]
    fn integer_power_exact() {
        let z = ComplexEnclosure::real(Enclosure::from_int(2));
        let p = enclose_pow_int(&z, 3).unwrap();
        assert_eq!(p.re.as_exact().unwrap(), &Rational::from(8));
        assert!(p.im.is_zero());
    }

    #[test]
    fn i_squared() {
        let z = ComplexEnclosure::imag(Enclosure::one());
        let p = enclose_pow_int(&z, 2).unwrap();
        assert_eq!(p.re.as_exact().unwrap(), &Rational::from(-1));
        assert_eq!(p.im.as_exact().unwrap(), &Rational::from(0));
    }

    #[test]
    fn square_of_ball_covers_endpoint_interval() {
        // [0.9, 1.1]^2 = [0.81, 1.21], computed by endpoint arithmetic
        let b = Ball::new(Float::with_val(128, 1), Float::with_val(64, 0.1));
        let z = ComplexEnclosure::real(Enclosure::Ball(b));
        let p = enclose_pow_int(&z, 2).unwrap();
        assert!(p.re.contains_rational(&Rational::from((81, 100))));
        assert!(p.re.contains_rational(&Rational::from((121, 100))));
    }

    #[test]
    fn recip_times_self_is_one() {
        let z = ComplexEnclosure::new(Enclosure::from_ratio(1, 2), Enclosure::from_ratio(1, 3));
        let w = z.mul(&z.recip());
        assert_eq!(w.re.as_exact().unwrap(), &Rational::from(1));
        assert!(w.im.is_zero());
    }
}
