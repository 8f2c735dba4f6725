//! Midpoint-radius real balls on top of MPFR.
//!
//! The midpoint carries the working precision; the radius is kept at a
//! fixed low precision and is always rounded upward. Every operation adds
//! the rounding error of the midpoint to the radius, so the exact result
//! for any choice of points inside the operands lies inside the output.

use std::cmp::Ordering;
use std::fmt;

use rug::float::{Round, Special};
use rug::ops::{AssignRound, Pow};
use rug::{Float, Integer, Rational};

use super::CertainOrdering;

/// Precision of radii. Radii only need a handful of correct bits.
pub const RAD_PREC: u32 = 64;

pub(crate) fn rnd<T>(prec: u32, val: T, round: Round) -> Float
where
    Float: AssignRound<T, Round = Round, Ordering = Ordering>,
{
    Float::with_val_round(prec, val, round).0
}

/// Bound on one unit in the last place of `x`.
fn ulp(x: &Float) -> Float {
    match x.get_exp() {
        Some(e) => {
            let mut u = Float::with_val(RAD_PREC, 1);
            u <<= e - x.prec() as i32;
            u
        }
        None if x.is_zero() => Float::new(RAD_PREC),
        None => Float::with_val(RAD_PREC, Special::Infinity),
    }
}

/// Evaluate `val` to nearest at `prec`, returning the value and a bound on
/// the rounding error.
fn nearest<T>(prec: u32, val: T) -> (Float, Float)
where
    Float: AssignRound<T, Round = Round, Ordering = Ordering>,
{
    let (m, o) = Float::with_val_round(prec, val, Round::Nearest);
    let e = if o == Ordering::Equal {
        Float::new(RAD_PREC)
    } else {
        ulp(&m)
    };
    (m, e)
}

fn abs_up(x: &Float) -> Float {
    rnd(RAD_PREC, &*x.as_abs(), Round::Up)
}

fn abs_down(x: &Float) -> Float {
    rnd(RAD_PREC, &*x.as_abs(), Round::Down)
}

#[derive(Clone, Debug)]
pub struct Ball {
    mid: Float,
    rad: Float,
}

impl Ball {
    pub fn new(mid: Float, rad: Float) -> Self {
        if !mid.is_finite() || rad.is_nan() {
            return Self::whole(mid.prec());
        }
        let rad = rnd(RAD_PREC, &*rad.as_abs(), Round::Up);
        Ball { mid, rad }
    }

    pub fn exact(mid: Float) -> Self {
        Self::new(mid, Float::new(RAD_PREC))
    }

    /// The whole real line.
    pub fn whole(prec: u32) -> Self {
        Ball {
            mid: Float::new(prec),
            rad: Float::with_val(RAD_PREC, Special::Infinity),
        }
    }

    pub fn zero(prec: u32) -> Self {
        Self::exact(Float::new(prec))
    }

    pub fn from_int(v: i64, prec: u32) -> Self {
        let (m, e) = nearest(prec, v);
        Self::new(m, e)
    }

    pub fn from_integer(v: &Integer, prec: u32) -> Self {
        let (m, e) = nearest(prec, v);
        Self::new(m, e)
    }

    pub fn from_rational(q: &Rational, prec: u32) -> Self {
        let (m, e) = nearest(prec, q);
        Self::new(m, e)
    }

    pub fn from_f64(v: f64, prec: u32) -> Self {
        Self::exact(Float::with_val(prec.max(53), v))
    }

    /// Smallest ball containing `[lo, hi]`.
    pub fn from_endpoints(lo: &Float, hi: &Float, prec: u32) -> Self {
        if lo.is_nan() || hi.is_nan() || lo.is_infinite() || hi.is_infinite() {
            return Self::whole(prec);
        }
        let mut mid: Float = rnd(prec, lo + hi, Round::Nearest);
        mid >>= 1;
        let r1: Float = rnd(RAD_PREC, hi - &mid, Round::Up);
        let r2: Float = rnd(RAD_PREC, &mid - lo, Round::Up);
        let rad = if r1 > r2 { r1 } else { r2 };
        Ball { mid, rad }
    }

    pub fn mid(&self) -> &Float {
        &self.mid
    }

    pub fn rad(&self) -> &Float {
        &self.rad
    }

    pub fn prec(&self) -> u32 {
        self.mid.prec()
    }

    pub fn is_finite(&self) -> bool {
        self.rad.is_finite()
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    pub fn lower(&self) -> Float {
        rnd(self.prec(), &self.mid - &self.rad, Round::Down)
    }

    pub fn upper(&self) -> Float {
        rnd(self.prec(), &self.mid + &self.rad, Round::Up)
    }

    /// Upper bound on `|x|` over the ball.
    pub fn mag_upper(&self) -> Float {
        rnd(self.prec(), &*self.mid.as_abs() + &self.rad, Round::Up)
    }

    /// Lower bound on `|x|` over the ball (zero if the ball straddles zero).
    pub fn mag_lower(&self) -> Float {
        let v: Float = rnd(self.prec(), &*self.mid.as_abs() - &self.rad, Round::Down);
        if v.is_sign_negative() || v.is_nan() {
            Float::new(self.prec())
        } else {
            v
        }
    }

    pub fn contains_zero(&self) -> bool {
        !(self.lower() > 0 || self.upper() < 0)
    }

    pub fn contains_rational(&self, q: &Rational) -> bool {
        self.lower() <= *q && *q <= self.upper()
    }

    pub fn contains(&self, other: &Ball) -> bool {
        self.lower() <= other.lower() && other.upper() <= self.upper()
    }

    pub fn overlaps(&self, other: &Ball) -> bool {
        !(self.upper() < other.lower() || other.upper() < self.lower())
    }

    /// Relative radius `rad / |mid|`, infinite when the midpoint is zero
    /// and the radius is not.
    pub fn rel_rad(&self) -> f64 {
        if self.rad.is_zero() {
            return 0.0;
        }
        if self.mid.is_zero() {
            return f64::INFINITY;
        }
        let r: Float = rnd(RAD_PREC, &self.rad / &*self.mid.as_abs(), Round::Up);
        r.to_f64()
    }

    pub fn with_prec(&self, prec: u32) -> Ball {
        let (m, e) = nearest(prec, &self.mid);
        let rad = rnd(RAD_PREC, &self.rad + &e, Round::Up);
        Ball { mid: m, rad }
    }

    pub fn add_error(&mut self, e: &Float) {
        self.rad = rnd(RAD_PREC, &self.rad + e, Round::Up);
    }

    pub fn neg(&self) -> Ball {
        Ball {
            mid: Float::with_val(self.prec(), -&self.mid),
            rad: self.rad.clone(),
        }
    }

    /// Exact scaling by `2^k`.
    pub fn mul_2si(&self, k: i32) -> Ball {
        let mut mid = self.mid.clone();
        let mut rad = self.rad.clone();
        mid <<= k;
        rad <<= k;
        Ball { mid, rad }
    }

    pub fn add(&self, o: &Ball) -> Ball {
        let prec = self.prec().max(o.prec());
        if !self.is_finite() || !o.is_finite() {
            return Ball::whole(prec);
        }
        let (m, e) = nearest(prec, &self.mid + &o.mid);
        let r: Float = rnd(RAD_PREC, &self.rad + &o.rad, Round::Up);
        Ball::new(m, rnd(RAD_PREC, &r + &e, Round::Up))
    }

    pub fn sub(&self, o: &Ball) -> Ball {
        let prec = self.prec().max(o.prec());
        if !self.is_finite() || !o.is_finite() {
            return Ball::whole(prec);
        }
        let (m, e) = nearest(prec, &self.mid - &o.mid);
        let r: Float = rnd(RAD_PREC, &self.rad + &o.rad, Round::Up);
        Ball::new(m, rnd(RAD_PREC, &r + &e, Round::Up))
    }

    pub fn mul(&self, o: &Ball) -> Ball {
        let prec = self.prec().max(o.prec());
        if !self.is_finite() || !o.is_finite() {
            return Ball::whole(prec);
        }
        let (m, e) = nearest(prec, &self.mid * &o.mid);
        let am = abs_up(&self.mid);
        let bm = abs_up(&o.mid);
        let t1: Float = rnd(RAD_PREC, &am * &o.rad, Round::Up);
        let t2: Float = rnd(RAD_PREC, &bm * &self.rad, Round::Up);
        let t3: Float = rnd(RAD_PREC, &self.rad * &o.rad, Round::Up);
        let mut r: Float = rnd(RAD_PREC, &t1 + &t2, Round::Up);
        r = rnd(RAD_PREC, &r + &t3, Round::Up);
        r = rnd(RAD_PREC, &r + &e, Round::Up);
        Ball::new(m, r)
    }

    pub fn div(&self, o: &Ball) -> Ball {
        let prec = self.prec().max(o.prec());
        if !self.is_finite() || !o.is_finite() || o.contains_zero() {
            return Ball::whole(prec);
        }
        let (m, e) = nearest(prec, &self.mid / &o.mid);
        let am = abs_up(&self.mid);
        let bm_up = abs_up(&o.mid);
        let bm_dn = abs_down(&o.mid);
        let t1: Float = rnd(RAD_PREC, &am * &o.rad, Round::Up);
        let t2: Float = rnd(RAD_PREC, &bm_up * &self.rad, Round::Up);
        let num: Float = rnd(RAD_PREC, &t1 + &t2, Round::Up);
        let gap: Float = rnd(RAD_PREC, &bm_dn - &o.rad, Round::Down);
        if gap <= 0 {
            return Ball::whole(prec);
        }
        let den: Float = rnd(RAD_PREC, &bm_dn * &gap, Round::Down);
        let mut r: Float = rnd(RAD_PREC, &num / &den, Round::Up);
        r = rnd(RAD_PREC, &r + &e, Round::Up);
        Ball::new(m, r)
    }

    pub fn recip(&self) -> Ball {
        Ball::exact(Float::with_val(self.prec(), 1)).div(self)
    }

    /// Interval absolute value.
    pub fn abs(&self) -> Ball {
        if self.contains_zero() {
            let hi = self.mag_upper();
            Ball::from_endpoints(&Float::new(self.prec()), &hi, self.prec())
        } else if self.mid.is_sign_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn pow_u(&self, n: u32) -> Ball {
        let prec = self.prec();
        if n == 0 {
            return Ball::exact(Float::with_val(prec, 1));
        }
        if !self.is_finite() {
            return Ball::whole(prec);
        }
        if self.is_exact() {
            let (m, e) = nearest(prec, (&self.mid).pow(n));
            return Ball::new(m, e);
        }
        let (lo, hi) = if n % 2 == 0 {
            (self.mag_lower(), self.mag_upper())
        } else {
            (self.lower(), self.upper())
        };
        let plo: Float = rnd(prec, (&lo).pow(n), Round::Down);
        let phi: Float = rnd(prec, (&hi).pow(n), Round::Up);
        Ball::from_endpoints(&plo, &phi, prec)
    }

    pub fn sqr(&self) -> Ball {
        self.pow_u(2)
    }

    fn map_increasing(&self, f: impl Fn(&Float, Round) -> Float) -> Ball {
        let prec = self.prec();
        if !self.is_finite() {
            return Ball::whole(prec);
        }
        let lo = f(&self.lower(), Round::Down);
        let hi = f(&self.upper(), Round::Up);
        Ball::from_endpoints(&lo, &hi, prec)
    }

    pub fn sqrt(&self) -> Ball {
        let prec = self.prec();
        if self.upper() < 0 {
            return Ball::whole(prec);
        }
        let lo = {
            let l = self.lower();
            if l < 0 {
                Float::new(prec)
            } else {
                l
            }
        };
        let slo: Float = rnd(prec, lo.sqrt_ref(), Round::Down);
        let shi: Float = rnd(prec, self.upper().sqrt_ref(), Round::Up);
        Ball::from_endpoints(&slo, &shi, prec)
    }

    pub fn exp(&self) -> Ball {
        let prec = self.prec();
        self.map_increasing(|x, r| rnd(prec, x.exp_ref(), r))
    }

    /// Natural logarithm; the whole line if the ball touches zero.
    pub fn ln(&self) -> Ball {
        let prec = self.prec();
        if !(self.lower() > 0) {
            return Ball::whole(prec);
        }
        self.map_increasing(|x, r| rnd(prec, x.ln_ref(), r))
    }

    pub fn log2(&self) -> Ball {
        let prec = self.prec();
        if !(self.lower() > 0) {
            return Ball::whole(prec);
        }
        self.map_increasing(|x, r| rnd(prec, x.log2_ref(), r))
    }

    /// `k`-th root of a nonnegative ball.
    pub fn root(&self, k: u32) -> Ball {
        let prec = self.prec();
        if self.lower() < 0 {
            return Ball::whole(prec);
        }
        self.map_increasing(|x, r| rnd(prec, x.root_ref(k), r))
    }

    /// `self^e` for a positive base.
    pub fn pow(&self, e: &Ball) -> Ball {
        self.ln().mul(e).exp()
    }

    pub fn max(&self, o: &Ball) -> Ball {
        let prec = self.prec().max(o.prec());
        let lo = {
            let (a, b) = (self.lower(), o.lower());
            if a > b {
                a
            } else {
                b
            }
        };
        let hi = {
            let (a, b) = (self.upper(), o.upper());
            if a > b {
                a
            } else {
                b
            }
        };
        Ball::from_endpoints(&lo, &hi, prec)
    }

    pub fn cmp_certain(&self, o: &Ball) -> CertainOrdering {
        if self.upper() < o.lower() {
            CertainOrdering::Less
        } else if self.lower() > o.upper() {
            CertainOrdering::Greater
        } else {
            CertainOrdering::Indeterminate
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.mid.to_f64()
    }
}

impl fmt::Display for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} +/- {}",
            self.mid.to_string_radix(10, Some(20)),
            self.rad.to_string_radix(10, Some(6))
        )
    }
}
