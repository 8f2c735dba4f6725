use std::fmt;

use rug::float::Round;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use super::ball::{rnd, Ball};
use super::CertainOrdering;

/// A certified real value: an exact rational or a ball.
///
/// Operations between two exact values stay exact. As soon as a ball is
/// involved the exact side is rounded into a ball at the ball's precision.
#[derive(Clone, Debug)]
pub enum Enclosure {
    Exact(Rational),
    Ball(Ball),
}

impl Enclosure {
    pub fn zero() -> Self {
        Enclosure::Exact(Rational::new())
    }

    pub fn one() -> Self {
        Enclosure::Exact(Rational::from(1))
    }

    pub fn from_int(v: i64) -> Self {
        Enclosure::Exact(Rational::from(v))
    }

    pub fn from_integer(v: Integer) -> Self {
        Enclosure::Exact(Rational::from(v))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Enclosure::Exact(Rational::from((num, den)))
    }

    pub fn from_f64(v: f64, prec: u32) -> Self {
        match Rational::from_f64(v) {
            Some(q) => Enclosure::Exact(q),
            None => Enclosure::Ball(Ball::whole(prec)),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Enclosure::Exact(_))
    }

    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            Enclosure::Exact(q) => Some(q),
            Enclosure::Ball(_) => None,
        }
    }

    pub fn prec(&self) -> Option<u32> {
        match self {
            Enclosure::Exact(_) => None,
            Enclosure::Ball(b) => Some(b.prec()),
        }
    }

    pub fn to_ball(&self, prec: u32) -> Ball {
        match self {
            Enclosure::Exact(q) => Ball::from_rational(q, prec),
            Enclosure::Ball(b) => b.clone(),
        }
    }

    /// Same value, forced into ball form at `prec`.
    pub fn ballify(&self, prec: u32) -> Enclosure {
        Enclosure::Ball(self.to_ball(prec))
    }

    fn binary(
        &self,
        o: &Enclosure,
        exact: impl Fn(&Rational, &Rational) -> Rational,
        ball: impl Fn(&Ball, &Ball) -> Ball,
    ) -> Enclosure {
        match (self, o) {
            (Enclosure::Exact(a), Enclosure::Exact(b)) => Enclosure::Exact(exact(a, b)),
            (Enclosure::Ball(a), Enclosure::Ball(b)) => Enclosure::Ball(ball(a, b)),
            (Enclosure::Exact(a), Enclosure::Ball(b)) => {
                Enclosure::Ball(ball(&Ball::from_rational(a, b.prec()), b))
            }
            (Enclosure::Ball(a), Enclosure::Exact(b)) => {
                Enclosure::Ball(ball(a, &Ball::from_rational(b, a.prec())))
            }
        }
    }

    pub fn add(&self, o: &Enclosure) -> Enclosure {
        self.binary(o, |a, b| Rational::from(a + b), Ball::add)
    }

    pub fn sub(&self, o: &Enclosure) -> Enclosure {
        self.binary(o, |a, b| Rational::from(a - b), Ball::sub)
    }

    pub fn mul(&self, o: &Enclosure) -> Enclosure {
        self.binary(o, |a, b| Rational::from(a * b), Ball::mul)
    }

    /// Division. An exact zero divisor yields the whole line as a ball.
    pub fn div(&self, o: &Enclosure) -> Enclosure {
        match (self, o) {
            (Enclosure::Exact(a), Enclosure::Exact(b)) => {
                if b.is_zero() {
                    Enclosure::Ball(Ball::whole(crate::numerics::DEFAULT_PREC))
                } else {
                    Enclosure::Exact(Rational::from(a / b))
                }
            }
            _ => self.binary(o, |a, _| a.clone(), Ball::div),
        }
    }

    pub fn neg(&self) -> Enclosure {
        match self {
            Enclosure::Exact(q) => Enclosure::Exact(Rational::from(-q)),
            Enclosure::Ball(b) => Enclosure::Ball(b.neg()),
        }
    }

    pub fn recip(&self) -> Enclosure {
        Enclosure::one().div(self)
    }

    pub fn pow_u(&self, n: u32) -> Enclosure {
        match self {
            Enclosure::Exact(q) => Enclosure::Exact(Rational::from(q.pow(n))),
            Enclosure::Ball(b) => Enclosure::Ball(b.pow_u(n)),
        }
    }

    /// Exact scaling by `2^k`.
    pub fn mul_2si(&self, k: i32) -> Enclosure {
        match self {
            Enclosure::Exact(q) => {
                let mut r = q.clone();
                r <<= k;
                Enclosure::Exact(r)
            }
            Enclosure::Ball(b) => Enclosure::Ball(b.mul_2si(k)),
        }
    }

    pub fn abs(&self) -> Enclosure {
        match self {
            Enclosure::Exact(q) => Enclosure::Exact(Rational::from(q.abs_ref())),
            Enclosure::Ball(b) => Enclosure::Ball(b.abs()),
        }
    }

    pub fn sqrt(&self, prec: u32) -> Enclosure {
        Enclosure::Ball(self.to_ball(self.prec().unwrap_or(prec)).sqrt())
    }

    pub fn exp(&self, prec: u32) -> Enclosure {
        Enclosure::Ball(self.to_ball(self.prec().unwrap_or(prec)).exp())
    }

    pub fn ln(&self, prec: u32) -> Enclosure {
        match self {
            Enclosure::Exact(q) if *q == 1 => Enclosure::zero(),
            _ => Enclosure::Ball(self.to_ball(self.prec().unwrap_or(prec)).ln()),
        }
    }

    /// `k`-th root of a nonnegative value; stays exact for perfect powers.
    pub fn root(&self, k: u32, prec: u32) -> Enclosure {
        if let Enclosure::Exact(q) = self {
            if let Some(r) = exact_root(q, k) {
                return Enclosure::Exact(r);
            }
        }
        Enclosure::Ball(self.to_ball(self.prec().unwrap_or(prec)).root(k))
    }

    /// `self^(num/den)` for a positive base and positive `den`.
    pub fn pow_ratio(&self, num: u32, den: u32, prec: u32) -> Enclosure {
        let g = gcd(num, den).max(1);
        self.pow_u(num / g).root(den / g, prec)
    }

    /// `self^e` for a positive base.
    pub fn pow(&self, e: &Enclosure, prec: u32) -> Enclosure {
        if let Some(q) = e.as_exact() {
            if q.is_integer() && *q >= 0 {
                if let Some(n) = q.numer().to_u32() {
                    return self.pow_u(n);
                }
            }
        }
        let p = self.prec().or(e.prec()).unwrap_or(prec);
        Enclosure::Ball(self.to_ball(p).pow(&e.to_ball(p)))
    }

    pub fn lower(&self, prec: u32) -> Float {
        match self {
            Enclosure::Exact(q) => rnd(prec, q, Round::Down),
            Enclosure::Ball(b) => b.lower(),
        }
    }

    pub fn upper(&self, prec: u32) -> Float {
        match self {
            Enclosure::Exact(q) => rnd(prec, q, Round::Up),
            Enclosure::Ball(b) => b.upper(),
        }
    }

    pub fn mag_upper(&self, prec: u32) -> Float {
        match self {
            Enclosure::Exact(q) => rnd(prec, Rational::from(q.abs_ref()), Round::Up),
            Enclosure::Ball(b) => b.mag_upper(),
        }
    }

    pub fn mag_lower(&self, prec: u32) -> Float {
        match self {
            Enclosure::Exact(q) => rnd(prec, Rational::from(q.abs_ref()), Round::Down),
            Enclosure::Ball(b) => b.mag_lower(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Enclosure::Exact(q) if q.is_zero())
    }

    pub fn contains_zero(&self) -> bool {
        match self {
            Enclosure::Exact(q) => q.is_zero(),
            Enclosure::Ball(b) => b.contains_zero(),
        }
    }

    pub fn contains_rational(&self, q: &Rational) -> bool {
        match self {
            Enclosure::Exact(e) => e == q,
            Enclosure::Ball(b) => b.contains_rational(q),
        }
    }

    /// Does `self` contain every point of `o`?
    pub fn contains(&self, o: &Enclosure) -> bool {
        match (self, o) {
            (_, Enclosure::Exact(q)) => self.contains_rational(q),
            (Enclosure::Exact(_), Enclosure::Ball(b)) => {
                b.is_exact() && self.contains_rational(&b.mid().to_rational().unwrap_or_default())
            }
            (Enclosure::Ball(a), Enclosure::Ball(b)) => a.contains(b),
        }
    }

    pub fn overlaps(&self, o: &Enclosure) -> bool {
        let p = self.prec().or(o.prec()).unwrap_or(crate::numerics::DEFAULT_PREC);
        match (self, o) {
            (Enclosure::Exact(a), Enclosure::Exact(b)) => a == b,
            _ => self.to_ball(p).overlaps(&o.to_ball(p)),
        }
    }

    pub fn cmp_certain(&self, o: &Enclosure) -> CertainOrdering {
        match (self, o) {
            (Enclosure::Exact(a), Enclosure::Exact(b)) => match a.cmp(b) {
                std::cmp::Ordering::Less => CertainOrdering::Less,
                std::cmp::Ordering::Greater => CertainOrdering::Greater,
                std::cmp::Ordering::Equal => CertainOrdering::Equal,
            },
            _ => {
                let p = self.prec().or(o.prec()).unwrap_or(crate::numerics::DEFAULT_PREC);
                self.to_ball(p).cmp_certain(&o.to_ball(p))
            }
        }
    }

    pub fn max(&self, o: &Enclosure) -> Enclosure {
        match self.cmp_certain(o) {
            CertainOrdering::Less => o.clone(),
            CertainOrdering::Greater | CertainOrdering::Equal => self.clone(),
            CertainOrdering::Indeterminate => {
                let p = self.prec().or(o.prec()).unwrap_or(crate::numerics::DEFAULT_PREC);
                Enclosure::Ball(self.to_ball(p).max(&o.to_ball(p)))
            }
        }
    }

    /// Adds `[-e, e]`.
    pub fn widen(&self, e: &Float, prec: u32) -> Enclosure {
        if e.is_zero() {
            return self.clone();
        }
        let mut b = self.to_ball(self.prec().unwrap_or(prec));
        b.add_error(e);
        Enclosure::Ball(b)
    }

    pub fn rel_rad(&self) -> f64 {
        match self {
            Enclosure::Exact(_) => 0.0,
            Enclosure::Ball(b) => b.rel_rad(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Enclosure::Exact(q) => q.to_f64(),
            Enclosure::Ball(b) => b.to_f64(),
        }
    }

    /// Midpoint as a decimal string with `digits` significant digits.
    pub fn mid_string(&self, digits: usize) -> String {
        match self {
            Enclosure::Exact(q) => {
                if q.is_integer() {
                    q.numer().to_string()
                } else {
                    Float::with_val(256, q).to_string_radix(10, Some(digits))
                }
            }
            Enclosure::Ball(b) => b.mid().to_string_radix(10, Some(digits)),
        }
    }

    pub fn rad_f64(&self) -> f64 {
        match self {
            Enclosure::Exact(_) => 0.0,
            Enclosure::Ball(b) => b.rad().to_f64(),
        }
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn exact_root(q: &Rational, k: u32) -> Option<Rational> {
    if k == 0 || *q < 0 {
        return None;
    }
    if k == 1 {
        return Some(q.clone());
    }
    let rn = Integer::from(q.numer().root_ref(k));
    let rd = Integer::from(q.denom().root_ref(k));
    if rn.clone().pow(k) == *q.numer() && rd.clone().pow(k) == *q.denom() {
        Some(Rational::from((rn, rd)))
    } else {
        None
    }
}

impl From<Rational> for Enclosure {
    fn from(q: Rational) -> Self {
        Enclosure::Exact(q)
    }
}

impl From<Ball> for Enclosure {
    fn from(b: Ball) -> Self {
        Enclosure::Ball(b)
    }
}

impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Enclosure::Exact(q) => write!(f, "{q}"),
            Enclosure::Ball(b) => write!(f, "{b}"),
        }
    }
}

macro_rules! forward_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl std::ops::$tr<&Enclosure> for &Enclosure {
            type Output = Enclosure;
            fn $m(self, o: &Enclosure) -> Enclosure {
                Enclosure::$m(self, o)
            }
        }
        impl std::ops::$tr<Enclosure> for Enclosure {
            type Output = Enclosure;
            fn $m(self, o: Enclosure) -> Enclosure {
                Enclosure::$m(&self, &o)
            }
        }
    )*};
}

forward_ops!(Add add, Sub sub, Mul mul, Div div);

impl std::ops::Neg for &Enclosure {
    type Output = Enclosure;
    fn neg(self) -> Enclosure {
        Enclosure::neg(self)
    }
}
