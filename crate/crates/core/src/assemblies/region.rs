use rug::Float;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::multivar::norm_sq;
use crate::numerics::{Ball, CertainOrdering, Enclosure};

/// Regions of `R^p` on which the radial assembly is tested.
#[derive(Clone, Debug)]
pub enum Region {
    /// `x_1 >= 0` and `x_2 >= a x_1^m`.
    Cusp { a: Enclosure, m: u32, p: usize },
    /// Complement of the open quadrant `x_1 > 0, x_2 > 0`.
    QuadrantComplement { p: usize },
    /// `|x| >= r`.
    BallComplement { r: Enclosure, p: usize },
}

impl Region {
    pub fn dim(&self) -> usize {
        match self {
            Region::Cusp { p, .. } | Region::QuadrantComplement { p } | Region::BallComplement { p, .. } => *p,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Membership {
    Yes,
    No,
    /// Too close to the boundary to decide at the working precision.
    Indeterminate,
}

fn and(a: Membership, b: Membership) -> Membership {
    use Membership::*;
    match (a, b) {
        (No, _) | (_, No) => No,
        (Yes, Yes) => Yes,
        _ => Indeterminate,
    }
}

fn or(a: Membership, b: Membership) -> Membership {
    use Membership::*;
    match (a, b) {
        (Yes, _) | (_, Yes) => Yes,
        (No, No) => No,
        _ => Indeterminate,
    }
}

/// `lhs >= rhs` (closed) as a three-valued answer.
fn ge(lhs: &Enclosure, rhs: &Enclosure) -> Membership {
    match lhs.cmp_certain(rhs) {
        CertainOrdering::Greater | CertainOrdering::Equal => Membership::Yes,
        CertainOrdering::Less => Membership::No,
        CertainOrdering::Indeterminate => Membership::Indeterminate,
    }
}

/// `lhs <= rhs` (closed).
fn le(lhs: &Enclosure, rhs: &Enclosure) -> Membership {
    ge(rhs, lhs)
}

/// Certified membership of `x` in `region`.
pub fn region_contains(region: &Region, x: &[Enclosure]) -> Result<Membership> {
    if x.len() != region.dim() || x.len() < 2 {
        return Err(Error::InvalidArgument(format!(
            "point of dimension {} for a region in dimension {}",
            x.len(),
            region.dim()
        )));
    }
    let zero = Enclosure::zero();
    Ok(match region {
        Region::Cusp { a, m, .. } => and(ge(&x[0], &zero), ge(&x[1], &(a * &x[0].pow_u(*m)))),
        Region::QuadrantComplement { .. } => or(le(&x[0], &zero), le(&x[1], &zero)),
        Region::BallComplement { r, .. } => ge(&norm_sq(x), &r.pow_u(2)),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SDistanceStatus {
    Pass,
    Fail,
    Indeterminate,
}

/// Distance from the flat-curve point `(t, exp(-1/t^2), 0, ...)` to the
/// cusp region `x_2 >= a x_1^m`, compared with `exp(-1/t^2)`.
#[derive(Clone, Debug, Serialize)]
pub struct SDistanceReport {
    pub t: f64,
    /// Certified lower bound on the distance.
    pub distance_lower: f64,
    /// Best upper estimate found (a distance to an explicit region point).
    pub distance_upper: f64,
    /// `log2 exp(-1/t^2)`.
    pub bound_log2: f64,
    pub status: SDistanceStatus,
    /// Arguments `t >= 1` are outside the small-`t` range the property is
    /// about; such rows are informational.
    pub out_of_scope: bool,
    pub boxes_examined: usize,
}

const MAX_BOXES: usize = 200_000;

/// Branch-and-bound over the boundary curve `s -> (s, a s^m)`, `s in [0, 2t]`.
///
/// Points of the region are either on that curve, on the half-axis
/// `x_1 = 0` (at distance `>= t`), or past `s = 2t` (also at distance
/// `>= t`), so the distance is `min(t, min_s D(s))` unless the point lies
/// inside the region, in which case it is zero.
pub fn s_distance_check(t: &Enclosure, a: &Enclosure, m: u32, p: usize, prec: u32) -> Result<SDistanceReport> {
    if t.cmp_certain(&Enclosure::zero()) != CertainOrdering::Greater {
        return Err(Error::InvalidArgument("t must be positive".into()));
    }
    if p < 2 || m == 0 {
        return Err(Error::InvalidArgument("need p >= 2 and m >= 1".into()));
    }
    let tb = t.to_ball(prec);
    let y = tb.sqr().recip().neg().exp();
    let bound = Enclosure::Ball(y.clone());
    let bound_sq = y.sqr();
    let ab = a.to_ball(prec);
    let mut report = SDistanceReport {
        t: t.to_f64(),
        distance_lower: 0.0,
        distance_upper: f64::INFINITY,
        bound_log2: y.log2().to_f64(),
        status: SDistanceStatus::Indeterminate,
        out_of_scope: t.cmp_certain(&Enclosure::one()).is_ge(),
        boxes_examined: 0,
    };
    let mut point = vec![t.clone(), bound.clone()];
    point.resize(p, Enclosure::zero());
    let region = Region::Cusp { a: a.clone(), m, p };
    match region_contains(&region, &point)? {
        Membership::Yes => {
            report.distance_upper = 0.0;
            report.status = SDistanceStatus::Fail;
            return Ok(report);
        }
        Membership::Indeterminate => return Ok(report),
        Membership::No => {}
    }
    let dist_sq = |s: &Ball| -> Ball { s.sub(&tb).sqr().add(&ab.mul(&s.pow_u(m)).sub(&y).sqr()) };
    let hi0 = tb.mul_2si(1).upper();
    let mut stack = vec![(Float::new(prec), hi0)];
    let mut lower_sq = tb.sqr().lower();
    let mut upper_sq = tb.sqr().upper();
    let mut failed = false;
    let mut unresolved = false;
    while let Some((lo, hi)) = stack.pop() {
        report.boxes_examined += 1;
        if report.boxes_examined > MAX_BOXES {
            unresolved = true;
            break;
        }
        let boxv = Ball::from_endpoints(&lo, &hi, prec);
        let d = dist_sq(&boxv);
        let mid = boxv.mid().clone();
        let dm = dist_sq(&Ball::exact(mid.clone()));
        if dm.upper() < upper_sq {
            upper_sq = dm.upper();
        }
        if dm.upper() < bound_sq.lower() {
            failed = true;
            break;
        }
        if d.lower() > bound_sq.upper() {
            let l = d.lower();
            if l < lower_sq {
                lower_sq = l;
            }
            continue;
        }
        if hi.clone() - &lo <= Float::with_val(prec, Float::i_exp(1, -(prec as i32) + 16)) {
            unresolved = true;
            continue;
        }
        stack.push((mid.clone(), hi));
        stack.push((lo, mid));
    }
    report.distance_upper = upper_sq.to_f64().max(0.0).sqrt();
    report.status = if failed {
        SDistanceStatus::Fail
    } else if unresolved {
        SDistanceStatus::Indeterminate
    } else {
        report.distance_lower = lower_sq.to_f64().max(0.0).sqrt();
        SDistanceStatus::Pass
    };
    Ok(report)
}
