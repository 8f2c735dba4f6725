//! Series of simple poles in the upper half plane, evaluated on the real
//! line together with all their derivatives.
//!
//! Two constructions are provided:
//!
//! * the **lattice** series: group `k` has weight `1/(3^k phi(m_k))` and
//!   `2 b_k + 1` poles at `a/b_k + i/m_k`, `a = -b_k..=b_k`;
//! * the **block** series: group `k` has weight `1/(2^k phi(m_k))` and a
//!   single pole at `i/m_k`.
//!
//! Everything is expressed through normalized Taylor coefficients
//! `f^(j)(x)/j! = sum_k coeff_k sum_z (-1)^j (x - z)^-(j+1)`, so factorials
//! never appear.

mod cj;
mod point;

use std::sync::{Arc, RwLock};

use rayon::prelude::*;
use rug::float::Round;
use rug::ops::Pow;
use rug::{Float, Rational};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::parse::decimal_upper;
use crate::numerics::{ipow, rnd, CertainOrdering, ComplexEnclosure, Enclosure, DEFAULT_PREC};
use crate::weights::WeightSequence;

pub use cj::{cj_enclosure, cj_sequence, CJ_DEFAULT_SPLIT};
pub use point::DyadicPoint;

/// Hard cap on the number of groups a tolerance request may use.
pub const DEFAULT_MAX_GROUPS: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SeriesKind {
    /// Poles on the dyadic lattice `a/b_k + i/m_k`.
    Lattice,
    /// One pole `i/m_k` per group.
    Block,
}

/// One group of poles sharing a weight and an imaginary part.
#[derive(Clone, Debug)]
pub struct PoleGroup {
    pub k: usize,
    pub coeff: Enclosure,
    /// Common imaginary part `1/m_k`.
    pub im: Enclosure,
    /// Real parts of the poles.
    pub re: Vec<Enclosure>,
}

impl PoleGroup {
    pub fn pole_count(&self) -> usize {
        self.re.len()
    }

    pub fn poles(&self) -> impl Iterator<Item = ComplexEnclosure> + '_ {
        self.re
            .iter()
            .map(|r| ComplexEnclosure::new(r.clone(), self.im.clone()))
    }
}

/// How many groups to sum.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum Truncation {
    /// Sum groups `1..=K`.
    Groups(usize),
    /// Smallest `K` whose tail majorant is at most `tol * M_j`.
    Tol(f64),
}

/// Arithmetic backend selection.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ExactPolicy {
    /// Exact when the point and the weights are rational and the work is small.
    Auto,
    Always,
    Never,
}

#[derive(Clone, Copy, Debug)]
pub struct EvalOptions {
    pub prec: u32,
    pub truncation: Truncation,
    pub exact: ExactPolicy,
    pub max_groups: usize,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            prec: DEFAULT_PREC,
            truncation: Truncation::Tol(1e-20),
            exact: ExactPolicy::Auto,
            max_groups: DEFAULT_MAX_GROUPS,
        }
    }
}

impl EvalOptions {
    pub fn with_prec(mut self, prec: u32) -> Self {
        self.prec = prec;
        self
    }

    pub fn with_truncation(mut self, t: Truncation) -> Self {
        self.truncation = t;
        self
    }

    pub fn with_exact(mut self, e: ExactPolicy) -> Self {
        self.exact = e;
        self
    }
}

/// Record of how a coefficient was truncated.
#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub groups_used: usize,
    /// Upper bound on the magnitude of the discarded groups.
    #[serde(serialize_with = "ser_upper")]
    pub tail_bound: Float,
    /// `None` when the partial sum was computed exactly.
    pub precision_bits: Option<u32>,
}

fn ser_upper<S: serde::Serializer>(x: &Float, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&decimal_upper(x, 6))
}

/// A pole series with lazily built, memoized groups.
#[derive(Clone, Debug)]
pub struct PoleSeries(Arc<SeriesInner>);

#[derive(Debug)]
struct SeriesInner {
    kind: SeriesKind,
    weights: WeightSequence,
    groups: RwLock<Vec<Arc<PoleGroup>>>,
}

/// The lattice series over `M`.
pub fn build_thm1(m: &WeightSequence) -> PoleSeries {
    PoleSeries::new(SeriesKind::Lattice, m)
}

/// The single-pole block series over `M`.
pub fn build_block(m: &WeightSequence) -> PoleSeries {
    PoleSeries::new(SeriesKind::Block, m)
}

impl PoleSeries {
    pub fn new(kind: SeriesKind, m: &WeightSequence) -> Self {
        PoleSeries(Arc::new(SeriesInner {
            kind,
            weights: m.clone(),
            groups: RwLock::new(Vec::new()),
        }))
    }

    pub fn kind(&self) -> SeriesKind {
        self.0.kind
    }

    pub fn weights(&self) -> &WeightSequence {
        &self.0.weights
    }

    /// Group `k >= 1`.
    pub fn group(&self, k: usize) -> Result<Arc<PoleGroup>> {
        Ok(self.groups(k)?[k - 1].clone())
    }

    /// Groups `1..=count`.
    pub fn groups(&self, count: usize) -> Result<Vec<Arc<PoleGroup>>> {
        {
            let g = self.0.groups.read().unwrap();
            if g.len() >= count {
                return Ok(g[..count].to_vec());
            }
        }
        let mut g = self.0.groups.write().unwrap();
        if g.len() < count {
            let b = match self.0.kind {
                SeriesKind::Lattice => self.0.weights.b_prefix(count)?,
                SeriesKind::Block => Vec::new(),
            };
            while g.len() < count {
                let k = g.len() + 1;
                let bk = b.get(k - 1).copied();
                g.push(Arc::new(self.make_group(k, bk)?));
            }
        }
        Ok(g[..count].to_vec())
    }

    fn make_group(&self, k: usize, bk: Option<u64>) -> Result<PoleGroup> {
        let m = &self.0.weights;
        let mk = m.ratio(k)?;
        // phi(m_k) = m_k^(k+1) / M_k for log-convex M
        let phi = &mk.pow_u(k as u32 + 1) / &m.weight(k)?;
        let base = match self.0.kind {
            SeriesKind::Lattice => 3,
            SeriesKind::Block => 2,
        };
        let scale = Enclosure::from_integer(ipow(base, k as u32));
        let coeff = (&scale * &phi).recip();
        let im = mk.recip();
        let re = match (self.0.kind, bk) {
            (SeriesKind::Lattice, Some(b)) => {
                let b = b as i64;
                (-b..=b).map(|a| Enclosure::from_ratio(a, b)).collect()
            }
            _ => vec![Enclosure::zero()],
        };
        Ok(PoleGroup { k, coeff, im, re })
    }

    /// Closed-form majorant of the discarded groups `k > K`, at scale `M_j`.
    pub fn tail_majorant(&self, j: usize, big_k: usize) -> Result<Enclosure> {
        Ok(&self.tail_factor(big_k) * &self.0.weights.weight(j)?)
    }

    /// The tail majorant divided by `M_j`.
    pub fn tail_factor(&self, big_k: usize) -> Enclosure {
        let k1 = big_k as u32 + 1;
        match self.0.kind {
            SeriesKind::Lattice => {
                // sum_{k>K} (2^{k+1} + 1)/3^k
                let a = Rational::from((ipow(2, k1), ipow(3, k1)));
                let b = Rational::from((1, ipow(3, k1)));
                Enclosure::Exact(a * 6u32 + b * Rational::from((3, 2)))
            }
            SeriesKind::Block => Enclosure::Exact(Rational::from((1, ipow(2, big_k as u32)))),
        }
    }

    /// Smallest `K` whose tail factor is at most `tol`.
    pub fn groups_for_tol(&self, tol: f64, max_groups: usize) -> Result<usize> {
        let target = Enclosure::from_f64(tol, DEFAULT_PREC);
        // the factor is decreasing in K, so bisect on [1, max]
        let fits = |k: usize| self.tail_factor(k).cmp_certain(&target).is_le();
        if !fits(max_groups) {
            return Err(Error::TailNotSmallEnough { budget: max_groups });
        }
        let (mut lo, mut hi) = (1usize, max_groups);
        if fits(lo) {
            return Ok(lo);
        }
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if fits(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(hi)
    }

    /// Tail bound used inside evaluations. For the block series away from
    /// the origin the sharper `2^-K |x|^-(j+1)` also applies.
    fn tail_bound_at(&self, x: &Enclosure, j: usize, big_k: usize, prec: u32) -> Result<Float> {
        let maj = self.tail_majorant(j, big_k)?.upper(prec);
        if self.0.kind == SeriesKind::Block {
            let ax = x.mag_lower(prec);
            if ax > 0 {
                let pw: Float = rnd(prec, (&ax).pow(j as u32 + 1), Round::Down);
                let f = self.tail_factor(big_k).upper(prec);
                let alt: Float = rnd(prec, &f / &pw, Round::Up);
                if alt < maj {
                    return Ok(alt);
                }
            }
        }
        Ok(maj)
    }

    /// Total number of poles in groups `1..=K`.
    pub fn pole_count(&self, big_k: usize) -> Result<usize> {
        Ok(self.groups(big_k)?.iter().map(|g| g.pole_count()).sum())
    }

    fn resolve_groups(&self, opts: &EvalOptions) -> Result<usize> {
        match opts.truncation {
            Truncation::Groups(k) => Ok(k.max(1)),
            Truncation::Tol(t) => self.groups_for_tol(t, opts.max_groups),
        }
    }

    fn check_domain(&self, x: &Enclosure) -> Result<()> {
        if self.0.kind == SeriesKind::Lattice {
            let inside = x.mag_upper(DEFAULT_PREC) < 1;
            if !inside {
                return Err(Error::InvalidArgument(
                    "lattice series is evaluated on (-1, 1) only".into(),
                ));
            }
        }
        Ok(())
    }

    fn use_exact(&self, x: &Enclosure, jmax: usize, big_k: usize, policy: ExactPolicy) -> Result<bool> {
        let rational = x.is_exact() && self.0.weights.is_exact();
        Ok(match policy {
            ExactPolicy::Never => false,
            ExactPolicy::Always => {
                if !rational {
                    return Err(Error::InvalidArgument(
                        "exact evaluation needs a rational point and rational weights".into(),
                    ));
                }
                true
            }
            ExactPolicy::Auto => rational && self.pole_count(big_k)? * (jmax + 1) <= 2000,
        })
    }

    /// Partial sums over groups `1..=K` of the normalized coefficients of
    /// orders `0..=jmax`, without any tail.
    ///
    /// Exact when `exact` is set (and the inputs are rational), otherwise
    /// ball arithmetic at `prec`.
    pub fn partial_sums(
        &self,
        x: &Enclosure,
        jmax: usize,
        big_k: usize,
        exact: bool,
        prec: u32,
    ) -> Result<Vec<ComplexEnclosure>> {
        let x = if exact { x.clone() } else { x.ballify(x.prec().unwrap_or(prec)) };
        let groups = self.groups(big_k)?;
        let per_group: Vec<Vec<ComplexEnclosure>> = groups
            .par_iter()
            .map(|g| group_sums(g, &x, jmax, exact, prec))
            .collect();
        let mut acc = vec![ComplexEnclosure::zero(); jmax + 1];
        for g in per_group {
            for (a, v) in acc.iter_mut().zip(g) {
                *a = a.add(&v);
            }
        }
        Ok(acc)
    }

    /// Certified normalized coefficients `f^(j)(x)/j!` for `j = 0..=jmax`.
    pub fn taylor_coeffs(
        &self,
        x: &Enclosure,
        jmax: usize,
        opts: &EvalOptions,
    ) -> Result<Vec<(ComplexEnclosure, Certificate)>> {
        self.check_domain(x)?;
        let big_k = self.resolve_groups(opts)?;
        let exact = self.use_exact(x, jmax, big_k, opts.exact)?;
        let sums = self.partial_sums(x, jmax, big_k, exact, opts.prec)?;
        let prec = opts.prec;
        sums.into_iter()
            .enumerate()
            .map(|(j, s)| {
                let tail = self.tail_bound_at(x, j, big_k, prec)?;
                let cert = Certificate {
                    groups_used: big_k,
                    tail_bound: tail.clone(),
                    precision_bits: if exact { None } else { Some(prec) },
                };
                Ok((s.widen(&tail, prec), cert))
            })
            .collect()
    }

    /// Lowest group whose lattice contains the dyadic `t`
    /// (lattice series only): the first `k` with `b_k >= 2^q`.
    pub fn lattice_entry_group(&self, t: &DyadicPoint, search: usize) -> Result<Option<usize>> {
        if self.0.kind != SeriesKind::Lattice {
            return Ok(None);
        }
        let b = self.0.weights.b_prefix(search)?;
        let need = 1u64.checked_shl(t.exponent()).unwrap_or(u64::MAX);
        Ok(b.iter().position(|&bk| bk >= need).map(|i| i + 1))
    }
}

/// `sum_z (-1)^j (x - z)^-(j+1)` scaled by the group weight, for `j <= jmax`.
fn group_sums(
    g: &PoleGroup,
    x: &Enclosure,
    jmax: usize,
    exact: bool,
    prec: u32,
) -> Vec<ComplexEnclosure> {
    let mut acc = vec![ComplexEnclosure::zero(); jmax + 1];
    for re in &g.re {
        let d = ComplexEnclosure::new(x - re, g.im.neg());
        let d = if exact { d } else { d.ballify(prec) };
        // (x - z)^-(j+1) = w^(j+1); the sign (-1)^j is applied per order below
        let w = d.recip();
        let mut pw = w.clone();
        for (j, a) in acc.iter_mut().enumerate() {
            if j > 0 {
                pw = pw.mul(&w);
            }
            *a = a.add(&pw);
        }
    }
    for (j, a) in acc.iter_mut().enumerate() {
        let s = if j % 2 == 1 { g.coeff.neg() } else { g.coeff.clone() };
        *a = a.scale(&s);
    }
    acc
}

/// Normalized coefficient of order `j` with its certificate.
pub fn taylor_coeff(
    series: &PoleSeries,
    x: &Enclosure,
    j: usize,
    opts: &EvalOptions,
) -> Result<(ComplexEnclosure, Certificate)> {
    Ok(series.taylor_coeffs(x, j, opts)?.pop().unwrap())
}

/// Normalized coefficient of the real-valued variant `Re f + Im f`.
pub fn real_variant_coeff(
    series: &PoleSeries,
    x: &Enclosure,
    j: usize,
    opts: &EvalOptions,
) -> Result<(Enclosure, Certificate)> {
    let (c, cert) = taylor_coeff(series, x, j, opts)?;
    Ok((real_variant(&c), cert))
}

/// `Re z + Im z`.
pub fn real_variant(c: &ComplexEnclosure) -> Enclosure {
    &c.re + &c.im
}

/// `|Re| <= |Im|/3` or `|Im| <= |Re|/3`, certified; `None` if undecided.
pub fn one_part_dominates(c: &ComplexEnclosure, prec: u32) -> Option<bool> {
    let third = Enclosure::from_ratio(1, 3);
    let re = c.re.abs();
    let im = c.im.abs();
    let a = re.cmp_certain(&(&third * &im));
    let b = im.cmp_certain(&(&third * &re));
    let _ = prec;
    if a.is_le() || b.is_le() {
        Some(true)
    } else if a == CertainOrdering::Greater && b == CertainOrdering::Greater {
        Some(false)
    } else {
        None
    }
}
