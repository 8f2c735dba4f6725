//! Weighted sums `f = sum_k 2^-k f_k` of shifted building blocks whose
//! constants are chosen so that derivatives at a sequence of witness
//! points grow faster than any bound of Denjoy-Carleman shape.
//!
//! * [`Assembly1D`]: blocks `f_k(x) = h_k(x - a_k)` on the line with
//!   witnesses `a_n = M_n^(-1/(2n))`.
//! * [`AssemblyPD`]: radial blocks `h_k(y) = g_k(|y - a_k|^2)` on `R^p`
//!   with witnesses on the flat curve `(t, exp(-1/t^2), 0, ...)`.
//!
//! Block `k` is the single-pole series over the sequence `M^k`, which
//! equals `1` below index `k` and `c_k^(2n-2k+1) M_n` from `k` on.

mod cache;
mod line;
mod radial;
mod region;

use std::sync::Arc;

use rug::Rational;

use crate::error::{Error, Result};
use crate::numerics::parse::{decimal_upper, parse_rational};
use crate::numerics::{ComplexEnclosure, Enclosure, LogMag, DEFAULT_PREC};
use crate::poleseries::{Certificate, EvalOptions, ExactPolicy, PoleSeries, Truncation, DEFAULT_MAX_GROUPS};
use crate::weights::WeightSequence;

pub use cache::{write_atomic, CacheEntry, ConstantCache};
pub use line::{assembly_coeff, build_thm2, select_c, Assembly1D, AssemblyPoint};
pub use radial::{build_masterthm, select_c_pd, AssemblyPD, PointPD, DEFAULT_START_MARGIN};
pub use region::{region_contains, s_distance_check, Membership, Region, SDistanceReport, SDistanceStatus};

/// How many witness points past `n` are summed explicitly before the
/// interference sum switches to its geometric tail.
pub const INTERFERENCE_LOOKAHEAD: usize = 60;

/// Default absolute accuracy of assembly evaluations, in units of `M_j`.
pub const DEFAULT_ASSEMBLY_TOL: f64 = 1e-12;

/// Significant digits kept when a constant is frozen into a decimal.
const CONSTANT_DIGITS: usize = 20;

/// Construction parameters shared by both assemblies.
#[derive(Clone, Debug)]
pub struct AssemblyOptions {
    pub prec: u32,
    /// Factor applied above the minimal admissible constant.
    pub slack: Rational,
    pub cache: Option<Arc<ConstantCache>>,
}

impl Default for AssemblyOptions {
    fn default() -> Self {
        AssemblyOptions {
            prec: DEFAULT_PREC,
            slack: Rational::from(2),
            cache: None,
        }
    }
}

impl AssemblyOptions {
    pub fn with_prec(mut self, prec: u32) -> Self {
        self.prec = prec;
        self
    }

    pub fn with_slack(mut self, slack: Rational) -> Self {
        self.slack = slack;
        self
    }

    pub fn with_cache(mut self, cache: Arc<ConstantCache>) -> Self {
        self.cache = Some(cache);
        self
    }

    fn validate(&self) -> Result<()> {
        if self.slack < 1 {
            return Err(Error::InvalidArgument(format!("slack must be >= 1, got {}", self.slack)));
        }
        Ok(())
    }
}

/// A selected block constant.
#[derive(Clone, Debug)]
pub struct ConstantChoice {
    pub n: usize,
    /// The constant, rounded up to a short decimal.
    pub c: Rational,
    /// Upper bound on the interference sum the constant had to beat.
    pub t_bound: Rational,
    pub from_cache: bool,
}

/// Strictly log-convex version of `m` (unchanged when it already is).
fn strict_weights(m: &WeightSequence) -> Result<WeightSequence> {
    let depth = m.len().map(|l| l.saturating_sub(2).min(64)).unwrap_or(64);
    if depth == 0 || m.check_log_convex(depth, true)?.ok {
        Ok(m.clone())
    } else {
        Ok(m.regularize_strict())
    }
}

/// Upper end of `x` as a short decimal, and its exact value.
fn freeze_upper(x: &Enclosure, prec: u32) -> Result<(Rational, String)> {
    let u = x.upper(prec);
    if !u.is_finite() {
        return Err(Error::NeedMorePrecision { bits: prec });
    }
    let s = decimal_upper(&u, CONSTANT_DIGITS);
    Ok((parse_rational(&s)?, s))
}

fn log2_hi(x: &Enclosure, prec: u32) -> f64 {
    LogMag::from_enclosure(x, prec).hi_f64()
}

fn log2_lo(x: &Enclosure, prec: u32) -> f64 {
    LogMag::from_enclosure(x, prec).lo_f64()
}

/// Normalized block coefficients of orders `0..=order` at `y`, with just
/// enough groups that each order's tail is below `2^budget[n]`.
fn block_jet(
    series: &PoleSeries,
    y: &Enclosure,
    order: usize,
    budget: &[f64],
    prec: u32,
) -> Result<Vec<(ComplexEnclosure, Certificate)>> {
    let w = series.weights();
    let dist = if y.contains_zero() { f64::NEG_INFINITY } else { log2_lo(&y.abs(), prec) };
    let mut excess = f64::NEG_INFINITY;
    for (n, b) in budget.iter().enumerate().take(order + 1) {
        let mut size = log2_hi(&w.weight(n)?, prec);
        if dist.is_finite() {
            size = size.min(-(n as f64 + 1.0) * dist);
        }
        excess = excess.max(size - b);
    }
    let groups = if excess.is_finite() {
        (excess.ceil() as i64 + 2).clamp(4, DEFAULT_MAX_GROUPS as i64) as usize
    } else {
        4
    };
    let opts = EvalOptions::default()
        .with_prec(prec)
        .with_truncation(Truncation::Groups(groups))
        .with_exact(ExactPolicy::Never);
    series.taylor_coeffs(y, order, &opts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strict_weights_passes_strict_sequences_through() {
        let g = WeightSequence::factorial();
        assert_eq!(strict_weights(&g).unwrap().descriptor(), g.descriptor());
        let flat = WeightSequence::from_table(
            "t",
            [1, 1, 2, 4, 8, 32, 256, 4096].iter().map(|&v| Rational::from(v)).collect(),
        )
        .unwrap();
        assert_ne!(strict_weights(&flat).unwrap().descriptor(), flat.descriptor());
    }

    #[test]
    fn frozen_constant_is_an_upper_bound() {
        let x = Enclosure::from_ratio(1, 3).ballify(256);
        let (q, s) = freeze_upper(&x, 256).unwrap();
        assert_eq!(parse_rational(&s).unwrap(), q);
        assert!(q > Rational::from((1, 3)));
        assert!(q - Rational::from((1, 3)) < Rational::from((1, 10u64.pow(19))));
    }
}
