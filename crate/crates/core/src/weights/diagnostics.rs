use serde::Serialize;

use super::{Family, WeightSequence};
use crate::error::{Error, Result};
use crate::numerics::{CertainOrdering, Enclosure};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ClassStatus {
    QuasianalyticKnown,
    NonQuasianalyticKnown,
    Unknown,
}

#[derive(Clone, Debug)]
pub struct ClassVerdict {
    pub status: ClassStatus,
    /// `sum_{n <= depth} M_n / ((n+1) M_{n+1})`.
    pub partial_sum: Enclosure,
    /// Last index actually summed.
    pub depth: usize,
}

/// Quasianalyticity verdict: closed form for known families, otherwise
/// only the certified partial sum of the defining series.
pub fn quasianalytic_diagnostic(m: &WeightSequence, depth: usize) -> Result<ClassVerdict> {
    let mut sum = Enclosure::zero();
    let mut reached = 0;
    for n in 0..=depth {
        let r = match m.ratio(n) {
            Ok(r) => r,
            Err(Error::OutOfTable { .. }) => break,
            Err(e) => return Err(e),
        };
        sum = &sum + &(&r * &Enclosure::from_int(n as i64 + 1)).recip();
        reached = n;
    }
    Ok(ClassVerdict {
        status: known_status(m),
        partial_sum: sum,
        depth: reached,
    })
}

fn known_status(m: &WeightSequence) -> ClassStatus {
    match m.family() {
        // the series is comparable to sum n^{-1-s}
        Family::Gevrey { .. } => ClassStatus::NonQuasianalyticKnown,
        // the series is comparable to sum 1/(n ln n)
        Family::QFamily => ClassStatus::QuasianalyticKnown,
        Family::Table { .. } => ClassStatus::Unknown,
        // both constructions define the same class as their input
        Family::Regularized(inner) | Family::Mk { inner, .. } => known_status(inner),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Trend {
    Constant,
    Increasing,
    Decreasing,
    Mixed,
}

#[derive(Clone, Debug)]
pub struct InclusionReport {
    /// `max_{1 <= n <= depth} (M_n / N_n)^(1/n)`.
    pub sup_so_far: Enclosure,
    pub argsup: usize,
    pub trend: Trend,
    pub values: Vec<Enclosure>,
}

/// Finite-window evidence for `C^M` inside `C^N`: the running supremum of
/// `(M_n / N_n)^(1/n)`, which stays bounded exactly when the inclusion holds.
pub fn inclusion_diagnostic(
    m: &WeightSequence,
    n_seq: &WeightSequence,
    depth: usize,
) -> Result<InclusionReport> {
    if depth == 0 {
        return Err(Error::InvalidArgument("depth must be at least 1".into()));
    }
    let prec = m.prec().max(n_seq.prec());
    let mut values = Vec::with_capacity(depth);
    for n in 1..=depth {
        let q = &m.weight(n)? / &n_seq.weight(n)?;
        values.push(q.root(n as u32, prec));
    }
    let mut sup = values[0].clone();
    let mut argsup = 1;
    for (i, v) in values.iter().enumerate().skip(1) {
        if v.cmp_certain(&sup) == CertainOrdering::Greater {
            argsup = i + 1;
        }
        sup = sup.max(v);
    }
    let steps: Vec<CertainOrdering> =
        values.windows(2).map(|w| w[1].cmp_certain(&w[0])).collect();
    let all = |f: fn(CertainOrdering) -> bool| steps.iter().all(|&o| f(o));
    let trend = if all(|o| o == CertainOrdering::Equal) {
        Trend::Constant
    } else if all(CertainOrdering::is_ge) {
        Trend::Increasing
    } else if all(CertainOrdering::is_le) {
        Trend::Decreasing
    } else {
        Trend::Mixed
    };
    Ok(InclusionReport {
        sup_so_far: sup,
        argsup,
        trend,
        values,
    })
}
