use serde::Serialize;

use super::WeightSequence;
use crate::error::{Error, Result};
use crate::numerics::{CertainOrdering, Enclosure};

pub const DEFAULT_SCAN_LIMIT: usize = 100_000;

/// `phi(alpha) = sup_l alpha^(l+1) / M_l` together with where it is attained.
#[derive(Clone, Debug)]
pub struct PhiResult {
    pub value: Enclosure,
    /// Smallest index attaining the supremum.
    pub argmax: usize,
    /// The next index attains the same value (certified only for exact data).
    pub is_tie: bool,
}

/// Evaluate `phi(alpha)` by scanning the unimodal term sequence.
///
/// Consecutive terms have quotient `alpha / m_l`, so they increase while
/// `m_l < alpha` and decrease once `m_l > alpha`. The scan stops at the
/// first ratio certainly above `alpha`. When ratios cannot be separated
/// from `alpha` at the working precision, every candidate term is kept and
/// the value is their enclosed maximum.
pub fn phi(m: &WeightSequence, alpha: &Enclosure, scan_limit: usize) -> Result<PhiResult> {
    if alpha.cmp_certain(&Enclosure::zero()) != CertainOrdering::Greater {
        return Err(Error::InvalidArgument("phi needs a positive argument".into()));
    }
    // term_l = alpha^(l+1) / M_l, built incrementally
    let mut term = alpha / &m.weight(0)?;
    let mut pending: Option<(usize, Enclosure)> = None;
    for l in 0..scan_limit {
        let ratio = m.ratio(l)?;
        match ratio.cmp_certain(alpha) {
            CertainOrdering::Less => {
                term = &(&term * alpha) / &ratio;
            }
            CertainOrdering::Equal => {
                let (argmax, value) = pending.unwrap_or((l, term));
                return Ok(PhiResult {
                    value,
                    argmax,
                    is_tie: true,
                });
            }
            CertainOrdering::Greater => {
                let (argmax, value) = match pending {
                    Some((i, v)) => (i, v.max(&term)),
                    None => (l, term),
                };
                return Ok(PhiResult {
                    value,
                    argmax,
                    is_tie: false,
                });
            }
            CertainOrdering::Indeterminate => {
                pending = Some(match pending {
                    Some((i, v)) => (i, v.max(&term)),
                    None => (l, term.clone()),
                });
                term = &(&term * alpha) / &ratio;
            }
        }
    }
    Err(Error::AnalyticLikeOrScanTooShort { scan_limit })
}

#[derive(Clone, Debug, Serialize)]
pub struct PhiIdentityReport {
    pub n: usize,
    /// `M_n * phi(m_n)`.
    #[serde(skip)]
    pub lhs: Enclosure,
    /// `m_n^(n+1)`.
    #[serde(skip)]
    pub rhs: Enclosure,
    pub exact: bool,
    pub ok: bool,
    /// Largest relative radius of the two sides (0 when exact).
    pub rel_width: f64,
}

/// Check `M_n * phi(m_n) = m_n^(n+1)`, with `phi` computed by scanning.
pub fn phi_identity_check(m: &WeightSequence, n: usize) -> Result<PhiIdentityReport> {
    let mn = m.ratio(n)?;
    let p = phi(m, &mn, DEFAULT_SCAN_LIMIT)?;
    let lhs = &m.weight(n)? * &p.value;
    let rhs = mn.pow_u(n as u32 + 1);
    let exact = lhs.is_exact() && rhs.is_exact();
    let ok = if exact {
        lhs.cmp_certain(&rhs) == CertainOrdering::Equal
    } else {
        lhs.overlaps(&rhs)
    };
    let rel_width = lhs.rel_rad().max(rhs.rel_rad());
    Ok(PhiIdentityReport {
        n,
        lhs,
        rhs,
        exact,
        ok,
        rel_width,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::Rational;

    fn brute_phi(m: &WeightSequence, alpha: &Rational, upto: usize) -> (Rational, usize) {
        let mut best = Rational::new();
        let mut arg = 0;
        let mut pow = alpha.clone();
        for l in 0..upto {
            let t = Rational::from(&pow / m.weight(l).unwrap().as_exact().unwrap());
            if t > best {
                best = t;
                arg = l;
            }
            pow *= alpha;
        }
        (best, arg)
    }

    #[test]
    fn factorial_examples() {
        let m = WeightSequence::factorial();
        let r = phi(&m, &Enclosure::from_int(2), 100).unwrap();
        assert_eq!(r.value.as_exact().unwrap(), &Rational::from(4));
        assert_eq!((r.argmax, r.is_tie), (1, true));
        let r = phi(&m, &Enclosure::from_int(1), 100).unwrap();
        assert_eq!(r.value.as_exact().unwrap(), &Rational::from(1));
        assert_eq!(r.argmax, 0);
        let r = phi(&m, &Enclosure::from_int(3), 100).unwrap();
        assert_eq!(r.value.as_exact().unwrap(), &Rational::from((27, 2)));
        assert_eq!((r.argmax, r.is_tie), (2, true));
    }

    #[test]
    fn agrees_with_brute_force() {
        let m = WeightSequence::factorial();
        for (a, b) in [(5, 2), (7, 3), (10, 1), (1, 3), (33, 4)] {
            let alpha = Rational::from((a, b));
            let r = phi(&m, &Enclosure::Exact(alpha.clone()), 1000).unwrap();
            let upto = 10 * (r.argmax + 1) + 10;
            let (best, arg) = brute_phi(&m, &alpha, upto);
            assert_eq!(r.value.as_exact().unwrap(), &best);
            assert_eq!(r.argmax, arg);
        }
    }

    #[test]
    fn analytic_like_table_runs_out() {
        let t = WeightSequence::table_unchecked("flat", vec![Rational::from(1); 50]);
        let e = phi(&t, &Enclosure::from_int(2), 10).unwrap_err();
        assert_eq!(e, Error::AnalyticLikeOrScanTooShort { scan_limit: 10 });
    }

    #[test]
    fn identity_examples() {
        let m = WeightSequence::factorial();
        for n in 0..3 {
            let r = phi_identity_check(&m, n).unwrap();
            assert!(r.ok && r.exact, "n = {n}");
        }
    }

    #[test]
    fn identity_qfamily_ball() {
        let m = WeightSequence::qfamily();
        for n in [0, 1, 5, 30] {
            let r = phi_identity_check(&m, n).unwrap();
            assert!(r.ok && !r.exact && r.rel_width < 2f64.powi(-100), "n = {n}");
        }
    }
}
