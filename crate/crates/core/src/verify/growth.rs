use serde::Serialize;

use super::{BoundKind, BoundReport, Cell, CellStatus};
use crate::error::{Error, Result};
use crate::numerics::{ComplexEnclosure, Enclosure, LogMag};
use crate::poleseries::{cj_sequence, CJ_DEFAULT_SPLIT};
use crate::weights::WeightSequence;

/// Fitted slope of `rho_j` at or above which growth counts as linear.
pub const LINEAR_GROWTH_SLOPE: f64 = 0.5;
/// Fewest orders on which a linear-growth verdict is given.
pub const LINEAR_GROWTH_MIN_POINTS: usize = 8;
/// Fitted slope of the upper `rho_j` below which the sequence counts as bounded.
pub const BOUNDED_SLOPE: f64 = 0.1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GrowthTrend {
    Bounded,
    LinearGrowth,
    Other,
}

/// `rho_j = (|c_j| / M_j)^(1/j)` over a window of orders, with a trend
/// classification from least-squares slopes.
#[derive(Clone, Debug, Serialize)]
pub struct GrowthReport {
    pub orders: Vec<usize>,
    /// Certified lower ends of `rho_j`.
    pub rho_lo: Vec<f64>,
    /// Certified upper ends of `rho_j`.
    pub rho_hi: Vec<f64>,
    pub sup_rho: f64,
    /// Slope fitted to the lower ends (drives the linear-growth verdict).
    pub slope_lo: f64,
    /// Slope fitted to the upper ends (drives the bounded verdict).
    pub slope_hi: f64,
    pub trend: GrowthTrend,
}

pub(super) fn ls_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        0.0
    } else {
        sxy / sxx
    }
}

/// Classify the growth of normalized coefficients `(j, c_j)` relative to `M`.
///
/// Needs at least five orders, all `>= 1`.
pub fn growth_classifier(coeffs: &[(usize, ComplexEnclosure)], m: &WeightSequence, prec: u32) -> Result<GrowthReport> {
    if coeffs.len() < 5 {
        return Err(Error::InvalidArgument(format!(
            "growth classification needs at least 5 orders, got {}",
            coeffs.len()
        )));
    }
    if coeffs.iter().any(|(j, _)| *j == 0) {
        return Err(Error::InvalidArgument("rho_j is defined for j >= 1 only".into()));
    }
    let mut orders = Vec::new();
    let mut rho_lo = Vec::new();
    let mut rho_hi = Vec::new();
    for (j, c) in coeffs {
        let lc = LogMag::from_complex(c, prec);
        let lm = LogMag::from_enclosure(&m.weight(*j)?, prec);
        let jf = *j as f64;
        orders.push(*j);
        rho_lo.push(((lc.lo_f64() - lm.hi_f64()) / jf).exp2());
        rho_hi.push(((lc.hi_f64() - lm.lo_f64()) / jf).exp2());
    }
    let xs: Vec<f64> = orders.iter().map(|&j| j as f64).collect();
    let slope_lo = ls_slope(&xs, &rho_lo);
    let slope_hi = ls_slope(&xs, &rho_hi);
    let trend = if orders.len() >= LINEAR_GROWTH_MIN_POINTS && slope_lo >= LINEAR_GROWTH_SLOPE {
        GrowthTrend::LinearGrowth
    } else if slope_hi < BOUNDED_SLOPE {
        GrowthTrend::Bounded
    } else {
        GrowthTrend::Other
    };
    let sup_rho = rho_hi.iter().copied().fold(0.0, f64::max);
    Ok(GrowthReport {
        orders,
        rho_lo,
        rho_hi,
        sup_rho,
        slope_lo,
        slope_hi,
        trend,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DominantPart {
    Real,
    Imaginary,
}

#[derive(Clone, Debug, Serialize)]
pub struct DominationRow {
    pub order: usize,
    pub status: CellStatus,
    /// The part that certifiably dominates, when one does.
    pub dominant: Option<DominantPart>,
}

/// Per-order test of `min(|Re|, |Im|) <= max(|Re|, |Im|) / 3`.
#[derive(Clone, Debug, Serialize)]
pub struct DominationReport {
    pub rows: Vec<DominationRow>,
    /// Smallest order from which every tested order passes.
    pub j0: Option<usize>,
    /// From `j0` on, the dominant part depends only on the parity of `j`.
    pub parity_consistent: bool,
    pub cells: BoundReport,
}

/// Check that one part of each coefficient dominates the other by a factor 3.
///
/// The orders must be consecutive.
pub fn domination_check(point: &str, coeffs: &[(usize, ComplexEnclosure)], prec: u32) -> Result<DominationReport> {
    if coeffs.windows(2).any(|w| w[1].0 != w[0].0 + 1) {
        return Err(Error::InvalidArgument("domination window must be consecutive orders".into()));
    }
    let mut rows = Vec::new();
    let mut cells = Vec::new();
    for (j, c) in coeffs {
        let re = c.re.abs();
        let im = c.im.abs();
        // test the smaller part (by midpoint) against a third of the larger
        let re_small = re.to_f64() <= im.to_f64();
        let (small, big, part) = if re_small {
            (&re, &im, DominantPart::Imaginary)
        } else {
            (&im, &re, DominantPart::Real)
        };
        let third = &Enclosure::from_ratio(1, 3) * big;
        let cell = Cell::judge(point, *j, BoundKind::Upper, &ComplexEnclosure::real(small.clone()), &third, prec);
        rows.push(DominationRow {
            order: *j,
            status: cell.status,
            dominant: cell.passed().then_some(part),
        });
        cells.push(cell);
    }
    let mut j0 = None;
    for r in rows.iter().rev() {
        if r.status == CellStatus::PassCertified {
            j0 = Some(r.order);
        } else {
            break;
        }
    }
    let parity_consistent = match j0 {
        Some(j0) => [0, 1].iter().all(|&parity| {
            let mut parts = rows.iter().filter(|r| r.order >= j0 && r.order % 2 == parity).map(|r| r.dominant);
            match parts.next() {
                Some(first) => parts.all(|p| p == first),
                None => true,
            }
        }),
        None => false,
    };
    Ok(DominationReport {
        rows,
        j0,
        parity_consistent,
        cells: BoundReport::from_cells(format!("one part dominates at {point}"), cells),
    })
}

/// Certified `C_1..C_jmax` with the decrease and smallness checks.
#[derive(Clone, Debug, Serialize)]
pub struct CjReport {
    #[serde(skip)]
    pub values: Vec<Enclosure>,
    /// `C_j < C_(j-1)` certified for all `4 <= j <= jmax`.
    pub decreasing_from_3: bool,
    /// `C_20 < 1/8`, when `jmax >= 20`.
    pub c20_below_eighth: Option<bool>,
    pub cells: BoundReport,
}

impl CjReport {
    pub fn passed(&self) -> bool {
        self.decreasing_from_3 && self.c20_below_eighth != Some(false)
    }
}

/// Enclose `C_j = 2 sum_{n>=1} (n^2+1)^-((j+1)/2)` for `j <= jmax` and check
/// that the sequence decreases from `j = 3` on and that `C_20 < 1/8`.
pub fn cj_check(jmax: u32, prec: u32) -> Result<CjReport> {
    if jmax < 2 {
        return Err(Error::InvalidArgument("cj check needs jmax >= 2".into()));
    }
    let values = cj_sequence(jmax, CJ_DEFAULT_SPLIT, prec)?;
    let mut cells = Vec::new();
    for j in 4..=jmax as usize {
        cells.push(Cell::judge(
            "C_j vs C_(j-1)",
            j,
            BoundKind::Upper,
            &ComplexEnclosure::real(values[j - 1].clone()),
            &values[j - 2],
            prec,
        ));
    }
    let decreasing_from_3 = cells.iter().all(Cell::passed);
    let c20_below_eighth = if jmax >= 20 {
        let c = Cell::judge(
            "C_j vs 1/8",
            20,
            BoundKind::Upper,
            &ComplexEnclosure::real(values[19].clone()),
            &Enclosure::from_ratio(1, 8),
            prec,
        );
        let ok = c.passed();
        cells.push(c);
        Some(ok)
    } else {
        None
    };
    Ok(CjReport {
        values,
        decreasing_from_3,
        c20_below_eighth,
        cells: BoundReport::from_cells("lattice interference constants", cells),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(v: f64) -> ComplexEnclosure {
        ComplexEnclosure::real(Enclosure::from_f64(v, 128))
    }

    #[test]
    fn zero_sequence_is_bounded() {
        let m = WeightSequence::factorial();
        let c: Vec<_> = (1..=10).map(|j| (j, ComplexEnclosure::zero())).collect();
        let r = growth_classifier(&c, &m, 128).unwrap();
        assert_eq!(r.sup_rho, 0.0);
        assert_eq!(r.trend, GrowthTrend::Bounded);
    }

    #[test]
    fn self_power_growth_is_linear() {
        // c_j = j^j M_j gives rho_j = j
        let m = WeightSequence::factorial();
        let c: Vec<_> = (1..=10usize)
            .map(|j| {
                let v = &Enclosure::from_integer(crate::numerics::ipow(j as u32, j as u32)) * &m.weight(j).unwrap();
                (j, ComplexEnclosure::real(v))
            })
            .collect();
        let r = growth_classifier(&c, &m, 128).unwrap();
        assert!((r.slope_lo - 1.0).abs() < 1e-9);
        assert_eq!(r.trend, GrowthTrend::LinearGrowth);
        assert!((r.sup_rho - 10.0).abs() < 1e-9);
    }

    #[test]
    fn geometric_growth_is_bounded() {
        // c_j = 4.5 * 2^j M_j: rho_j = 2 * 4.5^(1/j) decreases
        let m = WeightSequence::factorial();
        let c: Vec<_> = (1..=20usize)
            .map(|j| {
                let v = &(&Enclosure::from_ratio(9, 2) * &Enclosure::from_int(2).pow_u(j as u32)) * &m.weight(j).unwrap();
                (j, ComplexEnclosure::real(v))
            })
            .collect();
        let r = growth_classifier(&c, &m, 128).unwrap();
        assert_eq!(r.trend, GrowthTrend::Bounded);
    }

    #[test]
    fn classifier_needs_five_orders() {
        let m = WeightSequence::factorial();
        let c: Vec<_> = (1..=4).map(|j| (j, real(1.0))).collect();
        assert!(growth_classifier(&c, &m, 128).is_err());
    }

    #[test]
    fn purely_real_sequence_is_dominated() {
        let c: Vec<_> = (3..=8).map(|j| (j, real(j as f64))).collect();
        let r = domination_check("x", &c, 128).unwrap();
        assert_eq!(r.j0, Some(3));
        assert!(r.rows.iter().all(|r| r.dominant == Some(DominantPart::Real)));
        assert!(r.parity_consistent);
    }

    #[test]
    fn balanced_parts_fail_everywhere() {
        let one_plus_i = ComplexEnclosure::new(Enclosure::one(), Enclosure::one());
        let c: Vec<_> = (0..5).map(|j| (j, one_plus_i.clone())).collect();
        let r = domination_check("x", &c, 128).unwrap();
        assert!(r.rows.iter().all(|r| r.status == CellStatus::FailCertified));
        assert_eq!(r.j0, None);
    }

    #[test]
    fn alternating_parts_are_parity_consistent() {
        let c: Vec<_> = (0..6)
            .map(|j| {
                let z = if j % 2 == 0 {
                    ComplexEnclosure::new(Enclosure::from_int(10), Enclosure::one())
                } else {
                    ComplexEnclosure::new(Enclosure::one(), Enclosure::from_int(10))
                };
                (j, z)
            })
            .collect();
        let r = domination_check("x", &c, 128).unwrap();
        assert_eq!(r.j0, Some(0));
        assert!(r.parity_consistent);
        assert_eq!(r.rows[1].dominant, Some(DominantPart::Imaginary));
        assert!(domination_check("x", &[(0, real(1.0)), (2, real(1.0))], 128).is_err());
    }

    #[test]
    fn cj_decreases_and_is_small() {
        let r = cj_check(24, 256).unwrap();
        assert!(r.decreasing_from_3);
        assert_eq!(r.c20_below_eighth, Some(true));
        assert!(r.passed());
        // C_1 = pi coth(pi) - 1, independently in floating point
        let pi = std::f64::consts::PI;
        let want = pi / pi.tanh() - 1.0;
        let c1 = &r.values[0];
        assert!(c1.lower(64).to_f64() <= want + 1e-14 && want - 1e-14 <= c1.upper(64).to_f64());
        assert!(c1.upper(64).to_f64() - c1.lower(64).to_f64() < 1e-6);
        assert!(cj_check(1, 256).is_err());
    }
}
