//! Certified checks of coefficient bounds, growth classification of
//! normalized coefficient sequences, and report emission.
//!
//! Every check compares log-magnitude enclosures; a cell is only marked
//! failed when the enclosures are disjoint on the wrong side.

mod growth;
mod suites;

use rayon::prelude::*;
use rug::Rational;
use serde::{Serialize, Serializer};

use crate::error::Result;
use crate::numerics::{log_compare, CertainOrdering, ComplexEnclosure, Enclosure, LogMag};
use crate::poleseries::Certificate;
use crate::weights::WeightSequence;

pub use growth::{
    cj_check, domination_check, growth_classifier, CjReport, DominantPart, DominationReport, DominationRow,
    GrowthReport, GrowthTrend, BOUNDED_SLOPE, LINEAR_GROWTH_MIN_POINTS, LINEAR_GROWTH_SLOPE,
};
pub use suites::{radial_sample_points, run_suite, uniform_grid, Suite, SuiteConfig, SuiteOutcome, SummaryCheck, LATTICE_J0_LIMIT};

/// Which side of the bound the coefficient must lie on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Upper,
    Lower,
}

impl BoundKind {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundKind::Upper => "upper",
            BoundKind::Lower => "lower",
        }
    }
}

/// Right-hand side of a bound on normalized coefficients of order `j`.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "formula", rename_all = "snake_case")]
pub enum BoundFormula {
    /// `A B^j M_j`.
    Geometric {
        #[serde(serialize_with = "ser_rational")]
        a: Rational,
        #[serde(serialize_with = "ser_rational")]
        b: Rational,
    },
    /// `c 3^-j M_j`.
    ThirdPowers {
        #[serde(serialize_with = "ser_rational")]
        c: Rational,
    },
    /// `|x|^-(j+1)`, with `|x|` the norm of the probe point.
    PoleDistance,
    /// `2^-j M_j`.
    HalfPowers,
    /// `2 e^j M_j`.
    TwoExp,
    /// `j^j M_j`.
    SelfPower,
    /// `(2n)^(2n) M_(2n)`, indexed by the order `j = 2n` of the derivative.
    DoubledSelfPower,
    /// `(4 p e^p (|x| + 1))^j M_j`.
    Radial { p: usize },
    /// `A B^j` without a weight factor.
    Custom {
        #[serde(serialize_with = "ser_rational")]
        a: Rational,
        #[serde(serialize_with = "ser_rational")]
        b: Rational,
    },
}

fn ser_rational<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

impl BoundFormula {
    /// Value of the bound at order `j` for a point of norm `x_norm`.
    pub fn evaluate(&self, m: &WeightSequence, j: usize, x_norm: &Enclosure, prec: u32) -> Result<Enclosure> {
        let ju = j as u32;
        let mj = || m.weight(j);
        Ok(match self {
            BoundFormula::Geometric { a, b } => {
                &(&Enclosure::Exact(a.clone()) * &Enclosure::Exact(b.clone()).pow_u(ju)) * &mj()?
            }
            BoundFormula::ThirdPowers { c } => {
                &(&Enclosure::Exact(c.clone()) * &Enclosure::from_ratio(1, 3).pow_u(ju)) * &mj()?
            }
            BoundFormula::PoleDistance => x_norm.abs().recip().pow_u(ju + 1),
            BoundFormula::HalfPowers => mj()?.mul_2si(-(j as i32)),
            BoundFormula::TwoExp => (&Enclosure::from_int(j as i64).exp(prec) * &mj()?).mul_2si(1),
            BoundFormula::SelfPower | BoundFormula::DoubledSelfPower => {
                &Enclosure::from_integer(crate::numerics::ipow(ju, ju)) * &mj()?
            }
            BoundFormula::Radial { p } => {
                let g = crate::multivar::radial_growth_constant(*p, x_norm, prec);
                &g.pow_u(ju) * &mj()?
            }
            BoundFormula::Custom { a, b } => &Enclosure::Exact(a.clone()) * &Enclosure::Exact(b.clone()).pow_u(ju),
        })
    }

    fn positive(&self) -> bool {
        match self {
            BoundFormula::Geometric { a, b } | BoundFormula::Custom { a, b } => *a > 0 && *b > 0,
            BoundFormula::ThirdPowers { c } => *c > 0,
            BoundFormula::Radial { p } => *p >= 1,
            _ => true,
        }
    }
}

/// A bound to check, optionally waived below an exception threshold.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundSpec {
    pub kind: BoundKind,
    #[serde(flatten)]
    pub formula: BoundFormula,
    /// Orders below this are recorded but excluded from the verdict.
    pub exception_threshold: Option<usize>,
}

impl BoundSpec {
    pub fn upper(formula: BoundFormula) -> Self {
        BoundSpec {
            kind: BoundKind::Upper,
            formula,
            exception_threshold: None,
        }
    }

    pub fn lower(formula: BoundFormula) -> Self {
        BoundSpec {
            kind: BoundKind::Lower,
            formula,
            exception_threshold: None,
        }
    }

    pub fn with_exceptions_below(mut self, j0: usize) -> Self {
        self.exception_threshold = Some(j0);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.formula.positive() {
            Ok(())
        } else {
            Err(crate::Error::InvalidArgument("bound parameters must be positive".into()))
        }
    }

    fn excepted(&self, j: usize) -> bool {
        self.exception_threshold.is_some_and(|t| j < t)
    }
}

/// Outcome of one (point, order) comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CellStatus {
    PassCertified,
    FailCertified,
    Indeterminate,
}

impl CellStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CellStatus::PassCertified => "pass-certified",
            CellStatus::FailCertified => "fail-certified",
            CellStatus::Indeterminate => "indeterminate",
        }
    }
}

/// One compared cell with its log2 data and truncation certificate.
#[derive(Clone, Debug, Serialize)]
pub struct Cell {
    pub point: String,
    pub order: usize,
    pub kind: BoundKind,
    pub lhs_log2_lo: f64,
    pub lhs_log2_hi: f64,
    /// The bound's log2, taken at its least favourable end.
    pub rhs_log2: f64,
    pub status: CellStatus,
    /// Certified distance to the bound in log2; positive on the allowed side.
    pub margin_log2: f64,
    pub excepted: bool,
    #[serde(rename = "K")]
    pub groups_used: Option<usize>,
    pub tail_bound: Option<String>,
    pub precision_bits: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Cell {
    /// Compare `|lhs|` against the positive bound `rhs`.
    pub fn judge(point: &str, order: usize, kind: BoundKind, lhs: &ComplexEnclosure, rhs: &Enclosure, prec: u32) -> Cell {
        let l = LogMag::from_complex(lhs, prec);
        let r = LogMag::from_enclosure(rhs, prec);
        let (status, margin, rhs_log2) = if let Some(ord) = exact_compare(lhs, rhs) {
            let pass = match kind {
                BoundKind::Upper => ord.is_le(),
                BoundKind::Lower => ord.is_ge(),
            };
            let margin = match kind {
                BoundKind::Upper => r.lo_f64() - l.hi_f64(),
                BoundKind::Lower => l.lo_f64() - r.hi_f64(),
            };
            let status = if pass { CellStatus::PassCertified } else { CellStatus::FailCertified };
            (status, margin, r.lo_f64())
        } else {
            match kind {
                BoundKind::Upper => {
                    let status = match log_compare(&l, &r) {
                        CertainOrdering::Less => CellStatus::PassCertified,
                        CertainOrdering::Greater => CellStatus::FailCertified,
                        _ => CellStatus::Indeterminate,
                    };
                    (status, r.lo_f64() - l.hi_f64(), r.lo_f64())
                }
                BoundKind::Lower => {
                    let status = match log_compare(&l, &r) {
                        CertainOrdering::Greater => CellStatus::PassCertified,
                        CertainOrdering::Less => CellStatus::FailCertified,
                        _ => CellStatus::Indeterminate,
                    };
                    (status, l.lo_f64() - r.hi_f64(), r.hi_f64())
                }
            }
        };
        Cell {
            point: point.to_string(),
            order,
            kind,
            lhs_log2_lo: l.lo_f64(),
            lhs_log2_hi: l.hi_f64(),
            rhs_log2,
            status,
            margin_log2: margin,
            excepted: false,
            groups_used: None,
            tail_bound: None,
            precision_bits: Some(prec),
            note: None,
        }
    }

    pub fn with_certificate(mut self, cert: &Certificate) -> Cell {
        self.groups_used = Some(cert.groups_used);
        self.tail_bound = Some(crate::numerics::parse::decimal_upper(&cert.tail_bound, 6));
        self.precision_bits = cert.precision_bits;
        self
    }

    /// A cell whose left side could not be evaluated.
    pub fn unevaluated(point: &str, order: usize, kind: BoundKind, reason: String) -> Cell {
        Cell {
            point: point.to_string(),
            order,
            kind,
            lhs_log2_lo: f64::NAN,
            lhs_log2_hi: f64::NAN,
            rhs_log2: f64::NAN,
            status: CellStatus::Indeterminate,
            margin_log2: f64::NAN,
            excepted: false,
            groups_used: None,
            tail_bound: None,
            precision_bits: None,
            note: Some(reason),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == CellStatus::PassCertified
    }
}

/// Exact comparison of `|lhs|` with `rhs` when both are rational.
fn exact_compare(lhs: &ComplexEnclosure, rhs: &Enclosure) -> Option<CertainOrdering> {
    let (re, im, r) = (lhs.re.as_exact()?, lhs.im.as_exact()?, rhs.as_exact()?);
    let l2 = Rational::from(re * re) + Rational::from(im * im);
    let r2 = Rational::from(r * r);
    Some(match l2.cmp(&r2) {
        std::cmp::Ordering::Less => CertainOrdering::Less,
        std::cmp::Ordering::Equal => CertainOrdering::Equal,
        std::cmp::Ordering::Greater => CertainOrdering::Greater,
    })
}

/// A point at which coefficients are probed.
#[derive(Clone, Debug)]
pub struct ProbePoint {
    pub label: String,
    /// Norm of the point, used by point-dependent bounds.
    pub norm: Enclosure,
}

impl ProbePoint {
    pub fn real(x: &Rational) -> Self {
        ProbePoint {
            label: x.to_string(),
            norm: Enclosure::Exact(x.clone().abs()),
        }
    }

    pub fn labelled(label: impl Into<String>, norm: Enclosure) -> Self {
        ProbePoint {
            label: label.into(),
            norm,
        }
    }
}

/// A coefficient value with its truncation record, if any.
#[derive(Clone, Debug)]
pub struct Sample {
    pub value: ComplexEnclosure,
    pub cert: Option<Certificate>,
}

impl Sample {
    pub fn new(value: ComplexEnclosure, cert: Certificate) -> Self {
        Sample { value, cert: Some(cert) }
    }

    pub fn bare(value: ComplexEnclosure) -> Self {
        Sample { value, cert: None }
    }
}

/// Something that can produce coefficients of the requested orders at the
/// `i`-th probe point, at a given working precision.
pub trait CoefficientSource: Sync {
    fn samples(&self, point: usize, orders: &[usize], prec: u32) -> Result<Vec<Sample>>;
}

impl<F> CoefficientSource for F
where
    F: Fn(usize, &[usize], u32) -> Result<Vec<Sample>> + Sync,
{
    fn samples(&self, point: usize, orders: &[usize], prec: u32) -> Result<Vec<Sample>> {
        self(point, orders, prec)
    }
}

/// All cells of one check, in (point, order) order.
#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub title: String,
    pub spec: Option<BoundSpec>,
    pub points: Vec<String>,
    pub orders: Vec<usize>,
    pub cells: Vec<Cell>,
    /// Orders waived by the exception threshold.
    pub excluded_orders: Vec<usize>,
    /// Per point, the smallest order from which every tested order passes.
    pub point_j0: Vec<Option<usize>>,
    /// Largest of the per-point thresholds (when all were found).
    pub found_j0: Option<usize>,
}

impl BoundReport {
    /// A report over externally judged cells.
    pub fn from_cells(title: impl Into<String>, cells: Vec<Cell>) -> Self {
        let mut points: Vec<String> = Vec::new();
        let mut orders: Vec<usize> = Vec::new();
        for c in &cells {
            if !points.contains(&c.point) {
                points.push(c.point.clone());
            }
            if !orders.contains(&c.order) {
                orders.push(c.order);
            }
        }
        orders.sort_unstable();
        BoundReport {
            title: title.into(),
            spec: None,
            points,
            orders,
            cells,
            excluded_orders: Vec::new(),
            point_j0: Vec::new(),
            found_j0: None,
        }
    }

    fn counted(&self) -> impl Iterator<Item = &Cell> {
        self.cells.iter().filter(|c| !c.excepted)
    }

    /// Every non-waived cell passed.
    pub fn all_pass(&self) -> bool {
        self.counted().all(Cell::passed)
    }

    pub fn any_fail(&self) -> bool {
        self.counted().any(|c| c.status == CellStatus::FailCertified)
    }

    pub fn count(&self, status: CellStatus) -> usize {
        self.counted().filter(|c| c.status == status).count()
    }

    pub fn min_margin_log2(&self) -> f64 {
        self.counted().map(|c| c.margin_log2).fold(f64::INFINITY, f64::min)
    }

    /// Find, per point, the smallest tested order `j0` such that every
    /// tested order `>= j0` passes.
    pub fn search_j0(&mut self) {
        self.point_j0 = self
            .points
            .iter()
            .map(|p| {
                let mut cells: Vec<&Cell> = self.cells.iter().filter(|c| &c.point == p).collect();
                cells.sort_by_key(|c| c.order);
                let mut j0 = None;
                for c in cells.iter().rev() {
                    if c.passed() {
                        j0 = Some(c.order);
                    } else {
                        break;
                    }
                }
                j0
            })
            .collect();
        self.found_j0 = if self.point_j0.iter().all(Option::is_some) {
            self.point_j0.iter().flatten().max().copied()
        } else {
            None
        };
    }

    /// Verdict: `Some(true)` if all pass, `Some(false)` if some cell failed
    /// with certainty, `None` if only undecided cells stand in the way.
    pub fn verdict(&self) -> Option<bool> {
        if self.all_pass() {
            Some(true)
        } else if self.any_fail() {
            Some(false)
        } else {
            None
        }
    }
}

/// Check `spec` on every (point, order) cell.
///
/// Points are evaluated in parallel; cells left undecided are evaluated once
/// more at doubled precision. Evaluation errors are recorded as undecided
/// cells with a note.
pub fn check_bound(
    source: &dyn CoefficientSource,
    weights: &WeightSequence,
    points: &[ProbePoint],
    orders: &[usize],
    spec: &BoundSpec,
    prec: u32,
) -> BoundReport {
    let eval = |i: usize, prec: u32| -> Vec<Cell> {
        let p = &points[i];
        match source.samples(i, orders, prec) {
            Ok(samples) => orders
                .iter()
                .zip(samples)
                .map(|(&j, s)| {
                    let cell = match spec.formula.evaluate(weights, j, &p.norm, prec) {
                        Ok(rhs) => Cell::judge(&p.label, j, spec.kind, &s.value, &rhs, prec),
                        Err(e) => Cell::unevaluated(&p.label, j, spec.kind, e.to_string()),
                    };
                    let mut cell = match &s.cert {
                        Some(c) => cell.with_certificate(c),
                        None => cell,
                    };
                    cell.excepted = spec.excepted(j);
                    cell
                })
                .collect(),
            Err(e) => orders
                .iter()
                .map(|&j| {
                    let mut c = Cell::unevaluated(&p.label, j, spec.kind, e.to_string());
                    c.excepted = spec.excepted(j);
                    c
                })
                .collect(),
        }
    };
    let per_point: Vec<Vec<Cell>> = (0..points.len())
        .into_par_iter()
        .map(|i| {
            let first = eval(i, prec);
            if first.iter().any(|c| !c.excepted && c.status == CellStatus::Indeterminate) {
                let second = eval(i, prec * 2);
                first
                    .into_iter()
                    .zip(second)
                    .map(|(a, b)| if a.status == CellStatus::Indeterminate { b } else { a })
                    .collect()
            } else {
                first
            }
        })
        .collect();
    let excluded_orders = orders.iter().copied().filter(|&j| spec.excepted(j)).collect();
    BoundReport {
        title: String::new(),
        spec: Some(spec.clone()),
        points: points.iter().map(|p| p.label.clone()).collect(),
        orders: orders.to_vec(),
        cells: per_point.into_iter().flatten().collect(),
        excluded_orders,
        point_j0: Vec::new(),
        found_j0: None,
    }
}

#[derive(Serialize)]
struct CsvRow<'a> {
    point: &'a str,
    order: usize,
    kind: &'a str,
    lhs_log2_lo: String,
    lhs_log2_hi: String,
    rhs_log2: String,
    status: &'a str,
    margin_log2: String,
}

fn fmt_log(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:.6}")
    }
}

/// Cells of all reports as CSV with the fixed column layout
/// `point,order,kind,lhs_log2_lo,lhs_log2_hi,rhs_log2,status,margin_log2`.
pub fn reports_to_csv(reports: &[BoundReport]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in reports {
        for c in &r.cells {
            w.serialize(CsvRow {
                point: &c.point,
                order: c.order,
                kind: c.kind.as_str(),
                lhs_log2_lo: fmt_log(c.lhs_log2_lo),
                lhs_log2_hi: fmt_log(c.lhs_log2_hi),
                rhs_log2: fmt_log(c.rhs_log2),
                status: c.status.as_str(),
                margin_log2: fmt_log(c.margin_log2),
            })
            .map_err(|e| crate::Error::Io(e.to_string()))?;
        }
    }
    let bytes = w.into_inner().map_err(|e| crate::Error::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// JSON mirror of the reports, including certificate fields.
pub fn reports_to_json(reports: &[BoundReport]) -> Result<String> {
    Ok(serde_json::to_string_pretty(reports)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poleseries::{build_thm1, EvalOptions, ExactPolicy};

    fn q(a: i64, b: i64) -> Rational {
        Rational::from((a, b))
    }

    fn thm1_source(series: &crate::poleseries::PoleSeries, xs: Vec<Rational>) -> impl CoefficientSource + '_ {
        move |i: usize, orders: &[usize], prec: u32| -> Result<Vec<Sample>> {
            let jmax = *orders.iter().max().unwrap();
            let opts = EvalOptions::default().with_prec(prec).with_exact(ExactPolicy::Never);
            let all = series.taylor_coeffs(&Enclosure::Exact(xs[i].clone()), jmax, &opts)?;
            Ok(orders.iter().map(|&j| Sample::new(all[j].0.clone(), all[j].1.clone())).collect())
        }
    }

    #[test]
    fn thm1_upper_bound_passes_on_small_grid() {
        let m = WeightSequence::factorial();
        let s = build_thm1(&m);
        let xs = vec![q(-1, 2), q(0, 1), q(3, 10)];
        let pts: Vec<ProbePoint> = xs.iter().map(ProbePoint::real).collect();
        let spec = BoundSpec::upper(BoundFormula::Geometric { a: q(9, 2), b: q(1, 1) });
        let orders: Vec<usize> = (0..=12).collect();
        let r = check_bound(&thm1_source(&s, xs), &m, &pts, &orders, &spec, 256);
        assert_eq!(r.cells.len(), 3 * 13);
        assert!(r.all_pass(), "{:?}", r.cells.iter().find(|c| !c.passed()));
        assert!(r.min_margin_log2() > 0.0);
    }

    #[test]
    fn wrong_bound_fails_with_certainty() {
        // coefficient of order 1 at 0 is far above 0.1 M_1 for the block series
        let m = WeightSequence::factorial();
        let s = crate::poleseries::build_block(&m);
        let xs = vec![q(0, 1)];
        let pts: Vec<ProbePoint> = xs.iter().map(ProbePoint::real).collect();
        let spec = BoundSpec::upper(BoundFormula::Geometric { a: q(1, 10), b: q(1, 1) });
        let src = move |_: usize, orders: &[usize], prec: u32| -> Result<Vec<Sample>> {
            let opts = EvalOptions::default().with_prec(prec).with_exact(ExactPolicy::Never);
            let all = s.taylor_coeffs(&Enclosure::Exact(xs[0].clone()), 3, &opts)?;
            Ok(orders.iter().map(|&j| Sample::new(all[j].0.clone(), all[j].1.clone())).collect())
        };
        let r = check_bound(&src, &m, &pts, &[1], &spec, 256);
        assert_eq!(r.cells[0].status, CellStatus::FailCertified);
        assert!(r.cells[0].margin_log2 < 0.0);
        assert_eq!(r.verdict(), Some(false));
    }

    #[test]
    fn exact_equality_passes_both_ways() {
        let one = ComplexEnclosure::one();
        let c = Cell::judge("x", 0, BoundKind::Upper, &one, &Enclosure::one(), 64);
        assert_eq!(c.status, CellStatus::PassCertified);
        let c = Cell::judge("x", 0, BoundKind::Lower, &one, &Enclosure::one(), 64);
        assert_eq!(c.status, CellStatus::PassCertified);
        let c = Cell::judge("x", 0, BoundKind::Lower, &one, &Enclosure::from_int(2), 64);
        assert_eq!(c.status, CellStatus::FailCertified);
    }

    #[test]
    fn overlapping_enclosures_are_undecided() {
        let v = ComplexEnclosure::real(Enclosure::from_f64(1.0, 64).widen(&rug::Float::with_val(64, 0.5), 64));
        let c = Cell::judge("x", 0, BoundKind::Upper, &v, &Enclosure::one(), 64);
        assert_eq!(c.status, CellStatus::Indeterminate);
    }

    #[test]
    fn exceptions_are_listed_and_waived() {
        let m = WeightSequence::factorial();
        let spec = BoundSpec::upper(BoundFormula::Custom { a: q(1, 1), b: q(1, 1) }).with_exceptions_below(2);
        // above the bound below order 2, below it from there on
        let src = |_: usize, orders: &[usize], _: u32| -> Result<Vec<Sample>> {
            Ok(orders
                .iter()
                .map(|&j| Sample::bare(ComplexEnclosure::real(Enclosure::from_ratio(if j < 2 { 4 } else { 1 }, 2))))
                .collect())
        };
        let pts = vec![ProbePoint::real(&q(0, 1))];
        let mut r = check_bound(&src, &m, &pts, &[0, 1, 2, 3], &spec, 64);
        assert_eq!(r.excluded_orders, vec![0, 1]);
        assert!(r.all_pass());
        r.search_j0();
        assert_eq!(r.found_j0, Some(2));
    }

    #[test]
    fn j0_search_finds_last_failure() {
        let cells = vec![
            Cell::judge("p", 0, BoundKind::Lower, &ComplexEnclosure::zero(), &Enclosure::one(), 64),
            Cell::judge("p", 1, BoundKind::Lower, &ComplexEnclosure::one(), &Enclosure::one(), 64),
            Cell::judge("p", 2, BoundKind::Lower, &ComplexEnclosure::one(), &Enclosure::from_ratio(1, 2), 64),
        ];
        let mut r = BoundReport::from_cells("t", cells);
        r.search_j0();
        assert_eq!(r.point_j0, vec![Some(1)]);
        assert_eq!(r.found_j0, Some(1));
    }

    #[test]
    fn formulas_evaluate() {
        let m = WeightSequence::factorial();
        let x = Enclosure::Exact(q(1, 2));
        let f = |f: BoundFormula, j| f.evaluate(&m, j, &x, 128).unwrap().to_f64();
        assert_eq!(f(BoundFormula::PoleDistance, 2), 8.0);
        assert_eq!(f(BoundFormula::HalfPowers, 3), 0.75);
        assert_eq!(f(BoundFormula::SelfPower, 3), 162.0);
        assert_eq!(f(BoundFormula::ThirdPowers { c: q(1, 2) }, 2), 1.0 / 9.0);
        assert!((f(BoundFormula::TwoExp, 1) - 2.0 * std::f64::consts::E).abs() < 1e-12);
        let g = 8.0 * 2f64.exp() * 1.5;
        assert!((f(BoundFormula::Radial { p: 2 }, 2) / (g * g * 2.0) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn csv_has_fixed_header_and_rows() {
        let cells = vec![Cell::judge("1/2", 3, BoundKind::Upper, &ComplexEnclosure::one(), &Enclosure::from_int(4), 64)];
        let csv = reports_to_csv(&[BoundReport::from_cells("t", cells)]).unwrap();
        let mut lines = csv.lines();
        assert_eq!(
            lines.next(),
            Some("point,order,kind,lhs_log2_lo,lhs_log2_hi,rhs_log2,status,margin_log2")
        );
        assert_eq!(
            lines.next(),
            Some("1/2,3,upper,0.000000,0.000000,2.000000,pass-certified,2.000000")
        );
        let json = reports_to_json(&[]).unwrap();
        assert_eq!(json, "[]");
    }
}
