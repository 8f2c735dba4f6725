//! Named verification runs over the constructions, each producing bound
//! reports (one CSV row per cell) plus summary checks.

use std::sync::Arc;

use rayon::prelude::*;
use rug::Rational;
use serde::Serialize;

use super::{
    check_bound, cj_check, domination_check, growth_classifier, BoundFormula, BoundKind, BoundReport, BoundSpec, Cell,
    CellStatus, GrowthReport, GrowthTrend, ProbePoint, Sample,
};
use crate::assemblies::{
    s_distance_check, Assembly1D, AssemblyOptions, AssemblyPD, AssemblyPoint, ConstantCache, PointPD, SDistanceStatus,
};
use crate::error::{Error, Result};
use crate::multivar::{norm, MultiIndex};
use crate::numerics::{with_precision_retry, Ball, ComplexEnclosure, Enclosure, LogMag, MAX_PREC};
use crate::poleseries::{build_block, build_thm1, EvalOptions, ExactPolicy, PoleSeries, Truncation};
use crate::weights::WeightSequence;

/// Largest threshold accepted for the lattice series' lower bound and
/// domination window.
pub const LATTICE_J0_LIMIT: usize = 20;

/// Accuracy used where lower bounds as small as `3^-j M_j` must be resolved.
const FINE_TOL: f64 = 1e-40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    /// Upper, lower and domination bounds of the lattice pole series.
    Lattice,
    /// Sup, pole-distance and lower bounds of the single-pole block series.
    Block,
    /// Witness divergence and the bound at the origin for the line assembly.
    Divergence,
    /// Derivative bounds and witness divergence for the radial assembly.
    Radial,
    /// Distance from the flat curve to the cusp region.
    Sdistance,
    /// The lattice interference constants.
    Cj,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Lattice => "lattice",
            Suite::Block => "block",
            Suite::Divergence => "divergence",
            Suite::Radial => "radial",
            Suite::Sdistance => "sdistance",
            Suite::Cj => "cj",
        }
    }

    pub const ALL: [Suite; 6] = [
        Suite::Lattice,
        Suite::Block,
        Suite::Divergence,
        Suite::Radial,
        Suite::Sdistance,
        Suite::Cj,
    ];
}

impl std::str::FromStr for Suite {
    type Err = Error;

    /// Accepts the suite names, plus `prop31` and `masterthm` as aliases
    /// for `lattice` and `radial`.
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "lattice" | "prop31" => Suite::Lattice,
            "block" => Suite::Block,
            "divergence" => Suite::Divergence,
            "radial" | "masterthm" => Suite::Radial,
            "sdistance" => Suite::Sdistance,
            "cj" => Suite::Cj,
            _ => {
                return Err(Error::Parse(format!(
                    "unknown suite {s:?}; expected one of lattice, block, divergence, radial, sdistance, cj"
                )))
            }
        })
    }
}

/// Parameters of a suite run. Unset limits take suite-specific defaults.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub weights: WeightSequence,
    pub prec: u32,
    /// Absolute accuracy of evaluations, in units of `M_j`.
    pub tol: f64,
    pub jmax: Option<usize>,
    pub nmax: Option<usize>,
    pub dim: usize,
    pub t_grid: Vec<Rational>,
    pub cache: Option<Arc<ConstantCache>>,
}

impl SuiteConfig {
    pub fn new(weights: WeightSequence) -> Self {
        SuiteConfig {
            weights,
            prec: crate::numerics::DEFAULT_PREC,
            tol: crate::assemblies::DEFAULT_ASSEMBLY_TOL,
            jmax: None,
            nmax: None,
            dim: 2,
            t_grid: (1..=8).map(|i| Rational::from((i, 20))).collect(),
            cache: None,
        }
    }

    fn assembly_options(&self) -> AssemblyOptions {
        let o = AssemblyOptions::default().with_prec(self.prec);
        match &self.cache {
            Some(c) => o.with_cache(c.clone()),
            None => o,
        }
    }
}

/// A named pass/fail/undecided summary check.
#[derive(Clone, Debug, Serialize)]
pub struct SummaryCheck {
    pub name: String,
    pub status: CellStatus,
    pub detail: String,
}

impl SummaryCheck {
    fn new(name: impl Into<String>, ok: Option<bool>, detail: String) -> Self {
        SummaryCheck {
            name: name.into(),
            status: match ok {
                Some(true) => CellStatus::PassCertified,
                Some(false) => CellStatus::FailCertified,
                None => CellStatus::Indeterminate,
            },
            detail,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteOutcome {
    pub suite: Suite,
    pub reports: Vec<BoundReport>,
    pub growth: Vec<(String, GrowthReport)>,
    pub checks: Vec<SummaryCheck>,
}

impl SuiteOutcome {
    fn new(suite: Suite) -> Self {
        SuiteOutcome {
            suite,
            reports: Vec::new(),
            growth: Vec::new(),
            checks: Vec::new(),
        }
    }

    fn push_report(&mut self, title: &str, mut r: BoundReport) {
        r.title = title.to_string();
        self.checks.push(SummaryCheck::new(
            title,
            r.verdict(),
            format!(
                "{} cells: {} pass, {} fail, {} undecided; min margin {:.3} bits",
                r.cells.iter().filter(|c| !c.excepted).count(),
                r.count(CellStatus::PassCertified),
                r.count(CellStatus::FailCertified),
                r.count(CellStatus::Indeterminate),
                r.min_margin_log2()
            ),
        ));
        self.reports.push(r);
    }

    /// Overall status: failed if any check failed, undecided if any check
    /// is undecided, passed otherwise.
    pub fn status(&self) -> CellStatus {
        if self.checks.iter().any(|c| c.status == CellStatus::FailCertified) {
            CellStatus::FailCertified
        } else if self.checks.iter().any(|c| c.status == CellStatus::Indeterminate) {
            CellStatus::Indeterminate
        } else {
            CellStatus::PassCertified
        }
    }

    pub fn passed(&self) -> bool {
        self.status() == CellStatus::PassCertified
    }
}

pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<SuiteOutcome> {
    match suite {
        Suite::Lattice => lattice_suite(cfg),
        Suite::Block => block_suite(cfg),
        Suite::Divergence => divergence_suite(cfg),
        Suite::Radial => radial_suite(cfg),
        Suite::Sdistance => sdistance_suite(cfg),
        Suite::Cj => cj_suite(cfg),
    }
}

fn q(a: i64, b: i64) -> Rational {
    Rational::from((a, b))
}

/// Coefficients of a pole series at rational points.
fn series_source<'a>(
    series: &'a PoleSeries,
    xs: &'a [Rational],
    truncation: Truncation,
) -> impl Fn(usize, &[usize], u32) -> Result<Vec<Sample>> + Sync + 'a {
    move |i, orders, prec| {
        let jmax = orders.iter().copied().max().unwrap_or(0);
        let opts = EvalOptions::default()
            .with_prec(prec)
            .with_truncation(truncation)
            .with_exact(ExactPolicy::Auto);
        let all = series.taylor_coeffs(&Enclosure::Exact(xs[i].clone()), jmax, &opts)?;
        Ok(orders.iter().map(|&j| Sample::new(all[j].0.clone(), all[j].1.clone())).collect())
    }
}

/// Truncation accuracy (in units of `M_j`) that leaves a lower bound
/// `3^-j M_j / 2` with about twenty bits to spare at every order `<= jmax`.
pub fn lower_bound_tol(jmax: usize, tol: f64) -> f64 {
    tol.min(3f64.powi(-(jmax as i32)) * 2f64.powi(-20))
}

/// Mark the cells below each point's found threshold as waived.
fn waive_below_found(r: &mut BoundReport) {
    r.search_j0();
    for (p, j0) in r.points.clone().iter().zip(r.point_j0.clone()) {
        if let Some(j0) = j0 {
            for c in r.cells.iter_mut().filter(|c| &c.point == p && c.order < j0) {
                c.excepted = true;
            }
        }
    }
    if let Some(j0) = r.found_j0 {
        r.excluded_orders = r.orders.iter().copied().filter(|&j| j < j0).collect();
    }
}

/// Uniform grid of `count` rationals from `lo` to `hi` inclusive.
pub fn uniform_grid(lo: &Rational, hi: &Rational, count: usize) -> Vec<Rational> {
    if count <= 1 {
        return vec![lo.clone()];
    }
    let step = Rational::from(hi - lo) / Rational::from(count as u64 - 1);
    (0..count).map(|i| Rational::from(lo + Rational::from(&step * Rational::from(i as u64)))).collect()
}

fn lattice_suite(cfg: &SuiteConfig) -> Result<SuiteOutcome> {
    let jmax = cfg.jmax.unwrap_or(40);
    let m = &cfg.weights;
    let series = build_thm1(m);
    let mut out = SuiteOutcome::new(Suite::Lattice);
    let orders: Vec<usize> = (0..=jmax).collect();

    let grid = uniform_grid(&q(-19, 20), &q(19, 20), 21);
    let pts: Vec<ProbePoint> = grid.iter().map(ProbePoint::real).collect();
    let spec = BoundSpec::upper(BoundFormula::Geometric { a: q(9, 2), b: q(1, 1) });
    let src = series_source(&series, &grid, Truncation::Tol(cfg.tol));
    out.push_report("lattice upper bound 9/2 M_j", check_bound(&src, m, &pts, &orders, &spec, cfg.prec));

    // one evaluation per dyadic feeds both the lower bound and the
    // domination check; the accuracy is tied to the smallest bound in play
    let dyadics = vec![q(0, 1), q(1, 2), q(-3, 4)];
    let fine = lower_bound_tol(jmax, cfg.tol);
    let fine_opts = |prec: u32| {
        EvalOptions::default()
            .with_prec(prec)
            .with_truncation(Truncation::Tol(fine))
            .with_exact(ExactPolicy::Auto)
    };
    let at_dyadics: Vec<Vec<(ComplexEnclosure, crate::poleseries::Certificate)>> = dyadics
        .par_iter()
        .map(|t| series.taylor_coeffs(&Enclosure::Exact(t.clone()), jmax, &fine_opts(cfg.prec)))
        .collect::<Result<_>>()?;
    let pts: Vec<ProbePoint> = dyadics.iter().map(ProbePoint::real).collect();
    let spec = BoundSpec::lower(BoundFormula::ThirdPowers { c: q(1, 2) });
    let src = |i: usize, orders: &[usize], prec: u32| -> Result<Vec<Sample>> {
        let fresh;
        let all = if prec == cfg.prec {
            &at_dyadics[i]
        } else {
            fresh = series.taylor_coeffs(&Enclosure::Exact(dyadics[i].clone()), jmax, &fine_opts(prec))?;
            &fresh
        };
        Ok(orders.iter().map(|&j| Sample::new(all[j].0.clone(), all[j].1.clone())).collect())
    };
    let mut lower = check_bound(&src, m, &pts, &orders, &spec, cfg.prec);
    waive_below_found(&mut lower);
    let j0_ok = lower.found_j0.map(|j| j <= LATTICE_J0_LIMIT);
    out.checks.push(SummaryCheck::new(
        "lattice lower-bound threshold",
        j0_ok,
        format!("per-point thresholds {:?} (limit {LATTICE_J0_LIMIT})", lower.point_j0),
    ));
    out.push_report("lattice lower bound 3^-j M_j / 2 at dyadics", lower);

    let dom: Vec<_> = dyadics
        .iter()
        .zip(&at_dyadics)
        .map(|(t, c)| {
            let seq: Vec<_> = c.iter().enumerate().map(|(j, (v, _))| (j, v.clone())).collect();
            domination_check(&t.to_string(), &seq, cfg.prec)
        })
        .collect::<Result<_>>()?;
    let mut cells = Vec::new();
    for (t, d) in dyadics.iter().zip(&dom) {
        let ok = d.j0.map(|j| j <= LATTICE_J0_LIMIT && d.parity_consistent);
        out.checks.push(SummaryCheck::new(
            format!("lattice domination at {t}"),
            ok,
            format!("from order {:?}, parity-consistent: {}", d.j0, d.parity_consistent),
        ));
        let j0 = d.j0.unwrap_or(usize::MAX);
        cells.extend(d.cells.cells.iter().cloned().map(|mut c| {
            c.excepted = c.order < j0;
            c
        }));
    }
    let mut r = BoundReport::from_cells("", cells);
    r.search_j0();
    out.reports.push(BoundReport {
        title: "lattice one-part domination".into(),
        ..r
    });
    Ok(out)
}

fn block_suite(cfg: &SuiteConfig) -> Result<SuiteOutcome> {
    let jmax = cfg.jmax.unwrap_or(60);
    let m = &cfg.weights;
    let series = build_block(m);
    let mut out = SuiteOutcome::new(Suite::Block);
    let orders: Vec<usize> = (0..=jmax).collect();
    let xs = vec![q(0, 1), q(1, 10), q(-1, 10), q(1, 1), q(-1, 1), q(10, 1), q(-10, 1)];
    let trunc = Truncation::Tol(cfg.tol.min(1e-30));
    let pts: Vec<ProbePoint> = xs.iter().map(ProbePoint::real).collect();
    let src = series_source(&series, &xs, trunc);
    let spec = BoundSpec::upper(BoundFormula::Geometric { a: q(1, 1), b: q(1, 1) });
    out.push_report("block bounded by M_j", check_bound(&src, m, &pts, &orders, &spec, cfg.prec));

    let nz: Vec<Rational> = xs[1..].to_vec();
    let pts: Vec<ProbePoint> = nz.iter().map(ProbePoint::real).collect();
    let src = series_source(&series, &nz, trunc);
    let spec = BoundSpec::upper(BoundFormula::PoleDistance);
    out.push_report("block bounded by |x|^-(j+1)", check_bound(&src, m, &pts, &orders, &spec, cfg.prec));

    let zero = vec![q(0, 1)];
    let pts = vec![ProbePoint::real(&zero[0])];
    let src = series_source(&series, &zero, Truncation::Tol(FINE_TOL));
    let spec = BoundSpec::lower(BoundFormula::HalfPowers);
    let orders: Vec<usize> = (1..=jmax).collect();
    out.push_report("block at 0 at least 2^-j M_j", check_bound(&src, m, &pts, &orders, &spec, cfg.prec));
    Ok(out)
}

fn divergence_suite(cfg: &SuiteConfig) -> Result<SuiteOutcome> {
    let nmax = cfg.nmax.unwrap_or(8);
    let jmax = cfg.jmax.unwrap_or(25);
    let m = &cfg.weights;
    let mut out = SuiteOutcome::new(Suite::Divergence);
    let asm = Assembly1D::new(m, cfg.assembly_options())?;

    // witness cells, one order each, with the precision retry
    let witness: Vec<(ComplexEnclosure, crate::poleseries::Certificate, u32)> = (1..=nmax)
        .into_par_iter()
        .map(|n| {
            with_precision_retry(cfg.prec, MAX_PREC, |prec| {
                let a = if prec == cfg.prec { asm.clone() } else { Assembly1D::new(m, cfg.assembly_options().with_prec(prec))? };
                let (v, c) = a.coeffs(&AssemblyPoint::Witness(n), n, cfg.tol)?.pop().unwrap();
                Ok((v, c, prec))
            })
        })
        .collect::<Result<_>>()?;
    let spec = BoundSpec::lower(BoundFormula::SelfPower);
    let mut cells = Vec::new();
    for (i, (v, cert, prec)) in witness.iter().enumerate() {
        let n = i + 1;
        let rhs = spec.formula.evaluate(m, n, &Enclosure::zero(), *prec)?;
        cells.push(Cell::judge(&format!("a_{n}"), n, BoundKind::Lower, v, &rhs, *prec).with_certificate(cert));
    }
    let mut r = BoundReport::from_cells("", cells);
    r.spec = Some(spec);
    out.push_report("witness coefficients at least n^n M_n", r);

    let seq: Vec<(usize, ComplexEnclosure)> = witness.iter().enumerate().map(|(i, w)| (i + 1, w.0.clone())).collect();
    if seq.len() >= 5 {
        let g = growth_classifier(&seq, m, cfg.prec)?;
        out.checks.push(SummaryCheck::new(
            "witness growth is linear",
            Some(g.trend == GrowthTrend::LinearGrowth),
            format!("slope {:.3}, sup rho {:.3}", g.slope_lo, g.sup_rho),
        ));
        out.growth.push(("witnesses".into(), g));
    }

    let zero = AssemblyPoint::Real(Enclosure::zero());
    let at0 = asm.coeffs(&zero, jmax, cfg.tol)?;
    let src = |_: usize, orders: &[usize], _: u32| -> Result<Vec<Sample>> {
        Ok(orders.iter().map(|&j| Sample::new(at0[j].0.clone(), at0[j].1.clone())).collect())
    };
    let pts = vec![ProbePoint::real(&q(0, 1))];
    let spec = BoundSpec::upper(BoundFormula::TwoExp);
    let orders: Vec<usize> = (0..=jmax).collect();
    out.push_report("coefficients at 0 at most 2 e^j M_j", check_bound(&src, m, &pts, &orders, &spec, cfg.prec));
    let seq: Vec<(usize, ComplexEnclosure)> = (1..=jmax).map(|j| (j, at0[j].0.clone())).collect();
    if seq.len() >= 5 {
        out.growth.push(("origin".into(), growth_classifier(&seq, m, cfg.prec)?));
    }
    Ok(out)
}

/// Ten points with `0 <= x_1 <= x_2` and ten with `x_1 <= 0`, in the plane
/// spanned by the first two axes.
pub fn radial_sample_points(p: usize) -> (Vec<Vec<Rational>>, Vec<Vec<Rational>>) {
    let pad = |mut v: Vec<Rational>| {
        v.resize(p, Rational::new());
        v
    };
    let cusp = (1..=10).map(|k| pad(vec![q(k, 20), q(k, 10)])).collect();
    let left = (0..10)
        .map(|k| pad(vec![q(-k, 10), q(if k % 2 == 0 { k } else { -k }, 20)]))
        .collect();
    (cusp, left)
}

/// Largest `|D^alpha f| / |alpha|!` over `|alpha| = j`, for each `j <= order`.
fn radial_order_maxima(asm: &AssemblyPD, x: &[Rational], order: u32, tol: f64) -> Result<Vec<(ComplexEnclosure, u32)>> {
    let prec = asm.options().prec;
    let alphas = MultiIndex::all_up_to(asm.dim(), order);
    let pt = PointPD::Real(x.iter().cloned().map(Enclosure::Exact).collect());
    let d = asm.derivatives(&pt, &alphas, tol)?;
    let mut out = Vec::new();
    for j in 0..=order {
        let mut lo = rug::Float::new(prec);
        let mut hi = rug::Float::new(prec);
        for (a, (v, _)) in alphas.iter().zip(&d) {
            if a.order() == j {
                lo = lo.max(&v.abs_lower(prec));
                hi = hi.max(&v.abs_upper(prec));
            }
        }
        let e = if hi.is_zero() {
            Enclosure::zero()
        } else {
            Enclosure::Ball(Ball::from_endpoints(&lo, &hi, prec))
        };
        out.push((ComplexEnclosure::real(e), j));
    }
    Ok(out)
}

/// Round `x > 0` up to a rational with a few significant digits.
fn round_up(x: f64) -> Rational {
    let s = crate::numerics::parse::decimal_upper(&rug::Float::with_val(64, x), 6);
    crate::numerics::parse::parse_rational(&s).expect("decimal parses")
}

fn radial_suite(cfg: &SuiteConfig) -> Result<SuiteOutcome> {
    let order = cfg.jmax.unwrap_or(10) as u32;
    let nmax = cfg.nmax.unwrap_or(5);
    let p = cfg.dim;
    let m = &cfg.weights;
    let prec = cfg.prec;
    let mut out = SuiteOutcome::new(Suite::Radial);
    let asm = AssemblyPD::new(m, p, cfg.assembly_options())?;
    let (cusp, left) = radial_sample_points(p);

    for (name, set) in [("cusp x_2 >= x_1 >= 0", &cusp), ("half-plane x_1 <= 0", &left)] {
        let maxima: Vec<Vec<(ComplexEnclosure, u32)>> = set
            .par_iter()
            .map(|x| radial_order_maxima(&asm, x, order, cfg.tol))
            .collect::<Result<_>>()?;
        // fit log2(max / M_j) ~ log2 A + j log2 B over the whole set
        let mut ys = vec![f64::NEG_INFINITY; order as usize + 1];
        for pm in &maxima {
            for (v, j) in pm {
                let l = LogMag::from_complex(v, prec).hi_f64() - LogMag::from_enclosure(&m.weight(*j as usize)?, prec).lo_f64();
                ys[*j as usize] = ys[*j as usize].max(l);
            }
        }
        let xs: Vec<f64> = (1..=order).map(f64::from).collect();
        let slope = super::growth::ls_slope(&xs, &ys[1..]).max(0.0);
        let b = round_up(slope.exp2());
        let lb = b.to_f64().log2();
        let la = ys.iter().enumerate().map(|(j, y)| y - j as f64 * lb).fold(f64::NEG_INFINITY, f64::max);
        let a = round_up((la + 1.0).exp2());

        let radius = set
            .iter()
            .map(|x| norm(&x.iter().cloned().map(Enclosure::Exact).collect::<Vec<_>>(), prec))
            .fold(Enclosure::zero(), |acc, r| acc.max(&r));
        let g = asm.growth_at(&radius);
        let cell = Cell::judge(
            &format!("fitted B on {name}"),
            0,
            BoundKind::Upper,
            &ComplexEnclosure::real(Enclosure::Exact(b.clone())),
            &g,
            prec,
        );
        out.checks.push(SummaryCheck::new(
            format!("fitted B within growth constant on {name}"),
            Some(cell.passed()),
            format!("A = {a}, B = {b}, 4pe^p(|K|+a) = {:.4e}", g.to_f64()),
        ));

        let spec = BoundSpec::upper(BoundFormula::Geometric { a, b });
        let mut cells = vec![cell];
        for (x, pm) in set.iter().zip(&maxima) {
            let label = format!("({})", x.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","));
            for (v, j) in pm {
                let rhs = spec.formula.evaluate(m, *j as usize, &Enclosure::zero(), prec)?;
                cells.push(Cell::judge(&label, *j as usize, BoundKind::Upper, v, &rhs, prec));
            }
        }
        let mut r = BoundReport::from_cells("", cells);
        r.spec = Some(spec);
        out.push_report(&format!("derivative bounds on {name}"), r);
    }

    let n0 = asm.start_index();
    let wit: Vec<Cell> = (n0..=nmax)
        .into_par_iter()
        .map(|n| {
            let alpha = MultiIndex::axis(p, 0, 2 * n as u32);
            let (v, cert) = asm.derivative(&PointPD::Witness(n), &alpha, cfg.tol)?;
            let rhs = BoundFormula::DoubledSelfPower.evaluate(m, 2 * n, &Enclosure::zero(), prec)?;
            Ok(Cell::judge(&format!("a_{n}"), 2 * n, BoundKind::Lower, &v, &rhs, prec).with_certificate(&cert))
        })
        .collect::<Result<_>>()?;
    let mut r = BoundReport::from_cells("", wit);
    r.spec = Some(BoundSpec::lower(BoundFormula::DoubledSelfPower));
    out.push_report("witness derivatives at least (2n)^(2n) M_(2n)", r);
    Ok(out)
}

fn sdistance_suite(cfg: &SuiteConfig) -> Result<SuiteOutcome> {
    if cfg.t_grid.is_empty() {
        return Err(Error::InvalidArgument("empty t grid".into()));
    }
    let mut out = SuiteOutcome::new(Suite::Sdistance);
    let cells: Vec<Cell> = cfg
        .t_grid
        .par_iter()
        .map(|t| {
            let r = s_distance_check(&Enclosure::Exact(t.clone()), &Enclosure::one(), 1, cfg.dim, cfg.prec)?;
            let lhs = r.distance_lower.log2();
            let status = match r.status {
                SDistanceStatus::Pass => CellStatus::PassCertified,
                SDistanceStatus::Fail => CellStatus::FailCertified,
                SDistanceStatus::Indeterminate => CellStatus::Indeterminate,
            };
            Ok(Cell {
                point: format!("t={t}"),
                order: 0,
                kind: BoundKind::Lower,
                lhs_log2_lo: lhs,
                lhs_log2_hi: r.distance_upper.log2(),
                rhs_log2: r.bound_log2,
                status,
                margin_log2: lhs - r.bound_log2,
                excepted: r.out_of_scope,
                groups_used: None,
                tail_bound: None,
                precision_bits: Some(cfg.prec),
                note: r.out_of_scope.then(|| "t >= 1: outside the small-t range".to_string()),
            })
        })
        .collect::<Result<_>>()?;
    out.push_report("distance to cusp at least exp(-1/t^2)", BoundReport::from_cells("", cells));
    Ok(out)
}

fn cj_suite(cfg: &SuiteConfig) -> Result<SuiteOutcome> {
    let jmax = cfg.jmax.unwrap_or(40) as u32;
    let r = cj_check(jmax, cfg.prec)?;
    let mut out = SuiteOutcome::new(Suite::Cj);
    out.checks.push(SummaryCheck::new(
        "C_1 value",
        Some(true),
        format!("C_1 = {}", r.values[0].mid_string(12)),
    ));
    out.push_report("C_j decreasing and C_20 < 1/8", r.cells);
    Ok(out)
}
