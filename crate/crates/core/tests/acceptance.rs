//! Acceptance run: one PASS/FAIL line per criterion, with timings.
//!
//! Reference values are recomputed here from first principles (f64 sums,
//! exact polynomial algebra, finite differences) rather than taken from
//! the library. Two criteria cannot hold as stated; they are listed in
//! `KNOWN_UNATTAINABLE` and must fail in exactly the documented way, so
//! any other outcome still fails the run.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use carleman::assemblies::AssemblyPD;
use carleman::multivar::{compose_curve, fdb_derivative, MultiIndex, PolyCurve};
use carleman::numerics::{CertainOrdering, ComplexEnclosure, Enclosure};
use carleman::poleseries::{build_block, build_thm1, taylor_coeff, EvalOptions, ExactPolicy, Truncation};
use carleman::verify::{
    cj_check, growth_classifier, run_suite, GrowthTrend, Suite, SuiteConfig, SuiteOutcome,
};
use carleman::weights::{phi_identity_check, WeightSequence};
use rand::{Rng, SeedableRng};
use rug::{Integer, Rational};

const PREC: u32 = 256;

/// Criteria whose statement cannot be met; see each check for the reason.
const KNOWN_UNATTAINABLE: [u32; 2] = [6, 9];

struct Outcome {
    pass: bool,
    detail: String,
    /// For known-unattainable criteria: the failure is the documented one.
    expected_failure: bool,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome {
            pass,
            detail: detail.into(),
            expected_failure: false,
        }
    }
}

fn q(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

fn gevrey() -> WeightSequence {
    WeightSequence::parse_with_prec("gevrey:1", PREC).unwrap()
}

fn suite(s: Suite, cfg: &SuiteConfig) -> SuiteOutcome {
    run_suite(s, cfg).unwrap_or_else(|e| panic!("suite {} errored: {e}", s.name()))
}

fn failing_checks(o: &SuiteOutcome) -> Vec<String> {
    o.checks.iter().filter(|c| !c.status.eq(&carleman::verify::CellStatus::PassCertified)).map(|c| format!("{}: {}", c.name, c.detail)).collect()
}

fn within(limit_s: u64, t: Duration) -> bool {
    t.as_secs_f64() < limit_s as f64
}

fn least_squares_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let num: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    num / den
}

// ---------------------------------------------------------------- 1

fn c1_phi_identity() -> Outcome {
    let t = Instant::now();
    let g = gevrey();
    let bad_g: Vec<usize> = (1..=200)
        .map(|n| phi_identity_check(&g, n).unwrap())
        .filter(|r| !(r.ok && r.exact))
        .map(|r| r.n)
        .collect();
    let qf = WeightSequence::parse_with_prec("qfamily", PREC).unwrap();
    let tol = 2f64.powi(-100);
    let reports: Vec<_> = (1..=100).map(|n| phi_identity_check(&qf, n).unwrap()).collect();
    let bad_q: Vec<usize> = reports.iter().filter(|r| !(r.ok && r.rel_width <= tol)).map(|r| r.n).collect();
    let widest = reports.iter().map(|r| r.rel_width).fold(0.0, f64::max);
    let el = t.elapsed();
    Outcome::new(
        bad_g.is_empty() && bad_q.is_empty() && within(5, el),
        format!("gevrey exact n<=200 failures {bad_g:?}; qfamily n<=100 failures {bad_q:?}, widest {widest:.2e}; {el:.2?} (< 5 s)"),
    )
}

// ---------------------------------------------------------------- 2-4

fn c2_to_c4_lattice() -> [Outcome; 3] {
    let t = Instant::now();
    let mut cfg = SuiteConfig::new(gevrey());
    cfg.jmax = Some(40);
    let o = suite(Suite::Lattice, &cfg);
    let el = t.elapsed();
    let upper = &o.reports[0];
    let lower = o.reports.iter().find(|r| r.title.contains("lower bound")).unwrap();
    let dom: Vec<_> = o.checks.iter().filter(|c| c.name.contains("domination")).collect();
    let grid_ok = upper.points.len() == 21 && upper.orders.len() == 41;
    [
        Outcome::new(
            upper.all_pass() && grid_ok && within(60, el),
            format!(
                "{} cells on {} points, {} pass, min margin {:.3} bits; whole lattice suite {el:.2?} (< 60 s)",
                upper.cells.len(),
                upper.points.len(),
                upper.count(carleman::verify::CellStatus::PassCertified),
                upper.min_margin_log2()
            ),
        ),
        Outcome::new(
            lower.all_pass() && lower.found_j0.is_some_and(|j| j <= 20),
            format!("thresholds per dyadic {:?}, found j0 {:?} (<= 20)", lower.point_j0, lower.found_j0),
        ),
        Outcome::new(
            dom.len() == 3 && dom.iter().all(|c| c.status == carleman::verify::CellStatus::PassCertified),
            dom.iter().map(|c| format!("{}: {}", c.name, c.detail)).collect::<Vec<_>>().join("; "),
        ),
    ]
}

// ---------------------------------------------------------------- 5

fn c5_block() -> Outcome {
    let t = Instant::now();
    let mut cfg = SuiteConfig::new(gevrey());
    cfg.jmax = Some(60);
    let o = suite(Suite::Block, &cfg);
    let el = t.elapsed();
    let detail: Vec<String> = o.checks.iter().map(|c| format!("{}: {}", c.name, c.detail)).collect();
    Outcome::new(o.passed() && within(30, el), format!("{}; {el:.2?} (< 30 s)", detail.join("; ")))
}

// ---------------------------------------------------------------- 6

fn c6_cj() -> Outcome {
    let r = cj_check(40, PREC).unwrap();
    // reference: C_1 = 2 sum 1/(n^2+1) = pi coth(pi) - 1
    let c1_ref = std::f64::consts::PI / std::f64::consts::PI.tanh() - 1.0;
    let direct: f64 = 2.0 * (1..2_000_000u64).map(|n| 1.0 / ((n * n) as f64 + 1.0)).sum::<f64>();
    let c1 = &r.values[0];
    let in_range = c1.cmp_certain(&Enclosure::Exact(q(217, 100))) == CertainOrdering::Greater
        && c1.cmp_certain(&Enclosure::Exact(q(218, 100))) == CertainOrdering::Less;
    let ref_inside = c1.contains_rational(&Rational::from_f64(c1_ref).unwrap())
        || (c1.to_f64() - c1_ref).abs() < 1e-9;
    let rest = r.decreasing_from_3 && r.c20_below_eighth == Some(true);
    let mut o = Outcome::new(
        in_range && rest,
        format!(
            "C_1 = {:.10} (reference pi coth pi - 1 = {c1_ref:.10}, direct sum {direct:.6}); required [2.17, 2.18]: {}; decreasing on [3, 40]: {}; C_20 = {:.5} < 1/8: {:?}",
            c1.to_f64(),
            if in_range { "yes" } else { "no" },
            r.decreasing_from_3,
            r.values[19].to_f64(),
            r.c20_below_eighth
        ),
    );
    // the stated interval misses the true value; everything else must hold
    o.expected_failure = !in_range && ref_inside && (direct - c1_ref).abs() < 1e-5 && rest;
    o
}

// ---------------------------------------------------------------- 7

fn c7_regularization() -> Outcome {
    let g = gevrey();
    let rg = g.regularize_strict();
    let identity = (0..=50).all(|n| rg.weight(n).unwrap().cmp_certain(&g.weight(n).unwrap()) == CertainOrdering::Equal);

    // ratios with plateaus: 1,1,2,2,2,3,3,3,3,4,...
    let mut ratios = Vec::new();
    let mut r = 1i64;
    // longer than the checked range: spreading a plateau looks one run ahead
    while ratios.len() < 80 {
        for _ in 0..(r as usize + 1).min(80 - ratios.len()) {
            ratios.push(r);
        }
        r += 1;
    }
    let mut values = vec![Rational::from(1)];
    for m in &ratios {
        let next = Rational::from(values.last().unwrap() * Rational::from(*m));
        values.push(next);
    }
    let table = WeightSequence::from_table("plateaus", values).unwrap();
    let reg = table.regularize_strict();
    let strict = reg.check_log_convex(49, true).unwrap();
    let mut ratio_ok = true;
    for n in 0..=50 {
        let ratio = &reg.weight(n).unwrap() / &table.weight(n).unwrap();
        let lo = ratio.cmp_certain(&Enclosure::one()).is_ge();
        let hi = ratio.cmp_certain(&Enclosure::Exact(Rational::from(Integer::from(1) << n as u32))).is_le();
        ratio_ok &= lo && hi;
    }
    Outcome::new(
        identity && strict.ok && ratio_ok,
        format!(
            "gevrey unchanged: {identity}; plateau table strictly log-convex: {} (first violation {:?}); 1 <= ratio <= 2^n for n <= 50: {ratio_ok}",
            strict.ok, strict.first_violation
        ),
    )
}

// ---------------------------------------------------------------- 8

type Poly = BTreeMap<Vec<u32>, Rational>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_default() += Rational::from(ca * cb);
        }
    }
    out
}

/// `sum_m g_m (x_1^2 + ... + x_p^2)^m` expanded into monomials.
fn radial_poly(g: &[Rational], p: usize) -> Poly {
    let mut s = Poly::new();
    for i in 0..p {
        let mut e = vec![0; p];
        e[i] = 2;
        s.insert(e, Rational::from(1));
    }
    let mut power = Poly::from([(vec![0; p], Rational::from(1))]);
    let mut out = Poly::new();
    for gm in g {
        for (e, c) in &power {
            *out.entry(e.clone()).or_default() += Rational::from(gm * c);
        }
        power = poly_mul(&power, &s);
    }
    out
}

fn poly_derivative_at(f: &Poly, alpha: &[u32], x: &[Rational]) -> Rational {
    let mut total = Rational::new();
    for (e, c) in f {
        if e.iter().zip(alpha).any(|(ei, ai)| ei < ai) {
            continue;
        }
        let mut term = c.clone();
        for ((ei, ai), xi) in e.iter().zip(alpha).zip(x) {
            for k in 0..*ai {
                term *= ei - k;
            }
            let mut pw = Rational::from(1);
            for _ in 0..(ei - ai) {
                pw *= xi;
            }
            term *= pw;
        }
        total += term;
    }
    total
}

/// `g^(n)(s)` for a polynomial `g`.
fn poly_outer_derivatives(g: &[Rational], s: &Rational, len: usize) -> Vec<ComplexEnclosure> {
    (0..len)
        .map(|n| {
            let mut v = Rational::new();
            for (m, gm) in g.iter().enumerate().skip(n) {
                let mut falling = Integer::from(1);
                for k in 0..n {
                    falling *= (m - k) as u32;
                }
                let mut pw = Rational::from(1);
                for _ in 0..(m - n) {
                    pw *= s;
                }
                v += Rational::from(gm * Rational::from(falling)) * pw;
            }
            ComplexEnclosure::real(Enclosure::Exact(v))
        })
        .collect()
}

fn c8_faa_di_bruno() -> Outcome {
    let mut rng = rand::rngs::StdRng::seed_from_u64(8);
    // exact agreement with the expanded polynomial
    let mut exact_cases = 0;
    let mut exact_bad = Vec::new();
    for p in [2usize, 3] {
        for deg in 0..=4usize {
            let g: Vec<Rational> = (0..=deg).map(|_| q(rng.gen_range(-9..=9), rng.gen_range(1..=5))).collect();
            let f = radial_poly(&g, p);
            let x: Vec<Rational> = (0..p).map(|_| q(rng.gen_range(-7..=7), rng.gen_range(1..=4))).collect();
            let s: Rational = x.iter().map(|v| Rational::from(v * v)).sum();
            for order in 0..=4u32 {
                for alpha in MultiIndex::all_of_order(p, order) {
                    let outer = poly_outer_derivatives(&g, &s, order as usize + 1);
                    let xe: Vec<Enclosure> = x.iter().cloned().map(Enclosure::Exact).collect();
                    let got = fdb_derivative(&outer, &xe, &alpha).unwrap();
                    let want = poly_derivative_at(&f, &alpha.0, &x);
                    exact_cases += 1;
                    let ok = got.im.is_zero() && got.re.as_exact() == Some(&want);
                    if !ok {
                        exact_bad.push(format!("p={p} deg={deg} alpha={alpha}"));
                    }
                }
            }
        }
    }

    // finite differences on the block function g(|x|^2)
    let series = build_block(&gevrey());
    let opts = EvalOptions::default()
        .with_prec(PREC)
        .with_truncation(Truncation::Tol(1e-40))
        .with_exact(ExactPolicy::Never);
    // samples stay in ball arithmetic: differencing at step 2^-20 cancels
    // up to 60 bits, far more than an f64 carries
    let value_at = |x: &[Rational]| -> ComplexEnclosure {
        let s: Rational = x.iter().map(|v| Rational::from(v * v)).sum();
        taylor_coeff(&series, &Enclosure::Exact(s), 0, &opts).unwrap().0
    };
    let x0 = [q(3, 10), q(-1, 5)];
    let h = q(1, 1 << 20);
    let s0: Rational = x0.iter().map(|v| Rational::from(v * v)).sum();
    let coeffs = series.taylor_coeffs(&Enclosure::Exact(s0), 3, &opts).unwrap();
    let outer: Vec<ComplexEnclosure> = coeffs
        .iter()
        .enumerate()
        .map(|(n, (c, _))| c.scale(&Enclosure::from_integer(Integer::from(Integer::factorial(n as u32)))))
        .collect();
    let x0e: Vec<Enclosure> = x0.iter().cloned().map(Enclosure::Exact).collect();
    let mut worst = 0f64;
    let mut fd_cases = 0;
    let mut cache: BTreeMap<Vec<i64>, ComplexEnclosure> = BTreeMap::new();
    for order in 1..=3u32 {
        for alpha in MultiIndex::all_of_order(2, order) {
            // nested central differences with step h in each coordinate
            let mut acc = ComplexEnclosure::zero();
            let a = &alpha.0;
            for i in 0..=a[0] {
                for k in 0..=a[1] {
                    let sign = if (i + k) % 2 == 0 { 1 } else { -1 };
                    let w = Integer::from(sign) * binom(a[0], i) * binom(a[1], k);
                    // offsets in half-steps: a - 2i
                    let key = vec![a[0] as i64 - 2 * i as i64, a[1] as i64 - 2 * k as i64];
                    let v = cache.entry(key.clone()).or_insert_with(|| {
                        let x: Vec<Rational> = x0
                            .iter()
                            .zip(&key)
                            .map(|(xi, &o)| Rational::from(xi + Rational::from(&h * Rational::from(o)) / 2))
                            .collect();
                        value_at(&x)
                    });
                    acc = acc.add(&v.scale(&Enclosure::from_integer(w)));
                }
            }
            let fd = acc.mul_2si(20 * order as i32);
            let (fd_re, fd_im) = (fd.re.to_f64(), fd.im.to_f64());
            let exact = fdb_derivative(&outer, &x0e, &alpha).unwrap();
            let (er, ei) = (exact.re.to_f64(), exact.im.to_f64());
            let rel = ((fd_re - er).powi(2) + (fd_im - ei).powi(2)).sqrt() / (er * er + ei * ei).sqrt();
            worst = worst.max(rel);
            fd_cases += 1;
        }
    }

    // D^(2n)_1 f(0) = g^(n)(0) (2n)!/n!
    let mut identity_ok = true;
    for n in 0..=10u32 {
        let outer: Vec<ComplexEnclosure> = (0..=2 * n)
            .map(|k| ComplexEnclosure::new(Enclosure::Exact(q(k as i64 + 2, 3)), Enclosure::Exact(q(1, k as i64 + 1))))
            .collect();
        let zero = vec![Enclosure::zero(), Enclosure::zero()];
        let got = fdb_derivative(&outer, &zero, &MultiIndex::axis(2, 0, 2 * n)).unwrap();
        let f = Rational::from((Integer::from(Integer::factorial(2 * n)), Integer::from(Integer::factorial(n))));
        let want = outer[n as usize].scale(&Enclosure::Exact(f));
        identity_ok &= got.re.as_exact() == want.re.as_exact() && got.im.as_exact() == want.im.as_exact();
    }

    Outcome::new(
        exact_bad.is_empty() && worst <= 1e-4 && identity_ok,
        format!(
            "{exact_cases} exact polynomial cases, mismatches {exact_bad:?}; {fd_cases} finite-difference cases, worst rel. error {worst:.2e} (<= 1e-4); axis identity n <= 10: {identity_ok}"
        ),
    )
}

fn binom(n: u32, k: u32) -> Integer {
    Integer::from(Integer::binomial_u(n, k))
}

// ---------------------------------------------------------------- 9

/// `rho_n` of the idealized witness coefficient `n^n M_n + T_n` for
/// `M_n = n!`, `a_n = (n!)^(-1/(2n))`, `T_n = sum_{k != n} 2^-k |a_n - a_k|^-(n+1)`.
fn ideal_witness_rho(n: usize) -> f64 {
    let fact = |k: usize| (1..=k).map(|i| i as f64).product::<f64>();
    let a = |k: usize| fact(k).powf(-1.0 / (2.0 * k as f64));
    let t: f64 = (1..600).filter(|&k| k != n).map(|k| 0.5f64.powi(k as i32) * (a(n) - a(k)).abs().powi(-(n as i32 + 1))).sum();
    let m = fact(n);
    (((n as f64).powi(n as i32) * m + t) / m).powf(1.0 / n as f64)
}

fn c9_divergence() -> Outcome {
    let t = Instant::now();
    let mut cfg = SuiteConfig::new(gevrey());
    cfg.nmax = Some(8);
    cfg.jmax = Some(25);
    let o = suite(Suite::Divergence, &cfg);
    let el = t.elapsed();
    let witness = &o.reports[0];
    let at0 = o.reports.iter().find(|r| r.title.contains("at 0")).unwrap();
    let (_, g) = o.growth.iter().find(|(n, _)| n == "witnesses").unwrap();
    let cells_ok = witness.all_pass() && witness.cells.len() == 8 && at0.all_pass() && at0.cells.len() == 26;
    let linear = g.trend == GrowthTrend::LinearGrowth;
    let ideal: Vec<f64> = (1..=8).map(ideal_witness_rho).collect();
    let xs: Vec<f64> = (1..=8).map(|n| n as f64).collect();
    let ideal_slope = least_squares_slope(&xs, &ideal);
    let rho_ge_n = g.rho_lo.iter().enumerate().all(|(i, r)| *r >= (i + 1) as f64);
    let mut out = Outcome::new(
        cells_ok && linear && within(300, el),
        format!(
            "witness cells {}/8 pass, origin cells {}/26 pass; rho_n lower {:?} (each >= n: {rho_ge_n}); classifier {:?}, slope {:.3} (needs >= 0.5); interference-dominated reference rho {:?} has slope {ideal_slope:.3}; {el:.2?} (< 300 s)",
            witness.count(carleman::verify::CellStatus::PassCertified),
            at0.count(carleman::verify::CellStatus::PassCertified),
            g.rho_lo.iter().map(|r| (r * 100.0).round() / 100.0).collect::<Vec<_>>(),
            g.trend,
            g.slope_lo,
            ideal.iter().map(|r| (r * 100.0).round() / 100.0).collect::<Vec<_>>(),
        ),
    );
    // every certified cell holds, but on n <= 8 the interference sum in the
    // constant choice dominates n^n M_n, so rho_n decreases before it can
    // grow linearly; even the idealized value has a negative slope
    out.expected_failure = cells_ok && rho_ge_n && !linear && ideal_slope < 0.0 && within(300, el);
    out
}

// ---------------------------------------------------------------- 10

fn c10_radial() -> Outcome {
    let t = Instant::now();
    let mut cfg = SuiteConfig::new(gevrey());
    cfg.dim = 2;
    cfg.jmax = Some(10);
    cfg.nmax = Some(5);
    let o = suite(Suite::Radial, &cfg);
    let el = t.elapsed();
    let cells: usize = o.reports.iter().map(|r| r.cells.len()).sum();
    let fails = failing_checks(&o);
    Outcome::new(
        o.passed() && within(600, el),
        format!(
            "{} checks, {cells} cells; {}; {el:.2?} (< 600 s)",
            o.checks.len(),
            if fails.is_empty() {
                o.checks.iter().filter(|c| c.name.contains("fitted")).map(|c| c.detail.clone()).collect::<Vec<_>>().join("; ")
            } else {
                format!("failing: {fails:?}")
            }
        ),
    )
}

// ---------------------------------------------------------------- 11

fn c11_sdistance() -> Outcome {
    let cfg = SuiteConfig::new(gevrey());
    let o = suite(Suite::Sdistance, &cfg);
    let r = &o.reports[0];
    let ts: Vec<String> = r.points.clone();
    Outcome::new(
        o.passed() && r.cells.len() == 8,
        format!("t = {ts:?}: {} of {} pass", r.count(carleman::verify::CellStatus::PassCertified), r.cells.len()),
    )
}

// ---------------------------------------------------------------- 12

fn c12_curves() -> Outcome {
    let m = gevrey();
    let asm = AssemblyPD::new(&m, 2, carleman::assemblies::AssemblyOptions::default().with_prec(PREC)).unwrap();
    let curves = [
        ("(t, t^2) at 1/10", PolyCurve::new(vec![vec![q(0, 1), q(1, 1)], vec![q(0, 1), q(0, 1), q(1, 1)]]), q(1, 10)),
        ("(0, t) at 0", PolyCurve::new(vec![vec![q(0, 1)], vec![q(0, 1), q(1, 1)]]), q(0, 1)),
    ];
    let mut ok = true;
    let mut detail = Vec::new();
    for (name, gamma, t0) in curves {
        let jet = compose_curve(&asm, &gamma, &t0, 20, 1e-12).unwrap();
        let seq: Vec<(usize, ComplexEnclosure)> = (1..=20).map(|j| (j, jet.jet.coeffs[j].clone())).collect();
        let g = growth_classifier(&seq, &m, PREC).unwrap();
        ok &= g.trend == GrowthTrend::Bounded && g.slope_hi < 0.1;
        detail.push(format!("{name}: {:?}, slope {:.2e}, sup rho {:.3}", g.trend, g.slope_hi, g.sup_rho));
    }
    Outcome::new(ok, detail.join("; "))
}

// ---------------------------------------------------------------- 13

fn c13_soundness() -> Outcome {
    let mut rng = rand::rngs::StdRng::seed_from_u64(13);
    let series = build_thm1(&gevrey());
    let mut bad = Vec::new();
    for _ in 0..500 {
        let den = 1i64 << rng.gen_range(0..=6);
        let x = q(rng.gen_range(-den + 1..den), den);
        let j = rng.gen_range(0..=20);
        let k = rng.gen_range(1..=6);
        // tail-free partial sums: the exact rational must lie in the ball
        let x = Enclosure::Exact(x);
        let exact = series.partial_sums(&x, j, k, true, PREC).unwrap().pop().unwrap();
        let ball = series.partial_sums(&x, j, k, false, PREC).unwrap().pop().unwrap();
        if !(exact.is_exact() && !ball.is_exact() && ball.contains(&exact)) {
            bad.push(format!("x={} j={j} K={k}", x.as_exact().unwrap()));
        }
    }
    Outcome::new(
        bad.is_empty(),
        format!("500 random dyadic (x, j, K) cells; exact sums outside their ball: {} {:?}", bad.len(), &bad[..bad.len().min(5)]),
    )
}

fn main() {
    let total = Instant::now();
    let mut results: Vec<(u32, Outcome, Duration)> = Vec::new();
    let timed = |n: u32, f: &dyn Fn() -> Outcome| {
        let t = Instant::now();
        let o = f();
        (n, o, t.elapsed())
    };
    results.push(timed(1, &c1_phi_identity));
    {
        let t = Instant::now();
        let [a, b, c] = c2_to_c4_lattice();
        let el = t.elapsed();
        results.push((2, a, el));
        results.push((3, b, Duration::ZERO));
        results.push((4, c, Duration::ZERO));
    }
    results.push(timed(5, &c5_block));
    results.push(timed(6, &c6_cj));
    results.push(timed(7, &c7_regularization));
    results.push(timed(8, &c8_faa_di_bruno));
    results.push(timed(9, &c9_divergence));
    results.push(timed(10, &c10_radial));
    results.push(timed(11, &c11_sdistance));
    results.push(timed(12, &c12_curves));
    results.push(timed(13, &c13_soundness));

    let mut unexpected = Vec::new();
    for (n, o, el) in &results {
        let tag = if o.pass { "PASS" } else { "FAIL" };
        let note = if !o.pass && KNOWN_UNATTAINABLE.contains(n) {
            if o.expected_failure {
                " [known: unattainable as stated]"
            } else {
                " [known-unattainable criterion failed differently]"
            }
        } else {
            ""
        };
        println!("criterion {n:>2}: {tag}{note} ({el:.2?}) - {}", o.detail);
        let acceptable = o.pass || (KNOWN_UNATTAINABLE.contains(n) && o.expected_failure);
        if !acceptable {
            unexpected.push(*n);
        }
    }
    let passed = results.iter().filter(|(_, o, _)| o.pass).count();
    println!("acceptance: {passed}/{} criteria pass in {:.2?}", results.len(), total.elapsed());
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
