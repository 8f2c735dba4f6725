//! Command-line front end: weight tables, single coefficients, suites,
//! curve probes and report directories.
//!
//! Exit codes: 0 success, 1 a certified check failed, 2 bad input,
//! 3 undecided at the available precision, 4 I/O failure.

mod config;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use rug::Rational;
use serde::Serialize;

use crate::assemblies::{write_atomic, Assembly1D, AssemblyOptions, AssemblyPD, AssemblyPoint, ConstantCache, PointPD};
use crate::error::{Error, Result};
use crate::multivar::{compose_curve, MultiIndex, PolyCurve};
use crate::numerics::parse::{decimal_lower, decimal_upper, parse_rational};
use crate::numerics::{with_precision_retry, ComplexEnclosure, Enclosure, MAX_PREC};
use crate::poleseries::{build_block, build_thm1, taylor_coeff, Certificate, DyadicPoint, EvalOptions, ExactPolicy, Truncation};
use crate::verify::{growth_classifier, reports_to_csv, run_suite, uniform_grid, CellStatus, Suite, SuiteConfig, SuiteOutcome};
use crate::weights::{phi, phi_identity_check, WeightSequence, DEFAULT_SCAN_LIMIT};

pub use config::{Construction, OutputFormat, RunConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_UNDECIDED: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "carleman",
    version,
    about = "Certified coefficients and derivative bounds for pathological Denjoy-Carleman constructions"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct GlobalArgs {
    /// Weight sequence: gevrey:<s>, qfamily, table:<path> or regularized:<spec>
    #[arg(long, global = true)]
    pub family: Option<String>,
    /// Working precision in bits
    #[arg(long, global = true, value_name = "BITS")]
    pub prec: Option<u32>,
    /// Absolute accuracy, in units of M_j
    #[arg(long, global = true, value_name = "REL")]
    pub tol: Option<f64>,
    /// Sum exactly this many groups instead of choosing from --tol
    #[arg(long, global = true, value_name = "K")]
    pub terms: Option<usize>,
    /// Constant cache file
    #[arg(long, global = true, env = "CARLEMAN_CACHE")]
    pub cache: Option<PathBuf>,
    /// Output file (directory for `report`); written atomically
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Emit JSON
    #[arg(long, global = true, conflicts_with = "csv")]
    pub json: bool,
    /// Emit CSV
    #[arg(long, global = true)]
    pub csv: bool,
    /// Worker threads (default: one per processor)
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Start from a saved run configuration; flags override its fields
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Print the resolved run configuration as JSON and exit
    #[arg(long, global = true)]
    pub print_config: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Tabulate M_n, m_n = M_(n+1)/M_n and the dyadic sequence b_n
    Weights {
        /// Sequence spec (defaults to --family)
        spec: Option<String>,
        #[arg(long, default_value_t = 10)]
        depth: usize,
    },
    /// Associated function phi(alpha) = sup_l alpha^(l+1)/M_l
    Phi {
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        /// Check M_n phi(m_n) = m_n^(n+1) for n = 1..=N
        #[arg(long, value_name = "N")]
        identity: Option<usize>,
    },
    /// One certified normalized coefficient (or derivative in R^p)
    Coeff {
        #[arg(long, value_enum)]
        construction: Option<Construction>,
        /// Point: a rational, `a<n>` for a witness, or a comma list in R^p
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
        /// Order of the coefficient
        #[arg(long)]
        j: Option<usize>,
        /// Multi-index as a comma list (radial construction)
        #[arg(long)]
        alpha: Option<String>,
        /// Dimension (radial construction)
        #[arg(long)]
        p: Option<usize>,
    },
    /// Run a verification suite and write its cell report
    Verify {
        #[arg(long, value_parser = parse_suite)]
        suite: Suite,
        #[arg(long)]
        jmax: Option<usize>,
        #[arg(long)]
        nmax: Option<usize>,
        /// Grid `start:end:count` for the distance suite
        #[arg(long)]
        t: Option<String>,
        #[arg(long)]
        p: Option<usize>,
    },
    /// Taylor jet of the radial assembly along a polynomial curve
    ProbeCurve {
        /// Curve JSON, inline or as a path
        #[arg(long)]
        curve: String,
        #[arg(long, allow_hyphen_values = true)]
        t0: String,
        #[arg(long, default_value_t = 20)]
        order: usize,
    },
    /// Run suites and write `<suite>.csv`, `<suite>.json` and `summary.csv`
    Report {
        /// Comma-separated suites (default: all)
        #[arg(long, value_delimiter = ',', value_parser = parse_suite)]
        suites: Vec<Suite>,
        #[arg(long)]
        jmax: Option<usize>,
        #[arg(long)]
        nmax: Option<usize>,
    },
}

fn parse_suite(s: &str) -> std::result::Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::InvalidArgument(_) | Error::InvalidTable(_) | Error::InvalidConstant { .. } => {
            EXIT_PARSE
        }
        Error::NeedMorePrecision { .. }
        | Error::IndeterminateAtPrecision { .. }
        | Error::TailNotSmallEnough { .. }
        | Error::AnalyticLikeOrScanTooShort { .. }
        | Error::ScanExhausted { .. } => EXIT_UNDECIDED,
        Error::OutOfTable { .. } => EXIT_PARSE,
        Error::Io(_) => EXIT_IO,
    }
}

fn status_code(s: CellStatus) -> i32 {
    match s {
        CellStatus::PassCertified => EXIT_OK,
        CellStatus::FailCertified => EXIT_FAILED,
        CellStatus::Indeterminate => EXIT_UNDECIDED,
    }
}

/// Parse arguments, run, and return the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

/// Merge a saved configuration (if any) with the command-line flags.
pub fn resolve_config(cli: &Cli) -> Result<RunConfig> {
    let g = &cli.global;
    let mut c = match &g.config {
        Some(p) => RunConfig::from_json(&std::fs::read_to_string(p)?)?,
        None => RunConfig::default(),
    };
    if let Some(f) = &g.family {
        c.family = f.clone();
    }
    if let Some(p) = g.prec {
        c.precision_bits = p;
    }
    if let Some(t) = g.tol {
        c.tolerance = t;
    }
    if g.terms.is_some() {
        c.terms = g.terms;
    }
    if g.cache.is_some() {
        c.cache = g.cache.clone();
    }
    if g.out.is_some() {
        c.output = g.out.clone();
    }
    if g.json {
        c.format = OutputFormat::Json;
    } else if g.csv {
        c.format = OutputFormat::Csv;
    }
    match &cli.command {
        Command::Weights { spec: Some(s), .. } => c.family = s.clone(),
        Command::Coeff {
            construction,
            x,
            j,
            alpha,
            p,
        } => {
            if construction.is_some() {
                c.construction = *construction;
            }
            if let Some(x) = x {
                c.points = vec![x.clone()];
            }
            if let Some(j) = j {
                c.orders = vec![*j];
            }
            if let Some(a) = alpha {
                c.multi_indices = vec![a.clone()];
            }
            if let Some(p) = p {
                c.dimension = *p;
            }
        }
        Command::Verify { p: Some(p), .. } => c.dimension = *p,
        Command::Verify { suite: Suite::Radial, .. } => c.construction = Some(Construction::Radial),
        _ => {}
    }
    c.validate()?;
    Ok(c)
}

fn execute(cli: &Cli) -> Result<i32> {
    let cfg = resolve_config(cli)?;
    if cli.global.print_config {
        println!("{}", cfg.to_json());
        return Ok(EXIT_OK);
    }
    if let Some(n) = cli.global.threads {
        // a pool may already exist when embedded; keep it then
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match &cli.command {
        Command::Weights { depth, .. } => cmd_weights(&cfg, *depth),
        Command::Phi { alpha, identity } => cmd_phi(&cfg, alpha.as_deref(), *identity),
        Command::Coeff { .. } => cmd_coeff(&cfg),
        Command::Verify { suite, jmax, nmax, t, .. } => cmd_verify(&cfg, *suite, *jmax, *nmax, t.as_deref()),
        Command::ProbeCurve { curve, t0, order } => cmd_probe_curve(&cfg, curve, t0, *order),
        Command::Report { suites, jmax, nmax } => cmd_report(&cfg, suites, *jmax, *nmax),
    }
}

/// Write to `--out` atomically, or to stdout.
fn emit(cfg: &RunConfig, text: &str) -> Result<()> {
    match &cfg.output {
        Some(p) => write_atomic(p, text.as_bytes()),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

fn weights_of(cfg: &RunConfig) -> Result<WeightSequence> {
    WeightSequence::parse_with_prec(&cfg.family, cfg.precision_bits)
}

fn cache_of(cfg: &RunConfig) -> Result<Option<Arc<ConstantCache>>> {
    cfg.cache.as_ref().map(|p| Ok(Arc::new(ConstantCache::open(p)?))).transpose()
}

fn assembly_options(cfg: &RunConfig, prec: u32) -> Result<AssemblyOptions> {
    let o = AssemblyOptions::default().with_prec(prec);
    Ok(match cache_of(cfg)? {
        Some(c) => o.with_cache(c),
        None => o,
    })
}

/// Exact rationals print as fractions while short, otherwise as decimals.
fn show(e: &Enclosure) -> String {
    match e.as_exact() {
        Some(q) if q.to_string().len() <= 40 => q.to_string(),
        _ => e.mid_string(15),
    }
}

#[derive(Serialize)]
struct WeightRow {
    n: usize,
    #[serde(rename = "M_n")]
    m: String,
    m_n: String,
    b_n: String,
}

fn cmd_weights(cfg: &RunConfig, depth: usize) -> Result<i32> {
    let w = weights_of(cfg)?;
    let limit = w.len().map(|l| depth.min(l.saturating_sub(1))).unwrap_or(depth);
    let lc = w.check_log_convex(limit.max(1).min(w.len().map(|l| l.saturating_sub(2)).unwrap_or(usize::MAX)), false)?;
    if !lc.ok && matches!(w.family(), crate::weights::Family::Table { .. }) {
        return Err(Error::InvalidTable(format!(
            "not log-convex at index {}",
            lc.first_violation.unwrap_or(0)
        )));
    }
    let b = if limit >= 1 { w.b_prefix(limit).ok() } else { None };
    let mut rows = Vec::new();
    for n in 0..=limit {
        let ratio = if w.len().is_some_and(|l| n + 1 >= l) { None } else { Some(w.ratio(n)?) };
        rows.push(WeightRow {
            n,
            m: show(&w.weight(n)?),
            m_n: ratio.map(|r| show(&r)).unwrap_or_else(|| "-".into()),
            b_n: match (&b, n) {
                (Some(b), n) if n >= 1 => b[n - 1].to_string(),
                _ => "-".into(),
            },
        });
    }
    let text = match cfg.format {
        OutputFormat::Json => {
            #[derive(Serialize)]
            struct Out<'a> {
                family: String,
                rows: &'a [WeightRow],
                log_convex: bool,
            }
            serde_json::to_string_pretty(&Out {
                family: w.descriptor(),
                rows: &rows,
                log_convex: lc.ok,
            })? + "\n"
        }
        OutputFormat::Csv => {
            let mut wr = csv::Writer::from_writer(Vec::new());
            for r in &rows {
                wr.serialize(r).map_err(|e| Error::Io(e.to_string()))?;
            }
            String::from_utf8(wr.into_inner().map_err(|e| Error::Io(e.to_string()))?).expect("utf-8")
        }
        OutputFormat::Text => {
            let mut s = format!("{:>4}  {:>24}  {:>24}  {:>8}\n", "n", "M_n", "m_n", "b_n");
            for r in &rows {
                s += &format!("{:>4}  {:>24}  {:>24}  {:>8}\n", r.n, r.m, r.m_n, r.b_n);
            }
            s += &format!(
                "log-convex up to {limit}: {}\n",
                if lc.ok { "yes".to_string() } else { format!("no (first violation at {:?})", lc.first_violation) }
            );
            s
        }
    };
    emit(cfg, &text)?;
    Ok(EXIT_OK)
}

fn cmd_phi(cfg: &RunConfig, alpha: Option<&str>, identity: Option<usize>) -> Result<i32> {
    if alpha.is_none() && identity.is_none() {
        return Err(Error::InvalidArgument("give --alpha and/or --identity".into()));
    }
    let w = weights_of(cfg)?;
    let mut out = serde_json::Map::new();
    let mut code = EXIT_OK;
    if let Some(a) = alpha {
        let a = Enclosure::Exact(parse_rational(a)?);
        let r = phi(&w, &a, DEFAULT_SCAN_LIMIT)?;
        out.insert(
            "phi".into(),
            serde_json::json!({
                "alpha": show(&a),
                "value": show(&r.value),
                "argmax": r.argmax,
                "tie": r.is_tie,
            }),
        );
    }
    if let Some(n) = identity {
        let reports: Vec<_> = (1..=n).map(|k| phi_identity_check(&w, k)).collect::<Result<_>>()?;
        let failed: Vec<usize> = reports.iter().filter(|r| !r.ok).map(|r| r.n).collect();
        let widest = reports.iter().map(|r| r.rel_width).fold(0.0, f64::max);
        if !failed.is_empty() {
            code = EXIT_FAILED;
        }
        out.insert(
            "identity".into(),
            serde_json::json!({
                "checked": n,
                "exact": reports.iter().all(|r| r.exact),
                "failed": failed,
                "max_rel_width": widest,
            }),
        );
    }
    emit(cfg, &(serde_json::to_string(&out)? + "\n"))?;
    Ok(code)
}

/// Parse `a<n>` / `a_<n>` witness labels.
fn witness_label(s: &str) -> Option<usize> {
    let t = s.strip_prefix('a')?;
    t.strip_prefix('_').unwrap_or(t).parse().ok()
}

fn parse_list(s: &str) -> Result<Vec<Rational>> {
    s.split(',').map(parse_rational).collect()
}

#[derive(Serialize)]
struct CoeffLine {
    construction: Construction,
    x: String,
    order: String,
    re: String,
    im: String,
    radius: String,
    abs_lower: String,
    abs_upper: String,
    #[serde(rename = "K")]
    groups_used: usize,
    tail_bound: String,
    precision_bits: Option<u32>,
}

fn cmd_coeff(cfg: &RunConfig) -> Result<i32> {
    let construction = cfg
        .construction
        .ok_or_else(|| Error::InvalidArgument("--construction is required".into()))?;
    let x = cfg
        .points
        .first()
        .ok_or_else(|| Error::InvalidArgument("--x is required".into()))?
        .clone();
    let w = weights_of(cfg)?;
    let truncation = match cfg.terms {
        Some(k) => Truncation::Groups(k),
        None => Truncation::Tol(cfg.tolerance),
    };
    let (value, cert, order, prec): (ComplexEnclosure, Certificate, String, u32) = match construction {
        Construction::Lattice | Construction::Block => {
            let j = *cfg.orders.first().ok_or_else(|| Error::InvalidArgument("--j is required".into()))?;
            let xq = parse_rational(&x)?;
            let series = if construction == Construction::Lattice { build_thm1(&w) } else { build_block(&w) };
            let exact = if DyadicPoint::from_rational(&xq).is_some() { ExactPolicy::Auto } else { ExactPolicy::Never };
            let (v, c, p) = with_precision_retry(cfg.precision_bits, MAX_PREC, |prec| {
                let opts = EvalOptions::default().with_prec(prec).with_truncation(truncation).with_exact(exact);
                let (v, c) = taylor_coeff(&series, &Enclosure::Exact(xq.clone()), j, &opts)?;
                Ok((v, c, prec))
            })?;
            (v, c, j.to_string(), p)
        }
        Construction::Line => {
            let j = *cfg.orders.first().ok_or_else(|| Error::InvalidArgument("--j is required".into()))?;
            let point = match witness_label(&x) {
                Some(n) => AssemblyPoint::Witness(n),
                None => AssemblyPoint::Real(Enclosure::Exact(parse_rational(&x)?)),
            };
            let (v, c, p) = with_precision_retry(cfg.precision_bits, MAX_PREC, |prec| {
                let a = Assembly1D::new(&w, assembly_options(cfg, prec)?)?;
                let (v, c) = a.coeffs(&point, j, cfg.tolerance)?.pop().unwrap();
                Ok((v, c, prec))
            })?;
            (v, c, j.to_string(), p)
        }
        Construction::Radial => {
            let point = match witness_label(&x) {
                Some(n) => PointPD::Witness(n),
                None => PointPD::Real(parse_list(&x)?.into_iter().map(Enclosure::Exact).collect()),
            };
            let p = match &point {
                PointPD::Real(v) => v.len(),
                PointPD::Witness(_) => cfg.dimension,
            };
            let alpha = match (cfg.multi_indices.first(), cfg.orders.first()) {
                (Some(a), _) => a.parse::<MultiIndex>()?,
                (None, Some(&j)) => MultiIndex::axis(p, 0, j as u32),
                (None, None) => return Err(Error::InvalidArgument("--alpha or --j is required".into())),
            };
            let (v, c, prec) = with_precision_retry(cfg.precision_bits, MAX_PREC, |prec| {
                let a = AssemblyPD::new(&w, p, assembly_options(cfg, prec)?)?;
                let (v, c) = a.derivative(&point, &alpha, cfg.tolerance)?;
                Ok((v, c, prec))
            })?;
            (v, c, alpha.to_string(), prec)
        }
    };
    let line = CoeffLine {
        construction,
        x,
        order,
        re: value.re.mid_string(20),
        im: value.im.mid_string(20),
        radius: format!("{:.3e}", value.re.rad_f64().max(value.im.rad_f64())),
        abs_lower: decimal_lower(&value.abs_lower(prec), 12),
        abs_upper: decimal_upper(&value.abs_upper(prec), 12),
        groups_used: cert.groups_used,
        tail_bound: decimal_upper(&cert.tail_bound, 6),
        precision_bits: cert.precision_bits,
    };
    emit(cfg, &(serde_json::to_string(&line)? + "\n"))?;
    Ok(EXIT_OK)
}

/// `start:end:count` as a uniform grid of rationals.
pub fn parse_grid(s: &str) -> Result<Vec<Rational>> {
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [one] => Ok(vec![parse_rational(one)?]),
        [a, b, n] => {
            let n: usize = n.parse().map_err(|_| Error::Parse(format!("bad grid count in {s:?}")))?;
            if n == 0 {
                return Err(Error::Parse("grid needs at least one point".into()));
            }
            Ok(uniform_grid(&parse_rational(a)?, &parse_rational(b)?, n))
        }
        _ => Err(Error::Parse(format!("grid {s:?} is not start:end:count"))),
    }
}

fn suite_config(cfg: &RunConfig, jmax: Option<usize>, nmax: Option<usize>, t: Option<&str>) -> Result<SuiteConfig> {
    let mut sc = SuiteConfig::new(weights_of(cfg)?);
    sc.prec = cfg.precision_bits;
    sc.tol = cfg.tolerance;
    sc.jmax = jmax;
    sc.nmax = nmax;
    sc.dim = cfg.dimension;
    if let Some(t) = t {
        sc.t_grid = parse_grid(t)?;
    }
    sc.cache = cache_of(cfg)?;
    Ok(sc)
}

#[derive(Serialize)]
struct SuiteJson<'a> {
    config: &'a RunConfig,
    outcome: &'a SuiteOutcome,
}

fn summary_lines(o: &SuiteOutcome) -> String {
    let mut s = String::new();
    for c in &o.checks {
        s += &format!("{:<16} {:<15} {}: {}\n", o.suite.name(), c.status.as_str(), c.name, c.detail);
    }
    s
}

fn cmd_verify(cfg: &RunConfig, suite: Suite, jmax: Option<usize>, nmax: Option<usize>, t: Option<&str>) -> Result<i32> {
    let sc = suite_config(cfg, jmax, nmax, t)?;
    let outcome = run_suite(suite, &sc)?;
    let csv = reports_to_csv(&outcome.reports)?;
    let json = serde_json::to_string_pretty(&SuiteJson {
        config: cfg,
        outcome: &outcome,
    })? + "\n";
    match (&cfg.output, cfg.format) {
        (Some(p), OutputFormat::Json) => write_atomic(p, json.as_bytes())?,
        (Some(p), _) => {
            write_atomic(p, csv.as_bytes())?;
            write_atomic(&p.with_extension("json"), json.as_bytes())?;
        }
        (None, OutputFormat::Json) => emit(cfg, &json)?,
        (None, _) => emit(cfg, &csv)?,
    }
    let summary = summary_lines(&outcome);
    if cfg.output.is_some() {
        print!("{summary}");
    } else {
        eprint!("{summary}");
    }
    Ok(status_code(outcome.status()))
}

#[derive(Serialize)]
struct JetRow {
    order: usize,
    re: String,
    im: String,
    abs_upper: String,
    rho_upper: String,
}

fn cmd_probe_curve(cfg: &RunConfig, curve: &str, t0: &str, order: usize) -> Result<i32> {
    let gamma = if curve.trim_start().starts_with('{') {
        PolyCurve::from_json(curve)?
    } else {
        PolyCurve::load(Path::new(curve))?
    };
    let t0 = parse_rational(t0)?;
    let w = weights_of(cfg)?;
    let asm = AssemblyPD::new(&w, gamma.dim(), assembly_options(cfg, cfg.precision_bits)?)?;
    let jet = compose_curve(&asm, &gamma, &t0, order, cfg.tolerance)?;
    let prec = cfg.precision_bits;
    let seq: Vec<(usize, ComplexEnclosure)> = (1..=order).map(|j| (j, jet.jet.coeffs[j].clone())).collect();
    let growth = if seq.len() >= 5 { Some(growth_classifier(&seq, &w, prec)?) } else { None };
    let rows: Vec<JetRow> = jet
        .jet
        .coeffs
        .iter()
        .enumerate()
        .map(|(j, c)| JetRow {
            order: j,
            re: c.re.mid_string(15),
            im: c.im.mid_string(15),
            abs_upper: decimal_upper(&c.abs_upper(prec), 8),
            rho_upper: match (&growth, j) {
                (Some(g), j) if j >= 1 => format!("{:.6}", g.rho_hi[j - 1]),
                _ => "-".into(),
            },
        })
        .collect();
    let text = match cfg.format {
        OutputFormat::Json => {
            serde_json::to_string_pretty(&serde_json::json!({
                "t0": t0.to_string(),
                "order": order,
                "blocks_used": jet.blocks_used,
                "rows": rows,
                "growth": growth,
            }))? + "\n"
        }
        _ => {
            let mut wr = csv::Writer::from_writer(Vec::new());
            for r in &rows {
                wr.serialize(r).map_err(|e| Error::Io(e.to_string()))?;
            }
            String::from_utf8(wr.into_inner().map_err(|e| Error::Io(e.to_string()))?).expect("utf-8")
        }
    };
    emit(cfg, &text)?;
    if let Some(g) = growth {
        eprintln!(
            "trend {:?}: slope of upper rho {:.4}, sup rho {:.4}, blocks {}",
            g.trend, g.slope_hi, g.sup_rho, jet.blocks_used
        );
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct SummaryRow<'a> {
    suite: &'a str,
    check: &'a str,
    status: &'a str,
    detail: &'a str,
}

fn cmd_report(cfg: &RunConfig, suites: &[Suite], jmax: Option<usize>, nmax: Option<usize>) -> Result<i32> {
    let dir = cfg
        .output
        .clone()
        .ok_or_else(|| Error::InvalidArgument("report needs --out <directory>".into()))?;
    let suites: Vec<Suite> = if suites.is_empty() { Suite::ALL.to_vec() } else { suites.to_vec() };
    let sc = suite_config(cfg, jmax, nmax, None)?;
    let mut outcomes = Vec::new();
    for s in suites {
        let o = run_suite(s, &sc)?;
        write_atomic(&dir.join(format!("{}.csv", s.name())), reports_to_csv(&o.reports)?.as_bytes())?;
        let json = serde_json::to_string_pretty(&SuiteJson { config: cfg, outcome: &o })? + "\n";
        write_atomic(&dir.join(format!("{}.json", s.name())), json.as_bytes())?;
        print!("{}", summary_lines(&o));
        outcomes.push(o);
    }
    let mut wr = csv::Writer::from_writer(Vec::new());
    for o in &outcomes {
        for c in &o.checks {
            wr.serialize(SummaryRow {
                suite: o.suite.name(),
                check: &c.name,
                status: c.status.as_str(),
                detail: &c.detail,
            })
            .map_err(|e| Error::Io(e.to_string()))?;
        }
    }
    let bytes = wr.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    write_atomic(&dir.join("summary.csv"), &bytes)?;
    let worst = outcomes
        .iter()
        .map(|o| status_code(o.status()))
        .max_by_key(|c| match *c {
            EXIT_FAILED => 2,
            EXIT_UNDECIDED => 1,
            _ => 0,
        })
        .unwrap_or(EXIT_OK);
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing() {
        let g = parse_grid("0.05:0.4:8").unwrap();
        assert_eq!(g.len(), 8);
        assert_eq!(g[0], Rational::from((1, 20)));
        assert_eq!(g[7], Rational::from((2, 5)));
        assert_eq!(parse_grid("1/3").unwrap(), vec![Rational::from((1, 3))]);
        assert!(parse_grid("1:2").is_err());
        assert!(parse_grid("0:1:x").is_err());
    }

    #[test]
    fn witness_labels() {
        assert_eq!(witness_label("a3"), Some(3));
        assert_eq!(witness_label("a_12"), Some(12));
        assert_eq!(witness_label("0.5"), None);
    }

    #[test]
    fn flags_override_config_and_aliases_parse() {
        let cli = Cli::try_parse_from([
            "carleman", "--prec", "512", "coeff", "--construction", "masterthm", "--x", "0,0", "--alpha", "2,0",
        ])
        .unwrap();
        let c = resolve_config(&cli).unwrap();
        assert_eq!(c.precision_bits, 512);
        assert_eq!(c.construction, Some(Construction::Radial));
        assert_eq!(c.points, vec!["0,0".to_string()]);
        let cli = Cli::try_parse_from(["carleman", "verify", "--suite", "prop31"]).unwrap();
        assert!(matches!(cli.command, Command::Verify { suite: Suite::Lattice, .. }));
    }

    #[test]
    fn exit_codes_follow_error_kinds() {
        assert_eq!(exit_code(&Error::Parse("x".into())), EXIT_PARSE);
        assert_eq!(exit_code(&Error::NeedMorePrecision { bits: 256 }), EXIT_UNDECIDED);
        assert_eq!(exit_code(&Error::Io("x".into())), EXIT_IO);
        assert_eq!(run(["carleman", "weights", "nonsense"]), EXIT_PARSE);
        assert_eq!(run(["carleman", "bogus-command"]), EXIT_PARSE);
    }
}
