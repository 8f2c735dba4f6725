//! Weight sequences `M_0 = 1, M_1, M_2, ...`, their ratios, the associated
//! function `phi`, and the auxiliary sequences derived from them.

mod diagnostics;
mod phi;

use std::path::Path;
use std::sync::{Arc, RwLock};

use rug::{Integer, Rational};
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::numerics::parse::parse_rational;
use crate::numerics::{Ball, CertainOrdering, Enclosure, DEFAULT_PREC};

pub use diagnostics::{
    inclusion_diagnostic, quasianalytic_diagnostic, ClassStatus, ClassVerdict, InclusionReport,
    Trend,
};
pub use phi::{phi, phi_identity_check, PhiIdentityReport, PhiResult, DEFAULT_SCAN_LIMIT};

/// Longest run of equal ratios the strict regularization will scan for.
pub const REGULARIZE_SCAN_BUDGET: usize = 100_000;

/// The family a sequence is drawn from.
#[derive(Debug)]
pub enum Family {
    /// `M_n = (n!)^(num/den)`.
    Gevrey { num: u32, den: u32 },
    /// Ratios `m_n = ln(n + e)`: non-analytic but quasianalytic.
    QFamily,
    /// Explicit finite prefix.
    Table { name: String, values: Vec<Rational> },
    /// Strictly log-convex regularization of the inner sequence.
    Regularized(WeightSequence),
    /// `M^k_n = 1` for `n < k`, `c^(2n-2k+1) M_n` otherwise.
    Mk {
        inner: WeightSequence,
        k: usize,
        c: Enclosure,
    },
}

/// One maximal run of equal ratios `m_start = ... = m_{start+len-1}`,
/// with the growth factor used to spread it out.
#[derive(Clone, Debug)]
struct Run {
    start: usize,
    len: usize,
    factor: Enclosure,
}

#[derive(Debug)]
struct Inner {
    family: Family,
    prec: u32,
    values: RwLock<Vec<Enclosure>>,
    ratios: RwLock<Vec<Enclosure>>,
    runs: RwLock<Vec<Run>>,
}

/// A weight sequence with a memoized prefix.
///
/// Cloning is cheap and shares the memo. Readers run concurrently; the
/// memo is extended under a write lock.
#[derive(Clone, Debug)]
pub struct WeightSequence(Arc<Inner>);

/// Result of a log-convexity scan.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct LogConvexReport {
    pub ok: bool,
    pub first_violation: Option<usize>,
}

#[derive(Deserialize)]
struct TableFile {
    #[serde(rename = "M")]
    m: Vec<String>,
}

impl WeightSequence {
    fn from_family(family: Family, prec: u32) -> Self {
        WeightSequence(Arc::new(Inner {
            family,
            prec,
            values: RwLock::new(Vec::new()),
            ratios: RwLock::new(Vec::new()),
            runs: RwLock::new(Vec::new()),
        }))
    }

    /// `M_n = (n!)^s` for a positive rational `s`.
    pub fn gevrey(s: &Rational) -> Result<Self> {
        Self::gevrey_with_prec(s, DEFAULT_PREC)
    }

    pub fn gevrey_with_prec(s: &Rational, prec: u32) -> Result<Self> {
        if *s <= 0 {
            return Err(Error::InvalidArgument(format!("gevrey order must be positive, got {s}")));
        }
        let num = s.numer().to_u32();
        let den = s.denom().to_u32();
        match (num, den) {
            (Some(num), Some(den)) => Ok(Self::from_family(Family::Gevrey { num, den }, prec)),
            _ => Err(Error::InvalidArgument(format!("gevrey order {s} too large"))),
        }
    }

    /// `M_n = n!`.
    pub fn factorial() -> Self {
        Self::from_family(Family::Gevrey { num: 1, den: 1 }, DEFAULT_PREC)
    }

    pub fn qfamily() -> Self {
        Self::qfamily_with_prec(DEFAULT_PREC)
    }

    pub fn qfamily_with_prec(prec: u32) -> Self {
        Self::from_family(Family::QFamily, prec)
    }

    /// Table-backed sequence, validated: `M_0 = 1`, positive, non-decreasing
    /// and log-convex on the whole prefix.
    pub fn from_table(name: &str, values: Vec<Rational>) -> Result<Self> {
        validate_table(&values)?;
        Ok(Self::table_unchecked(name, values))
    }

    /// Table-backed sequence without validation, for probing bad inputs.
    pub fn table_unchecked(name: &str, values: Vec<Rational>) -> Self {
        Self::from_family(
            Family::Table {
                name: name.to_string(),
                values,
            },
            DEFAULT_PREC,
        )
    }

    /// Load `{ "M": ["1", "1", "2", ...] }`.
    pub fn load_table(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let file: TableFile = serde_json::from_str(&text)
            .map_err(|e| Error::InvalidTable(format!("{}: {e}", path.display())))?;
        let values = file
            .m
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map_err(|e| Error::InvalidTable(format!("{}: {e}", path.display())))?;
        let stem = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "table".into());
        let name = format!("{stem}@{:016x}", fnv1a(&file.m));
        Self::from_table(&name, values)
    }

    /// Parse `gevrey:<s>`, `qfamily`, `table:<path>` or `regularized:<spec>`.
    pub fn parse(spec: &str) -> Result<Self> {
        Self::parse_with_prec(spec, DEFAULT_PREC)
    }

    pub fn parse_with_prec(spec: &str, prec: u32) -> Result<Self> {
        let spec = spec.trim();
        if spec == "qfamily" {
            return Ok(Self::qfamily_with_prec(prec));
        }
        if let Some(s) = spec.strip_prefix("gevrey:") {
            return Self::gevrey_with_prec(&parse_rational(s)?, prec);
        }
        if let Some(p) = spec.strip_prefix("table:") {
            return Self::load_table(Path::new(p));
        }
        if let Some(inner) = spec.strip_prefix("regularized:") {
            return Ok(Self::parse_with_prec(inner, prec)?.regularize_strict());
        }
        Err(Error::Parse(format!(
            "unknown sequence {spec:?}; expected gevrey:<s>, qfamily, table:<path> or regularized:<spec>"
        )))
    }

    pub fn family(&self) -> &Family {
        &self.0.family
    }

    pub fn prec(&self) -> u32 {
        self.0.prec
    }

    /// Stable text key for this sequence, used in caches and reports.
    pub fn descriptor(&self) -> String {
        match &self.0.family {
            Family::Gevrey { num, den: 1 } => format!("gevrey:{num}"),
            Family::Gevrey { num, den } => format!("gevrey:{num}/{den}"),
            Family::QFamily => "qfamily".into(),
            Family::Table { name, .. } => format!("table:{name}"),
            Family::Regularized(inner) => format!("regularized({})", inner.descriptor()),
            Family::Mk { inner, k, c } => {
                format!("mk({};k={k};c={})", inner.descriptor(), c.mid_string(20))
            }
        }
    }

    /// Whether the family is expected to produce exact rational values.
    pub fn is_exact(&self) -> bool {
        match &self.0.family {
            Family::Gevrey { den, .. } => *den == 1,
            Family::QFamily => false,
            Family::Table { .. } => true,
            Family::Regularized(inner) => inner.is_exact(),
            Family::Mk { inner, c, .. } => inner.is_exact() && c.is_exact(),
        }
    }

    /// Number of available terms, if finite.
    pub fn len(&self) -> Option<usize> {
        match &self.0.family {
            Family::Table { values, .. } => Some(values.len()),
            Family::Regularized(inner) | Family::Mk { inner, .. } => inner.len(),
            _ => None,
        }
    }

    /// `M_n`.
    pub fn weight(&self, n: usize) -> Result<Enclosure> {
        if let Some(v) = self.0.values.read().unwrap().get(n) {
            return Ok(v.clone());
        }
        let mut memo = self.0.values.write().unwrap();
        while memo.len() <= n {
            let i = memo.len();
            let v = self.compute_weight(i, memo.last())?;
            memo.push(v);
        }
        Ok(memo[n].clone())
    }

    /// `m_n = M_{n+1} / M_n`.
    pub fn ratio(&self, n: usize) -> Result<Enclosure> {
        if let Some(v) = self.0.ratios.read().unwrap().get(n) {
            return Ok(v.clone());
        }
        let mut memo = self.0.ratios.write().unwrap();
        while memo.len() <= n {
            let i = memo.len();
            let v = self.compute_ratio(i)?;
            memo.push(v);
        }
        Ok(memo[n].clone())
    }

    fn compute_weight(&self, n: usize, prev: Option<&Enclosure>) -> Result<Enclosure> {
        let prec = self.0.prec;
        match &self.0.family {
            Family::Gevrey { num, den } => {
                let f = Enclosure::from_integer(Integer::from(Integer::factorial(n as u32)));
                Ok(f.pow_ratio(*num, *den, prec))
            }
            Family::Table { values, .. } => values
                .get(n)
                .cloned()
                .map(Enclosure::Exact)
                .ok_or(Error::OutOfTable { index: n, len: values.len() }),
            Family::QFamily | Family::Regularized(_) => match prev {
                None => Ok(Enclosure::one()),
                Some(p) => Ok(p * &self.ratio(n - 1)?),
            },
            Family::Mk { inner, k, c } => {
                if n < *k {
                    Ok(Enclosure::one())
                } else {
                    Ok(&c.pow_u((2 * (n - k) + 1) as u32) * &inner.weight(n)?)
                }
            }
        }
    }

    fn compute_ratio(&self, n: usize) -> Result<Enclosure> {
        let prec = self.0.prec;
        match &self.0.family {
            Family::Gevrey { num, den } => {
                Ok(Enclosure::from_int(n as i64 + 1).pow_ratio(*num, *den, prec))
            }
            Family::QFamily => {
                let e = Ball::from_int(1, prec).exp();
                Ok(Enclosure::Ball(Ball::from_int(n as i64, prec).add(&e).ln()))
            }
            Family::Table { values, .. } => {
                if n + 1 >= values.len() {
                    return Err(Error::OutOfTable { index: n + 1, len: values.len() });
                }
                Ok(Enclosure::Exact(Rational::from(&values[n + 1] / &values[n])))
            }
            Family::Regularized(inner) => Ok(&inner.ratio(n)? * &self.spread_factor(n)?),
            Family::Mk { inner, k, c } => {
                if n + 1 < *k {
                    Ok(Enclosure::one())
                } else if n + 1 == *k {
                    Ok(c * &inner.weight(*k)?)
                } else {
                    Ok(&c.pow_u(2) * &inner.ratio(n)?)
                }
            }
        }
    }

    /// The factor `a_n` of the strict regularization (1 for other families).
    pub fn spread_factor(&self, n: usize) -> Result<Enclosure> {
        let Family::Regularized(inner) = &self.0.family else {
            return Ok(Enclosure::one());
        };
        let prec = self.0.prec;
        let find = |runs: &[Run]| {
            runs.last()
                .filter(|r| r.start + r.len > n)
                .map(|_| runs.iter().find(|r| r.start <= n && n < r.start + r.len).unwrap().clone())
        };
        if let Some(run) = find(&self.0.runs.read().unwrap()) {
            return Ok(run.factor.pow_ratio((n - run.start) as u32, run.len as u32, prec));
        }
        let mut runs = self.0.runs.write().unwrap();
        while runs.last().map_or(true, |r| r.start + r.len <= n) {
            let start = runs.last().map_or(0, |r| r.start + r.len);
            let base = inner.ratio(start)?;
            let mut end = start;
            loop {
                if end - start >= REGULARIZE_SCAN_BUDGET {
                    return Err(Error::ScanExhausted {
                        start,
                        budget: REGULARIZE_SCAN_BUDGET,
                    });
                }
                match inner.ratio(end + 1)?.cmp_certain(&base) {
                    CertainOrdering::Equal => end += 1,
                    CertainOrdering::Greater => break,
                    CertainOrdering::Less => {
                        return Err(Error::InvalidArgument(format!(
                            "sequence is not log-convex at index {end}"
                        )))
                    }
                    CertainOrdering::Indeterminate => {
                        return Err(Error::IndeterminateAtPrecision { index: end + 1 })
                    }
                }
            }
            let jump = &inner.ratio(end + 1)? / &inner.ratio(end)?;
            let two = Enclosure::from_int(2);
            let factor = match jump.cmp_certain(&two) {
                CertainOrdering::Greater | CertainOrdering::Equal => two,
                _ => jump,
            };
            runs.push(Run {
                start,
                len: end - start + 1,
                factor,
            });
        }
        let run = find(&runs).expect("run covering n was just built");
        Ok(run.factor.pow_ratio((n - run.start) as u32, run.len as u32, prec))
    }

    /// Certify `m_{n+1} >= m_n` (or `>` when `strict`) for all `n < depth`.
    pub fn check_log_convex(&self, depth: usize, strict: bool) -> Result<LogConvexReport> {
        for n in 0..depth {
            let ord = self.ratio(n + 1)?.cmp_certain(&self.ratio(n)?);
            let ok = match ord {
                CertainOrdering::Greater => true,
                CertainOrdering::Equal => !strict,
                CertainOrdering::Less => false,
                CertainOrdering::Indeterminate => {
                    return Err(Error::IndeterminateAtPrecision { index: n })
                }
            };
            if !ok {
                return Ok(LogConvexReport {
                    ok: false,
                    first_violation: Some(n),
                });
            }
        }
        Ok(LogConvexReport {
            ok: true,
            first_violation: None,
        })
    }

    /// Strictly log-convex sequence defining the same class.
    ///
    /// Each maximal run of `l` equal ratios starting at `s` is spread out by
    /// multiplying ratio `s + i` with `A^(i/l)`, where `A = min(2, jump)`
    /// and `jump` is the ratio increase right after the run. Already strict
    /// sequences come back unchanged.
    pub fn regularize_strict(&self) -> WeightSequence {
        Self::from_family(Family::Regularized(self.clone()), self.0.prec)
    }

    /// `b_1 = 1`, `b_{n+1} = 2 b_n` if `2 b_n <= m_{n+1}`, else `b_n`.
    pub fn b_sequence(&self, n: usize) -> Result<u64> {
        Ok(*self.b_prefix(n)?.last().unwrap())
    }

    /// `[b_1, ..., b_n]`.
    pub fn b_prefix(&self, n: usize) -> Result<Vec<u64>> {
        if n == 0 {
            return Err(Error::InvalidArgument("b_n is defined for n >= 1".into()));
        }
        let mut out = Vec::with_capacity(n);
        let mut b: u64 = 1;
        out.push(b);
        for i in 1..n {
            let twice = b
                .checked_mul(2)
                .ok_or_else(|| Error::InvalidArgument("b_n overflows 64 bits".into()))?;
            match Enclosure::from_int(twice as i64).cmp_certain(&self.ratio(i + 1)?) {
                CertainOrdering::Less | CertainOrdering::Equal => b = twice,
                CertainOrdering::Greater => {}
                CertainOrdering::Indeterminate => {
                    return Err(Error::IndeterminateAtPrecision { index: i + 1 })
                }
            }
            out.push(b);
        }
        Ok(out)
    }

    /// The sequence `M^k`: `1` below index `k`, `c^(2n-2k+1) M_n` from `k` on.
    pub fn mk_sequence(&self, k: usize, c: Enclosure) -> Result<WeightSequence> {
        if k == 0 {
            return Err(Error::InvalidArgument("mk_sequence needs k >= 1".into()));
        }
        match c.cmp_certain(&self.weight(k)?) {
            CertainOrdering::Greater | CertainOrdering::Equal => {}
            _ => return Err(Error::InvalidConstant { k }),
        }
        Ok(Self::from_family(
            Family::Mk {
                inner: self.clone(),
                k,
                c,
            },
            self.0.prec,
        ))
    }
}

fn validate_table(values: &[Rational]) -> Result<()> {
    if values.is_empty() {
        return Err(Error::InvalidTable("empty table".into()));
    }
    if values[0] != 1 {
        return Err(Error::InvalidTable(format!("M_0 must be 1, got {}", values[0])));
    }
    for (n, w) in values.windows(2).enumerate() {
        if w[1] < w[0] {
            return Err(Error::InvalidTable(format!("decreasing at index {}", n + 1)));
        }
    }
    for (n, w) in values.windows(3).enumerate() {
        // m_{n+1} >= m_n  <=>  M_{n+2} M_n >= M_{n+1}^2
        if Rational::from(&w[2] * &w[0]) < Rational::from(&w[1] * &w[1]) {
            return Err(Error::InvalidTable(format!("not log-convex at ratio index {n}")));
        }
    }
    Ok(())
}

fn fnv1a(items: &[String]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for s in items {
        for b in s.bytes().chain(std::iter::once(0)) {
            h ^= b as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
    }
    h
}
