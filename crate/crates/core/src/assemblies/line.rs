use std::collections::BTreeMap;
use std::sync::{Arc, RwLock};

use rayon::prelude::*;
use rug::Rational;

use super::{
    block_jet, freeze_upper, log2_hi, strict_weights, AssemblyOptions, CacheEntry, ConstantChoice,
    INTERFERENCE_LOOKAHEAD,
};
use crate::error::{Error, Result};
use crate::numerics::parse::parse_rational;
use crate::numerics::{ipow, CertainOrdering, ComplexEnclosure, Enclosure};
use crate::poleseries::{build_block, Certificate, PoleSeries};
use crate::weights::WeightSequence;

/// Where a one-dimensional assembly is evaluated.
#[derive(Clone, Debug)]
pub enum AssemblyPoint {
    Real(Enclosure),
    /// The witness `a_n`; block `n` is then evaluated at an exact zero
    /// displacement instead of at `a_n - a_n`.
    Witness(usize),
}

/// `f(x) = sum_k 2^-k h_k(x - a_k)` on the line.
#[derive(Clone, Debug)]
pub struct Assembly1D(Arc<Inner>);

#[derive(Debug)]
struct Inner {
    weights: WeightSequence,
    opts: AssemblyOptions,
    witnesses: RwLock<Vec<Enclosure>>,
    consts: RwLock<BTreeMap<usize, ConstantChoice>>,
    blocks: RwLock<BTreeMap<usize, PoleSeries>>,
}

/// The line assembly over `M` with default options (slack 2, no cache).
pub fn build_thm2(m: &WeightSequence) -> Result<Assembly1D> {
    Assembly1D::new(m, AssemblyOptions::default())
}

/// Constant `c_n` for the given slack (cached when the assembly has a cache).
pub fn select_c(assembly: &Assembly1D, n: usize, slack: &Rational) -> Result<Enclosure> {
    Ok(Enclosure::Exact(assembly.select_with_slack(n, slack)?.c))
}

/// Normalized coefficient `f^(j)(x)/j!` with its certificate.
pub fn assembly_coeff(
    assembly: &Assembly1D,
    x: &AssemblyPoint,
    j: usize,
    tol: f64,
) -> Result<(ComplexEnclosure, Certificate)> {
    Ok(assembly.coeffs(x, j, tol)?.pop().unwrap())
}

impl Assembly1D {
    /// Builds the assembly; non-strict weights are regularized first.
    pub fn new(m: &WeightSequence, opts: AssemblyOptions) -> Result<Self> {
        opts.validate()?;
        Ok(Assembly1D(Arc::new(Inner {
            weights: strict_weights(m)?,
            opts,
            witnesses: RwLock::new(Vec::new()),
            consts: RwLock::new(BTreeMap::new()),
            blocks: RwLock::new(BTreeMap::new()),
        })))
    }

    pub fn weights(&self) -> &WeightSequence {
        &self.0.weights
    }

    pub fn options(&self) -> &AssemblyOptions {
        &self.0.opts
    }

    fn prec(&self) -> u32 {
        self.0.opts.prec
    }

    /// Cache family key for a given slack.
    pub fn family_key(&self, slack: &Rational) -> String {
        format!("{}|line|slack={slack}", self.0.weights.descriptor())
    }

    /// `a_n = M_n^(-1/(2n))`, `n >= 1`.
    pub fn witness(&self, n: usize) -> Result<Enclosure> {
        if n == 0 {
            return Err(Error::InvalidArgument("witness points start at n = 1".into()));
        }
        {
            let w = self.0.witnesses.read().unwrap();
            if let Some(a) = w.get(n - 1) {
                return Ok(a.clone());
            }
        }
        let mut w = self.0.witnesses.write().unwrap();
        while w.len() < n {
            let k = w.len() + 1;
            let a = self.0.weights.weight(k)?.root(2 * k as u32, self.prec()).recip();
            w.push(a);
        }
        Ok(w[n - 1].clone())
    }

    /// `c_n` at the assembly's slack.
    pub fn constant(&self, n: usize) -> Result<ConstantChoice> {
        if let Some(c) = self.0.consts.read().unwrap().get(&n) {
            return Ok(c.clone());
        }
        let slack = self.0.opts.slack.clone();
        let c = self.select_with_slack(n, &slack)?;
        self.0.consts.write().unwrap().insert(n, c.clone());
        Ok(c)
    }

    /// `T_n = sum_{k != n} 2^-k |a_n - a_k|^-(n+1)`, enclosed, including
    /// the geometric tail `2^-K (a_n - a_{K+1})^-(n+1)` for `k > K`.
    pub fn interference(&self, n: usize) -> Result<Enclosure> {
        let prec = self.prec();
        let an = self.witness(n)?;
        let e = n as u32 + 1;
        let last = n + INTERFERENCE_LOOKAHEAD;
        let mut t = Enclosure::zero();
        for k in 1..=last {
            if k == n {
                continue;
            }
            let gap = (&an - &self.witness(k)?).abs();
            if gap.contains_zero() {
                return Err(Error::NeedMorePrecision { bits: prec });
            }
            t = &t + &gap.pow_u(e).recip().mul_2si(-(k as i32));
        }
        let gap = &an - &self.witness(last + 1)?;
        if gap.cmp_certain(&Enclosure::zero()) != CertainOrdering::Greater {
            return Err(Error::NeedMorePrecision { bits: prec });
        }
        t = &t + &gap.pow_u(e).recip().mul_2si(-(last as i32));
        Ok(t.ballify(prec))
    }

    /// Smallest admissible constant before slack:
    /// `max(M_n, 4^n (n^n M_n + T_n) / M_n)`.
    fn requirement(&self, n: usize, t: &Enclosure) -> Result<Enclosure> {
        let mn = self.0.weights.weight(n)?;
        let nn = Enclosure::from_integer(ipow(n as u32, n as u32));
        let need = &(&Enclosure::from_integer(ipow(4, n as u32)) * &(&(&nn * &mn) + t)) / &mn;
        Ok(mn.max(&need))
    }

    /// Does `(c, T)` satisfy `4^-n c M_n - T >= n^n M_n` and `c >= M_n`?
    pub fn constant_is_admissible(&self, n: usize, c: &Rational, t_bound: &Rational) -> Result<bool> {
        let mn = self.0.weights.weight(n)?;
        let c = Enclosure::Exact(c.clone());
        let lhs = &(&(&c * &mn) / &Enclosure::from_integer(ipow(4, n as u32))) - &Enclosure::Exact(t_bound.clone());
        let rhs = &Enclosure::from_integer(ipow(n as u32, n as u32)) * &mn;
        Ok(lhs.cmp_certain(&rhs).is_ge() && c.cmp_certain(&mn).is_ge())
    }

    fn select_with_slack(&self, n: usize, slack: &Rational) -> Result<ConstantChoice> {
        if n == 0 {
            return Err(Error::InvalidArgument("constants are indexed from n = 1".into()));
        }
        let prec = self.prec();
        let family = self.family_key(slack);
        if let Some(cache) = &self.0.opts.cache {
            if let Some(e) = cache.get(&family, n, prec) {
                let c = parse_rational(&e.c)?;
                let t = parse_rational(&e.t_bound)?;
                // a cached constant is only reused if it still does its job
                let t_now = self.interference(n)?;
                if t_now.cmp_certain(&Enclosure::Exact(t.clone())).is_le()
                    && self.constant_is_admissible(n, &c, &t)?
                {
                    return Ok(ConstantChoice {
                        n,
                        c,
                        t_bound: t,
                        from_cache: true,
                    });
                }
            }
        }
        let t = self.interference(n)?;
        let req = self.requirement(n, &t)?;
        let (c, c_text) = freeze_upper(&(&Enclosure::Exact(slack.clone()) * &req), prec)?;
        let (t_bound, t_text) = freeze_upper(&t, prec)?;
        if let Some(cache) = &self.0.opts.cache {
            cache.insert(
                &family,
                n,
                prec,
                CacheEntry {
                    c: c_text,
                    t_bound: t_text,
                },
            )?;
        }
        Ok(ConstantChoice {
            n,
            c,
            t_bound,
            from_cache: false,
        })
    }

    /// The block series over `M^k`.
    pub fn block(&self, k: usize) -> Result<PoleSeries> {
        if let Some(b) = self.0.blocks.read().unwrap().get(&k) {
            return Ok(b.clone());
        }
        let c = Enclosure::Exact(self.constant(k)?.c).ballify(self.prec());
        let series = build_block(&self.0.weights.mk_sequence(k, c)?);
        Ok(self.0.blocks.write().unwrap().entry(k).or_insert(series).clone())
    }

    /// Number of blocks summed explicitly for orders `<= jmax`.
    pub fn blocks_for(&self, jmax: usize, tol: f64) -> Result<usize> {
        let scale = log2_hi(&self.0.weights.weight(jmax)?, self.prec()).max(0.0);
        let need = (-tol.log2() - scale).ceil().max(0.0) as usize;
        Ok(need.max(jmax + 2).max(8))
    }

    /// Normalized coefficients of orders `0..=jmax` at `x`, each certified:
    /// blocks `1..=K` are summed with their own truncation bounds and the
    /// blocks `k > K >= jmax` contribute at most `2^-K` (their sequences
    /// equal `1` up to order `jmax`).
    pub fn coeffs(&self, x: &AssemblyPoint, jmax: usize, tol: f64) -> Result<Vec<(ComplexEnclosure, Certificate)>> {
        let prec = self.prec();
        let big_k = match x {
            AssemblyPoint::Witness(n) => self.blocks_for(jmax, tol)?.max(n + 2),
            AssemblyPoint::Real(_) => self.blocks_for(jmax, tol)?,
        };
        let tol_log2 = tol.log2();
        let budget_base: Vec<f64> = (0..=jmax)
            .map(|j| Ok(tol_log2 + log2_hi(&self.0.weights.weight(j)?, prec) - (big_k as f64).log2()))
            .collect::<Result<_>>()?;
        // build constants and blocks up front so the parallel part only reads
        for k in 1..=big_k {
            self.block(k)?;
        }
        let xe = match x {
            AssemblyPoint::Real(v) => Some(v.clone()),
            AssemblyPoint::Witness(n) => {
                self.witness(*n)?;
                None
            }
        };
        let per_block: Vec<Vec<(ComplexEnclosure, Certificate)>> = (1..=big_k)
            .into_par_iter()
            .map(|k| {
                let y = match (x, &xe) {
                    (AssemblyPoint::Witness(n), _) if *n == k => Enclosure::zero(),
                    (AssemblyPoint::Witness(n), _) => &self.witness(*n)? - &self.witness(k)?,
                    (_, Some(v)) => v - &self.witness(k)?,
                    _ => unreachable!(),
                };
                let budget: Vec<f64> = budget_base.iter().map(|b| b + k as f64).collect();
                block_jet(&self.block(k)?, &y, jmax, &budget, prec)
            })
            .collect::<Result<_>>()?;
        let outer_tail = Enclosure::Exact(Rational::from((1, ipow(2, big_k as u32))));
        let outer_tail_f = outer_tail.upper(prec);
        let mut out = Vec::with_capacity(jmax + 1);
        for j in 0..=jmax {
            let mut acc = ComplexEnclosure::zero();
            let mut tails = outer_tail_f.clone();
            for (i, blk) in per_block.iter().enumerate() {
                let (v, cert) = &blk[j];
                let k = i as i32 + 1;
                acc = acc.add(&v.mul_2si(-k));
                let mut t = cert.tail_bound.clone();
                t >>= k;
                tails += t;
            }
            let cert = Certificate {
                groups_used: big_k,
                tail_bound: tails,
                precision_bits: Some(prec),
            };
            out.push((acc.widen(&outer_tail_f, prec), cert));
        }
        Ok(out)
    }
}
