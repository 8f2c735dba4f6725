use std::collections::BTreeMap;
use std::sync::{Arc, RwLock};

use rayon::prelude::*;
use rug::Rational;

use super::{
    block_jet, freeze_upper, log2_hi, strict_weights, AssemblyOptions, CacheEntry, ConstantChoice,
    INTERFERENCE_LOOKAHEAD,
};
use crate::error::{Error, Result};
use crate::multivar::{fdb_normalized, norm, norm_sq, radial_growth_constant, MultiIndex};
use crate::numerics::parse::parse_rational;
use crate::numerics::{ipow, CertainOrdering, ComplexEnclosure, Enclosure};
use crate::poleseries::{build_block, Certificate, PoleSeries};
use crate::weights::WeightSequence;

/// Witness points are used only once `b_n = M_n^(1/n)` exceeds `1 + margin`.
pub const DEFAULT_START_MARGIN: f64 = 1e-6;

/// Largest index searched for the start of the witness sequence.
const START_SEARCH: usize = 10_000;

/// Where a p-dimensional assembly is evaluated.
#[derive(Clone, Debug)]
pub enum PointPD {
    Real(Vec<Enclosure>),
    /// The witness `a_n`, with block `n` evaluated at exact zero displacement.
    Witness(usize),
}

/// `f(x) = sum_{k >= n0} 2^-k g_k(|x - a_k|^2)` on `R^p`.
#[derive(Clone, Debug)]
pub struct AssemblyPD(Arc<Inner>);

#[derive(Debug)]
struct Inner {
    p: usize,
    weights: WeightSequence,
    opts: AssemblyOptions,
    n0: usize,
    /// `1 + |a_{n0}|`, an upper bound for `1 + sup |a_k|`.
    reach: Enclosure,
    witnesses: RwLock<BTreeMap<usize, Vec<Enclosure>>>,
    consts: RwLock<BTreeMap<usize, ConstantChoice>>,
    blocks: RwLock<BTreeMap<usize, PoleSeries>>,
}

/// The radial assembly in `R^p` with default options.
pub fn build_masterthm(m: &WeightSequence, p: usize) -> Result<AssemblyPD> {
    AssemblyPD::new(m, p, AssemblyOptions::default())
}

/// Constant `c_n` of the radial assembly for the given slack.
pub fn select_c_pd(assembly: &AssemblyPD, n: usize, slack: &Rational) -> Result<Enclosure> {
    Ok(Enclosure::Exact(assembly.select_with_slack(n, slack)?.c))
}

impl AssemblyPD {
    pub fn new(m: &WeightSequence, p: usize, opts: AssemblyOptions) -> Result<Self> {
        opts.validate()?;
        if p < 2 {
            return Err(Error::InvalidArgument(format!("dimension must be at least 2, got {p}")));
        }
        let weights = strict_weights(m)?;
        let n0 = start_index(&weights, opts.prec)?;
        let first = witness_point(&weights, n0, p, opts.prec)?;
        let reach = &Enclosure::one() + &norm(&first, opts.prec);
        let mut w = BTreeMap::new();
        w.insert(n0, first);
        Ok(AssemblyPD(Arc::new(Inner {
            p,
            weights,
            opts,
            n0,
            reach,
            witnesses: RwLock::new(w),
            consts: RwLock::new(BTreeMap::new()),
            blocks: RwLock::new(BTreeMap::new()),
        })))
    }

    pub fn dim(&self) -> usize {
        self.0.p
    }

    pub fn weights(&self) -> &WeightSequence {
        &self.0.weights
    }

    pub fn options(&self) -> &AssemblyOptions {
        &self.0.opts
    }

    pub fn start_index(&self) -> usize {
        self.0.n0
    }

    /// `1 + sup_k |a_k|`.
    pub fn reach(&self) -> &Enclosure {
        &self.0.reach
    }

    fn prec(&self) -> u32 {
        self.0.opts.prec
    }

    pub fn family_key(&self, slack: &Rational) -> String {
        format!("{}|radial{}|slack={slack}", self.0.weights.descriptor(), self.0.p)
    }

    /// `a_n = (2/sqrt(ln b_n), b_n^(-1/4), 0, ...)` for `n >= n0`.
    pub fn witness(&self, n: usize) -> Result<Vec<Enclosure>> {
        if n < self.0.n0 {
            return Err(Error::InvalidArgument(format!(
                "witness points start at n0 = {}, asked for {n}",
                self.0.n0
            )));
        }
        if let Some(a) = self.0.witnesses.read().unwrap().get(&n) {
            return Ok(a.clone());
        }
        let a = witness_point(&self.0.weights, n, self.0.p, self.prec())?;
        self.0.witnesses.write().unwrap().insert(n, a.clone());
        Ok(a)
    }

    /// `B (|x| + a)` with `B = 4 p e^p` and `a = 1 + sup |a_k|`: the
    /// per-order growth of any block's derivatives at `x`.
    pub fn growth_at(&self, x_norm: &Enclosure) -> Enclosure {
        // radial_growth_constant computes 4 p e^p (r + 1); shift r by sup |a_k|
        let r = &(x_norm + &self.0.reach) - &Enclosure::one();
        radial_growth_constant(self.0.p, &r, self.prec())
    }

    /// Interference of the other blocks with the `x_1^(2n)` derivative at
    /// `a_n`, normalized by `(2n)!`:
    /// `sum_{k != n} 2^-k G^(2n) max(u_k^-1, u_k^-(2n+1))` with
    /// `u_k = |a_n - a_k|^2` and `G = B(|a_n| + a)`, plus a geometric tail.
    pub fn interference(&self, n: usize) -> Result<Enclosure> {
        let prec = self.prec();
        let an = self.witness(n)?;
        let growth = self.growth_at(&norm(&an, prec)).pow_u(2 * n as u32);
        let last = n + INTERFERENCE_LOOKAHEAD;
        let bound = |u: &Enclosure| -> Result<Enclosure> {
            if u.contains_zero() {
                return Err(Error::NeedMorePrecision { bits: prec });
            }
            let inv = u.recip();
            Ok(inv.max(&inv.pow_u(2 * n as u32 + 1)))
        };
        let mut t = Enclosure::zero();
        for k in self.0.n0..=last {
            if k == n {
                continue;
            }
            let d: Vec<Enclosure> = an.iter().zip(self.witness(k)?).map(|(a, b)| a - &b).collect();
            t = &t + &bound(&norm_sq(&d))?.mul_2si(-(k as i32));
        }
        // for k > last the first coordinates are below a_{last+1,1} < a_{n,1}
        let gap = &an[0] - &self.witness(last + 1)?[0];
        if gap.cmp_certain(&Enclosure::zero()) != CertainOrdering::Greater {
            return Err(Error::NeedMorePrecision { bits: prec });
        }
        t = &t + &bound(&gap.pow_u(2))?.mul_2si(-(last as i32));
        Ok((&t * &growth).ballify(prec))
    }

    fn requirement(&self, n: usize, t: &Enclosure) -> Result<Enclosure> {
        let w = &self.0.weights;
        let mn = w.weight(n)?;
        let target = &Enclosure::from_integer(ipow(2 * n as u32, 2 * n as u32)) * &w.weight(2 * n)?;
        let need = &(&Enclosure::from_integer(ipow(4, n as u32)) * &(&target + t)) / &mn;
        Ok(mn.max(&need))
    }

    /// Does `4^-n c M_n - T >= (2n)^(2n) M_(2n)` hold, with `c >= M_n`?
    pub fn constant_is_admissible(&self, n: usize, c: &Rational, t_bound: &Rational) -> Result<bool> {
        let w = &self.0.weights;
        let mn = w.weight(n)?;
        let c = Enclosure::Exact(c.clone());
        let lhs = &(&(&c * &mn) / &Enclosure::from_integer(ipow(4, n as u32))) - &Enclosure::Exact(t_bound.clone());
        let rhs = &Enclosure::from_integer(ipow(2 * n as u32, 2 * n as u32)) * &w.weight(2 * n)?;
        Ok(lhs.cmp_certain(&rhs).is_ge() && c.cmp_certain(&mn).is_ge())
    }

    pub fn constant(&self, n: usize) -> Result<ConstantChoice> {
        if let Some(c) = self.0.consts.read().unwrap().get(&n) {
            return Ok(c.clone());
        }
        let slack = self.0.opts.slack.clone();
        let c = self.select_with_slack(n, &slack)?;
        self.0.consts.write().unwrap().insert(n, c.clone());
        Ok(c)
    }

    fn select_with_slack(&self, n: usize, slack: &Rational) -> Result<ConstantChoice> {
        if n < self.0.n0 {
            return Err(Error::InvalidArgument(format!("constants start at n0 = {}", self.0.n0)));
        }
        let prec = self.prec();
        let family = self.family_key(slack);
        if let Some(cache) = &self.0.opts.cache {
            if let Some(e) = cache.get(&family, n, prec) {
                let c = parse_rational(&e.c)?;
                let t = parse_rational(&e.t_bound)?;
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

    /// The radial profile `g_k`: the block series over `M^k`.
    pub fn block(&self, k: usize) -> Result<PoleSeries> {
        if let Some(b) = self.0.blocks.read().unwrap().get(&k) {
            return Ok(b.clone());
        }
        let c = Enclosure::Exact(self.constant(k)?.c).ballify(self.prec());
        let series = build_block(&self.0.weights.mk_sequence(k, c)?);
        Ok(self.0.blocks.write().unwrap().entry(k).or_insert(series).clone())
    }

    /// Last explicitly summed block for derivatives of order `<= order` at
    /// a point of norm `x_norm`: the remaining blocks add at most
    /// `2^-K (B(|x| + a))^order`, which is pushed below `tol * M_order`.
    pub fn blocks_for(&self, x_norm: &Enclosure, order: usize, tol: f64) -> Result<usize> {
        let prec = self.prec();
        let g = log2_hi(&self.growth_at(x_norm), prec);
        let scale = log2_hi(&self.0.weights.weight(order)?, prec).max(0.0);
        let need = (order as f64 * g - tol.log2() - scale).ceil().max(0.0) as usize;
        Ok(need.max(order + 2).max(self.0.n0 + 8))
    }

    /// Coordinates of a point.
    pub fn point(&self, x: &PointPD) -> Result<Vec<Enclosure>> {
        match x {
            PointPD::Real(v) => {
                if v.len() != self.0.p {
                    return Err(Error::InvalidArgument(format!(
                        "point has {} coordinates, assembly lives in dimension {}",
                        v.len(),
                        self.0.p
                    )));
                }
                Ok(v.clone())
            }
            PointPD::Witness(n) => self.witness(*n),
        }
    }

    /// Normalized derivatives `D^a f(x) / |a|!` for every multi-index in
    /// `alphas`, each with its certificate.
    pub fn derivatives(
        &self,
        x: &PointPD,
        alphas: &[MultiIndex],
        tol: f64,
    ) -> Result<Vec<(ComplexEnclosure, Certificate)>> {
        let prec = self.prec();
        let order = alphas.iter().map(|a| a.order()).max().unwrap_or(0) as usize;
        if alphas.iter().any(|a| a.dim() != self.0.p) {
            return Err(Error::InvalidArgument("multi-index dimension mismatch".into()));
        }
        let xv = self.point(x)?;
        let xn = norm(&xv, prec);
        let mut big_k = self.blocks_for(&xn, order, tol)?;
        if let PointPD::Witness(n) = x {
            big_k = big_k.max(n + 2);
        }
        let n0 = self.0.n0;
        for k in n0..=big_k {
            self.block(k)?;
        }
        let tol_log2 = tol.log2();
        let budget_base: Vec<f64> = (0..=order)
            .map(|j| Ok(tol_log2 + log2_hi(&self.0.weights.weight(j)?, prec) - (big_k as f64).log2()))
            .collect::<Result<_>>()?;
        let per_block: Vec<Vec<ComplexEnclosure>> = (n0..=big_k)
            .into_par_iter()
            .map(|k| {
                let own = matches!(x, PointPD::Witness(n) if *n == k);
                let y: Vec<Enclosure> = if own {
                    vec![Enclosure::zero(); self.0.p]
                } else {
                    xv.iter().zip(self.witness(k)?).map(|(a, b)| a - &b).collect()
                };
                let u = norm_sq(&y);
                // the radial expansion amplifies the profile's coefficients
                // by at most (2p(|y|+1))^order
                let amp = order as f64 * (2.0 * self.0.p as f64 * (norm(&y, prec).to_f64() + 1.0)).log2();
                let budget: Vec<f64> = budget_base.iter().map(|b| b + k as f64 - amp).collect();
                let jet: Vec<ComplexEnclosure> =
                    block_jet(&self.block(k)?, &u, order, &budget, prec)?.into_iter().map(|(v, _)| v).collect();
                alphas
                    .iter()
                    .map(|a| fdb_normalized(&jet[..=a.order() as usize], &y, a))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let growth = self.growth_at(&xn);
        let mut out = Vec::with_capacity(alphas.len());
        for (i, a) in alphas.iter().enumerate() {
            let mut acc = ComplexEnclosure::zero();
            for (b, vals) in per_block.iter().enumerate() {
                acc = acc.add(&vals[i].mul_2si(-((n0 + b) as i32)));
            }
            let tail = growth.pow_u(a.order()).mul_2si(-(big_k as i32)).upper(prec);
            out.push((
                acc.widen(&tail, prec),
                Certificate {
                    groups_used: big_k,
                    tail_bound: tail,
                    precision_bits: Some(prec),
                },
            ));
        }
        Ok(out)
    }

    /// Single normalized derivative.
    pub fn derivative(&self, x: &PointPD, alpha: &MultiIndex, tol: f64) -> Result<(ComplexEnclosure, Certificate)> {
        Ok(self.derivatives(x, std::slice::from_ref(alpha), tol)?.pop().unwrap())
    }

    /// Upper bound on every `|a_{k,i}|` for `k >= from`, per coordinate.
    pub fn witness_coordinate_bounds(&self, from: usize) -> Result<Vec<Enclosure>> {
        let a = self.witness(from.max(self.0.n0))?;
        Ok(a.iter().map(|v| v.abs()).collect())
    }
}

/// First `n >= 1` with `M_n^(1/n) > 1 + margin`, certified.
fn start_index(w: &WeightSequence, prec: u32) -> Result<usize> {
    let threshold = &Enclosure::one() + &Enclosure::from_f64(DEFAULT_START_MARGIN, prec);
    for n in 1..=START_SEARCH {
        let b = w.weight(n)?.root(n as u32, prec);
        match b.cmp_certain(&threshold) {
            CertainOrdering::Greater => return Ok(n),
            CertainOrdering::Indeterminate => return Err(Error::IndeterminateAtPrecision { index: n }),
            _ => {}
        }
    }
    Err(Error::InvalidArgument(format!(
        "M_n^(1/n) stays below 1 + {DEFAULT_START_MARGIN} up to n = {START_SEARCH}"
    )))
}

fn witness_point(w: &WeightSequence, n: usize, p: usize, prec: u32) -> Result<Vec<Enclosure>> {
    let b = w.weight(n)?.root(n as u32, prec);
    let lb = b.ln(prec);
    if lb.cmp_certain(&Enclosure::zero()) != CertainOrdering::Greater {
        return Err(Error::InvalidArgument(format!("b_{n} does not exceed 1")));
    }
    let x1 = &Enclosure::from_int(2) / &lb.sqrt(prec);
    let x2 = b.root(4, prec).recip();
    let mut v = vec![x1, x2];
    v.resize(p, Enclosure::zero());
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{log_compare, LogMag};

    fn plane() -> AssemblyPD {
        build_masterthm(&WeightSequence::factorial(), 2).unwrap()
    }

    #[test]
    fn start_index_and_first_witness() {
        let a = plane();
        assert_eq!(a.start_index(), 2);
        let w = a.witness(2).unwrap();
        // b_2 = sqrt 2: (sqrt(1/ln 2^(1/8)), 2^(-1/8))
        let want1 = (1.0 / (2f64.ln() / 8.0)).sqrt();
        assert!((w[0].to_f64() - want1).abs() < 1e-12);
        assert!((w[1].to_f64() - 2f64.powf(-0.125)).abs() < 1e-12);
        assert!(a.witness(1).is_err());
        let a3 = build_masterthm(&WeightSequence::factorial(), 3).unwrap();
        assert!(a3.witness(5).unwrap()[2].is_zero());
    }

    #[test]
    fn witnesses_lie_on_the_flat_curve() {
        let a = plane();
        for n in [2usize, 3, 10, 50] {
            let w = a.witness(n).unwrap();
            let t2 = w[0].pow_u(2);
            let flat = t2.recip().neg().exp(256);
            assert!(flat.overlaps(&w[1]), "n = {n}");
            assert!(flat.rel_rad() < 1e-60);
        }
        let w10 = a.witness(10).unwrap();
        let w50 = a.witness(50).unwrap();
        assert!(w50[0].cmp_certain(&w10[0]) == CertainOrdering::Less);
        assert!(w50[1].cmp_certain(&w10[1]) == CertainOrdering::Less);
    }

    #[test]
    fn constants_satisfy_the_guarantee() {
        let a = plane();
        for n in 2..=6 {
            let ch = a.constant(n).unwrap();
            assert!(a.constant_is_admissible(n, &ch.c, &ch.t_bound).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn witness_divergence_n2() {
        let a = plane();
        let n = 2;
        let (v, _) = a.derivative(&PointPD::Witness(n), &MultiIndex::axis(2, 0, 2 * n as u32), 1e-12).unwrap();
        let rhs = &Enclosure::from_integer(ipow(4, 4)) * &a.weights().weight(4).unwrap();
        assert_eq!(
            log_compare(&LogMag::from_complex(&v, 256), &LogMag::from_enclosure(&rhs, 256)),
            CertainOrdering::Greater
        );
    }

    #[test]
    fn own_block_at_witness_is_the_profile_coefficient() {
        // d^(2n)/dx1^(2n) h(0) / (2n)! = g^(n)(0)/n!
        let a = plane();
        let g = a.block(3).unwrap();
        let opts = crate::poleseries::EvalOptions::default()
            .with_truncation(crate::poleseries::Truncation::Groups(30))
            .with_exact(crate::poleseries::ExactPolicy::Never);
        let jet = g.taylor_coeffs(&Enclosure::zero(), 6, &opts).unwrap();
        let coeffs: Vec<ComplexEnclosure> = jet.into_iter().map(|(v, _)| v).collect();
        let d = fdb_normalized(&coeffs, &[Enclosure::zero(), Enclosure::zero()], &MultiIndex::axis(2, 0, 6)).unwrap();
        assert!(d.re.overlaps(&coeffs[3].re) && d.im.overlaps(&coeffs[3].im));
    }
}
