use std::path::Path;

use rayon::prelude::*;
use rug::{Integer, Rational};
use serde::{Deserialize, Serialize};

use super::jet::TaylorJet;
use crate::assemblies::AssemblyPD;
use crate::error::{Error, Result};
use crate::numerics::parse::parse_rational;
use crate::numerics::{ComplexEnclosure, Enclosure, LogMag};
use crate::poleseries::{EvalOptions, ExactPolicy, Truncation, DEFAULT_MAX_GROUPS};

/// Polynomial curve `t -> (gamma_1(t), ..., gamma_p(t))` with exact
/// rational coefficients, constant term first.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyCurve {
    pub components: Vec<Vec<Rational>>,
}

#[derive(Serialize, Deserialize)]
struct CurveFile {
    components: Vec<Vec<String>>,
}

impl PolyCurve {
    pub fn new(components: Vec<Vec<Rational>>) -> Self {
        PolyCurve { components }
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let f: CurveFile = serde_json::from_str(text)?;
        let components = f
            .components
            .iter()
            .map(|c| c.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        if components.is_empty() {
            return Err(Error::Parse("curve has no components".into()));
        }
        Ok(PolyCurve { components })
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        let f = CurveFile {
            components: self.components.iter().map(|c| c.iter().map(|q| q.to_string()).collect()).collect(),
        };
        serde_json::to_string(&f).expect("curve serializes")
    }

    /// Coefficients of `gamma_i(t0 + s)` in powers of `s`.
    pub fn shifted(&self, t0: &Rational) -> Vec<Vec<Rational>> {
        self.components
            .iter()
            .map(|c| {
                let d = c.len();
                (0..d)
                    .map(|i| {
                        // sum_{k >= i} c_k binom(k, i) t0^(k - i)
                        (i..d)
                            .map(|k| {
                                let b = Integer::from(Integer::binomial_u(k as u32, i as u32));
                                Rational::from(&c[k] * b) * Rational::from(t0.clone().pow((k - i) as u32))
                            })
                            .sum()
                    })
                    .collect()
            })
            .collect()
    }
}

use rug::ops::Pow;

/// Taylor jet of `f o gamma` with its certification data.
#[derive(Clone, Debug)]
pub struct CurveJet {
    pub jet: TaylorJet,
    pub blocks_used: usize,
    /// Bound on the omitted blocks' contribution, per order.
    pub tail_bounds: Vec<Enclosure>,
}

/// Jet of order `order` of `f o gamma` at `t0`.
///
/// For each block `k` the polynomial `u_k(t) = |gamma(t) - a_k|^2` is
/// expanded at `t0`, the profile's Taylor coefficients at `u_k(t0)` are
/// substituted into it, and the results are summed with weights `2^-k`.
/// Blocks `k > K >= order` have profile coefficients bounded by `1`, so
/// their total is majorized by `2^-K [s^j] sum_n D(s)^n` where `D`
/// bounds the non-constant part of every `u_k`.
pub fn compose_curve(assembly: &AssemblyPD, gamma: &PolyCurve, t0: &Rational, order: usize, tol: f64) -> Result<CurveJet> {
    if gamma.dim() != assembly.dim() {
        return Err(Error::InvalidArgument(format!(
            "curve has {} components, assembly lives in dimension {}",
            gamma.dim(),
            assembly.dim()
        )));
    }
    if order == 0 {
        return Err(Error::InvalidArgument("jet order must be at least 1".into()));
    }
    let prec = assembly.options().prec;
    let shifted = gamma.shifted(t0);
    let comp_jets: Vec<TaylorJet> = shifted
        .iter()
        .map(|c| {
            let v: Vec<Enclosure> = c.iter().cloned().map(Enclosure::Exact).collect();
            TaylorJet::from_real(t0.clone(), &v, order)
        })
        .collect();

    let n0 = assembly.start_index();
    let bounds = assembly.witness_coordinate_bounds(n0)?;
    let majorant = |coord_bounds: &[Enclosure]| -> Vec<Enclosure> {
        // D_i = |[s^i] sum gamma_j^2| + 2 sum_j A_j |[s^i] gamma_j|, i >= 1
        let mut d = vec![Enclosure::zero(); order + 1];
        for (cj, a) in comp_jets.iter().zip(coord_bounds) {
            let sq = cj.mul(cj);
            for i in 1..=order {
                d[i] = &d[i] + &(&sq.coeffs[i].re.abs() + &(&a.mul_2si(1) * &cj.coeffs[i].re.abs()));
            }
        }
        // [s^j] sum_{n <= order} D(s)^n
        let dj = TaylorJet::from_real(t0.clone(), &d, order);
        let ones = vec![ComplexEnclosure::one(); order + 1];
        let mut shifted = dj.clone();
        shifted.coeffs[0] = ComplexEnclosure::one();
        shifted.compose_into(&ones).coeffs.into_iter().map(|c| c.re).collect()
    };
    let maj0 = majorant(&bounds);
    let mut big_k = order + 2;
    for (j, m) in maj0.iter().enumerate() {
        let scale = LogMag::from_enclosure(&assembly.weights().weight(j)?, prec).hi_f64().max(0.0);
        let need = LogMag::from_enclosure(m, prec).hi_f64() - tol.log2() - scale;
        if need.is_finite() {
            big_k = big_k.max(need.ceil() as usize);
        }
    }
    big_k = big_k.max(n0 + 8);
    for k in n0..=big_k {
        assembly.block(k)?;
    }
    let tail_maj = majorant(&assembly.witness_coordinate_bounds(big_k + 1)?);
    let tail_bounds: Vec<Enclosure> = tail_maj.iter().map(|m| m.mul_2si(-(big_k as i32))).collect();

    let per_block: Vec<TaylorJet> = (n0..=big_k)
        .into_par_iter()
        .map(|k| {
            let a = assembly.witness(k)?;
            let mut u = TaylorJet::zero(t0.clone(), order);
            for (cj, ak) in comp_jets.iter().zip(&a) {
                let mut d = cj.clone();
                d.coeffs[0] = d.coeffs[0].sub(&ComplexEnclosure::real(ak.clone()));
                u = u.add(&d.mul(&d));
            }
            let u0 = u.coeffs[0].re.clone();
            let groups = groups_for_block(order, k, tol, &u0, prec);
            let opts = EvalOptions::default()
                .with_prec(prec)
                .with_truncation(Truncation::Groups(groups))
                .with_exact(ExactPolicy::Never);
            let outer: Vec<ComplexEnclosure> = assembly
                .block(k)?
                .taylor_coeffs(&u0, order, &opts)?
                .into_iter()
                .map(|(v, _)| v)
                .collect();
            let mut jet = u.compose_into(&outer);
            for c in jet.coeffs.iter_mut() {
                *c = c.mul_2si(-(k as i32));
            }
            Ok(jet)
        })
        .collect::<Result<_>>()?;
    let mut jet = TaylorJet::zero(t0.clone(), order);
    for b in &per_block {
        jet = jet.add(b);
    }
    for (c, t) in jet.coeffs.iter_mut().zip(&tail_bounds) {
        *c = c.widen(&t.upper(prec), prec);
    }
    Ok(CurveJet {
        jet,
        blocks_used: big_k,
        tail_bounds,
    })
}

/// Groups for one profile so its truncation error sits well below `tol`.
fn groups_for_block(order: usize, k: usize, tol: f64, u0: &Enclosure, prec: u32) -> usize {
    let dist = if u0.contains_zero() {
        0.0
    } else {
        -LogMag::from_enclosure(&u0.abs(), prec).lo_f64()
    };
    // coefficients near u0 are at most |u0|^-(n+1); amplification by the
    // substitution is absorbed by a generous margin
    let size = (order as f64 + 1.0) * dist.max(0.0) + 4.0 * order as f64;
    ((size - tol.log2() - k as f64).ceil() as i64 + 8).clamp(8, DEFAULT_MAX_GROUPS as i64) as usize
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assemblies::{build_masterthm, PointPD};
    use crate::multivar::MultiIndex;
    use crate::weights::WeightSequence;

    fn q(a: i64, b: i64) -> Rational {
        Rational::from((a, b))
    }

    #[test]
    fn json_round_trip_and_shift() {
        let c = PolyCurve::from_json(r#"{ "components": [["0","1"],["0","0","1"]] }"#).unwrap();
        assert_eq!(c.components, vec![vec![q(0, 1), q(1, 1)], vec![q(0, 1), q(0, 1), q(1, 1)]]);
        assert_eq!(PolyCurve::from_json(&c.to_json()).unwrap(), c);
        // t^2 at 1/2 + s: 1/4 + s + s^2
        let s = c.shifted(&q(1, 2));
        assert_eq!(s[1], vec![q(1, 4), q(1, 1), q(1, 1)]);
        assert!(PolyCurve::from_json(r#"{ "components": [["x"]] }"#).is_err());
    }

    #[test]
    fn constant_curve_has_flat_jet() {
        let a = build_masterthm(&WeightSequence::factorial(), 2).unwrap();
        let c = PolyCurve::new(vec![vec![q(1, 5)], vec![q(-1, 3)]]);
        let j = compose_curve(&a, &c, &q(0, 1), 4, 1e-12).unwrap();
        for c in &j.jet.coeffs[1..] {
            assert!(c.re.is_zero() || c.abs_upper(64).to_f64() < 1e-9);
        }
    }

    #[test]
    fn first_order_matches_chain_rule() {
        let a = build_masterthm(&WeightSequence::factorial(), 2).unwrap();
        let c = PolyCurve::new(vec![vec![q(0, 1), q(1, 1)], vec![q(0, 1), q(0, 1), q(1, 1)]]);
        let t0 = q(1, 10);
        let j = compose_curve(&a, &c, &t0, 3, 1e-12).unwrap();
        let x = vec![Enclosure::Exact(q(1, 10)), Enclosure::Exact(q(1, 100))];
        let grads = a
            .derivatives(
                &PointPD::Real(x),
                &[MultiIndex::new(vec![1, 0]), MultiIndex::new(vec![0, 1])],
                1e-12,
            )
            .unwrap();
        // gamma'(t0) = (1, 2 t0)
        let want = grads[0].0.add(&grads[1].0.scale(&Enclosure::Exact(q(1, 5))));
        let got = &j.jet.coeffs[1];
        let diff = got.sub(&want).abs_upper(64).to_f64();
        assert!(diff < 1e-8, "diff {diff}");
        // jet consistency: lower order run equals the truncation
        let j2 = compose_curve(&a, &c, &t0, 2, 1e-12).unwrap();
        for (u, v) in j.jet.truncate(2).coeffs.iter().zip(&j2.jet.coeffs) {
            assert!(u.re.overlaps(&v.re) && u.im.overlaps(&v.im));
        }
    }
}
