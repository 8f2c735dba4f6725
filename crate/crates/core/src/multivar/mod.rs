//! Derivatives of radial compositions `g(|x|^2)` on `R^p`, and truncated
//! power series used to follow a function along a polynomial curve.
//!
//! For `g` smooth on the real line,
//!
//! ```text
//! D^a g(|x|^2) = a! * sum g^(n)(|x|^2) * prod_j (2 x_j)^(k_j1) / prod_j (k_j1! k_j2!)
//! ```
//!
//! where the sum runs over tuples with `a_j = k_j1 + 2 k_j2` and
//! `n = sum_j (k_j1 + k_j2)`.

mod curve;
mod jet;

use rug::{Integer, Rational};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{log_compare, CertainOrdering, ComplexEnclosure, Enclosure, LogMag};

pub use curve::{compose_curve, CurveJet, PolyCurve};
pub use jet::TaylorJet;

/// Multi-index `(a_1, ..., a_p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn new(components: Vec<u32>) -> Self {
        MultiIndex(components)
    }

    /// `(0, ..., 0, order, 0, ..., 0)` with `order` in slot `axis`.
    pub fn axis(p: usize, axis: usize, order: u32) -> Self {
        let mut v = vec![0; p];
        v[axis] = order;
        MultiIndex(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// `|a|`.
    pub fn order(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `a!`.
    pub fn factorial(&self) -> Integer {
        self.0.iter().map(|&a| Integer::from(Integer::factorial(a))).product()
    }

    /// All multi-indices in `p` variables of total order exactly `n`, in
    /// lexicographically decreasing order of the first component.
    pub fn all_of_order(p: usize, n: u32) -> Vec<MultiIndex> {
        fn rec(p: usize, n: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
            if p == 1 {
                prefix.push(n);
                out.push(MultiIndex(prefix.clone()));
                prefix.pop();
                return;
            }
            for a in (0..=n).rev() {
                prefix.push(a);
                rec(p - 1, n - a, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if p > 0 {
            rec(p, n, &mut Vec::new(), &mut out);
        }
        out
    }

    /// All multi-indices of order `<= n`, grouped by increasing order.
    pub fn all_up_to(p: usize, n: u32) -> Vec<MultiIndex> {
        (0..=n).flat_map(|k| Self::all_of_order(p, k)).collect()
    }
}

impl std::fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl std::str::FromStr for MultiIndex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let v = t
            .split(',')
            .map(|c| c.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad multi-index {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        if v.is_empty() {
            return Err(Error::Parse("empty multi-index".into()));
        }
        Ok(MultiIndex(v))
    }
}

/// One term of the expansion: `(k_11, k_12, ..., k_p1, k_p2)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FdbTuple(pub Vec<(u32, u32)>);

impl FdbTuple {
    /// Order of the outer derivative, `n = sum (k_j1 + k_j2)`.
    pub fn n(&self) -> u32 {
        self.0.iter().map(|(a, b)| a + b).sum()
    }

    /// The multi-index this tuple contributes to.
    pub fn alpha(&self) -> MultiIndex {
        MultiIndex(self.0.iter().map(|(a, b)| a + 2 * b).collect())
    }

    /// `prod k_j1! k_j2!`.
    pub fn denominator(&self) -> Integer {
        self.0
            .iter()
            .map(|&(a, b)| Integer::from(Integer::factorial(a)) * Integer::from(Integer::factorial(b)))
            .product()
    }

    /// Flattened form `[k_11, k_12, k_21, k_22, ...]`.
    pub fn flat(&self) -> Vec<u32> {
        self.0.iter().flat_map(|&(a, b)| [a, b]).collect()
    }
}

/// Every tuple with `a_j = k_j1 + 2 k_j2`; there are `prod (floor(a_j/2) + 1)`.
pub fn fdb_tuples(alpha: &MultiIndex) -> Vec<FdbTuple> {
    let mut out = vec![Vec::with_capacity(alpha.dim())];
    for &a in &alpha.0 {
        let mut next = Vec::with_capacity(out.len() * (a as usize / 2 + 1));
        for prefix in &out {
            for k2 in 0..=a / 2 {
                let mut t: Vec<(u32, u32)> = prefix.clone();
                t.push((a - 2 * k2, k2));
                next.push(t);
            }
        }
        out = next;
    }
    out.into_iter().map(FdbTuple).collect()
}

/// `sum_tuples n! / prod k!`, the mass bounded by `(2p)^|a|`.
pub fn multinomial_mass(alpha: &MultiIndex) -> Integer {
    fdb_tuples(alpha)
        .iter()
        .map(|t| Integer::from(Integer::factorial(t.n())) / t.denominator())
        .sum()
}

fn check_inputs(len: usize, x: &[Enclosure], alpha: &MultiIndex) -> Result<()> {
    if x.len() != alpha.dim() {
        return Err(Error::InvalidArgument(format!(
            "point has {} coordinates but the multi-index has {}",
            x.len(),
            alpha.dim()
        )));
    }
    if len <= alpha.order() as usize {
        return Err(Error::InvalidArgument(format!(
            "need outer derivatives up to order {}, got {}",
            alpha.order(),
            len.saturating_sub(1)
        )));
    }
    Ok(())
}

fn tuple_sum(
    x: &[Enclosure],
    alpha: &MultiIndex,
    outer: impl Fn(&FdbTuple) -> ComplexEnclosure,
) -> ComplexEnclosure {
    let two_x: Vec<Enclosure> = x.iter().map(|v| v.mul_2si(1)).collect();
    let mut acc = ComplexEnclosure::zero();
    for t in fdb_tuples(alpha) {
        let mut prod = Enclosure::Exact(Rational::from((1, t.denominator())));
        for (j, &(k1, _)) in t.0.iter().enumerate() {
            if k1 > 0 {
                prod = &prod * &two_x[j].pow_u(k1);
            }
        }
        acc = acc.add(&outer(&t).scale(&prod));
    }
    acc
}

/// `D^a [g(|x|^2)]` from the outer derivatives `g_derivs[n] = g^(n)(|x|^2)`.
pub fn fdb_derivative(
    g_derivs: &[ComplexEnclosure],
    x: &[Enclosure],
    alpha: &MultiIndex,
) -> Result<ComplexEnclosure> {
    check_inputs(g_derivs.len(), x, alpha)?;
    let s = tuple_sum(x, alpha, |t| g_derivs[t.n() as usize].clone());
    Ok(s.scale(&Enclosure::from_integer(alpha.factorial())))
}

/// `D^a [g(|x|^2)] / |a|!` from normalized outer coefficients
/// `g_coeffs[n] = g^(n)(|x|^2) / n!`; no large factorials are formed.
pub fn fdb_normalized(
    g_coeffs: &[ComplexEnclosure],
    x: &[Enclosure],
    alpha: &MultiIndex,
) -> Result<ComplexEnclosure> {
    check_inputs(g_coeffs.len(), x, alpha)?;
    let s = tuple_sum(x, alpha, |t| {
        let n = t.n();
        g_coeffs[n as usize].scale(&Enclosure::from_integer(Integer::from(Integer::factorial(n))))
    });
    let scale = Rational::from((alpha.factorial(), Integer::from(Integer::factorial(alpha.order()))));
    Ok(s.scale(&Enclosure::Exact(scale)))
}

/// `4 p e^p (|x| + 1)`, the per-order growth of radial derivatives.
pub fn radial_growth_constant(p: usize, x_norm: &Enclosure, prec: u32) -> Enclosure {
    let pe = Enclosure::from_int(p as i64).exp(prec);
    &(&Enclosure::from_int(4 * p as i64) * &pe) * &(x_norm + &Enclosure::one())
}

/// Euclidean norm of a point.
pub fn norm(x: &[Enclosure], prec: u32) -> Enclosure {
    let sq = norm_sq(x);
    match &sq {
        Enclosure::Exact(q) if q.is_zero() => sq,
        _ => sq.sqrt(prec),
    }
}

/// Squared Euclidean norm (exact for exact input).
pub fn norm_sq(x: &[Enclosure]) -> Enclosure {
    x.iter().fold(Enclosure::zero(), |acc, v| &acc + &v.pow_u(2))
}

#[derive(Clone, Debug, Serialize)]
pub struct FdbBoundReport {
    pub alpha: MultiIndex,
    pub lhs_log2_hi: f64,
    pub rhs_log2_lo: f64,
    pub ok: bool,
}

/// Check `|D^a g(|x|^2)| <= (4 p e^p (|x|+1))^|a| |a|! C_|a|` in log space,
/// where `c_bounds[j]` bounds `|g^(i)(|x|^2)| / i!` for all `i <= j`.
pub fn fdb_bound_check(
    g_derivs: &[ComplexEnclosure],
    x: &[Enclosure],
    alpha: &MultiIndex,
    c_bounds: &[Enclosure],
    prec: u32,
) -> Result<FdbBoundReport> {
    let d = fdb_derivative(g_derivs, x, alpha)?;
    let order = alpha.order();
    let c = c_bounds
        .get(order as usize)
        .ok_or_else(|| Error::InvalidArgument(format!("no bound for order {order}")))?;
    let growth = radial_growth_constant(x.len(), &norm(x, prec), prec);
    let fact = Enclosure::from_integer(Integer::from(Integer::factorial(order)));
    let rhs = &(&growth.pow_u(order) * &fact) * c;
    let lhs = LogMag::from_complex(&d, prec);
    let rhs = LogMag::from_enclosure(&rhs, prec);
    let ok = d.abs_upper(prec).is_zero() || log_compare(&lhs, &rhs) == CertainOrdering::Less;
    Ok(FdbBoundReport {
        alpha: alpha.clone(),
        lhs_log2_hi: lhs.hi_f64(),
        rhs_log2_lo: rhs.lo_f64(),
        ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    #[test]
    fn tuple_examples() {
        let t = fdb_tuples(&MultiIndex::new(vec![2, 1]));
        let flat: Vec<Vec<u32>> = t.iter().map(|t| t.flat()).collect();
        assert_eq!(flat, vec![vec![2, 0, 1, 0], vec![0, 1, 1, 0]]);
        let t = fdb_tuples(&MultiIndex::new(vec![0, 0, 0]));
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].n(), 0);
        let flat: Vec<Vec<u32>> = fdb_tuples(&MultiIndex::new(vec![4])).iter().map(|t| t.flat()).collect();
        assert_eq!(flat, vec![vec![4, 0], vec![2, 1], vec![0, 2]]);
    }

    #[test]
    fn tuple_counts_and_mass() {
        for p in 1..=3 {
            for n in 0..=6 {
                for a in MultiIndex::all_of_order(p, n) {
                    let t = fdb_tuples(&a);
                    let want: usize = a.0.iter().map(|&c| c as usize / 2 + 1).product();
                    assert_eq!(t.len(), want);
                    assert!(t.len() <= (n as usize + 1).pow(p as u32));
                    assert!(t.iter().all(|t| t.alpha() == a && t.n() <= n));
                    assert!(multinomial_mass(&a) <= Integer::from(2 * p as u32).pow(n));
                }
            }
        }
    }

    #[test]
    fn multi_index_enumeration() {
        assert_eq!(MultiIndex::all_of_order(2, 2).len(), 3);
        assert_eq!(MultiIndex::all_up_to(3, 2).len(), 10);
        assert_eq!("(2,0,1)".parse::<MultiIndex>().unwrap(), MultiIndex::new(vec![2, 0, 1]));
    }

    /// Polynomial in p variables: exponent vector -> coefficient.
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

    /// `sum_n g_n (|x|^2)^n` expanded monomial by monomial.
    fn radial_poly(g: &[Rational], p: usize) -> Poly {
        let mut r2 = Poly::new();
        for j in 0..p {
            let mut e = vec![0; p];
            e[j] = 2;
            r2.insert(e, Rational::from(1));
        }
        let mut pw = Poly::new();
        pw.insert(vec![0; p], Rational::from(1));
        let mut out = Poly::new();
        for gn in g {
            for (e, c) in &pw {
                *out.entry(e.clone()).or_default() += Rational::from(c * gn);
            }
            pw = poly_mul(&pw, &r2);
        }
        out
    }

    fn poly_derivative_at(poly: &Poly, alpha: &[u32], x: &[Rational]) -> Rational {
        let mut total = Rational::new();
        for (e, c) in poly {
            if e.iter().zip(alpha).any(|(a, b)| a < b) {
                continue;
            }
            let mut term = c.clone();
            for ((&ei, &ai), xi) in e.iter().zip(alpha).zip(x) {
                let falling: Integer = (0..ai).map(|t| Integer::from(ei - t)).product();
                term *= Rational::from(falling);
                term *= Rational::from(xi.clone().pow(ei - ai));
            }
            total += term;
        }
        total
    }

    fn poly_outer_derivs(g: &[Rational], u: &Rational, upto: usize) -> Vec<ComplexEnclosure> {
        (0..=upto)
            .map(|n| {
                let mut s = Rational::new();
                for (d, gd) in g.iter().enumerate().skip(n) {
                    let falling: Integer = (0..n).map(|t| Integer::from(d - t)).product();
                    s += Rational::from(gd * falling) * Rational::from(u.clone().pow((d - n) as u32));
                }
                ComplexEnclosure::real(Enclosure::Exact(s))
            })
            .collect()
    }

    use rug::ops::Pow;

    #[test]
    fn matches_symbolic_expansion() {
        let g = [
            Rational::from(3),
            Rational::from((-1, 2)),
            Rational::from(2),
            Rational::from((5, 7)),
            Rational::from(-1),
        ];
        for p in [2usize, 3] {
            let poly = radial_poly(&g, p);
            let x: Vec<Rational> = [(1, 3), (-2, 5), (3, 4)][..p].iter().map(|&v| Rational::from(v)).collect();
            let xe: Vec<Enclosure> = x.iter().cloned().map(Enclosure::Exact).collect();
            let u: Rational = x.iter().map(|v| Rational::from(v * v)).sum();
            let derivs = poly_outer_derivs(&g, &u, 4);
            for alpha in MultiIndex::all_up_to(p, 4) {
                let got = fdb_derivative(&derivs, &xe, &alpha).unwrap();
                let want = poly_derivative_at(&poly, &alpha.0, &x);
                assert_eq!(got.re.as_exact().unwrap(), &want, "alpha = {alpha}");
                assert!(got.im.is_zero());
                let norm = fdb_normalized(
                    &derivs
                        .iter()
                        .enumerate()
                        .map(|(n, d)| d.scale(&Enclosure::Exact(Rational::from((1, Integer::from(Integer::factorial(n as u32)))))))
                        .collect::<Vec<_>>(),
                    &xe,
                    &alpha,
                )
                .unwrap();
                let want_n = want / Rational::from(Integer::from(Integer::factorial(alpha.order())));
                assert_eq!(norm.re.as_exact().unwrap(), &want_n);
            }
        }
    }

    #[test]
    fn square_of_radius_example() {
        // g(u) = u^2, D^(2,2) (x1^2 + x2^2)^2 = 8
        let g = [Rational::new(), Rational::new(), Rational::from(1)];
        let x = [Enclosure::from_int(1), Enclosure::from_int(1)];
        let derivs = poly_outer_derivs(&g, &Rational::from(2), 4);
        let d = fdb_derivative(&derivs, &x, &MultiIndex::new(vec![2, 2])).unwrap();
        assert_eq!(d.re.as_exact().unwrap(), &Rational::from(8));
    }

    #[test]
    fn first_order_is_chain_rule() {
        let derivs = vec![
            ComplexEnclosure::real(Enclosure::from_int(7)),
            ComplexEnclosure::new(Enclosure::from_int(3), Enclosure::from_int(-2)),
        ];
        let x = [Enclosure::from_ratio(1, 2), Enclosure::from_int(5)];
        let d = fdb_derivative(&derivs, &x, &MultiIndex::new(vec![1, 0])).unwrap();
        assert_eq!(d.re.as_exact().unwrap(), &Rational::from(3));
        assert_eq!(d.im.as_exact().unwrap(), &Rational::from(-2));
    }

    #[test]
    fn even_derivative_at_origin() {
        let derivs: Vec<ComplexEnclosure> = (0..=20)
            .map(|n| ComplexEnclosure::new(Enclosure::from_int(n + 2), Enclosure::from_ratio(1, n + 1)))
            .collect();
        for p in [1usize, 2, 3] {
            let x = vec![Enclosure::zero(); p];
            for n in 0..=10u32 {
                let d = fdb_derivative(&derivs, &x, &MultiIndex::axis(p, 0, 2 * n)).unwrap();
                let f = Rational::from((
                    Integer::from(Integer::factorial(2 * n)),
                    Integer::from(Integer::factorial(n)),
                ));
                let want = derivs[n as usize].scale(&Enclosure::Exact(f));
                assert_eq!(d.re.as_exact(), want.re.as_exact());
                assert_eq!(d.im.as_exact(), want.im.as_exact());
            }
        }
    }

    #[test]
    fn bound_check_constant_and_small_orders() {
        let zero = vec![ComplexEnclosure::one(), ComplexEnclosure::zero(), ComplexEnclosure::zero()];
        let c = vec![Enclosure::one(); 3];
        let x = [Enclosure::from_ratio(1, 3), Enclosure::from_int(2)];
        let r = fdb_bound_check(&zero, &x, &MultiIndex::new(vec![1, 1]), &c, 256).unwrap();
        assert!(r.ok);
        let derivs = vec![ComplexEnclosure::one(); 3];
        let r = fdb_bound_check(&derivs, &[Enclosure::zero(), Enclosure::zero()], &MultiIndex::new(vec![2, 0]), &c, 256)
            .unwrap();
        assert!(r.ok && r.rhs_log2_lo > r.lhs_log2_hi);
    }
}
