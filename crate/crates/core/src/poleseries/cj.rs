//! The lattice-interference constants `C_j = 2 sum_{n>=1} (n^2+1)^-((j+1)/2)`.

use rug::float::Round;
use rug::Rational;

use crate::error::{Error, Result};
use crate::numerics::{ipow, Ball, Enclosure};

/// Number of summed terms before switching to the integral bounds.
pub const CJ_DEFAULT_SPLIT: u32 = 2000;

/// Certified enclosure of `C_j` for `j >= 1`.
pub fn cj_enclosure(j: u32, split: u32, prec: u32) -> Result<Enclosure> {
    Ok(cj_sequence(j, split, prec)?.pop().unwrap())
}

/// Enclosures of `C_1, ..., C_jmax`.
///
/// The first `split` terms are summed in ball arithmetic. The remainder is
/// enclosed between the integrals of the decreasing summand over
/// `[N+1, inf)` and of the majorant `x^-(j+1)` over `[N, inf)`.
pub fn cj_sequence(jmax: u32, split: u32, prec: u32) -> Result<Vec<Enclosure>> {
    if jmax == 0 {
        return Err(Error::InvalidArgument("C_0 diverges; need j >= 1".into()));
    }
    if split == 0 {
        return Err(Error::InvalidArgument("split must be positive".into()));
    }
    let mut sums = vec![Ball::zero(prec); jmax as usize];
    for n in 1..=split as i64 {
        let r = Ball::from_int(n * n + 1, prec).sqrt().recip();
        let mut pw = r.sqr();
        for s in sums.iter_mut() {
            *s = s.add(&pw);
            pw = pw.mul(&r);
        }
    }
    let n = split;
    let squeeze = Ball::from_rational(&(Rational::from(1) + Rational::from((1, ipow(n + 1, 2)))), prec);
    let out = sums
        .into_iter()
        .enumerate()
        .map(|(i, s)| {
            let j = i as u32 + 1;
            let hi = Rational::from((1, ipow(n, j) * j));
            let lo_base = Ball::from_rational(&Rational::from((1, ipow(n + 1, j) * j)), prec);
            let shrink = squeeze.sqrt().pow_u(j + 1).recip();
            let lo = lo_base.mul(&shrink).lower();
            let hi = crate::numerics::rnd(prec, &hi, Round::Up);
            let tail = Ball::from_endpoints(&lo, &hi, prec);
            Enclosure::Ball(s.add(&tail).mul_2si(1))
        })
        .collect();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::CertainOrdering;

    #[test]
    fn c1_matches_closed_form() {
        // 2 sum 1/(n^2+1) = pi coth(pi) - 1 = 2.1533480949...
        let c1 = cj_enclosure(1, CJ_DEFAULT_SPLIT, 128).unwrap();
        let pi = std::f64::consts::PI;
        let closed = pi / pi.tanh() - 1.0;
        assert!((c1.to_f64() - closed).abs() < 1e-6);
        assert!(c1.rad_f64() < 1e-6);
    }

    #[test]
    fn decreasing_and_small() {
        let cs = cj_sequence(40, CJ_DEFAULT_SPLIT, 128).unwrap();
        for j in 3..40 {
            assert_eq!(cs[j].cmp_certain(&cs[j - 1]), CertainOrdering::Less, "j = {}", j + 1);
        }
        assert_eq!(cs[19].cmp_certain(&Enclosure::from_ratio(1, 8)), CertainOrdering::Less);
    }

    #[test]
    fn agrees_with_long_direct_sum() {
        // oracle: direct f64 sum to 10^6 terms plus the integral estimate
        for j in [2u32, 5, 10] {
            let mut s = 0.0f64;
            for n in (1..=1_000_000u64).rev() {
                s += ((n * n + 1) as f64).powf(-((j + 1) as f64) / 2.0);
            }
            let c = cj_enclosure(j, 500, 128).unwrap();
            assert!((c.to_f64() - 2.0 * s).abs() < 1e-9, "j = {j}");
        }
    }
}
