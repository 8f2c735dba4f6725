use rug::Rational;

use crate::numerics::{ComplexEnclosure, Enclosure};

/// Truncated power series `sum_{j <= J} c_j (t - t0)^j`.
#[derive(Clone, Debug)]
pub struct TaylorJet {
    pub t0: Rational,
    pub coeffs: Vec<ComplexEnclosure>,
}

impl TaylorJet {
    pub fn zero(t0: Rational, order: usize) -> Self {
        TaylorJet {
            t0,
            coeffs: vec![ComplexEnclosure::zero(); order + 1],
        }
    }

    /// Real jet from coefficients, padded or cut to `order`.
    pub fn from_real(t0: Rational, coeffs: &[Enclosure], order: usize) -> Self {
        let mut out = Self::zero(t0, order);
        for (c, v) in out.coeffs.iter_mut().zip(coeffs) {
            *c = ComplexEnclosure::real(v.clone());
        }
        out
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn truncate(&self, order: usize) -> Self {
        TaylorJet {
            t0: self.t0.clone(),
            coeffs: self.coeffs[..=order.min(self.order())].to_vec(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let order = self.order().min(o.order());
        TaylorJet {
            t0: self.t0.clone(),
            coeffs: (0..=order).map(|j| self.coeffs[j].add(&o.coeffs[j])).collect(),
        }
    }

    pub fn scale(&self, s: &ComplexEnclosure) -> Self {
        TaylorJet {
            t0: self.t0.clone(),
            coeffs: self.coeffs.iter().map(|c| c.mul(s)).collect(),
        }
    }

    /// Product truncated at the smaller order.
    pub fn mul(&self, o: &Self) -> Self {
        let order = self.order().min(o.order());
        let mut coeffs = vec![ComplexEnclosure::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.re.is_zero() && a.im.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(order + 1 - i) {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        TaylorJet {
            t0: self.t0.clone(),
            coeffs,
        }
    }

    /// `sum_n outer[n] (self - self_0)^n`, i.e. a function with Taylor
    /// coefficients `outer` at `self_0` composed with this jet (Horner form).
    pub fn compose_into(&self, outer: &[ComplexEnclosure]) -> Self {
        let mut shift = self.clone();
        shift.coeffs[0] = ComplexEnclosure::zero();
        let mut acc = Self::zero(self.t0.clone(), self.order());
        for c in outer.iter().rev() {
            acc = acc.mul(&shift);
            acc.coeffs[0] = acc.coeffs[0].add(c);
        }
        acc
    }
}
