//! Number backends: exact rationals, MPFR-backed balls, complex pairs of
//! either, and log-magnitude comparisons.

mod ball;
mod complex;
mod enclosure;
mod logmag;
pub mod parse;

pub use ball::{Ball, RAD_PREC};
pub use complex::{enclose_pow_int, ComplexEnclosure};
pub use enclosure::Enclosure;
pub use logmag::{log_compare, LogMag, Sign};

pub(crate) use ball::rnd;

use crate::error::{Error, Result};

pub const DEFAULT_PREC: u32 = 256;
pub const MAX_PREC: u32 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum CertainOrdering {
    Less,
    Greater,
    /// Only produced when both sides are exact.
    Equal,
    Indeterminate,
}

impl CertainOrdering {
    pub fn is_le(self) -> bool {
        matches!(self, CertainOrdering::Less | CertainOrdering::Equal)
    }

    pub fn is_ge(self) -> bool {
        matches!(self, CertainOrdering::Greater | CertainOrdering::Equal)
    }
}

/// `base^e` as a big integer.
pub fn ipow(base: u32, e: u32) -> rug::Integer {
    rug::Integer::from(rug::Integer::u_pow_u(base, e))
}

/// Run `f` at `start` bits, doubling on `NeedMorePrecision` up to `max`.
pub fn with_precision_retry<T>(
    start: u32,
    max: u32,
    mut f: impl FnMut(u32) -> Result<T>,
) -> Result<T> {
    let mut prec = start;
    loop {
        match f(prec) {
            Err(Error::NeedMorePrecision { .. }) if prec < max => prec = (prec * 2).min(max),
            other => return other,
        }
    }
}
