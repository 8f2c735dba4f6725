//! Decimal and fraction strings to exact rationals, and back.

use rug::float::Round;
use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};

/// Parse `"3"`, `"-1/4"`, `"0.125"`, `"2.5e-3"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    if t.is_empty() {
        return Err(Error::Parse("empty number".into()));
    }
    if let Some((n, d)) = t.split_once('/') {
        let n: Integer = n.trim().parse().map_err(|_| Error::Parse(format!("bad numerator in {t:?}")))?;
        let d: Integer = d.trim().parse().map_err(|_| Error::Parse(format!("bad denominator in {t:?}")))?;
        if d == 0 {
            return Err(Error::Parse(format!("zero denominator in {t:?}")));
        }
        return Ok(Rational::from((n, d)));
    }
    let (mant, exp) = match t.find(['e', 'E']) {
        Some(i) => {
            let e: i64 = t[i + 1..].parse().map_err(|_| Error::Parse(format!("bad exponent in {t:?}")))?;
            (&t[..i], e)
        }
        None => (t, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (ip, fp) = mant.split_once('.').unwrap_or((mant, ""));
    if ip.is_empty() && fp.is_empty() {
        return Err(Error::Parse(format!("no digits in {t:?}")));
    }
    if !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit()) {
        return Err(Error::Parse(format!("not a number: {t:?}")));
    }
    let digits: Integer = format!("{ip}{fp}").parse().unwrap_or_default();
    let scale = exp - fp.len() as i64;
    let pow = |k: i64| -> Result<Integer> {
        let k = u32::try_from(k).map_err(|_| Error::Parse(format!("exponent too large in {t:?}")))?;
        if k > 100_000 {
            return Err(Error::Parse(format!("exponent too large in {t:?}")));
        }
        Ok(Integer::from(Integer::u_pow_u(10, k)))
    };
    let mut q = if scale >= 0 {
        Rational::from(digits * pow(scale)?)
    } else {
        Rational::from((digits, pow(-scale)?))
    };
    if neg {
        q = -q;
    }
    Ok(q)
}

/// Decimal string with `sig` significant digits that is `>= x`.
///
/// Used when a stored constant must stay a valid upper bound after a
/// round-trip through text.
pub fn decimal_upper(x: &Float, sig: usize) -> String {
    directed_decimal(x, sig, Round::Up)
}

/// Decimal string with `sig` significant digits that is `<= x`.
pub fn decimal_lower(x: &Float, sig: usize) -> String {
    directed_decimal(x, sig, Round::Down)
}

fn directed_decimal(x: &Float, sig: usize, round: Round) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x.is_zero() {
        return "0".into();
    }
    let (neg, digits, exp) = x.to_sign_string_exp_round(10, Some(sig), round);
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    // value = 0.digits * 10^exp
    out.push_str(&digits[..1]);
    if digits.len() > 1 {
        out.push('.');
        out.push_str(digits[1..].trim_end_matches('0'));
        if out.ends_with('.') {
            out.pop();
        }
    }
    let e = exp.unwrap_or(0) - 1;
    if e != 0 {
        out.push_str(&format!("e{e}"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_forms() {
        assert_eq!(parse_rational("3").unwrap(), 3);
        assert_eq!(parse_rational("-1/4").unwrap(), Rational::from((-1, 4)));
        assert_eq!(parse_rational("0.125").unwrap(), Rational::from((1, 8)));
        assert_eq!(parse_rational("2.5e-3").unwrap(), Rational::from((1, 400)));
        assert_eq!(parse_rational("1e3").unwrap(), 1000);
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn directed_decimals_bracket_value() {
        let third = Float::with_val(256, 1) / 3u32;
        let up = parse_rational(&decimal_upper(&third, 20)).unwrap();
        let dn = parse_rational(&decimal_lower(&third, 20)).unwrap();
        let exact = Rational::from((1, 3));
        assert!(up > exact && dn < exact);
        let big = Float::with_val(256, 12345.678);
        let up = parse_rational(&decimal_upper(&big, 5)).unwrap();
        assert!(up >= big.to_rational().unwrap());
    }
}
