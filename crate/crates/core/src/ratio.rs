//! Small helpers for exact rational parameters.
//!
//! Parameters such as `lambda`, `beta` and `c` are carried as [`Rational64`]
//! so configs round-trip losslessly; positions on the line use [`BigRational`].

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Parses `"7"`, `"-7/3"` or a finite decimal such as `"1.01"`.
pub fn parse_rational64(s: &str) -> Result<Rational64> {
    let bad = |reason: &str| Error::Parse { locus: format!("rational {s:?}"), reason: reason.to_string() };
    let t = s.trim();
    if t.is_empty() {
        return Err(bad("empty"));
    }
    if let Some((num, den)) = t.split_once('/') {
        let n: i64 = num.trim().parse().map_err(|_| bad("bad numerator"))?;
        let d: i64 = den.trim().parse().map_err(|_| bad("bad denominator"))?;
        if d == 0 {
            return Err(bad("zero denominator"));
        }
        return Ok(Rational64::new(n, d));
    }
    if let Some((int, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) || frac.len() > 15 {
            return Err(bad("bad decimal fraction"));
        }
        let neg = int.starts_with('-');
        let int_part: i64 = match int.trim_start_matches(['-', '+']) {
            "" => 0,
            digits => digits.parse().map_err(|_| bad("bad integer part"))?,
        };
        let scale = 10i64.pow(frac.len() as u32);
        let frac_part: i64 = frac.parse().map_err(|_| bad("bad decimal fraction"))?;
        let mag = int_part
            .checked_mul(scale)
            .and_then(|v| v.checked_add(frac_part))
            .ok_or_else(|| bad("overflow"))?;
        return Ok(Rational64::new(if neg { -mag } else { mag }, scale));
    }
    let n: i64 = t.parse().map_err(|_| bad("not a rational"))?;
    Ok(Rational64::from_integer(n))
}

/// Canonical text form: `"p/q"` in lowest terms with `q > 0`, or `"p"` when `q = 1`.
pub fn format_rational64(r: &Rational64) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn to_f64(r: &Rational64) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Parses an exact position string: `"p/q"` or an integer. Decimals are rejected.
pub fn parse_big_rational(s: &str) -> Result<BigRational> {
    let bad = |reason: &str| Error::Parse { locus: format!("position {s:?}"), reason: reason.to_string() };
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n, d),
        None => (t, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| bad("bad numerator"))?;
    let d: BigInt = den.parse().map_err(|_| bad("bad denominator"))?;
    if d.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(BigRational::new(n, d))
}

pub fn format_big_rational(r: &BigRational) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `floor(r * n)` for non-negative `r`.
pub fn floor_mul(r: &Rational64, n: usize) -> usize {
    let v = (*r.numer() as i128) * (n as i128);
    let q = v.div_euclid(*r.denom() as i128);
    q.max(0).to_usize().unwrap_or(usize::MAX)
}

/// `ceil(r * n)` for non-negative `r`.
pub fn ceil_mul(r: &Rational64, n: usize) -> usize {
    let v = (*r.numer() as i128) * (n as i128);
    let d = *r.denom() as i128;
    let q = -((-v).div_euclid(d));
    q.max(0).to_usize().unwrap_or(usize::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_forms() {
        assert_eq!(parse_rational64("3").unwrap(), Rational64::from_integer(3));
        assert_eq!(parse_rational64("1.01").unwrap(), Rational64::new(101, 100));
        assert_eq!(parse_rational64("-0.5").unwrap(), Rational64::new(-1, 2));
        assert_eq!(parse_rational64("14/6").unwrap(), Rational64::new(7, 3));
        assert!(parse_rational64("1/0").is_err());
        assert!(parse_rational64("abc").is_err());
    }

    #[test]
    fn big_rational_canonical_text() {
        let r = parse_big_rational("7/3").unwrap();
        assert_eq!(format_big_rational(&r), "7/3");
        let r = parse_big_rational("-14/6").unwrap();
        assert_eq!(format_big_rational(&r), "-7/3");
        let r = parse_big_rational("12").unwrap();
        assert_eq!(format_big_rational(&r), "12");
        assert!(parse_big_rational("1.5").is_err());
    }

    #[test]
    fn floor_and_ceil() {
        let half = Rational64::new(1, 2);
        assert_eq!(floor_mul(&half, 5), 2);
        assert_eq!(ceil_mul(&half, 5), 3);
        assert_eq!(ceil_mul(&half, 4), 2);
        assert_eq!(floor_mul(&Rational64::new(99, 100), 1), 0);
    }
}
