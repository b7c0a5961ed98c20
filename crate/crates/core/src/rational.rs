//! Exact rationals: re-export of `BigRational` plus the canonical "p/q" text form
//! used in every result file.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Rational = num_rational::BigRational;

pub fn rat_i64(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Canonical rendering: always "p/q", reduced, denominator positive.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Accepts "p/q" or a bare integer "p".
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::BadRational {
        text: text.to_string(),
    };
    let s = text.trim();
    let (num_s, den_s) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num_s.parse().map_err(|_| bad())?;
    let den: BigInt = den_s.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

/// The m-th root of a positive rational, when that root is itself rational.
pub fn rational_mth_root(r: &Rational, m: u32) -> Option<Rational> {
    if m == 0 || !r.is_positive() {
        return None;
    }
    let num = r.numer().nth_root(m);
    let den = r.denom().nth_root(m);
    if &num.pow(m) == r.numer() && &den.pow(m) == r.denom() {
        Some(Rational::new(num, den))
    } else {
        None
    }
}

pub fn rat_abs(r: &Rational) -> Rational {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        assert_eq!(format_rational(&rat(2, 4)), "1/2");
        assert_eq!(format_rational(&rat(-3, -6)), "1/2");
        assert_eq!(format_rational(&rat(3, -6)), "-1/2");
        assert_eq!(format_rational(&rat_i64(0)), "0/1");
        assert_eq!(format_rational(&rat_i64(5)), "5/1");
    }

    #[test]
    fn mth_roots_of_rationals() {
        assert_eq!(rational_mth_root(&rat(8, 27), 3), Some(rat(2, 3)));
        assert_eq!(rational_mth_root(&rat(9, 4), 2), Some(rat(3, 2)));
        assert_eq!(rational_mth_root(&rat_i64(1), 5), Some(rat_i64(1)));
        assert_eq!(rational_mth_root(&rat_i64(2), 2), None);
        assert_eq!(rational_mth_root(&rat(-8, 1), 3), None);
        assert_eq!(rational_mth_root(&rat_i64(0), 2), None);
    }

    #[test]
    fn parse_round_trip() {
        for s in ["0/1", "5/1", "-7/3", "22/7"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(parse_rational("4").unwrap(), rat_i64(4));
        assert_eq!(parse_rational(" -9 / 12 ").unwrap(), rat(-3, 4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
