//! High-precision real/complex numerics used for embeddings and spectra.
//!
//! Thin deterministic layer over `astro_float::BigFloat`: fixed rounding mode,
//! precision given in decimal digits (minimum 15), 64 guard bits.

use crate::cyclotomic::CyclotomicElement;
use crate::error::{Error, Result};
use crate::rational::Rational;
use astro_float::{Consts, RoundingMode};
use num_bigint::BigInt;
use std::cell::RefCell;

pub use astro_float::BigFloat;

const RM: RoundingMode = RoundingMode::ToEven;
const GUARD_BITS: usize = 64;
const LOG2_10: f64 = 3.321928094887362;

pub struct HpCtx {
    digits: u32,
    bits: usize,
    consts: RefCell<Consts>,
}

impl HpCtx {
    pub fn new(digits: u32) -> Result<Self> {
        if digits < 15 {
            return Err(Error::InvalidPrecision { digits });
        }
        let bits = (digits as f64 * LOG2_10).ceil() as usize + GUARD_BITS;
        Ok(HpCtx {
            digits,
            bits,
            consts: RefCell::new(Consts::new().expect("constants cache")),
        })
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn zero(&self) -> BigFloat {
        BigFloat::from_i64(0, self.bits)
    }

    pub fn from_i64(&self, v: i64) -> BigFloat {
        BigFloat::from_i64(v, self.bits)
    }

    pub fn from_bigint(&self, v: &BigInt) -> BigFloat {
        let (sign, mag) = (v.sign(), v.magnitude());
        let base = BigFloat::from_u64(1u64 << 32, self.bits);
        let mut acc = self.zero();
        for d in mag.to_u32_digits().iter().rev() {
            acc = acc.mul(&base, self.bits, RM);
            acc = acc.add(&BigFloat::from_u64(*d as u64, self.bits), self.bits, RM);
        }
        if sign == num_bigint::Sign::Minus {
            acc = acc.neg();
        }
        acc
    }

    pub fn from_rational(&self, r: &Rational) -> BigFloat {
        self.from_bigint(r.numer())
            .div(&self.from_bigint(r.denom()), self.bits, RM)
    }

    pub fn pi(&self) -> BigFloat {
        self.consts.borrow_mut().pi(self.bits, RM)
    }

    pub fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, self.bits, RM)
    }

    pub fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, self.bits, RM)
    }

    pub fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.bits, RM)
    }

    pub fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, self.bits, RM)
    }

    pub fn sqrt(&self, a: &BigFloat) -> BigFloat {
        a.sqrt(self.bits, RM)
    }

    pub fn exp(&self, a: &BigFloat) -> BigFloat {
        a.exp(self.bits, RM, &mut self.consts.borrow_mut())
    }

    /// Sign of a - b as a total order; panics on NaN, which the pipeline never produces.
    pub fn cmp(&self, a: &BigFloat, b: &BigFloat) -> std::cmp::Ordering {
        let s = a.cmp(b).expect("comparable values");
        s.cmp(&0)
    }

    pub fn is_zero(&self, a: &BigFloat) -> bool {
        a.cmp(&self.zero()) == Some(0)
    }

    /// 10^(-k) as a comparison threshold.
    pub fn pow10_neg(&self, k: u32) -> BigFloat {
        let ten = self.from_i64(10);
        let mut acc = self.from_i64(1);
        for _ in 0..k {
            acc = acc.div(&ten, self.bits, RM);
        }
        acc
    }

    /// e^(2 pi i k / n) at full working precision.
    pub fn root_of_unity(&self, n: u64, k: i64) -> HpComplex {
        let kk = k.rem_euclid(n as i64);
        let angle = self
            .pi()
            .mul(&self.from_i64(2 * kk), self.bits, RM)
            .div(&self.from_i64(n as i64), self.bits, RM);
        let mut cc = self.consts.borrow_mut();
        HpComplex {
            re: angle.cos(self.bits, RM, &mut cc),
            im: angle.sin(self.bits, RM, &mut cc),
        }
    }

    /// Numeric image of an exact element under zeta_N -> e^(2 pi i / N), by Horner.
    pub fn embed(&self, a: &CyclotomicElement) -> HpComplex {
        let zeta = self.root_of_unity(a.conductor(), 1);
        let mut acc = HpComplex::zero(self);
        for c in a.coeffs().iter().rev() {
            acc = acc.mul(&zeta, self);
            acc.re = self.add(&acc.re, &self.from_rational(c));
        }
        acc
    }

    /// Deterministic decimal rendering with `digits` significant digits,
    /// normalized scientific form; exact zero renders as "0".
    pub fn to_decimal_string(&self, x: &BigFloat) -> String {
        if self.is_zero(x) {
            return "0".to_string();
        }
        let raw = format!("{x}");
        let (sign, rest) = match raw.strip_prefix('-') {
            Some(r) => ("-", r),
            None => ("", raw.as_str()),
        };
        let (mant, exp_s) = rest.split_once('e').expect("scientific form");
        let mut exp: i64 = exp_s.parse().expect("decimal exponent");
        let mut ds: Vec<u8> = mant.bytes().filter(|b| *b != b'.').collect();
        let d = self.digits as usize;
        if ds.len() > d {
            let round_up = ds[d] >= b'5';
            ds.truncate(d);
            if round_up {
                let mut i = ds.len();
                loop {
                    if i == 0 {
                        ds.insert(0, b'1');
                        exp += 1;
                        ds.truncate(d);
                        break;
                    }
                    i -= 1;
                    if ds[i] == b'9' {
                        ds[i] = b'0';
                    } else {
                        ds[i] += 1;
                        break;
                    }
                }
            }
        }
        while ds.len() > 1 && *ds.last().unwrap() == b'0' {
            ds.pop();
        }
        let digits_str = String::from_utf8(ds).unwrap();
        let body = if digits_str.len() == 1 {
            digits_str
        } else {
            format!("{}.{}", &digits_str[..1], &digits_str[1..])
        };
        let exp_sign = if exp < 0 { "-" } else { "+" };
        format!("{sign}{body}e{exp_sign}{}", exp.abs())
    }
}

#[derive(Debug, Clone)]
pub struct HpComplex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl HpComplex {
    pub fn zero(ctx: &HpCtx) -> Self {
        HpComplex {
            re: ctx.zero(),
            im: ctx.zero(),
        }
    }

    pub fn one(ctx: &HpCtx) -> Self {
        HpComplex {
            re: ctx.from_i64(1),
            im: ctx.zero(),
        }
    }

    pub fn from_re(re: BigFloat, ctx: &HpCtx) -> Self {
        HpComplex { re, im: ctx.zero() }
    }

    pub fn add(&self, o: &Self, ctx: &HpCtx) -> Self {
        HpComplex {
            re: ctx.add(&self.re, &o.re),
            im: ctx.add(&self.im, &o.im),
        }
    }

    pub fn sub(&self, o: &Self, ctx: &HpCtx) -> Self {
        HpComplex {
            re: ctx.sub(&self.re, &o.re),
            im: ctx.sub(&self.im, &o.im),
        }
    }

    pub fn mul(&self, o: &Self, ctx: &HpCtx) -> Self {
        HpComplex {
            re: ctx.sub(&ctx.mul(&self.re, &o.re), &ctx.mul(&self.im, &o.im)),
            im: ctx.add(&ctx.mul(&self.re, &o.im), &ctx.mul(&self.im, &o.re)),
        }
    }

    pub fn div(&self, o: &Self, ctx: &HpCtx) -> Self {
        let den = o.abs2(ctx);
        HpComplex {
            re: ctx.div(
                &ctx.add(&ctx.mul(&self.re, &o.re), &ctx.mul(&self.im, &o.im)),
                &den,
            ),
            im: ctx.div(
                &ctx.sub(&ctx.mul(&self.im, &o.re), &ctx.mul(&self.re, &o.im)),
                &den,
            ),
        }
    }

    pub fn neg(&self, ctx: &HpCtx) -> Self {
        let _ = ctx;
        HpComplex {
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }

    pub fn conj(&self, ctx: &HpCtx) -> Self {
        let _ = ctx;
        HpComplex {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }

    pub fn scale(&self, r: &BigFloat, ctx: &HpCtx) -> Self {
        HpComplex {
            re: ctx.mul(&self.re, r),
            im: ctx.mul(&self.im, r),
        }
    }

    pub fn abs2(&self, ctx: &HpCtx) -> BigFloat {
        ctx.add(
            &ctx.mul(&self.re, &self.re),
            &ctx.mul(&self.im, &self.im),
        )
    }

    pub fn abs(&self, ctx: &HpCtx) -> BigFloat {
        ctx.sqrt(&self.abs2(ctx))
    }

    pub fn is_zero(&self, ctx: &HpCtx) -> bool {
        ctx.is_zero(&self.re) && ctx.is_zero(&self.im)
    }

    /// Lexicographic (re, im) order; total on the values this pipeline produces.
    pub fn cmp_re_im(&self, o: &Self, ctx: &HpCtx) -> std::cmp::Ordering {
        ctx.cmp(&self.re, &o.re).then(ctx.cmp(&self.im, &o.im))
    }

    pub fn to_pair_strings(&self, ctx: &HpCtx) -> [String; 2] {
        [
            ctx.to_decimal_string(&self.re),
            ctx.to_decimal_string(&self.im),
        ]
    }

    /// f64 view for tolerance-insensitive consumers (diagnostics only).
    pub fn to_f64_lossy(&self) -> (f64, f64) {
        let p = |b: &BigFloat| -> f64 {
            format!("{b}").parse::<f64>().unwrap_or(0.0)
        };
        (p(&self.re), p(&self.im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::CyclotomicElement;
    use crate::rational::rat;

    fn ctx() -> HpCtx {
        HpCtx::new(30).unwrap()
    }

    #[test]
    fn precision_gate() {
        assert!(HpCtx::new(14).is_err());
        assert!(HpCtx::new(15).is_ok());
    }

    #[test]
    fn embeds_fourth_root_as_i() {
        let c = ctx();
        let i = c.embed(&CyclotomicElement::zeta(4));
        let tol = c.pow10_neg(29);
        assert!(c.cmp(&i.re.abs(), &tol).is_lt());
        assert!(c.cmp(&c.sub(&i.im, &c.from_i64(1)).abs(), &tol).is_lt());
    }

    #[test]
    fn embeds_third_root() {
        let c = ctx();
        let w = c.embed(&CyclotomicElement::zeta(3));
        let tol = c.pow10_neg(29);
        let half = c.from_rational(&rat(-1, 2));
        assert!(c.cmp(&c.sub(&w.re, &half).abs(), &tol).is_lt());
        let s3h = c.div(&c.sqrt(&c.from_i64(3)), &c.from_i64(2));
        assert!(c.cmp(&c.sub(&w.im, &s3h).abs(), &tol).is_lt());
        // 1 + w + w^2 embeds to 0
        let one = CyclotomicElement::one(3);
        let sum = one
            .add(&CyclotomicElement::zeta(3))
            .add(&CyclotomicElement::zeta_pow(3, 2));
        let z = c.embed(&sum);
        assert!(c.cmp(&z.abs(&c), &tol).is_lt());
    }

    #[test]
    fn embedding_is_multiplicative() {
        let c = ctx();
        let a = CyclotomicElement::zeta(12).scale(&rat(3, 7));
        let b = CyclotomicElement::zeta_pow(12, 5).add(&CyclotomicElement::from_integer(12, 2));
        let lhs = c.embed(&a.mul(&b));
        let rhs = c.embed(&a).mul(&c.embed(&b), &c);
        let diff = lhs.sub(&rhs, &c).abs(&c);
        assert!(c.cmp(&diff, &c.pow10_neg(28)).is_lt());
    }

    #[test]
    fn decimal_rendering() {
        let c = ctx();
        assert_eq!(c.to_decimal_string(&c.zero()), "0");
        assert_eq!(c.to_decimal_string(&c.from_i64(1)), "1e+0");
        assert_eq!(c.to_decimal_string(&c.from_i64(-12)), "-1.2e+1");
        let half = c.from_rational(&rat(1, 2));
        assert_eq!(c.to_decimal_string(&half), "5e-1");
        let third = c.from_rational(&rat(1, 3));
        assert_eq!(
            c.to_decimal_string(&third),
            "3.33333333333333333333333333333e-1"
        );
        let two_thirds = c.from_rational(&rat(2, 3));
        assert_eq!(
            c.to_decimal_string(&two_thirds),
            "6.66666666666666666666666666667e-1"
        );
    }
}
