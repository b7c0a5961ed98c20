//! Number-theoretic substrate: totient, an executable Euler-theorem witness,
//! the Legendre symbol, quadratic Gauss sums with their closed forms,
//! discrete theta sums, and the exact Fourier pair on Z_n.
//!
//! Every sum is formed in Q(zeta) first and embedded once, so closed-form
//! comparisons are limited only by the embedding precision.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::cyclotomic::CyclotomicElement;
use crate::error::{Error, Result};
use crate::hp::{HpComplex, HpCtx};
use crate::quantize::WaveFunction;
use crate::rational::{rat, Rational};

/// Euler totient by trial division; intended for desk-scale moduli.
pub fn totient(n: u64) -> u64 {
    assert!(n >= 1, "totient needs a positive modulus");
    let mut rest = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= rest {
        if rest % p == 0 {
            while rest % p == 0 {
                rest /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if rest > 1 {
        result -= result / rest;
    }
    result
}

fn mod_pow(mut base: u128, mut exp: u64, modulus: u128) -> u128 {
    if modulus == 1 {
        return 0;
    }
    let mut acc = 1u128;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

/// a^phi(n) == 1 mod n; must hold for every a coprime to n.
pub fn euler_theorem_check(a: i64, n: u64) -> Result<bool> {
    assert!(n >= 1, "modulus must be positive");
    let r = a.rem_euclid(n as i64) as u64;
    if r.gcd(&n) != 1 {
        return Err(Error::NotCoprime { a, n });
    }
    Ok(mod_pow(r as u128, totient(n), n as u128) == 1 % n as u128)
}

pub fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Legendre symbol (k/p) by Euler's criterion: 0, +1, or -1.
pub fn legendre(k: i64, p: u64) -> Result<i32> {
    if !is_odd_prime(p) {
        return Err(Error::NotPrime { p });
    }
    let r = k.rem_euclid(p as i64) as u64;
    if r == 0 {
        return Ok(0);
    }
    let e = mod_pow(r as u128, (p - 1) / 2, p as u128);
    debug_assert!(e == 1 || e == (p - 1) as u128);
    Ok(if e == 1 { 1 } else { -1 })
}

/// G(k, n) = sum_{xi=1..n} zeta_n^{k xi^2}, exact in Q(zeta_n).
pub fn gauss_sum_exact(k: i64, n: u64) -> CyclotomicElement {
    assert!(n >= 1, "modulus must be positive");
    let kk = k.rem_euclid(n as i64) as u128;
    let mut acc = CyclotomicElement::zero(n);
    for xi in 1..=n as u128 {
        let e = kk * (xi * xi % n as u128) % n as u128;
        acc = acc.add(&CyclotomicElement::zeta_pow(n, e as i64));
    }
    acc
}

/// The exact Gauss sum embedded into the complex plane.
pub fn gauss_sum(k: i64, n: u64, ctx: &HpCtx) -> HpComplex {
    ctx.embed(&gauss_sum_exact(k, n))
}

/// Classical closed form, where one exists: for odd prime n with gcd(k,n)=1,
/// (k/n)*sqrt(n) when n = 1 mod 4 and i*(k/n)*sqrt(n) when n = 3 mod 4;
/// 0 for n = 2 with odd k.  None otherwise.
pub fn gauss_closed_form(k: i64, n: u64, ctx: &HpCtx) -> Option<HpComplex> {
    if n == 2 && k.rem_euclid(2) == 1 {
        return Some(HpComplex::zero(ctx));
    }
    if !is_odd_prime(n) || k.rem_euclid(n as i64).gcd(&(n as i64)) != 1 {
        return None;
    }
    let ls = legendre(k, n).expect("n is an odd prime here");
    let root = ctx.sqrt(&ctx.from_i64(n as i64));
    let signed = ctx.mul(&ctx.from_i64(ls as i64), &root);
    let mut out = HpComplex::zero(ctx);
    if n % 4 == 1 {
        out.re = signed;
    } else {
        out.im = signed;
    }
    Some(out)
}

/// Finite theta sum over s = 1..n with exponent
/// 2*pi*i*(tau2*s^4/4 + tau1*s^2/2 + z*s)/n.  Quartic term active iff
/// tau2 != 0.  All parameters rational, so the sum lives in a cyclotomic
/// field of conductor n times the exponent denominators.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaParams {
    pub n: u64,
    pub z: Rational,
    pub tau1: Rational,
    pub tau2: Rational,
}

impl ThetaParams {
    pub fn quadratic(n: u64, z: Rational, tau1: Rational) -> Self {
        ThetaParams {
            n,
            z,
            tau1,
            tau2: Rational::zero(),
        }
    }

    pub fn quartic(n: u64, z: Rational, tau1: Rational, tau2: Rational) -> Self {
        ThetaParams { n, z, tau1, tau2 }
    }

    pub fn is_quartic(&self) -> bool {
        !self.tau2.is_zero()
    }
}

/// The theta sum as an exact cyclotomic element.
pub fn discrete_theta_exact(params: &ThetaParams) -> CyclotomicElement {
    let n = params.n;
    assert!(n >= 1, "modulus must be positive");
    let c4 = &params.tau2 / rat(4, 1);
    let c2 = &params.tau1 / rat(2, 1);
    let c1 = params.z.clone();
    let denom = |r: &Rational| r.denom().to_u64().expect("theta denominator fits in u64");
    let d0 = denom(&c4).lcm(&denom(&c2)).lcm(&denom(&c1));
    let conductor = d0 * n;
    let scale = Rational::from_integer(BigInt::from(d0));
    let mut acc = CyclotomicElement::zero(conductor);
    for s in 1..=n {
        let sq = Rational::from_integer(BigInt::from(s) * BigInt::from(s));
        let x = &c4 * &sq * &sq + &c2 * &sq + &c1 * Rational::from_integer(BigInt::from(s));
        let lifted = &x * &scale;
        debug_assert!(lifted.is_integer());
        let e = lifted
            .numer()
            .mod_floor(&BigInt::from(conductor))
            .to_i64()
            .expect("reduced exponent fits in i64");
        acc = acc.add(&CyclotomicElement::zeta_pow(conductor, e));
    }
    acc
}

/// The theta sum embedded into the complex plane.
pub fn discrete_theta(params: &ThetaParams, ctx: &HpCtx) -> HpComplex {
    ctx.embed(&discrete_theta_exact(params))
}

/// Floating-point fallback for irrational parameters.
pub fn discrete_theta_f64(n: u64, z: f64, tau1: f64, tau2: f64) -> (f64, f64) {
    let two_pi = 2.0 * std::f64::consts::PI;
    let (mut re, mut im) = (0.0, 0.0);
    for s in 1..=n {
        let s = s as f64;
        let phase = two_pi * (tau2 * s.powi(4) / 4.0 + tau1 * s * s / 2.0 + z * s) / n as f64;
        re += phase.cos();
        im += phase.sin();
    }
    (re, im)
}

/// Forward transform psi~(p) = sum_q zeta_n^{+pq} psi(q), p = 1..n.
pub fn dft_forward(psi: &WaveFunction) -> WaveFunction {
    let n = psi.n;
    let mut out = Vec::with_capacity(n as usize);
    for p in 1..=n {
        let mut acc = CyclotomicElement::zero(n);
        for q in 1..=n {
            let e = (p as u128 * q as u128 % n as u128) as i64;
            acc = acc.add(&CyclotomicElement::zeta_pow(n, e).mul(psi.amplitude(q)));
        }
        out.push(acc);
    }
    WaveFunction::new(n, out).expect("length preserved")
}

/// Inverse transform psi(q) = (1/n) sum_p zeta_n^{-pq} psi~(p).
pub fn dft_inverse(psi: &WaveFunction) -> WaveFunction {
    let n = psi.n;
    let inv_n = rat(1, n as i64);
    let mut out = Vec::with_capacity(n as usize);
    for q in 1..=n {
        let mut acc = CyclotomicElement::zero(n);
        for p in 1..=n {
            let e = (p as u128 * q as u128 % n as u128) as i64;
            acc = acc.add(&CyclotomicElement::zeta_pow(n, -e).mul(psi.amplitude(p)));
        }
        out.push(acc.scale(&inv_n));
    }
    WaveFunction::new(n, out).expect("length preserved")
}
