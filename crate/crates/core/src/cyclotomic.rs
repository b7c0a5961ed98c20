//! Exact arithmetic in Q(zeta_N): elements in the power basis modulo the N-th
//! cyclotomic polynomial, Galois automorphisms, and root sets of X^m -+ 1.
//!
//! Representation invariant: an element of conductor N is a coefficient vector
//! of length phi(N) over the basis 1, zeta, ..., zeta^(phi(N)-1); this form is
//! unique, so equality and rationality tests are coefficient checks.

use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use once_cell::sync::Lazy;
use serde::ser::{Serialize, SerializeStruct, Serializer};
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

/// Monic integer cyclotomic polynomial Phi_n, coefficients low to high.
/// Phi_n = (X^n - 1) / prod of Phi_d over proper divisors d of n.
fn cyclotomic_poly(n: u64) -> Arc<Vec<BigInt>> {
    static CACHE: Lazy<Mutex<HashMap<u64, Arc<Vec<BigInt>>>>> =
        Lazy::new(|| Mutex::new(HashMap::new()));
    if let Some(hit) = CACHE.lock().unwrap().get(&n) {
        return hit.clone();
    }
    let poly = if n == 1 {
        vec![BigInt::from(-1), BigInt::from(1)]
    } else {
        let mut num = vec![BigInt::zero(); (n + 1) as usize];
        num[0] = BigInt::from(-1);
        num[n as usize] = BigInt::one();
        let mut rem = num;
        for d in 1..n {
            if n % d == 0 {
                rem = divide_monic_int(&rem, &cyclotomic_poly(d));
            }
        }
        rem
    };
    let arc = Arc::new(poly);
    CACHE.lock().unwrap().insert(n, arc.clone());
    arc
}

/// Exact division of integer polynomials, divisor monic, zero remainder assumed.
fn divide_monic_int(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = num.len() - 1;
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); dn - dd + 1];
    for k in (0..=dn - dd).rev() {
        let c = rem[k + dd].clone();
        if !c.is_zero() {
            for j in 0..dd {
                rem[k + j] -= &c * &den[j];
            }
            rem[k + dd] = BigInt::zero();
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    quot
}

/// Per-conductor reduction data: phi(N) and the normal forms of zeta^k.
struct FieldTable {
    phi: usize,
    /// power_rows[k] = coefficients of zeta_N^k reduced mod Phi_N,
    /// for k in 0..=max(2*phi-2, N-1).
    power_rows: Vec<Vec<Rational>>,
}

fn field_table(n: u64) -> Arc<FieldTable> {
    static CACHE: Lazy<Mutex<HashMap<u64, Arc<FieldTable>>>> =
        Lazy::new(|| Mutex::new(HashMap::new()));
    if let Some(hit) = CACHE.lock().unwrap().get(&n) {
        return hit.clone();
    }
    let min_poly = cyclotomic_poly(n);
    let phi = min_poly.len() - 1;
    // X^phi = -(lower part of Phi_N) since Phi_N is monic.
    let top: Vec<Rational> = min_poly[..phi]
        .iter()
        .map(|c| -Rational::from_integer(c.clone()))
        .collect();
    let max_k = std::cmp::max(2 * phi.max(1) - 2, (n - 1) as usize);
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(max_k + 1);
    for k in 0..=max_k {
        if k < phi {
            let mut row = vec![Rational::zero(); phi];
            row[k] = Rational::one();
            rows.push(row);
        } else {
            // X^k = X * X^(k-1); the overflow coefficient folds through X^phi.
            let prev = &rows[k - 1];
            let mut row = vec![Rational::zero(); phi];
            for j in 0..phi - 1 {
                row[j + 1] = prev[j].clone();
            }
            let carry = prev[phi - 1].clone();
            if !carry.is_zero() {
                for j in 0..phi {
                    row[j] += &carry * &top[j];
                }
            }
            rows.push(row);
        }
    }
    let arc = Arc::new(FieldTable {
        phi,
        power_rows: rows,
    });
    CACHE.lock().unwrap().insert(n, arc.clone());
    arc
}

pub fn totient_of_conductor(n: u64) -> usize {
    field_table(n).phi
}

/// Exact element of Q(zeta_N) in reduced power-basis form.
#[derive(Debug, Clone)]
pub struct CyclotomicElement {
    conductor: u64,
    coeffs: Vec<Rational>,
}

impl CyclotomicElement {
    pub fn zero(conductor: u64) -> Self {
        let phi = field_table(conductor).phi;
        CyclotomicElement {
            conductor,
            coeffs: vec![Rational::zero(); phi],
        }
    }

    pub fn one(conductor: u64) -> Self {
        Self::from_rational(conductor, Rational::one())
    }

    pub fn from_rational(conductor: u64, r: Rational) -> Self {
        let mut e = Self::zero(conductor);
        e.coeffs[0] = r;
        e
    }

    pub fn from_integer(conductor: u64, v: i64) -> Self {
        Self::from_rational(conductor, Rational::from_integer(BigInt::from(v)))
    }

    /// zeta_N^k for any integer k (reduced mod N).
    pub fn zeta_pow(conductor: u64, k: i64) -> Self {
        let t = field_table(conductor);
        let kk = k.rem_euclid(conductor as i64) as usize;
        CyclotomicElement {
            conductor,
            coeffs: t.power_rows[kk].clone(),
        }
    }

    pub fn zeta(conductor: u64) -> Self {
        Self::zeta_pow(conductor, 1)
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Some(value) iff the element lies in the base field Q.
    pub fn to_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn is_one(&self) -> bool {
        self.to_rational().map(|r| r.is_one()).unwrap_or(false)
    }

    /// Reinterpret in a larger conductor M (N must divide M): zeta_N = zeta_M^(M/N).
    pub fn promote(&self, to: u64) -> Self {
        assert!(
            to % self.conductor == 0,
            "promotion target {to} is not a multiple of {}",
            self.conductor
        );
        if to == self.conductor {
            return self.clone();
        }
        let stride = (to / self.conductor) as usize;
        let t = field_table(to);
        let mut out = vec![Rational::zero(); t.phi];
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let row = &t.power_rows[(j * stride) % to as usize];
            for (o, r) in out.iter_mut().zip(row.iter()) {
                *o += c * r;
            }
        }
        CyclotomicElement {
            conductor: to,
            coeffs: out,
        }
    }

    /// Common-field versions of two elements (conductor = lcm).
    pub fn unify(a: &Self, b: &Self) -> (Self, Self) {
        if a.conductor == b.conductor {
            return (a.clone(), b.clone());
        }
        let l = a.conductor.lcm(&b.conductor);
        (a.promote(l), b.promote(l))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (mut a, b) = Self::unify(self, other);
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs.iter()) {
            *x += y;
        }
        a
    }

    pub fn sub(&self, other: &Self) -> Self {
        let (mut a, b) = Self::unify(self, other);
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs.iter()) {
            *x -= y;
        }
        a
    }

    pub fn neg(&self) -> Self {
        let mut a = self.clone();
        for c in a.coeffs.iter_mut() {
            *c = -c.clone();
        }
        a
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = Self::unify(self, other);
        let t = field_table(a.conductor);
        let phi = t.phi;
        let mut prod = vec![Rational::zero(); 2 * phi.max(1) - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        let mut out = vec![Rational::zero(); phi];
        for (k, c) in prod.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let row = &t.power_rows[k];
            for (o, r) in out.iter_mut().zip(row.iter()) {
                *o += c * r;
            }
        }
        CyclotomicElement {
            conductor: a.conductor,
            coeffs: out,
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let mut a = self.clone();
        for c in a.coeffs.iter_mut() {
            *c *= r;
        }
        a
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against Phi_N.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero {
                conductor: self.conductor,
            });
        }
        if let Some(r) = self.to_rational() {
            return Ok(Self::from_rational(self.conductor, r.recip()));
        }
        let modulus: Vec<Rational> = cyclotomic_poly(self.conductor)
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect();
        // Invariant: s*self + t*Phi = r at every step; r ends as a nonzero constant.
        let mut r0 = modulus;
        let mut r1 = trim(self.coeffs.clone());
        let mut s0 = vec![];
        let mut s1 = vec![Rational::one()];
        while poly_degree(&r1) > 0 {
            let (q, rem) = poly_divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = r1;
            r1 = rem;
            s0 = s1;
            s1 = s2;
        }
        let c = r1
            .first()
            .cloned()
            .filter(|c| !c.is_zero())
            .expect("element coprime to its minimal-polynomial modulus");
        let inv_c = c.recip();
        let t = field_table(self.conductor);
        let mut out = vec![Rational::zero(); t.phi];
        for (k, coeff) in s1.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let row = &t.power_rows[k];
            let scaled = coeff * &inv_c;
            for (o, r) in out.iter_mut().zip(row.iter()) {
                *o += &scaled * r;
            }
        }
        Ok(CyclotomicElement {
            conductor: self.conductor,
            coeffs: out,
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        let (a, b) = Self::unify(self, other);
        Ok(a.mul(&b.inv()?))
    }

    /// Integer power, negative exponents through the inverse.
    pub fn pow(&self, k: i64) -> Result<Self> {
        let mut base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::one(self.conductor);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        Ok(acc)
    }

    /// Complex conjugation = the automorphism zeta -> zeta^(-1).
    pub fn conj(&self) -> Self {
        if self.conductor <= 2 {
            return self.clone();
        }
        GaloisAutomorphism::new(self.conductor, self.conductor as i64 - 1)
            .expect("-1 is a unit mod every conductor")
            .apply(self)
    }
}

impl PartialEq for CyclotomicElement {
    /// Equality as algebraic numbers: mixed conductors compare in the lcm field.
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = Self::unify(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CyclotomicElement {}

impl Serialize for CyclotomicElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("CyclotomicElement", 2)?;
        s.serialize_field("conductor", &self.conductor)?;
        let coeffs: Vec<String> = self.coeffs.iter().map(format_rational).collect();
        s.serialize_field("coeffs", &coeffs)?;
        s.end()
    }
}

impl std::fmt::Display for CyclotomicElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if let Some(r) = self.to_rational() {
            return write!(f, "{}", format_rational(&r));
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if j == 0 {
                write!(f, "{}", format_rational(c))?;
            } else {
                write!(f, "{}*z{}^{}", format_rational(c), self.conductor, j)?;
            }
        }
        Ok(())
    }
}

// Dense polynomial helpers over Q used by the inverse; vectors low to high,
// no trailing zeros after trim.

fn trim(mut v: Vec<Rational>) -> Vec<Rational> {
    while v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
    v
}

fn poly_degree(v: &[Rational]) -> isize {
    v.len() as isize - 1
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    trim(out)
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_divrem(num: &[Rational], den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let den = trim(den.to_vec());
    let mut rem = trim(num.to_vec());
    let dd = den.len() - 1;
    if rem.len() <= dd {
        return (vec![], rem);
    }
    let lead = den[dd].clone();
    let mut quot = vec![Rational::zero(); rem.len() - dd];
    while rem.len() > dd {
        let k = rem.len() - 1 - dd;
        let c = rem.last().unwrap() / &lead;
        quot[k] = c.clone();
        for j in 0..=dd {
            let t = &c * &den[j];
            rem[k + j] -= t;
        }
        rem = trim(rem);
        if rem.is_empty() {
            break;
        }
    }
    (trim(quot), rem)
}

/// zeta_N -> zeta_N^k with gcd(k, N) = 1; composition multiplies exponents mod N.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GaloisAutomorphism {
    conductor: u64,
    k: u64,
}

impl GaloisAutomorphism {
    pub fn new(conductor: u64, k: i64) -> Result<Self> {
        let kk = k.rem_euclid(conductor as i64) as u64;
        if conductor > 1 && kk.gcd(&conductor) != 1 {
            return Err(Error::InvalidAutomorphism { k, conductor });
        }
        Ok(GaloisAutomorphism {
            conductor,
            k: if conductor == 1 { 0 } else { kk },
        })
    }

    pub fn identity(conductor: u64) -> Self {
        GaloisAutomorphism::new(conductor, 1).unwrap()
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn exponent(&self) -> u64 {
        self.k
    }

    /// The full Galois group of Q(zeta_N)/Q: one automorphism per unit mod N.
    pub fn group(conductor: u64) -> Vec<Self> {
        (1..=conductor)
            .filter(|k| k.gcd(&conductor) == 1)
            .map(|k| GaloisAutomorphism {
                conductor,
                k: k % conductor,
            })
            .collect()
    }

    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.conductor, other.conductor, "conductor mismatch");
        GaloisAutomorphism {
            conductor: self.conductor,
            k: (self.k * other.k) % self.conductor,
        }
    }

    pub fn apply(&self, a: &CyclotomicElement) -> CyclotomicElement {
        let a = a.promote(a.conductor().lcm(&self.conductor));
        let n = a.conductor;
        assert_eq!(
            n % self.conductor,
            0,
            "automorphism conductor must divide the element conductor"
        );
        // Lift k mod self.conductor to a unit mod n acting identically on zeta_self.
        let k = lift_unit(self.k, self.conductor, n);
        let t = field_table(n);
        let mut out = vec![Rational::zero(); t.phi];
        for (j, c) in a.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let row = &t.power_rows[(j as u64 * k % n) as usize];
            for (o, r) in out.iter_mut().zip(row.iter()) {
                *o += c * r;
            }
        }
        CyclotomicElement {
            conductor: n,
            coeffs: out,
        }
    }
}

/// A unit mod n congruent to k mod m (m | n, gcd(k, m) = 1); exists by CRT.
fn lift_unit(k: u64, m: u64, n: u64) -> u64 {
    if m == n || m <= 1 {
        return if m <= 1 { 1 } else { k };
    }
    (0..n / m)
        .map(|t| k + t * m)
        .find(|c| c.gcd(&n) == 1)
        .expect("a unit lift exists for every divisor pair")
}

/// Which polynomial X^m - 1 (m odd) or X^m + 1 (m even) the root set solves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RootSign {
    /// f(X) = X^m + 1, m even.
    Plus,
    /// f(X) = X^m - 1, m odd.
    Minus,
}

/// The m roots of X^m -+ 1 inside Q(zeta_N), N = m (m odd) or 2m (m even).
#[derive(Debug, Clone)]
pub struct RootSet {
    pub m: u64,
    pub sign: RootSign,
    pub conductor: u64,
    pub roots: Vec<CyclotomicElement>,
}

pub fn make_rootset(m: u64) -> RootSet {
    assert!(m >= 1, "root-set order must be positive");
    if m % 2 == 1 {
        // X^m - 1: the m-th roots of unity.
        let conductor = m;
        let roots = (0..m)
            .map(|j| CyclotomicElement::zeta_pow(conductor, j as i64))
            .collect();
        RootSet {
            m,
            sign: RootSign::Minus,
            conductor,
            roots,
        }
    } else {
        // X^m + 1: the primitive odd powers of zeta_2m.
        let conductor = 2 * m;
        let roots = (0..m)
            .map(|j| CyclotomicElement::zeta_pow(conductor, (2 * j + 1) as i64))
            .collect();
        RootSet {
            m,
            sign: RootSign::Plus,
            conductor,
            roots,
        }
    }
}

impl RootSet {
    /// Value each root's m-th power must equal: -1 for the plus sign, +1 otherwise.
    pub fn target(&self) -> i64 {
        match self.sign {
            RootSign::Plus => -1,
            RootSign::Minus => 1,
        }
    }

    pub fn product(&self) -> CyclotomicElement {
        self.roots
            .iter()
            .fold(CyclotomicElement::one(self.conductor), |acc, r| acc.mul(r))
    }

    /// Index of a given root inside the set, if present.
    pub fn position(&self, value: &CyclotomicElement) -> Option<usize> {
        self.roots.iter().position(|r| r == value)
    }

    /// The permutation induced by an automorphism: perm[i] = position of sigma(root_i).
    pub fn permutation_under(&self, sigma: &GaloisAutomorphism) -> Vec<usize> {
        self.roots
            .iter()
            .map(|r| {
                self.position(&sigma.apply(r))
                    .expect("automorphisms permute the root set")
            })
            .collect()
    }
}
