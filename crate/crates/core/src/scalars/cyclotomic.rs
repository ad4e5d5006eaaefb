//! Exact arithmetic in cyclotomic fields `Q(ζ_N)`.
//!
//! Elements are kept in the power basis `1, ζ, …, ζ^{φ(N)-1}` reduced modulo
//! the `N`-th cyclotomic polynomial. Coefficients are arbitrary-precision
//! rationals. Mixed-conductor operands are promoted to the lcm of the two
//! conductors through `ζ_M ↦ ζ_N^{N/M}`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::CircleElement;
use crate::error::{ParseError, ScalarError};

/// Integer coefficients (constant term first) of the `n`-th cyclotomic
/// polynomial, from `Φ_n = Π_{d | n} (x^d - 1)^{μ(n/d)}`.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    assert!(n > 0, "cyclotomic polynomial of order 0");
    let mut numer: Vec<i64> = vec![1];
    let mut denom: Vec<i64> = vec![1];
    for d in 1..=n {
        if !n.is_multiple_of(d) {
            continue;
        }
        let factor = x_pow_minus_one(d as usize);
        match mobius(n / d) {
            1 => numer = poly_mul_int(&numer, &factor),
            -1 => denom = poly_mul_int(&denom, &factor),
            _ => {}
        }
    }
    poly_div_exact(&numer, &denom)
}

fn x_pow_minus_one(d: usize) -> Vec<i64> {
    let mut p = vec![0; d + 1];
    p[0] = -1;
    p[d] = 1;
    p
}

fn mobius(mut n: u64) -> i32 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

fn poly_mul_int(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact quotient of integer polynomials; the divisor must be monic.
fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dd = den.len() - 1;
    debug_assert_eq!(den[dd], 1);
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        for (i, &d) in den.iter().enumerate() {
            rem[k + i] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    quot
}

pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// Reduction data for one conductor.
#[derive(Debug)]
pub struct CyclotomicField {
    conductor: u64,
    degree: usize,
    /// `x^k mod Φ_N` for `k < 2·degree - 1`, as integer coordinate rows.
    power_table: Vec<Vec<i64>>,
    phi: Vec<i64>,
}

impl CyclotomicField {
    pub fn new(conductor: u64) -> Arc<Self> {
        let phi = cyclotomic_polynomial(conductor);
        let degree = phi.len() - 1;
        let rows = (2 * degree).max(1);
        let mut power_table = Vec::with_capacity(rows);
        let mut cur = vec![0i64; degree];
        cur[0] = 1;
        for _ in 0..rows {
            power_table.push(cur.clone());
            // multiply by x and fold the overflow coefficient back in
            let top = cur[degree - 1];
            for i in (1..degree).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            for i in 0..degree {
                cur[i] -= top * phi[i];
            }
        }
        Arc::new(CyclotomicField {
            conductor,
            degree,
            power_table,
            phi,
        })
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn polynomial(&self) -> &[i64] {
        &self.phi
    }

    /// Reduces an arbitrary-length coefficient vector modulo `Φ_N`.
    fn reduce(&self, mut poly: Vec<BigRational>) -> Vec<BigRational> {
        let d = self.degree;
        for k in (d..poly.len()).rev() {
            if poly[k].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut poly[k]);
            for i in 0..d {
                if self.phi[i] != 0 {
                    poly[k - d + i] -= &c * BigRational::from_integer(BigInt::from(self.phi[i]));
                }
            }
        }
        poly.resize(d, BigRational::zero());
        poly
    }
}

/// An element of `Q(ζ_N)` in canonical (reduced power-basis) form.
#[derive(Clone)]
pub struct Cyclotomic {
    field: Arc<CyclotomicField>,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    pub fn zero(conductor: u64) -> Self {
        Self::zero_in(&CyclotomicField::new(conductor))
    }

    pub fn one(conductor: u64) -> Self {
        Self::from_rational_in(&CyclotomicField::new(conductor), BigRational::one())
    }

    /// The primitive root `ζ_N = exp(2πi/N)`.
    pub fn zeta(conductor: u64) -> Self {
        Self::root_of_unity_in(&CyclotomicField::new(conductor), 1)
    }

    pub fn from_rational(r: BigRational, conductor: u64) -> Self {
        Self::from_rational_in(&CyclotomicField::new(conductor), r)
    }

    pub fn from_integer(n: i64, conductor: u64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)), conductor)
    }

    /// Builds `Σ coeffs[i]·ζ_N^i` for a coefficient vector of any length.
    pub fn from_poly(conductor: u64, poly: Vec<BigRational>) -> Self {
        let field = CyclotomicField::new(conductor);
        let coeffs = field.reduce(poly);
        Cyclotomic { field, coeffs }
    }

    pub fn zero_in(field: &Arc<CyclotomicField>) -> Self {
        Cyclotomic {
            field: field.clone(),
            coeffs: vec![BigRational::zero(); field.degree],
        }
    }

    pub fn one_in(field: &Arc<CyclotomicField>) -> Self {
        Self::from_rational_in(field, BigRational::one())
    }

    pub fn from_rational_in(field: &Arc<CyclotomicField>, r: BigRational) -> Self {
        let mut x = Self::zero_in(field);
        x.coeffs[0] = r;
        x
    }

    /// `ζ_N^k` for any integer `k`.
    pub fn root_of_unity_in(field: &Arc<CyclotomicField>, k: i64) -> Self {
        let n = field.conductor;
        let e = (k as i128).rem_euclid(n as i128) as usize;
        let mut poly = vec![BigRational::zero(); e + 1];
        poly[e] = BigRational::one();
        Cyclotomic {
            field: field.clone(),
            coeffs: field.reduce(poly),
        }
    }

    /// The root of unity `exp(2πi·angle)`, provided its order divides the
    /// conductor.
    pub fn from_circle_in(field: &Arc<CyclotomicField>, a: CircleElement) -> Result<Self, ScalarError> {
        let n = field.conductor;
        if !a.divides_order(n) {
            return Err(ScalarError::ConductorMismatch {
                angle: a,
                conductor: n,
            });
        }
        let k = a.num() * (n / a.den());
        Ok(Self::root_of_unity_in(field, k as i64))
    }

    pub fn from_circle(a: CircleElement, conductor: u64) -> Result<Self, ScalarError> {
        Self::from_circle_in(&CyclotomicField::new(conductor), a)
    }

    pub fn conductor(&self) -> u64 {
        self.field.conductor
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// Returns `Some(r)` when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// Re-expresses the element over a conductor that is a multiple of the
    /// current one.
    pub fn promote(&self, conductor: u64) -> Result<Self, ScalarError> {
        if conductor == self.field.conductor {
            return Ok(self.clone());
        }
        self.promote_into(&CyclotomicField::new(conductor))
    }

    pub fn promote_into(&self, field: &Arc<CyclotomicField>) -> Result<Self, ScalarError> {
        let from = self.field.conductor;
        let to = field.conductor;
        if from == to {
            return Ok(Cyclotomic {
                field: field.clone(),
                coeffs: self.coeffs.clone(),
            });
        }
        if !to.is_multiple_of(from) {
            return Err(ScalarError::Promotion { from, to });
        }
        let step = (to / from) as usize;
        let mut poly = vec![BigRational::zero(); (self.coeffs.len().max(1) - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            poly[i * step] = c.clone();
        }
        Ok(Cyclotomic {
            field: field.clone(),
            coeffs: field.reduce(poly),
        })
    }

    /// Brings two operands onto a common field.
    fn unify(&self, other: &Self) -> (Self, Self) {
        let (m, n) = (self.field.conductor, other.field.conductor);
        if m == n {
            return (self.clone(), other.clone());
        }
        let field = CyclotomicField::new(m.lcm(&n));
        (
            self.promote_into(&field).expect("lcm is a multiple"),
            other.promote_into(&field).expect("lcm is a multiple"),
        )
    }

    fn add_same(&self, other: &Self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Cyclotomic {
            field: self.field.clone(),
            coeffs,
        }
    }

    fn mul_same(&self, other: &Self) -> Self {
        let d = self.field.degree;
        let mut prod = vec![BigRational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let mut out = vec![BigRational::zero(); d];
        for (k, c) in prod.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (slot, &t) in out.iter_mut().zip(&self.field.power_table[k]) {
                if t != 0 {
                    *slot += &c * BigRational::from_integer(BigInt::from(t));
                }
            }
        }
        Cyclotomic {
            field: self.field.clone(),
            coeffs: out,
        }
    }

    /// Complex conjugation `ζ_N ↦ ζ_N^{N-1}`.
    pub fn conj(&self) -> Self {
        let n = self.field.conductor as usize;
        let mut poly = vec![BigRational::zero(); n.max(1)];
        for (i, c) in self.coeffs.iter().enumerate() {
            poly[(n - i) % n] += c;
        }
        Cyclotomic {
            field: self.field.clone(),
            coeffs: self.field.reduce(poly),
        }
    }

    /// The Galois automorphism `ζ_N ↦ ζ_N^k`, for `k` coprime to `N`.
    pub fn galois(&self, k: u64) -> Self {
        let n = self.field.conductor as usize;
        let k = k as usize % n.max(1);
        let mut poly = vec![BigRational::zero(); n.max(1)];
        for (i, c) in self.coeffs.iter().enumerate() {
            poly[(i * k) % n.max(1)] += c;
        }
        Cyclotomic {
            field: self.field.clone(),
            coeffs: self.field.reduce(poly),
        }
    }

    /// Multiplicative inverse through the field norm: the product of the
    /// nontrivial Galois conjugates, divided by the (rational) norm.
    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let n = self.field.conductor;
        let mut others = Self::one_in(&self.field);
        for k in 2..n.max(2) {
            if num_integer::gcd(k, n) == 1 {
                others = others.mul_same(&self.galois(k));
            }
        }
        let norm = self.mul_same(&others);
        let r = norm.as_rational().expect("the field norm is rational").clone();
        let scale = Self::from_rational_in(&self.field, r.recip());
        Ok(others.mul_same(&scale))
    }

    /// `|x|^2 = x·conj(x)`, itself a real element of the field.
    pub fn norm_sq(&self) -> Self {
        self.mul_same(&self.conj())
    }

    /// Floating-point value under `ζ_N ↦ exp(2πi/N)`. Diagnostic only.
    pub fn eval_numeric(&self) -> Complex64 {
        let n = self.field.conductor as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let theta = 2.0 * std::f64::consts::PI * i as f64 / n;
                Complex64::from_polar(1.0, theta) * ratio_to_f64(c)
            })
            .sum()
    }

    /// If the element is a root of unity, its angle.
    pub fn as_root_of_unity(&self) -> Option<CircleElement> {
        let n = self.field.conductor;
        // -1 is a root of unity of order 2 even when N is odd, so search the
        // 2N-th roots through ±ζ_N^k.
        let neg = -self.clone();
        for k in 0..n {
            let z = Self::root_of_unity_in(&self.field, k as i64);
            if z == *self {
                return Some(CircleElement::new(k as i64, n));
            }
            if z == neg {
                return Some(CircleElement::new(2 * k as i64 + n as i64, 2 * n));
            }
        }
        None
    }
}

fn ratio_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Fall back for values whose parts overflow f64 individually.
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.field.conductor == other.field.conductor {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = self.unify(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclotomic {}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.field.conductor == rhs.field.conductor {
            return self.add_same(rhs);
        }
        let (a, b) = self.unify(rhs);
        a.add_same(&b)
    }
}

impl Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: Cyclotomic) -> Cyclotomic {
        &self + &rhs
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self + &(-rhs)
    }
}

impl Sub for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: Cyclotomic) -> Cyclotomic {
        &self - &rhs
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.field.conductor == rhs.field.conductor {
            return self.mul_same(rhs);
        }
        let (a, b) = self.unify(rhs);
        a.mul_same(&b)
    }
}

impl Mul for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: Cyclotomic) -> Cyclotomic {
        &self * &rhs
    }
}

fn fmt_ratio(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn parse_ratio(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(BigRational::new(p, q))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

impl fmt::Display for Cyclotomic {
    /// `N:[a0/b0,a1/b1,…]`, the coefficient of `ζ_N^i` in slot `i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:[", self.field.conductor)?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(&fmt_ratio(c))?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Cyclotomic {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParseError::Cyclotomic(s.to_string());
        let (n, rest) = s.trim().split_once(':').ok_or_else(bad)?;
        let n: u64 = n.trim().parse().map_err(|_| bad())?;
        if n == 0 {
            return Err(bad());
        }
        let body = rest
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(bad)?;
        let poly = if body.trim().is_empty() {
            Vec::new()
        } else {
            body.split(',')
                .map(|c| parse_ratio(c).ok_or_else(bad))
                .collect::<Result<Vec<_>, _>>()?
        };
        Ok(Cyclotomic::from_poly(n, poly))
    }
}

/// Serialized form: `{"conductor": N, "coeffs": ["a/b", …]}`.
#[derive(Serialize, Deserialize)]
struct CyclotomicRepr {
    conductor: u64,
    coeffs: Vec<String>,
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        CyclotomicRepr {
            conductor: self.field.conductor,
            coeffs: self.coeffs.iter().map(fmt_ratio).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = CyclotomicRepr::deserialize(deserializer)?;
        if repr.conductor == 0 {
            return Err(serde::de::Error::custom("conductor must be positive"));
        }
        let poly = repr
            .coeffs
            .iter()
            .map(|c| parse_ratio(c).ok_or_else(|| serde::de::Error::custom(format!("bad rational {c:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Cyclotomic::from_poly(repr.conductor, poly))
    }
}

/// Largest absolute numerator or denominator among the coefficients; handy
/// for spotting coefficient blow-up in long computations.
pub fn height(x: &Cyclotomic) -> BigInt {
    x.coeffs
        .iter()
        .flat_map(|c| [c.numer().abs(), c.denom().abs()])
        .max()
        .unwrap_or_else(BigInt::zero)
}
