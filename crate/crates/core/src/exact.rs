//! Exact scalars: rational multiples of π for coordinates, and the quadratic
//! field ℚ(√2) for amplitudes.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `2^e` for any integer exponent.
pub fn pow2(e: i64) -> Rational {
    let p = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

/// Largest `e` with `2^e <= q`. `q` must be positive.
pub fn floor_log2(q: &Rational) -> i64 {
    debug_assert!(q.is_positive());
    let mut e = q.numer().bits() as i64 - q.denom().bits() as i64;
    while pow2(e) > *q {
        e -= 1;
    }
    while pow2(e + 1) <= *q {
        e += 1;
    }
    e
}

/// Smallest `e` with `q <= 2^e`. `q` must be positive.
pub fn ceil_log2(q: &Rational) -> i64 {
    let e = floor_log2(q);
    if pow2(e) == *q {
        e
    } else {
        e + 1
    }
}

/// 2-adic valuation of a nonzero integer.
pub fn two_adic_valuation(k: i64) -> u32 {
    debug_assert!(k != 0);
    k.trailing_zeros()
}

pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
    }
}

/// The real number `coeff · π`.
///
/// Every endpoint of every set in this crate is of this form, so comparisons
/// and set operations reduce to rational arithmetic on the coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PiScalar(Rational);

impl PiScalar {
    pub fn new(coeff: Rational) -> Self {
        PiScalar(coeff)
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        PiScalar(rat(n, d))
    }

    pub fn from_int(n: i64) -> Self {
        PiScalar(int(n))
    }

    pub fn zero() -> Self {
        PiScalar(Rational::zero())
    }

    pub fn coeff(&self) -> &Rational {
        &self.0
    }

    pub fn into_coeff(self) -> Rational {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    /// Multiply by `2^j`.
    pub fn scale_pow2(&self, j: i64) -> Self {
        PiScalar(&self.0 * pow2(j))
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        PiScalar(&self.0 * factor)
    }

    /// Shift by `2kπ`.
    pub fn shift_2pi(&self, k: i64) -> Self {
        PiScalar(&self.0 + int(2 * k))
    }

    /// Nearest `f64` to the represented real number.
    pub fn to_f64(&self) -> f64 {
        self.coeff_f64() * std::f64::consts::PI
    }

    pub fn coeff_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Parses `"p/q*pi"`, `"p*pi"`, or a bare coefficient `"p/q"`.
    pub fn parse(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let coeff = s
            .strip_suffix("*pi")
            .or_else(|| s.strip_suffix("pi"))
            .unwrap_or(s);
        let coeff = if coeff.is_empty() { "1" } else { coeff };
        parse_rational(coeff).map(PiScalar)
    }
}

impl fmt::Display for PiScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*pi", format_rational(&self.0))
    }
}

impl FromStr for PiScalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        PiScalar::parse(s)
    }
}

impl Serialize for PiScalar {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PiScalar {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        PiScalar::parse(&s).map_err(serde::de::Error::custom)
    }
}

impl Add for &PiScalar {
    type Output = PiScalar;
    fn add(self, rhs: &PiScalar) -> PiScalar {
        PiScalar(&self.0 + &rhs.0)
    }
}

impl Add for PiScalar {
    type Output = PiScalar;
    fn add(self, rhs: PiScalar) -> PiScalar {
        PiScalar(self.0 + rhs.0)
    }
}

impl AddAssign<&PiScalar> for PiScalar {
    fn add_assign(&mut self, rhs: &PiScalar) {
        self.0 += &rhs.0;
    }
}

impl Sub for &PiScalar {
    type Output = PiScalar;
    fn sub(self, rhs: &PiScalar) -> PiScalar {
        PiScalar(&self.0 - &rhs.0)
    }
}

impl Sub for PiScalar {
    type Output = PiScalar;
    fn sub(self, rhs: PiScalar) -> PiScalar {
        PiScalar(self.0 - rhs.0)
    }
}

impl Neg for PiScalar {
    type Output = PiScalar;
    fn neg(self) -> PiScalar {
        PiScalar(-self.0)
    }
}

impl std::iter::Sum for PiScalar {
    fn sum<I: Iterator<Item = PiScalar>>(iter: I) -> PiScalar {
        iter.fold(PiScalar::zero(), |acc, x| acc + x)
    }
}

/// An element `a + b√2` of ℚ(√2).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Q2 {
    a: Rational,
    b: Rational,
}

impl Q2 {
    pub fn new(a: Rational, b: Rational) -> Self {
        Q2 { a, b }
    }

    pub fn zero() -> Self {
        Q2::new(Rational::zero(), Rational::zero())
    }

    pub fn one() -> Self {
        Q2::from_rational(Rational::one())
    }

    pub fn from_rational(a: Rational) -> Self {
        Q2::new(a, Rational::zero())
    }

    /// `1/√2 = (1/2)√2`.
    pub fn inv_sqrt2() -> Self {
        Q2::new(Rational::zero(), rat(1, 2))
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn sqrt2_part(&self) -> &Rational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    /// Galois conjugate `a - b√2`.
    pub fn conjugate(&self) -> Self {
        Q2::new(self.a.clone(), -&self.b)
    }

    /// Field norm `a² - 2b²`; zero only for zero.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - int(2) * &self.b * &self.b
    }

    /// Squared modulus. Amplitudes are real, so this is `x·x`.
    pub fn abs_sq(&self) -> Self {
        self * self
    }

    /// `x² = 1`, i.e. `x = ±1`.
    pub fn is_unimodular(&self) -> bool {
        self.abs_sq().is_one()
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(Q2::new(&self.a / &n, -&self.b / &n))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Q2::new(&self.a * r, &self.b * r)
    }

    pub fn to_f64(&self) -> f64 {
        self.a.to_f64().unwrap_or(f64::NAN)
            + self.b.to_f64().unwrap_or(f64::NAN) * std::f64::consts::SQRT_2
    }

    pub fn signum(&self) -> Ordering {
        // sign of a + b√2, decided without floats
        let sa = self.a.cmp(&Rational::zero());
        let sb = self.b.cmp(&Rational::zero());
        match (sa, sb) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (s, t) if s == t => s,
            (sa, _) => {
                // opposite signs: compare a² with 2b²
                let a2 = &self.a * &self.a;
                let b2 = int(2) * &self.b * &self.b;
                match a2.cmp(&b2) {
                    Ordering::Greater => sa,
                    Ordering::Less => sa.reverse(),
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    pub fn parse(s: &str) -> Result<Self, Error> {
        let t = s.trim();
        let bad = || Error::Parse(format!("not an element of Q(sqrt2): {s:?}"));
        if let Some((a, b)) = t.split_once(" + ") {
            let b = b.trim().strip_suffix("*sqrt2").ok_or_else(bad)?;
            Ok(Q2::new(parse_rational(a)?, parse_rational(b)?))
        } else if let Some(b) = t.strip_suffix("*sqrt2") {
            Ok(Q2::new(Rational::zero(), parse_rational(b)?))
        } else {
            parse_rational(t).map(Q2::from_rational).map_err(|_| bad())
        }
    }
}

impl fmt::Display for Q2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} + {}*sqrt2",
            format_rational(&self.a),
            format_rational(&self.b)
        )
    }
}

impl FromStr for Q2 {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        Q2::parse(s)
    }
}

impl Serialize for Q2 {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Q2 {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        Q2::parse(&s).map_err(serde::de::Error::custom)
    }
}

impl Add for &Q2 {
    type Output = Q2;
    fn add(self, rhs: &Q2) -> Q2 {
        Q2::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl Add for Q2 {
    type Output = Q2;
    fn add(self, rhs: Q2) -> Q2 {
        &self + &rhs
    }
}

impl AddAssign<&Q2> for Q2 {
    fn add_assign(&mut self, rhs: &Q2) {
        self.a += &rhs.a;
        self.b += &rhs.b;
    }
}

impl Sub for &Q2 {
    type Output = Q2;
    fn sub(self, rhs: &Q2) -> Q2 {
        Q2::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl Sub for Q2 {
    type Output = Q2;
    fn sub(self, rhs: Q2) -> Q2 {
        &self - &rhs
    }
}

impl Mul for &Q2 {
    type Output = Q2;
    fn mul(self, rhs: &Q2) -> Q2 {
        Q2::new(
            &self.a * &rhs.a + int(2) * &self.b * &rhs.b,
            &self.a * &rhs.b + &self.b * &rhs.a,
        )
    }
}

impl Mul for Q2 {
    type Output = Q2;
    fn mul(self, rhs: Q2) -> Q2 {
        &self * &rhs
    }
}

impl Div for &Q2 {
    type Output = Q2;
    /// Panics on division by zero, like the rational division underneath.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Q2) -> Q2 {
        let inv = rhs.inverse().expect("division by zero in Q(sqrt2)");
        self * &inv
    }
}

impl Div for Q2 {
    type Output = Q2;
    fn div(self, rhs: Q2) -> Q2 {
        &self / &rhs
    }
}

impl Neg for Q2 {
    type Output = Q2;
    fn neg(self) -> Q2 {
        Q2::new(-self.a, -self.b)
    }
}

impl Neg for &Q2 {
    type Output = Q2;
    fn neg(self) -> Q2 {
        Q2::new(-&self.a, -&self.b)
    }
}

/// `x · y` in ℚ(√2).
pub fn q2_mul(x: &Q2, y: &Q2) -> Q2 {
    x * y
}

pub fn q2_abs_sq(x: &Q2) -> Q2 {
    x.abs_sq()
}

pub fn is_unimodular(x: &Q2) -> bool {
    x.is_unimodular()
}
