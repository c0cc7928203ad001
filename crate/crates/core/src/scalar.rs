//! The scalar tower shared by every algebraic kernel.
//!
//! Two concrete towers exist: [`Approx`] (a pair of `f64`) and [`Exact`]
//! (a Gaussian rational, i.e. a pair of arbitrary-precision rationals).
//! Kernels are written once against [`Scalar`] and never mix the two.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Double-precision complex scalar.
pub type Approx = Complex64;

/// Gaussian-rational scalar with exact arithmetic.
pub type Exact = Complex<BigRational>;

/// Commutative ring operations plus exact division by positive integers.
pub trait Ring:
    Clone
    + fmt::Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// True for the arbitrary-precision tower.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    /// Division by a positive integer; exact on the rational tower.
    fn div_int(&self, k: u128) -> Self;
    fn is_zero(&self) -> bool;

    fn from_u128(v: u128) -> Self {
        if let Ok(small) = i64::try_from(v) {
            Self::from_i64(small)
        } else {
            // splits into two 64-bit halves to stay inside from_i64
            let hi = Self::from_i64((v >> 62) as i64);
            let lo = Self::from_i64((v & ((1u128 << 62) - 1)) as i64);
            hi * Self::from_i64(1i64 << 62) + lo
        }
    }

    fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = acc * self.clone();
        }
        acc
    }
}

/// Ordered real field underlying a [`Scalar`].
pub trait Real: Ring + PartialOrd {
    fn to_f64(&self) -> f64;
    fn to_value(&self) -> Value;
    fn abs(&self) -> Self;
}

/// Complex scalar: a [`Ring`] with conjugation over a [`Real`] field.
pub trait Scalar: Ring {
    type Real: Real;

    fn conj(&self) -> Self;
    fn re(&self) -> Self::Real;
    fn im(&self) -> Self::Real;
    fn from_real(r: Self::Real) -> Self;
    fn from_parts(re: Self::Real, im: Self::Real) -> Self;
    /// Lossy projection onto the double-precision tower.
    fn to_approx(&self) -> Approx;

    /// The unit imaginary scalar.
    fn i() -> Self {
        Self::from_parts(Self::Real::zero(), Self::Real::one())
    }
}

impl Ring for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn div_int(&self, k: u128) -> Self {
        self / k as f64
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
}

impl Real for f64 {
    fn to_f64(&self) -> f64 {
        *self
    }
    fn to_value(&self) -> Value {
        Value::Approx(*self)
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
}

impl Ring for BigRational {
    const EXACT: bool = true;

    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }
    fn one() -> Self {
        <BigRational as One>::one()
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_u128(v: u128) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn div_int(&self, k: u128) -> Self {
        self / BigRational::from_integer(BigInt::from(k))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

impl Real for BigRational {
    fn to_f64(&self) -> f64 {
        ratio_to_f64(self)
    }
    fn to_value(&self) -> Value {
        Value::Exact(self.clone())
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
}

impl<T: Real + num_traits::Num> Ring for Complex<T> {
    const EXACT: bool = T::EXACT;

    fn zero() -> Self {
        Complex::new(<T as Ring>::zero(), <T as Ring>::zero())
    }
    fn one() -> Self {
        Complex::new(<T as Ring>::one(), <T as Ring>::zero())
    }
    fn from_i64(v: i64) -> Self {
        Complex::new(T::from_i64(v), <T as Ring>::zero())
    }
    fn from_u128(v: u128) -> Self {
        Complex::new(T::from_u128(v), <T as Ring>::zero())
    }
    fn div_int(&self, k: u128) -> Self {
        Complex::new(self.re.div_int(k), self.im.div_int(k))
    }
    fn is_zero(&self) -> bool {
        Ring::is_zero(&self.re) && Ring::is_zero(&self.im)
    }
}

impl<T: Real + num_traits::Num> Scalar for Complex<T> {
    type Real = T;

    fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }
    fn re(&self) -> T {
        self.re.clone()
    }
    fn im(&self) -> T {
        self.im.clone()
    }
    fn from_real(r: T) -> Self {
        Complex::new(r, <T as Ring>::zero())
    }
    fn from_parts(re: T, im: T) -> Self {
        Complex::new(re, im)
    }
    fn to_approx(&self) -> Approx {
        Complex64::new(Real::to_f64(&self.re), Real::to_f64(&self.im))
    }
}

/// Converts a big rational to the nearest representable `f64`, including
/// when numerator and denominator individually overflow.
pub fn ratio_to_f64(r: &BigRational) -> f64 {
    if let Some(v) = ToPrimitive::to_f64(r) {
        if v.is_finite() {
            return v;
        }
    }
    let num = r.numer().to_f64().unwrap_or(f64::NAN);
    let den = r.denom().to_f64().unwrap_or(f64::NAN);
    num / den
}

/// Lifts a double to the exact tower (the conversion is exact in binary).
pub fn exact_from_f64(v: f64) -> Option<BigRational> {
    BigRational::from_float(v)
}

/// Parses `"p/q"`, `"p"` or a decimal literal like `"-1.25"` into a rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(BigRational::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let negative = int.starts_with('-');
        let digits = format!("{}{}", int.trim_start_matches(['-', '+']), frac);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let mut num: BigInt = digits.parse().ok()?;
        if negative {
            num = -num;
        }
        let den = BigInt::from(10u32).pow(frac.len() as u32);
        return Some(BigRational::new(num, den));
    }
    s.parse::<BigInt>().ok().map(BigRational::from_integer)
}

/// A real result that is either exact or approximate.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Approx(f64),
    Exact(BigRational),
}

impl Value {
    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Approx(v) => *v,
            Value::Exact(r) => ratio_to_f64(r),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Value::Exact(_))
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            Value::Exact(r) => Some(r),
            Value::Approx(_) => None,
        }
    }

    /// Exact equality when both sides are exact, otherwise relative closeness.
    pub fn agrees_with(&self, other: &Value, rel_tol: f64) -> bool {
        match (self, other) {
            (Value::Exact(a), Value::Exact(b)) => a == b,
            _ => rel_close(self.to_f64(), other.to_f64(), rel_tol, 1e-13),
        }
    }

    /// Parses the textual forms produced by `Display`.
    pub fn parse(s: &str) -> Option<Value> {
        let s = s.trim();
        if s.contains('e') || s.contains('E') || s.contains("inf") || s.contains("NaN") {
            return s.parse::<f64>().ok().map(Value::Approx);
        }
        if s.contains('.') {
            return s.parse::<f64>().ok().map(Value::Approx);
        }
        parse_rational(s).map(Value::Exact)
    }
}

impl fmt::Display for Value {
    /// Exact values print as `p/q` (or `p`), approximate ones with 17
    /// significant digits.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Value::Approx(v) => write!(f, "{}", format_sig17(*v)),
        }
    }
}

impl Serialize for Value {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Value {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Value::parse(&s).ok_or_else(|| serde::de::Error::custom(format!("bad value {s:?}")))
    }
}

/// 17 significant digits in scientific notation; round-trips any `f64`.
pub fn format_sig17(v: f64) -> String {
    format!("{v:.16e}")
}

/// `|a - b| <= rel * max(|a|, |b|)` with an absolute floor.
pub fn rel_close(a: f64, b: f64, rel: f64, abs_floor: f64) -> bool {
    let diff = (a - b).abs();
    diff <= abs_floor || diff <= rel * a.abs().max(b.abs())
}

/// Relative deviation `|a - b| / max(|a|, |b|, floor)`.
pub fn rel_deviation(a: f64, b: f64, floor: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(floor)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    #[test]
    fn parse_rational_forms() {
        assert_eq!(parse_rational("3/4"), Some(q(3, 4)));
        assert_eq!(parse_rational("-6/8"), Some(q(-3, 4)));
        assert_eq!(parse_rational("7"), Some(q(7, 1)));
        assert_eq!(parse_rational("-1.25"), Some(q(-5, 4)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("abc"), None);
    }

    #[test]
    fn value_display_and_parse() {
        let v = Value::Exact(q(29, 20));
        assert_eq!(v.to_string(), "29/20");
        assert_eq!(Value::parse("29/20"), Some(v));
        assert_eq!(Value::Exact(q(120, 1)).to_string(), "120");
        let a = Value::Approx(0.1);
        assert_eq!(Value::parse(&a.to_string()), Some(a));
    }

    #[test]
    fn gaussian_rational_is_closed() {
        let a = Exact::new(q(1, 2), q(1, 3));
        let b = a.conj();
        let prod = a.clone() * b;
        assert_eq!(prod.im, <BigRational as Ring>::zero());
        assert_eq!(prod.re, q(13, 36));
        assert_eq!(a.div_int(2), Exact::new(q(1, 4), q(1, 6)));
    }

    #[test]
    fn from_u128_large() {
        let big: u128 = 1 << 100;
        let r = <BigRational as Ring>::from_u128(big);
        assert_eq!(r.to_string(), big.to_string());
        let f = <f64 as Ring>::from_u128(big);
        assert_eq!(f, 2f64.powi(100));
    }
}
