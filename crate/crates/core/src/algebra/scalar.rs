//! The scalar tower: exact rationals and `f64` behind one trait.
//!
//! Everything that decides a classification (ranks, line identities, factor
//! checks) runs on [`Rational`]. Curve tracing and pose export run on `f64`.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};
use serde_json::Value;

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always kept in lowest terms.
pub type Rational = BigRational;

/// Absolute tolerance used by float-mode predicates unless a caller picks one.
pub const DEFAULT_TOL: f64 = 1e-9;

pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// `true` when arithmetic is exact and `approx_zero` ignores its tolerance.
    const EXACT: bool;
    /// Name used in the JSON `scalar` field.
    const NAME: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    /// `num / den`; panics on `den == 0`.
    fn from_ratio(num: i64, den: i64) -> Self;
    /// Closest representable value to `x`; rationals take its exact binary value.
    fn from_f64(x: f64) -> Option<Self>;
    /// A value within `tol` of `x`: rationals use the shortest continued-fraction convergent.
    fn from_f64_approx(x: f64, tol: f64) -> Option<Self>;
    fn to_f64(&self) -> f64;
    fn to_rational(&self) -> Option<Rational>;
    fn is_zero(&self) -> bool;
    /// Square root of a non-negative value. Rationals only succeed on perfect squares.
    fn sqrt(&self) -> Option<Self>;
    /// Exact zero test for rationals; `|x| <= tol` for floats.
    fn approx_zero(&self, tol: f64) -> bool;

    fn parse_json(v: &Value) -> Result<Self>;
    fn to_json(&self) -> Value;

    fn abs(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn is_positive(&self) -> bool {
        *self > Self::zero()
    }

    fn powi(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc * self.clone();
        }
        acc
    }

    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self.clone() - other.clone()).approx_zero(tol)
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;
    const NAME: &'static str = "rational";

    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn from_i64(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    fn from_f64(x: f64) -> Option<Self> {
        <Rational as FromPrimitive>::from_f64(x)
    }

    fn from_f64_approx(x: f64, tol: f64) -> Option<Self> {
        if !x.is_finite() {
            return None;
        }
        // continued-fraction convergents h/k
        let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
        let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
        let mut rest = x;
        for _ in 0..64 {
            let a = rest.floor();
            let ai = BigInt::from_f64(a)?;
            let h2 = &ai * &h1 + &h0;
            let k2 = &ai * &k1 + &k0;
            h0 = std::mem::replace(&mut h1, h2);
            k0 = std::mem::replace(&mut k1, k2);
            let approx = Rational::new(h1.clone(), k1.clone());
            if (ToPrimitive::to_f64(&approx)? - x).abs() <= tol {
                return Some(approx);
            }
            let frac = rest - a;
            if frac == 0.0 {
                return Some(approx);
            }
            rest = 1.0 / frac;
        }
        None
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        if &n * &n == *self.numer() && &d * &d == *self.denom() {
            Some(Rational::new(n, d))
        } else {
            None
        }
    }

    fn approx_zero(&self, _tol: f64) -> bool {
        Zero::is_zero(self)
    }

    fn parse_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => s
                .trim()
                .parse::<Rational>()
                .map_err(|_| Error::Parse(format!("not a rational number: {s:?}"))),
            // decimals become the simplest rational within 1e-12 relative
            Value::Number(n) => match (n.as_i64(), n.as_f64()) {
                (Some(i), _) => Ok(<Self as Scalar>::from_i64(i)),
                (None, Some(x)) => Self::from_f64_approx(x, 1e-12 * x.abs().max(1.0))
                    .ok_or_else(|| Error::Parse(format!("cannot read {n} as a rational"))),
                _ => Err(Error::Parse(format!("cannot read {n} as a rational"))),
            },
            other => Err(Error::Parse(format!("expected a rational, got {other}"))),
        }
    }

    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;
    const NAME: &'static str = "float";

    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn from_i64(n: i64) -> Self {
        n as f64
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        num as f64 / den as f64
    }

    fn from_f64(x: f64) -> Option<Self> {
        x.is_finite().then_some(x)
    }

    fn from_f64_approx(x: f64, _tol: f64) -> Option<Self> {
        x.is_finite().then_some(x)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn to_rational(&self) -> Option<Rational> {
        <Rational as FromPrimitive>::from_f64(*self)
    }

    fn is_zero(&self) -> bool {
        *self == 0.0
    }

    fn sqrt(&self) -> Option<Self> {
        (*self >= 0.0).then(|| f64::sqrt(*self))
    }

    fn approx_zero(&self, tol: f64) -> bool {
        f64::abs(*self) <= tol
    }

    fn parse_json(v: &Value) -> Result<Self> {
        match v {
            Value::Number(n) => n
                .as_f64()
                .ok_or_else(|| Error::Parse(format!("not a float: {n}"))),
            Value::String(s) => {
                // accept "p/q" so rational files can be read in float mode
                if let Ok(r) = s.trim().parse::<Rational>() {
                    return Ok(Scalar::to_f64(&r));
                }
                s.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::Parse(format!("not a number: {s:?}")))
            }
            other => Err(Error::Parse(format!("expected a number, got {other}"))),
        }
    }

    fn to_json(&self) -> Value {
        serde_json::Number::from_f64(*self)
            .map(Value::Number)
            .unwrap_or(Value::Null)
    }
}

/// Shorthand for building rationals in code and tests.
pub fn q(num: i64, den: i64) -> Rational {
    Rational::from_ratio(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_sqrt_only_on_squares() {
        assert_eq!(Scalar::sqrt(&q(49, 121)), Some(q(7, 11)));
        assert_eq!(Scalar::sqrt(&q(2, 1)), None);
        assert_eq!(Scalar::sqrt(&q(-1, 4)), None);
    }

    #[test]
    fn continued_fraction_recovers_simple_ratios() {
        let r = Rational::from_f64_approx(-7.0 / 11.0, 1e-12).unwrap();
        assert_eq!(r, q(-7, 11));
        let r = Rational::from_f64_approx(2.5, 1e-12).unwrap();
        assert_eq!(r, q(5, 2));
    }

    #[test]
    fn json_round_trip() {
        let r = q(-3, 5);
        assert_eq!(Rational::parse_json(&r.to_json()).unwrap(), r);
        assert_eq!(Rational::parse_json(&serde_json::json!(4)).unwrap(), q(4, 1));
        assert_eq!(Rational::parse_json(&serde_json::json!(0.6)).unwrap(), q(3, 5));
        assert!(Rational::parse_json(&serde_json::json!([1])).is_err());
        assert_eq!(f64::parse_json(&serde_json::json!("7/11")).unwrap(), 7.0 / 11.0);
    }
}
