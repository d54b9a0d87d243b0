use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::scalar::Scalar;

/// `re + ε·du` with `ε² = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct DualNumber<S> {
    pub re: S,
    pub du: S,
}

impl<S: Scalar> DualNumber<S> {
    pub fn new(re: S, du: S) -> Self {
        Self { re, du }
    }

    pub fn real(re: S) -> Self {
        Self { re, du: S::zero() }
    }

    pub fn zero() -> Self {
        Self::real(S::zero())
    }

    pub fn one() -> Self {
        Self::real(S::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.du.is_zero()
    }

    pub fn approx_zero(&self, tol: f64) -> bool {
        self.re.approx_zero(tol) && self.du.approx_zero(tol)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.re.approx_eq(&other.re, tol) && self.du.approx_eq(&other.du, tol)
    }

    pub fn scale(&self, s: &S) -> Self {
        Self::new(self.re.clone() * s.clone(), self.du.clone() * s.clone())
    }

    /// `(a + εb)⁻¹ = a⁻¹ − ε b a⁻²`; `None` when the primal part vanishes.
    pub fn inverse(&self) -> Option<Self> {
        if self.re.is_zero() {
            return None;
        }
        let inv = S::one() / self.re.clone();
        let du = -(self.du.clone() * inv.clone() * inv.clone());
        Some(Self::new(inv, du))
    }

    /// `√(a + εb) = √a + ε b/(2√a)` for `a > 0`.
    pub fn sqrt(&self) -> Option<Self> {
        if !self.re.is_positive() {
            return None;
        }
        let root = self.re.sqrt()?;
        let du = self.du.clone() / (S::from_i64(2) * root.clone());
        Some(Self::new(root, du))
    }
}

impl<S: Scalar> Add for DualNumber<S> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.re + rhs.re, self.du + rhs.du)
    }
}

impl<S: Scalar> Sub for DualNumber<S> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.re - rhs.re, self.du - rhs.du)
    }
}

impl<S: Scalar> Neg for DualNumber<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.du)
    }
}

impl<S: Scalar> Mul for DualNumber<S> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let du = self.re.clone() * rhs.du + self.du * rhs.re.clone();
        Self::new(self.re * rhs.re, du)
    }
}

impl<S: Scalar> fmt::Display for DualNumber<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + ε({})", self.re, self.du)
    }
}
