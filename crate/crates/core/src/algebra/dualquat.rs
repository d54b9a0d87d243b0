use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::dual::DualNumber;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// A real quaternion `w + x i + y j + z k`.
#[derive(Clone, Debug, PartialEq)]
pub struct Quaternion<S> {
    pub w: S,
    pub x: S,
    pub y: S,
    pub z: S,
}

impl<S: Scalar> Quaternion<S> {
    pub fn new(w: S, x: S, y: S, z: S) -> Self {
        Self { w, x, y, z }
    }

    pub fn zero() -> Self {
        Self::new(S::zero(), S::zero(), S::zero(), S::zero())
    }

    pub fn scalar(w: S) -> Self {
        Self::new(w, S::zero(), S::zero(), S::zero())
    }

    pub fn pure(v: [S; 3]) -> Self {
        let [x, y, z] = v;
        Self::new(S::zero(), x, y, z)
    }

    pub fn vector(&self) -> [S; 3] {
        [self.x.clone(), self.y.clone(), self.z.clone()]
    }

    pub fn coords(&self) -> [S; 4] {
        [self.w.clone(), self.x.clone(), self.y.clone(), self.z.clone()]
    }

    pub fn conj(&self) -> Self {
        Self::new(self.w.clone(), -self.x.clone(), -self.y.clone(), -self.z.clone())
    }

    pub fn scale(&self, s: &S) -> Self {
        Self::new(
            self.w.clone() * s.clone(),
            self.x.clone() * s.clone(),
            self.y.clone() * s.clone(),
            self.z.clone() * s.clone(),
        )
    }

    /// `w² + x² + y² + z²`
    pub fn norm_sq(&self) -> S {
        self.coords()
            .into_iter()
            .fold(S::zero(), |acc, c| acc + c.clone() * c)
    }

    /// Euclidean inner product of the four coordinates.
    pub fn dot(&self, other: &Self) -> S {
        self.coords()
            .into_iter()
            .zip(other.coords())
            .fold(S::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn is_zero(&self) -> bool {
        self.coords().iter().all(Scalar::is_zero)
    }

    pub fn approx_zero(&self, tol: f64) -> bool {
        self.coords().iter().all(|c| c.approx_zero(tol))
    }

    pub fn mul(&self, b: &Self) -> Self {
        let a = self;
        let c = |x: &S, y: &S| x.clone() * y.clone();
        Self::new(
            c(&a.w, &b.w) - c(&a.x, &b.x) - c(&a.y, &b.y) - c(&a.z, &b.z),
            c(&a.w, &b.x) + c(&a.x, &b.w) + c(&a.y, &b.z) - c(&a.z, &b.y),
            c(&a.w, &b.y) - c(&a.x, &b.z) + c(&a.y, &b.w) + c(&a.z, &b.x),
            c(&a.w, &b.z) + c(&a.x, &b.y) - c(&a.y, &b.x) + c(&a.z, &b.w),
        )
    }

    fn zip_with(&self, b: &Self, f: impl Fn(S, S) -> S) -> Self {
        Self::new(
            f(self.w.clone(), b.w.clone()),
            f(self.x.clone(), b.x.clone()),
            f(self.y.clone(), b.y.clone()),
            f(self.z.clone(), b.z.clone()),
        )
    }
}

/// Element of the dual quaternions: `primal + ε·dual`, `ε` central, `ε² = 0`.
///
/// Coordinates are exposed in the order `(1, i, j, k, ε, εi, εj, εk)`, which is
/// also the row order of the realified lambda matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DualQuaternion<S> {
    pub primal: Quaternion<S>,
    pub dual: Quaternion<S>,
}

impl<S: Scalar> DualQuaternion<S> {
    pub fn new(primal: Quaternion<S>, dual: Quaternion<S>) -> Self {
        Self { primal, dual }
    }

    pub fn zero() -> Self {
        Self::new(Quaternion::zero(), Quaternion::zero())
    }

    pub fn one() -> Self {
        Self::scalar(S::one())
    }

    pub fn scalar(s: S) -> Self {
        Self::new(Quaternion::scalar(s), Quaternion::zero())
    }

    pub fn from_dual_number(d: &DualNumber<S>) -> Self {
        Self::new(Quaternion::scalar(d.re.clone()), Quaternion::scalar(d.du.clone()))
    }

    /// Pure vectorial element `p + ε m`.
    pub fn pure(primal: [S; 3], dual: [S; 3]) -> Self {
        Self::new(Quaternion::pure(primal), Quaternion::pure(dual))
    }

    pub fn i() -> Self {
        Self::pure([S::one(), S::zero(), S::zero()], [S::zero(), S::zero(), S::zero()])
    }

    pub fn j() -> Self {
        Self::pure([S::zero(), S::one(), S::zero()], [S::zero(), S::zero(), S::zero()])
    }

    pub fn k() -> Self {
        Self::pure([S::zero(), S::zero(), S::one()], [S::zero(), S::zero(), S::zero()])
    }

    /// `ε` itself.
    pub fn epsilon() -> Self {
        Self::new(Quaternion::zero(), Quaternion::scalar(S::one()))
    }

    /// Multiply by `ε`: the primal part moves into the dual slot.
    pub fn times_epsilon(&self) -> Self {
        Self::new(Quaternion::zero(), self.primal.clone())
    }

    pub fn coords(&self) -> [S; 8] {
        let [a, b, c, d] = self.primal.coords();
        let [e, f, g, h] = self.dual.coords();
        [a, b, c, d, e, f, g, h]
    }

    pub fn from_coords(c: [S; 8]) -> Self {
        let [a, b, c_, d, e, f, g, h] = c;
        Self::new(Quaternion::new(a, b, c_, d), Quaternion::new(e, f, g, h))
    }

    /// Scalar part `w_primal + ε w_dual`.
    pub fn scalar_part(&self) -> DualNumber<S> {
        DualNumber::new(self.primal.w.clone(), self.dual.w.clone())
    }

    /// Drops the scalar part, keeping the six vectorial coordinates.
    pub fn vector_part(&self) -> Self {
        Self::pure(self.primal.vector(), self.dual.vector())
    }

    pub fn is_pure(&self) -> bool {
        self.primal.w.is_zero() && self.dual.w.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.primal.is_zero() && self.dual.is_zero()
    }

    pub fn approx_zero(&self, tol: f64) -> bool {
        self.primal.approx_zero(tol) && self.dual.approx_zero(tol)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self - other).approx_zero(tol)
    }

    /// `true` when all coordinates other than the real scalar `1` vanish.
    pub fn is_real(&self, tol: f64) -> bool {
        let c = self.coords();
        c[1..].iter().all(|x| x.approx_zero(tol))
    }

    /// Largest absolute coordinate.
    pub fn max_abs(&self) -> S {
        self.coords()
            .into_iter()
            .map(|c| c.abs())
            .fold(S::zero(), |m, c| if c > m { c } else { m })
    }

    pub fn scale(&self, s: &S) -> Self {
        Self::new(self.primal.scale(s), self.dual.scale(s))
    }

    /// Multiplication by a dual number (central).
    pub fn scale_dual(&self, d: &DualNumber<S>) -> Self {
        let primal = self.primal.scale(&d.re);
        let dual = self.dual.scale(&d.re).zip_with(&self.primal.scale(&d.du), |a, b| a + b);
        Self::new(primal, dual)
    }

    /// Quaternion conjugate: negates the six vectorial coordinates.
    pub fn conj(&self) -> Self {
        Self::new(self.primal.conj(), self.dual.conj())
    }

    /// `a·ā`, always a dual number.
    pub fn norm(&self) -> DualNumber<S> {
        let re = self.primal.norm_sq();
        let du = S::from_i64(2) * self.primal.dot(&self.dual);
        DualNumber::new(re, du)
    }

    /// `ā·(aā)⁻¹`; fails when the primal part is zero.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.norm().inverse().ok_or(Error::NonInvertible)?;
        Ok(self.conj().scale_dual(&n))
    }

    /// `q·x·q⁻¹`
    pub fn conjugate_by(&self, x: &Self) -> Result<Self> {
        let inv = self.inverse()?;
        Ok(&(self * x) * &inv)
    }
}

/// Cross product `(gh − hg)/2` and inner product `−(gh + hg)/2` of two pure
/// dual quaternions, so that `gh = −⟨g,h⟩ + g×h`.
pub fn cross_inner<S: Scalar>(
    g: &DualQuaternion<S>,
    h: &DualQuaternion<S>,
) -> Result<(DualQuaternion<S>, DualNumber<S>)> {
    if !g.is_pure() || !h.is_pure() {
        return Err(Error::NotPure);
    }
    let gh = g * h;
    let hg = h * g;
    let half = S::from_ratio(1, 2);
    let cross = (&gh - &hg).scale(&half);
    let inner = -(&gh + &hg).scale(&half).scalar_part();
    Ok((cross, inner))
}

pub fn cross<S: Scalar>(g: &DualQuaternion<S>, h: &DualQuaternion<S>) -> Result<DualQuaternion<S>> {
    cross_inner(g, h).map(|(c, _)| c)
}

pub fn inner<S: Scalar>(g: &DualQuaternion<S>, h: &DualQuaternion<S>) -> Result<DualNumber<S>> {
    cross_inner(g, h).map(|(_, i)| i)
}

impl<'a, S: Scalar> Mul<&'a DualQuaternion<S>> for &'a DualQuaternion<S> {
    type Output = DualQuaternion<S>;
    fn mul(self, rhs: &'a DualQuaternion<S>) -> DualQuaternion<S> {
        let primal = self.primal.mul(&rhs.primal);
        let dual = self
            .primal
            .mul(&rhs.dual)
            .zip_with(&self.dual.mul(&rhs.primal), |a, b| a + b);
        DualQuaternion::new(primal, dual)
    }
}

impl<S: Scalar> Mul for DualQuaternion<S> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<'a, S: Scalar> Add<&'a DualQuaternion<S>> for &'a DualQuaternion<S> {
    type Output = DualQuaternion<S>;
    fn add(self, rhs: &'a DualQuaternion<S>) -> DualQuaternion<S> {
        DualQuaternion::new(
            self.primal.zip_with(&rhs.primal, |a, b| a + b),
            self.dual.zip_with(&rhs.dual, |a, b| a + b),
        )
    }
}

impl<S: Scalar> Add for DualQuaternion<S> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<'a, S: Scalar> Sub<&'a DualQuaternion<S>> for &'a DualQuaternion<S> {
    type Output = DualQuaternion<S>;
    fn sub(self, rhs: &'a DualQuaternion<S>) -> DualQuaternion<S> {
        DualQuaternion::new(
            self.primal.zip_with(&rhs.primal, |a, b| a - b),
            self.dual.zip_with(&rhs.dual, |a, b| a - b),
        )
    }
}

impl<S: Scalar> Sub for DualQuaternion<S> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl<S: Scalar> Neg for &DualQuaternion<S> {
    type Output = DualQuaternion<S>;
    fn neg(self) -> DualQuaternion<S> {
        DualQuaternion::new(self.primal.scale(&-S::one()), self.dual.scale(&-S::one()))
    }
}

impl<S: Scalar> Neg for DualQuaternion<S> {
    type Output = Self;
    fn neg(self) -> Self {
        -&self
    }
}

impl<S: Scalar> fmt::Display for DualQuaternion<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const BASIS: [&str; 8] = ["", "i", "j", "k", "ε", "εi", "εj", "εk"];
        let mut first = true;
        for (c, b) in self.coords().iter().zip(BASIS) {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if b.is_empty() {
                write!(f, "{c}")?;
            } else {
                write!(f, "({c}){b}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{q, Rational};

    type Dq = DualQuaternion<Rational>;

    #[test]
    fn basis_products() {
        assert_eq!(&Dq::i() * &Dq::j(), Dq::k());
        assert_eq!(&Dq::j() * &Dq::k(), Dq::i());
        assert_eq!(&Dq::k() * &Dq::i(), Dq::j());
        assert_eq!(&Dq::i() * &Dq::i(), -Dq::one());
        let ei = Dq::i().times_epsilon();
        let ej = Dq::j().times_epsilon();
        assert_eq!(&ei * &Dq::j(), Dq::k().times_epsilon());
        assert!((&ei * &ej).is_zero());
        assert!((&Dq::epsilon() * &Dq::epsilon()).is_zero());
    }

    #[test]
    fn conj_and_norm() {
        let a = &(&Dq::one() + &Dq::i()) + &Dq::j().times_epsilon();
        let expect = &(&Dq::one() - &Dq::i()) - &Dq::j().times_epsilon();
        assert_eq!(a.conj(), expect);
        let b = &Dq::scalar(q(2, 1)) + &Dq::i().times_epsilon();
        assert_eq!(b.norm(), DualNumber::real(q(4, 1)));
    }

    #[test]
    fn cross_inner_rejects_non_pure() {
        assert!(matches!(cross_inner(&Dq::one(), &Dq::i()), Err(Error::NotPure)));
        let (c, i) = cross_inner(&Dq::i(), &Dq::j()).unwrap();
        assert_eq!(c, Dq::k());
        assert!(i.is_zero());
        assert_eq!(inner(&Dq::i(), &Dq::i()).unwrap(), DualNumber::one());
    }

    #[test]
    fn inverse_of_pure_epsilon_fails() {
        assert!(Dq::i().times_epsilon().inverse().is_err());
        let a = &Dq::scalar(q(3, 1)) - &Dq::k();
        assert_eq!(&a * &a.inverse().unwrap(), Dq::one());
    }
}
