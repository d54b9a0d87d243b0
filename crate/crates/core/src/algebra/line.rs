use std::fmt;

use super::dual::DualNumber;
use super::dualquat::DualQuaternion;
use super::scalar::{Scalar, DEFAULT_TOL};
use crate::error::{Error, Result};

pub type Vec3<S> = [S; 3];

pub fn dot3<S: Scalar>(a: &Vec3<S>, b: &Vec3<S>) -> S {
    a[0].clone() * b[0].clone() + a[1].clone() * b[1].clone() + a[2].clone() * b[2].clone()
}

pub fn cross3<S: Scalar>(a: &Vec3<S>, b: &Vec3<S>) -> Vec3<S> {
    let m = |x: &S, y: &S| x.clone() * y.clone();
    [
        m(&a[1], &b[2]) - m(&a[2], &b[1]),
        m(&a[2], &b[0]) - m(&a[0], &b[2]),
        m(&a[0], &b[1]) - m(&a[1], &b[0]),
    ]
}

pub fn scale3<S: Scalar>(a: &Vec3<S>, s: &S) -> Vec3<S> {
    [a[0].clone() * s.clone(), a[1].clone() * s.clone(), a[2].clone() * s.clone()]
}

/// An oriented line: a pure dual quaternion `h = p + ε m` with `h² = −1`.
///
/// `p` is the unit direction and `m = c × p` the moment for any point `c` on
/// the line. `h` and `-h` describe the same axis with opposite orientation;
/// the orientation matters for the sign of rotation parameters, so it is kept.
/// [`Line::canonical`] and [`Line::same_axis`] compare axes regardless of it.
#[derive(Clone, Debug, PartialEq)]
pub struct Line<S> {
    h: DualQuaternion<S>,
}

impl<S: Scalar> Line<S> {
    /// Validates `h² = −1` (exactly for rationals, within `tol` for floats).
    pub fn new(h: DualQuaternion<S>) -> Result<Self> {
        Self::with_tolerance(h, DEFAULT_TOL)
    }

    pub fn with_tolerance(h: DualQuaternion<S>, tol: f64) -> Result<Self> {
        if !h.is_pure() {
            return Err(Error::NotALine("scalar part must vanish".into()));
        }
        let p = h.primal.vector();
        let m = h.dual.vector();
        let unit = dot3(&p, &p) - S::one();
        if !unit.approx_zero(tol) {
            return Err(Error::NotALine(format!(
                "primal direction is not a unit vector (|p|² − 1 = {})",
                unit.to_f64()
            )));
        }
        let orth = dot3(&p, &m);
        if !orth.approx_zero(tol) {
            return Err(Error::NotALine(format!(
                "primal and dual parts are not orthogonal (⟨p, m⟩ = {})",
                orth.to_f64()
            )));
        }
        Ok(Self { h })
    }

    /// From a unit direction and its moment.
    pub fn from_plucker(direction: Vec3<S>, moment: Vec3<S>) -> Result<Self> {
        Self::new(DualQuaternion::pure(direction, moment))
    }

    pub(crate) fn new_unchecked(h: DualQuaternion<S>) -> Self {
        Self { h }
    }

    /// Line through `anchor` along `direction` (normalized here), with
    /// `h = p + ε(c × p)`. Orientation follows `direction`.
    ///
    /// Rational directions must have a rational length.
    pub fn through(direction: Vec3<S>, anchor: Vec3<S>) -> Result<Self> {
        let len_sq = dot3(&direction, &direction);
        if len_sq.is_zero() {
            return Err(Error::ZeroDirection);
        }
        let len = len_sq.sqrt().ok_or(Error::IrrationalLength)?;
        let p = scale3(&direction, &(S::one() / len));
        let m = cross3(&anchor, &p);
        Ok(Self { h: DualQuaternion::pure(p, m) })
    }

    pub fn as_dq(&self) -> &DualQuaternion<S> {
        &self.h
    }

    pub fn into_dq(self) -> DualQuaternion<S> {
        self.h
    }

    pub fn direction(&self) -> Vec3<S> {
        self.h.primal.vector()
    }

    pub fn moment(&self) -> Vec3<S> {
        self.h.dual.vector()
    }

    /// Foot of the perpendicular from the origin: `c = p × m`.
    pub fn anchor(&self) -> Vec3<S> {
        cross3(&self.direction(), &self.moment())
    }

    pub fn reversed(&self) -> Self {
        Self { h: -&self.h }
    }

    /// Orientation with the first nonzero direction coordinate positive.
    pub fn canonical(&self) -> Self {
        let first = self
            .direction()
            .into_iter()
            .find(|c| !c.is_zero())
            .expect("unit direction has a nonzero coordinate");
        if first.is_positive() {
            self.clone()
        } else {
            self.reversed()
        }
    }

    /// Equality of the underlying axes, ignoring orientation.
    pub fn same_axis(&self, other: &Self, tol: f64) -> bool {
        self.h.approx_eq(&other.h, tol) || self.h.approx_eq(&-&other.h, tol)
    }

    /// Direction vectors parallel or anti-parallel.
    pub fn is_parallel(&self, other: &Self, tol: f64) -> bool {
        cross3(&self.direction(), &other.direction())
            .iter()
            .all(|c| c.approx_zero(tol))
    }

    /// `⟨self, other⟩ = cos θ − ε d sin θ`.
    pub fn inner(&self, other: &Self) -> DualNumber<S> {
        super::dualquat::inner(&self.h, &other.h).expect("lines are pure")
    }

    /// `(t − h)` for a finite rotation parameter.
    pub fn rotor(&self, t: &S) -> DualQuaternion<S> {
        &DualQuaternion::scalar(t.clone()) - &self.h
    }

    /// Convert scalar type, e.g. exact data to floats for tracing.
    pub fn map_scalar<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Line<T> {
        Line { h: DualQuaternion::from_coords(self.h.coords().map(|c| f(&c))) }
    }
}

/// `q h q⁻¹`; the orientation of the image follows from `q`.
pub fn act_on_line<S: Scalar>(q: &DualQuaternion<S>, h: &Line<S>) -> Result<Line<S>> {
    let img = q.conjugate_by(h.as_dq())?;
    Ok(Line::new_unchecked(img))
}

impl<S: Scalar> fmt::Display for Line<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.h.fmt(f)
    }
}
