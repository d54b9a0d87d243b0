//! Dual numbers, quaternions, dual quaternions and lines over a generic scalar.

mod dual;
mod dualquat;
mod line;
mod scalar;

pub use dual::DualNumber;
pub use dualquat::{cross, cross_inner, inner, DualQuaternion, Quaternion};
pub use line::{act_on_line, cross3, dot3, scale3, Line, Vec3};
pub use scalar::{q, Rational, Scalar, DEFAULT_TOL};
