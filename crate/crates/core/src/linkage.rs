//! Closed 6R linkages, their configurations and the closure condition.

use std::fmt;

use crate::algebra::{act_on_line, DualNumber, DualQuaternion, Line, Scalar};
use crate::error::{Error, Result};

/// Relative tolerance for accepting a float configuration as closed.
pub const CLOSURE_TOL: f64 = 1e-9;

/// Six joint axes `h1..h6`, stored 0-based.
#[derive(Clone, Debug, PartialEq)]
pub struct Linkage<S> {
    joints: [Line<S>; 6],
}

impl<S: Scalar> Linkage<S> {
    /// Rejects consecutive joints (cyclically) on the same axis.
    ///
    /// Opposite joints `h_i`, `h_{i+3}` may coincide in the initial position;
    /// they only have to separate along the motion.
    pub fn new(joints: [Line<S>; 6]) -> Result<Self> {
        for i in 0..6 {
            let j = (i + 1) % 6;
            if joints[i].same_axis(&joints[j], crate::algebra::DEFAULT_TOL) {
                return Err(Error::IdenticalAxes(i + 1, j + 1));
            }
        }
        Ok(Self { joints })
    }

    pub fn joints(&self) -> &[Line<S>; 6] {
        &self.joints
    }

    /// `h_i`, 1-based as in the usual notation.
    pub fn h(&self, i: usize) -> &Line<S> {
        &self.joints[i - 1]
    }

    /// Cyclic relabeling: the result's `h1` is this linkage's `h_{1+shift}`.
    pub fn cyclic_shift(&self, shift: usize) -> Self {
        Self { joints: std::array::from_fn(|i| self.joints[(i + shift) % 6].clone()) }
    }

    pub fn map_scalar<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Linkage<T> {
        Linkage { joints: std::array::from_fn(|i| self.joints[i].map_scalar(&f)) }
    }

    pub fn to_f64(&self) -> Linkage<f64> {
        self.map_scalar(Scalar::to_f64)
    }
}

/// Rotation parameter `t = cot(φ/2)`, possibly `∞` (rotation by zero).
#[derive(Clone, Debug, PartialEq)]
pub enum ConfigParam<S> {
    Finite(S),
    Infinite,
}

impl<S: Scalar> ConfigParam<S> {
    /// From a projective pair `(num : den)`; `den = 0` is `∞`.
    pub fn from_projective(num: S, den: S) -> Result<Self> {
        match (num.is_zero(), den.is_zero()) {
            (true, true) => Err(Error::Parse("projective parameter (0 : 0)".into())),
            (_, true) => Ok(Self::Infinite),
            _ => Ok(Self::Finite(num / den)),
        }
    }

    /// `(num, den)` with `den ∈ {0, 1}`.
    pub fn projective(&self) -> (S, S) {
        match self {
            Self::Finite(t) => (t.clone(), S::one()),
            Self::Infinite => (S::one(), S::zero()),
        }
    }

    pub fn finite(&self) -> Option<&S> {
        match self {
            Self::Finite(t) => Some(t),
            Self::Infinite => None,
        }
    }

    /// `t − h`, or `1` at infinity.
    pub fn rotor(&self, h: &Line<S>) -> DualQuaternion<S> {
        match self {
            Self::Finite(t) => h.rotor(t),
            Self::Infinite => DualQuaternion::one(),
        }
    }

    /// `t + h`, or `1` at infinity.
    pub fn reverse_rotor(&self, h: &Line<S>) -> DualQuaternion<S> {
        match self {
            Self::Finite(t) => &DualQuaternion::scalar(t.clone()) + h.as_dq(),
            Self::Infinite => DualQuaternion::one(),
        }
    }

    /// Parameter of the composed rotation: `(t − h)(s − h) ∝ (ts − 1) − (t + s)h`.
    pub fn compose(&self, other: &Self) -> Self {
        match (self, other) {
            (Self::Infinite, x) | (x, Self::Infinite) => x.clone(),
            (Self::Finite(t), Self::Finite(s)) => {
                let den = t.clone() + s.clone();
                if den.is_zero() {
                    Self::Infinite
                } else {
                    Self::Finite((t.clone() * s.clone() - S::one()) / den)
                }
            }
        }
    }

    /// Parameter of the inverse rotation, `t ↦ −t`.
    pub fn inverse(&self) -> Self {
        match self {
            Self::Finite(t) => Self::Finite(-t.clone()),
            Self::Infinite => Self::Infinite,
        }
    }

    pub fn to_f64(&self) -> ConfigParam<f64> {
        match self {
            Self::Finite(t) => ConfigParam::Finite(t.to_f64()),
            Self::Infinite => ConfigParam::Infinite,
        }
    }
}

impl<S: Scalar> fmt::Display for ConfigParam<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(t) => write!(f, "{t}"),
            Self::Infinite => write!(f, "inf"),
        }
    }
}

/// `(t1, …, t6)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Configuration<S> {
    pub t: [ConfigParam<S>; 6],
}

impl<S: Scalar> Configuration<S> {
    pub fn identity() -> Self {
        Self { t: std::array::from_fn(|_| ConfigParam::Infinite) }
    }

    pub fn finite(t: [S; 6]) -> Self {
        Self { t: t.map(ConfigParam::Finite) }
    }

    /// `Some` when `t1 = t4, t2 = t5, t3 = t6`.
    pub fn as_symmetric(&self) -> Option<SymConfiguration<S>> {
        (0..3)
            .all(|i| self.t[i] == self.t[i + 3])
            .then(|| SymConfiguration { t: std::array::from_fn(|i| self.t[i].clone()) })
    }
}

/// `(t1, t2, t3)` standing for `(t1, t2, t3, t1, t2, t3)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymConfiguration<S> {
    pub t: [ConfigParam<S>; 3],
}

impl<S: Scalar> SymConfiguration<S> {
    pub fn identity() -> Self {
        Self { t: std::array::from_fn(|_| ConfigParam::Infinite) }
    }

    pub fn finite(t: [S; 3]) -> Self {
        Self { t: t.map(ConfigParam::Finite) }
    }

    pub fn expand(&self) -> Configuration<S> {
        Configuration { t: std::array::from_fn(|i| self.t[i % 3].clone()) }
    }

    /// Finite coordinates, if all three are finite.
    pub fn finite_values(&self) -> Option<[S; 3]> {
        let [a, b, c] = &self.t;
        Some([a.finite()?.clone(), b.finite()?.clone(), c.finite()?.clone()])
    }

    pub fn to_f64(&self) -> SymConfiguration<f64> {
        SymConfiguration { t: std::array::from_fn(|i| self.t[i].to_f64()) }
    }
}

/// `λ` in `(t1−h1)(t2−h2)(t3−h3) = λ (t3+h6)(t2+h5)(t1+h4)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LambdaSign {
    Plus,
    Minus,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClosureReport<S> {
    /// Only computed for angle-symmetric configurations.
    pub lambda_sign: Option<LambdaSign>,
    /// Largest non-real coordinate of the closure product over its largest coordinate.
    pub residual: S,
}

impl<S: Scalar> ClosureReport<S> {
    /// Exact zero for rationals, `residual <= tol` for floats.
    pub fn closes(&self, tol: f64) -> bool {
        if S::EXACT {
            self.residual.is_zero()
        } else {
            self.residual.to_f64() <= tol
        }
    }
}

/// `Π (t_i − h_i)` with `∞ ↦ 1`.
pub fn closure_product<S: Scalar>(linkage: &Linkage<S>, config: &Configuration<S>) -> DualQuaternion<S> {
    linkage
        .joints
        .iter()
        .zip(&config.t)
        .fold(DualQuaternion::one(), |acc, (h, t)| &acc * &t.rotor(h))
}

pub fn closure_residual<S: Scalar>(linkage: &Linkage<S>, config: &Configuration<S>) -> Result<ClosureReport<S>> {
    let prod = closure_product(linkage, config);
    let scale = prod.max_abs();
    if scale.is_zero() {
        return Err(Error::DegenerateConfiguration);
    }
    let off_real = prod.coords()[1..]
        .iter()
        .map(Scalar::abs)
        .fold(S::zero(), |m, c| if c > m { c } else { m });
    let residual = off_real / scale;
    let lambda_sign = config.as_symmetric().and_then(|s| lambda_sign(linkage, &s));
    Ok(ClosureReport { lambda_sign, residual })
}

pub fn closure_residual_sym<S: Scalar>(
    linkage: &Linkage<S>,
    config: &SymConfiguration<S>,
) -> Result<ClosureReport<S>> {
    closure_residual(linkage, &config.expand())
}

/// Compares `(t1−h1)(t2−h2)(t3−h3)` with `±(t3+h6)(t2+h5)(t1+h4)`.
pub fn lambda_sign<S: Scalar>(linkage: &Linkage<S>, config: &SymConfiguration<S>) -> Option<LambdaSign> {
    let h = &linkage.joints;
    let [t1, t2, t3] = &config.t;
    let left = &(&t1.rotor(&h[0]) * &t2.rotor(&h[1])) * &t3.rotor(&h[2]);
    let right = &(&t3.reverse_rotor(&h[5]) * &t2.reverse_rotor(&h[4])) * &t1.reverse_rotor(&h[3]);
    let scale = {
        let (a, b) = (left.max_abs(), right.max_abs());
        if a > b { a } else { b }
    };
    if scale.is_zero() {
        return None;
    }
    let rel = |d: DualQuaternion<S>| (d.max_abs() / scale.clone()).approx_zero(CLOSURE_TOL);
    if rel(&left - &right) {
        Some(LambdaSign::Plus)
    } else if rel(&left + &right) {
        Some(LambdaSign::Minus)
    } else {
        None
    }
}

/// Moves the linkage into the position reached at `config`, keeping the link
/// between `h6` and `h1` fixed: `h'_i = Q_{i−1} h_i Q_{i−1}⁻¹` with
/// `Q_k = (t_1 − h_1)⋯(t_k − h_k)`.
///
/// The result closes at `s` exactly when the input closes at `config ∘ s`
/// (joint-wise composition of rotations).
pub fn transform_by_configuration<S: Scalar>(
    linkage: &Linkage<S>,
    config: &Configuration<S>,
    tol: f64,
) -> Result<Linkage<S>> {
    let report = closure_residual(linkage, config)?;
    if !report.closes(tol) {
        return Err(Error::ClosureFailed { residual: report.residual.to_f64() });
    }
    let mut acc = DualQuaternion::one();
    let mut out = Vec::with_capacity(6);
    for (h, t) in linkage.joints.iter().zip(&config.t) {
        out.push(act_on_line(&acc, h)?);
        acc = &acc * &t.rotor(h);
    }
    let joints: [Line<S>; 6] = out.try_into().expect("six joints");
    Ok(Linkage { joints })
}

/// Which parallel pattern holds, in 1-based joint indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParallelPairing {
    /// `k` such that the pattern holds for indices shifted by `k`.
    pub shift: usize,
    pub pairs: [(usize, usize); 3],
}

const PARALLEL_PATTERN: [(usize, usize); 3] = [(1, 4), (2, 3), (5, 6)];

/// Tests `h1 ∥ h4, h2 ∥ h3, h5 ∥ h6` under the six cyclic index shifts;
/// anti-parallel counts as parallel.
pub fn parallel_pairing<S: Scalar>(linkage: &Linkage<S>, tol: f64) -> Option<ParallelPairing> {
    let idx = |i: usize, k: usize| (i - 1 + k) % 6 + 1;
    (0..6).find_map(|k| {
        let pairs = PARALLEL_PATTERN.map(|(a, b)| (idx(a, k), idx(b, k)));
        pairs
            .iter()
            .all(|&(a, b)| linkage.h(a).is_parallel(linkage.h(b), tol))
            .then_some(ParallelPairing { shift: k, pairs })
    })
}

/// Dual angles `⟨h_i, h_{i+1}⟩ = cos θ − ε d sin θ` for the six links.
pub fn link_parameters<S: Scalar>(linkage: &Linkage<S>) -> Result<[DualNumber<S>; 6]> {
    let mut out = Vec::with_capacity(6);
    for i in 0..6 {
        let j = (i + 1) % 6;
        let (a, b) = (&linkage.joints[i], &linkage.joints[j]);
        if a.same_axis(b, crate::algebra::DEFAULT_TOL) {
            return Err(Error::IdenticalAxes(i + 1, j + 1));
        }
        out.push(a.inner(b));
    }
    Ok(out.try_into().expect("six links"))
}
