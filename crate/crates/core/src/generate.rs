//! Synthesis of line-symmetric, parallel-property and cubic-type linkages,
//! plus seeded random instances of each family.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{dot3, q, DualQuaternion, Line, Quaternion, Rational, Scalar, Vec3, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::lambda::{build_lambda_matrix, default_rank_mode};
use crate::linkage::Linkage;
use crate::motionpoly::{linkage_from_cubic, RevoluteFactor};

type Dq<S> = DualQuaternion<S>;

/// Default bound on sampled numerators and denominators.
pub const DEFAULT_BOUND: i64 = 20;

fn step_error(step: &'static str, message: impl Into<String>) -> Error {
    Error::Precondition { step, message: message.into() }
}

/// `h4 = −u h1 u + rεu`, `h5 = −u h2 u`, `h6 = −u h3 u`.
///
/// `h1` must be perpendicular to `u` in direction, `h2 ∥ h3`, and `h2` not
/// perpendicular to `u`.
pub fn construct_parallel<S: Scalar>(u: &Line<S>, h1: &Line<S>, h2: &Line<S>, h3: &Line<S>, r: &S) -> Result<Linkage<S>> {
    if !dot3(&h1.direction(), &u.direction()).approx_zero(DEFAULT_TOL) {
        return Err(step_error("step II", "h1 must be perpendicular to u"));
    }
    if !h2.is_parallel(h3, DEFAULT_TOL) {
        return Err(step_error("step III", "h2 and h3 must be parallel"));
    }
    if dot3(&h2.direction(), &u.direction()).approx_zero(DEFAULT_TOL) {
        return Err(step_error("step III", "h2 must not be perpendicular to u"));
    }
    let u_ = u.as_dq();
    let reflect = |h: &Line<S>| -(&(u_ * h.as_dq()) * u_);
    let h4 = &reflect(h1) + &u_.times_epsilon().scale(r);
    let line = |h: Dq<S>, step: &'static str| Line::new(h).map_err(|e| step_error(step, e.to_string()));
    let h4 = line(h4, "step IV")?;
    let h5 = line(reflect(h2), "step V")?;
    let h6 = line(reflect(h3), "step V")?;
    Linkage::new([h1.clone(), h2.clone(), h3.clone(), h4, h5, h6])
        .map_err(|e| step_error("step VI", e.to_string()))
}

/// `h_{i+3} = −l h_i l`, the half-turn about `l` applied to `h_i`.
pub fn construct_line_symmetric<S: Scalar>(l: &Line<S>, h: [&Line<S>; 3]) -> Result<Linkage<S>> {
    let l_ = l.as_dq();
    let mut opposite = Vec::with_capacity(3);
    for (i, hi) in h.iter().enumerate() {
        let img = Line::new(-(&(l_ * hi.as_dq()) * l_))?;
        if img.same_axis(hi, DEFAULT_TOL) {
            return Err(Error::InvalidLinkage(format!(
                "h{} is fixed by the half-turn about the symmetry line",
                i + 1
            )));
        }
        opposite.push(img);
    }
    let [h4, h5, h6]: [Line<S>; 3] = opposite.try_into().expect("three axes");
    Linkage::new([h[0].clone(), h[1].clone(), h[2].clone(), h4, h5, h6])
}

/// Axes `h1, h2, h3` with parameters `(a_i, b_i)`; the remaining axes come
/// from the second factorization of `R1 R2 R3`.
pub fn construct_cubic_type<S: Scalar>(pairs: &[(S, S); 3], axes: &[Line<S>; 3]) -> Result<Linkage<S>> {
    let factors: Vec<RevoluteFactor<S>> = (0..3)
        .map(|i| RevoluteFactor::new(pairs[i].0.clone(), pairs[i].1.clone(), axes[i].clone()))
        .collect::<Result<_>>()?;
    linkage_from_cubic(&factors.try_into().expect("three factors"))
}

/// Seeded sampler of small rationals, rational unit vectors and lines.
pub struct RandomSource {
    rng: ChaCha8Rng,
    bound: i64,
}

impl RandomSource {
    pub fn new(seed: u64) -> Self {
        Self::with_bound(seed, DEFAULT_BOUND)
    }

    pub fn with_bound(seed: u64, bound: i64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed), bound: bound.max(1) }
    }

    /// `n/d` with `|n| ≤ bound`, `1 ≤ d ≤ bound`.
    pub fn rational(&mut self) -> Rational {
        let n = self.rng.gen_range(-self.bound..=self.bound);
        let d = self.rng.gen_range(1..=self.bound);
        q(n, d)
    }

    pub fn nonzero_rational(&mut self) -> Rational {
        loop {
            let x = self.rational();
            if !Scalar::is_zero(&x) {
                return x;
            }
        }
    }

    pub fn small_int(&mut self, bound: i64) -> i64 {
        self.rng.gen_range(-bound..=bound)
    }

    pub fn point(&mut self) -> Vec3<Rational> {
        [self.rational(), self.rational(), self.rational()]
    }

    /// Inverse stereographic image of a rational point of the plane.
    pub fn unit_vector(&mut self) -> Vec3<Rational> {
        let (a, b) = (self.rational(), self.rational());
        let s = a.clone() * a.clone() + b.clone() * b.clone();
        let den = q(1, 1) + s.clone();
        [
            q(2, 1) * a / den.clone(),
            q(2, 1) * b / den.clone(),
            (q(1, 1) - s) / den,
        ]
    }

    /// `(cos θ, sin θ)` on a rational point of the unit circle.
    pub fn unit_circle(&mut self) -> (Rational, Rational) {
        let a = self.rational();
        let den = q(1, 1) + a.clone() * a.clone();
        ((q(1, 1) - a.clone() * a.clone()) / den.clone(), q(2, 1) * a / den)
    }

    /// A rotation with rational matrix, as a nonzero quaternion.
    pub fn rotation(&mut self) -> Quaternion<Rational> {
        loop {
            let c = [0; 4].map(|_| Rational::from_integer(self.small_int(4).into()));
            let quat = Quaternion::new(c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone());
            if !quat.is_zero() {
                return quat;
            }
        }
    }

    pub fn line(&mut self) -> Line<Rational> {
        let p = self.unit_vector();
        let c = self.point();
        Line::through(p, c).expect("rational unit direction")
    }

    pub fn gen_u64(&mut self) -> u64 {
        self.rng.gen()
    }
}

/// `q v q̄ / |q|²`
pub fn rotate(quat: &Quaternion<Rational>, v: &Vec3<Rational>) -> Vec3<Rational> {
    let w = Quaternion::pure(v.clone());
    let img = quat.mul(&w).mul(&quat.conj());
    let n = quat.norm_sq();
    img.vector().map(|c| c / n.clone())
}

/// A generated line-symmetric linkage and its symmetry line.
#[derive(Clone, Debug)]
pub struct LineSymmetricInstance {
    pub axis: Line<Rational>,
    pub linkage: Linkage<Rational>,
}

/// A generated Construction-1 linkage and its inputs.
#[derive(Clone, Debug)]
pub struct ParallelInstance {
    pub u: Line<Rational>,
    pub h: [Line<Rational>; 3],
    pub r: Rational,
    pub linkage: Linkage<Rational>,
}

/// A generated cubic-type linkage, its parameters and first three axes.
#[derive(Clone, Debug)]
pub struct CubicInstance {
    pub pairs: [(Rational, Rational); 3],
    pub axes: [Line<Rational>; 3],
    pub linkage: Linkage<Rational>,
}

/// A sampled instance and the number of rejected draws before it.
#[derive(Clone, Debug)]
pub struct Sampled<T> {
    pub instance: T,
    pub rejected: usize,
}

const MAX_DRAWS: usize = 1000;

fn resample<T>(mut draw: impl FnMut() -> Result<T>) -> Result<Sampled<T>> {
    let mut last = None;
    for rejected in 0..MAX_DRAWS {
        match draw() {
            Ok(instance) => return Ok(Sampled { instance, rejected }),
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("at least one draw"))
}

fn exact_rank(linkage: &Linkage<Rational>) -> usize {
    build_lambda_matrix(linkage)
        .rank(default_rank_mode::<Rational>())
        .expect("exact rank of rational data")
}

pub fn random_line_symmetric(src: &mut RandomSource) -> Result<Sampled<LineSymmetricInstance>> {
    resample(|| {
        let axis = src.line();
        let h = [src.line(), src.line(), src.line()];
        let linkage = construct_line_symmetric(&axis, [&h[0], &h[1], &h[2]])?;
        Ok(LineSymmetricInstance { axis, linkage })
    })
}

/// Construction 1 on random rational inputs: `u` and `h1` come from one
/// rational rotation so that their directions are exactly perpendicular.
pub fn random_parallel(src: &mut RandomSource) -> Result<Sampled<ParallelInstance>> {
    resample(|| {
        let rot = src.rotation();
        let zero = || Rational::from_integer(0.into());
        let e = |k: usize| -> Vec3<Rational> {
            std::array::from_fn(|c| if c == k { q(1, 1) } else { zero() })
        };
        let du = rotate(&rot, &e(0));
        let (c, s) = src.unit_circle();
        let d1 = rotate(&rot, &[zero(), c, s]);
        let u = Line::through(du, src.point())?;
        let h1 = Line::through(d1, src.point())?;
        let d2 = src.unit_vector();
        let d3 = if src.small_int(1) >= 0 { d2.clone() } else { d2.clone().map(|x| -x) };
        let h2 = Line::through(d2, src.point())?;
        let h3 = Line::through(d3, src.point())?;
        let r = src.rational();
        let linkage = construct_parallel(&u, &h1, &h2, &h3, &r)?;
        for i in 1..=3 {
            if linkage.h(i).same_axis(linkage.h(i + 3), DEFAULT_TOL) {
                return Err(Error::InvalidLinkage("opposite axes coincide".into()));
            }
        }
        Ok(ParallelInstance { u, h: [h1, h2, h3], r, linkage })
    })
}

/// Random generic parameters and axes; draws whose exact rank is not 4 are
/// rejected and counted.
pub fn random_cubic(src: &mut RandomSource) -> Result<Sampled<CubicInstance>> {
    resample(|| {
        let pairs: [(Rational, Rational); 3] = std::array::from_fn(|_| (src.rational(), src.nonzero_rational()));
        let axes = [src.line(), src.line(), src.line()];
        let linkage = construct_cubic_type(&pairs, &axes)?;
        let rank = exact_rank(&linkage);
        if rank != 4 {
            return Err(Error::RankPrecondition { expected: 4, found: rank });
        }
        Ok(CubicInstance { pairs, axes, linkage })
    })
}
