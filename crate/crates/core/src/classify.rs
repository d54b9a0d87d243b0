//! Classification of angle-symmetric linkages by lambda-matrix rank, with
//! recovery of each family's defining data.

use rand::seq::SliceRandom;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{act_on_line, DualNumber, DualQuaternion, Line, Rational, Scalar, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::lambda::{build_lambda_matrix, default_rank_mode, LambdaMatrix};
use crate::linkage::{parallel_pairing, transform_by_configuration, Linkage, ParallelPairing, CLOSURE_TOL};
use crate::motionpoly::{MotionPolynomial, RevoluteFactor};
use crate::poly::{linear_resultant, BiPoly, Multilinear3};
use crate::sampler::{linear_grid, trace_configuration_curve};

type Dq<S> = DualQuaternion<S>;

/// Seed of the configuration picked for the rank-3 normalization.
const NORMALIZATION_SEED: u64 = 0x6a09e667;

/// `b·t_p + c·t_q + d = 0` with `bc ≠ 0`, scaled so that `b = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearRelation<S> {
    /// 1-based variable indices `(p, q)`, `p < q`.
    pub vars: (usize, usize),
    pub b: S,
    pub c: S,
    pub d: S,
}

impl<S: Scalar> LinearRelation<S> {
    pub fn eval(&self, t: &[S; 3]) -> S {
        let (p, q) = self.vars;
        self.b.clone() * t[p - 1].clone() + self.c.clone() * t[q - 1].clone() + self.d.clone()
    }

    /// `t_q` as a function of `t_p`: `(slope, intercept)`.
    pub fn solve_second(&self) -> (S, S) {
        (-self.b.clone() / self.c.clone(), -self.d.clone() / self.c.clone())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Family<S> {
    LineSymmetric { axis: Line<S> },
    ParallelProperty {
        pairing: ParallelPairing,
        /// The pairing was found only after moving to another configuration.
        normalized: bool,
    },
    /// `(a_i, b_i)` with `t_i = (t − a_i)/b_i` and `b_{i+3} = −b_i`.
    CubicPolynomialType { pairs: [(S, S); 3] },
    Undetermined { reason: String },
}

impl<S> Family<S> {
    pub fn name(&self) -> &'static str {
        match self {
            Family::LineSymmetric { .. } => "LineSymmetric",
            Family::ParallelProperty { .. } => "ParallelProperty",
            Family::CubicPolynomialType { .. } => "CubicPolynomialType",
            Family::Undetermined { .. } => "Undetermined",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassificationResult<S> {
    pub rank: usize,
    pub family: Family<S>,
    /// The rank came from floating-point data and is not certified.
    pub advisory: bool,
}

pub fn classify<S: Scalar>(linkage: &Linkage<S>) -> Result<ClassificationResult<S>> {
    let m = build_lambda_matrix(linkage);
    let rank = m.rank(default_rank_mode::<S>())?;
    let undetermined = |reason: String| Family::Undetermined { reason };
    let family = match rank {
        2 => match recover_symmetry_line(linkage) {
            Ok(axis) => Family::LineSymmetric { axis },
            Err(e) => undetermined(format!("rank 2 but no symmetry line: {e}")),
        },
        3 => match parallel_pairing(linkage, DEFAULT_TOL) {
            Some(pairing) => Family::ParallelProperty { pairing, normalized: false },
            None => match pairing_after_normalization(linkage) {
                Some(pairing) => Family::ParallelProperty { pairing, normalized: true },
                None => undetermined("rank 3 but no parallel pairing, also after normalization".into()),
            },
        },
        4 => match cubic_pairs(linkage) {
            Ok(pairs) => Family::CubicPolynomialType { pairs },
            Err(e) => undetermined(format!("rank 4 but no cubic parametrization: {e}")),
        },
        r => undetermined(format!(
            "rank {r}: no one-dimensional angle-symmetric motion certified"
        )),
    };
    Ok(ClassificationResult { rank, family, advisory: !S::EXACT })
}

/// Moves the linkage to a traced symmetric configuration and retests the
/// parallel pattern there (in floating point).
fn pairing_after_normalization<S: Scalar>(linkage: &Linkage<S>) -> Option<ParallelPairing> {
    let points = trace_configuration_curve(linkage, &linear_grid(-3.0, 3.0, 13)).ok()?;
    let finite: Vec<_> = points.iter().filter(|p| p.config.finite_values().is_some()).collect();
    let pick = finite.choose(&mut ChaCha8Rng::seed_from_u64(NORMALIZATION_SEED))?;
    let moved = transform_by_configuration(&linkage.to_f64(), &pick.config.expand(), CLOSURE_TOL).ok()?;
    parallel_pairing(&moved, 1e-7)
}

/// `l = g/√(g ḡ)` for some `g = h_i ± h_{i+3}` with nonzero primal part,
/// accepted when the half-turn about `l` maps every `h_i` to `h_{i+3}`.
pub fn recover_symmetry_line<S: Scalar>(linkage: &Linkage<S>) -> Result<Line<S>> {
    let h = |i: usize| linkage.h(i).as_dq().clone();
    let sums = (1..=3).map(|i| &h(i) + &h(i + 3));
    let diffs = (1..=3).map(|i| &h(i) - &h(i + 3));
    let candidates: Vec<Dq<S>> = sums.chain(diffs).filter(|g| !g.primal.approx_zero(DEFAULT_TOL)).collect();
    if candidates.is_empty() {
        return Err(Error::PlanarDegenerate);
    }
    let mut last = Error::NotLineSymmetric("no candidate axis verifies".into());
    for g in candidates {
        match normalize_axis(&g).and_then(|l| verify_symmetry(linkage, &l).map(|_| l)) {
            Ok(l) => return Ok(l.canonical()),
            Err(e) => last = e,
        }
    }
    Err(last)
}

fn normalize_axis<S: Scalar>(g: &Dq<S>) -> Result<Line<S>> {
    let beta: DualNumber<S> = g.norm();
    let root = beta.sqrt().ok_or(Error::IrrationalAxis)?;
    let inv = root.inverse().ok_or(Error::NonInvertible)?;
    Line::new(g.scale_dual(&inv))
}

fn verify_symmetry<S: Scalar>(linkage: &Linkage<S>, l: &Line<S>) -> Result<()> {
    for i in 1..=3 {
        let img = act_on_line(l.as_dq(), linkage.h(i))?;
        if !img.same_axis(linkage.h(i + 3), DEFAULT_TOL) {
            return Err(Error::NotLineSymmetric(format!("half-turn does not map h{i} to h{}", i + 3)));
        }
    }
    Ok(())
}

/// Linear relations between pairs of parameters on the configuration curve
/// of a rank-4 linkage, ordered `(1,2), (1,3), (2,3)`.
///
/// Four independent rows give trilinear `F1..F4`; their resultants with
/// respect to the third variable share the relation as a common factor.
pub fn find_linear_relations<S: Scalar>(m: &LambdaMatrix<S>) -> Result<Vec<LinearRelation<S>>> {
    if !S::EXACT {
        return Err(Error::ExactScalarsRequired);
    }
    let rank = m.rank(default_rank_mode::<S>())?;
    if rank != 4 {
        return Err(Error::RankPrecondition { expected: 4, found: rank });
    }
    let polys = m.polynomials();
    let basis: Vec<Multilinear3<S>> = m.row_basis(0.0).into_iter().map(|i| polys[i].clone()).collect();
    [2, 1, 0].iter().map(|&var| relation_eliminating(&basis, var)).collect()
}

fn relation_eliminating<S: Scalar>(basis: &[Multilinear3<S>], var: usize) -> Result<LinearRelation<S>> {
    let mut g = BiPoly::zero();
    for other in &basis[1..] {
        if let Some(r) = linear_resultant(&basis[0], other, var) {
            g = g.gcd(&r, 0.0);
        }
    }
    let (x, y) = Multilinear3::<S>::others(var);
    let (slope, intercept) = linear_factor(&g).ok_or(Error::NoAdmissibleFactor(g.bidegree()))?;
    // y = slope·x + intercept  ⇔  x − y/slope + intercept/slope = 0
    Ok(LinearRelation {
        vars: (x + 1, y + 1),
        b: S::one(),
        c: -S::one() / slope.clone(),
        d: intercept / slope,
    })
}

fn transpose<S: Scalar>(p: &BiPoly<S>) -> BiPoly<S> {
    let (dx, dy) = p.bidegree();
    if p.is_zero() {
        return BiPoly::zero();
    }
    let table: Vec<Vec<S>> = (0..=dy).map(|j| (0..=dx).map(|i| p.coeff(i, j)).collect()).collect();
    BiPoly::from_table(&table)
}

/// `(slope, intercept)` of a factor `y − slope·x − intercept` with nonzero
/// slope. Factors depending on one variable only are removed first; if more
/// than a linear part remains, candidates are read off numerical roots of two
/// slices and confirmed exactly.
fn linear_factor<S: Scalar>(g: &BiPoly<S>) -> Option<(S, S)> {
    if g.is_zero() {
        return None;
    }
    let g = transpose(&transpose(&g.primitive_part(0.0)).primitive_part(0.0));
    let (dx, dy) = g.bidegree();
    if (dx, dy) == (1, 1) && g.coeff(1, 1).is_zero() {
        let (c10, c01, c00) = (g.coeff(1, 0), g.coeff(0, 1), g.coeff(0, 0));
        if c10.is_zero() {
            return None;
        }
        return Some((-c10 / c01.clone(), -c00 / c01));
    }
    if dy == 0 || dx == 0 {
        return None;
    }
    let samples = [S::from_ratio(3, 8), S::from_ratio(-19, 10), S::from_ratio(7, 3), S::from_ratio(-2, 7)];
    let usable: Vec<(S, Vec<f64>)> = samples
        .iter()
        .filter(|x| g.eval_x(x).degree() == Some(dy))
        .map(|x| (x.clone(), g.eval_x(x).real_roots(1e-9, 1e-10)))
        .take(2)
        .collect();
    let [(x0, r0), (x1, r1)] = <[(S, Vec<f64>); 2]>::try_from(usable).ok()?;
    let dxs = (x1.clone() - x0.clone()).to_f64();
    for y0 in &r0 {
        for y1 in &r1 {
            let slope_f = (y1 - y0) / dxs;
            let intercept_f = y0 - slope_f * x0.to_f64();
            let (Some(slope), Some(intercept)) = (
                S::from_f64_approx(slope_f, 1e-9 * slope_f.abs().max(1.0)),
                S::from_f64_approx(intercept_f, 1e-9 * intercept_f.abs().max(1.0)),
            ) else {
                continue;
            };
            if !slope.is_zero() && g.substitute_linear_y(&slope, &intercept).is_zero() {
                return Some((slope, intercept));
            }
        }
    }
    None
}

/// `(a_i, b_i)` with `t_i = (t − a_i)/b_i` along the motion. The parameter
/// `t` is fixed by the gauge `(a1, b1)`, default `(0, 1)`. The result is
/// checked against `R1 R2 R3 = R6 R5 R4`.
pub fn recover_cubic_parametrization<S: Scalar>(linkage: &Linkage<S>, gauge: Option<(S, S)>) -> Result<[(S, S); 3]> {
    let rels = find_linear_relations(&build_lambda_matrix(linkage))?;
    let (a1, b1) = gauge.unwrap_or_else(|| (S::zero(), S::one()));
    if b1.is_zero() {
        return Err(Error::Precondition { step: "gauge", message: "b1 must be nonzero".into() });
    }
    // t_q = −(t1 + d)/c, so in the (0, 1) gauge a_q = −d and b_q = −c
    let base = |r: &LinearRelation<S>| (-r.d.clone(), -r.c.clone());
    let pairs = [(S::zero(), S::one()), base(&rels[0]), base(&rels[1])]
        .map(|(a, b)| (a1.clone() + b1.clone() * a, b1.clone() * b));
    if !cubic_identity_holds(linkage, &pairs)? {
        return Err(Error::Verification("R1 R2 R3 differs from R6 R5 R4".into()));
    }
    Ok(pairs)
}

/// `(t−a1−b1h1)(t−a2−b2h2)(t−a3−b3h3) = (t−a3+b3h6)(t−a2+b2h5)(t−a1+b1h4)`.
pub fn cubic_identity_holds<S: Scalar>(linkage: &Linkage<S>, pairs: &[(S, S); 3]) -> Result<bool> {
    let factor = |i: usize, j: usize, sign: i64| -> Result<MotionPolynomial<S>> {
        let (a, b) = &pairs[i];
        let b = b.clone() * S::from_i64(sign);
        Ok(RevoluteFactor::new(a.clone(), b, linkage.h(j).clone())?.polynomial())
    };
    let left = factor(0, 1, 1)?.mul(&factor(1, 2, 1)?).mul(&factor(2, 3, 1)?);
    let right = factor(2, 6, -1)?.mul(&factor(1, 5, -1)?).mul(&factor(0, 4, -1)?);
    Ok(left.approx_eq(&right, DEFAULT_TOL))
}

/// Float data is rationalized first, since the recovery needs exact arithmetic.
fn cubic_pairs<S: Scalar>(linkage: &Linkage<S>) -> Result<[(S, S); 3]> {
    if S::EXACT {
        return recover_cubic_parametrization(linkage, None);
    }
    let coords: Vec<Line<Rational>> = linkage
        .joints()
        .iter()
        .map(|h| {
            let c = h.as_dq().coords().map(|x| Rational::from_f64_approx(x.to_f64(), 1e-12));
            if c.iter().any(Option::is_none) {
                return Err(Error::IrrationalLength);
            }
            Line::new(DualQuaternion::from_coords(c.map(|x| x.expect("checked"))))
        })
        .collect::<Result<_>>()?;
    let exact = Linkage::new(coords.try_into().expect("six joints"))?;
    let pairs = recover_cubic_parametrization(&exact, None)?;
    Ok(pairs.map(|(a, b)| (S::from_f64(a.to_f64()).expect("finite"), S::from_f64(b.to_f64()).expect("finite"))))
}

/// Relation `t_q = slope·t_p + intercept` as a polynomial identity check.
pub fn relation_holds_on<S: Scalar>(rel: &LinearRelation<S>, points: &[[S; 3]]) -> bool {
    points.iter().all(|t| rel.eval(t).approx_zero(DEFAULT_TOL))
}
