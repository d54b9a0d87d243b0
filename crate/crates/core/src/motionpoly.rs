//! Motion polynomials over the dual quaternions and cubic factorization.
//!
//! The indeterminate `t` commutes with all coefficients. A motion polynomial
//! `P` has a real, nonzero norm `P·P̄`; monic linear factors `t − a − b h`
//! with `h² = −1` are revolutions about `h`.

use crate::algebra::{DualQuaternion, Line, Scalar, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::linkage::Linkage;
use crate::poly::Poly;

type Dq<S> = DualQuaternion<S>;

/// Tolerance for rationalizing numerically found norm factors.
pub const RATIONALIZE_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct MotionPolynomial<S> {
    coeffs: Vec<Dq<S>>,
}

impl<S: Scalar> MotionPolynomial<S> {
    /// Coefficients in ascending degree.
    pub fn new(mut coeffs: Vec<Dq<S>>) -> Self {
        while coeffs.last().is_some_and(Dq::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn one() -> Self {
        Self::new(vec![Dq::one()])
    }

    /// `t − r`
    pub fn linear(root: Dq<S>) -> Self {
        Self::new(vec![-root, Dq::one()])
    }

    pub fn coeffs(&self) -> &[Dq<S>] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Dq<S> {
        self.coeffs.get(k).cloned().unwrap_or_else(Dq::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| *c == Dq::one())
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n).all(|k| self.coeff(k).approx_eq(&other.coeff(k), tol))
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::new(Vec::new());
        }
        let mut out = vec![Dq::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::new(out)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.coeffs.iter().map(Dq::conj).collect())
    }

    pub fn eval(&self, t: &S) -> Dq<S> {
        self.coeffs
            .iter()
            .rev()
            .fold(Dq::zero(), |acc, c| &acc.scale(t) + c)
    }

    /// `P·P̄` as a real polynomial; fails if any coefficient is not real.
    pub fn norm(&self) -> Result<Poly<S>> {
        self.mul(&self.conj()).as_real(DEFAULT_TOL).ok_or(Error::NormNotReal)
    }

    /// The real polynomial this is, if every coefficient is real.
    pub fn as_real(&self, tol: f64) -> Option<Poly<S>> {
        self.coeffs
            .iter()
            .all(|c| c.is_real(tol))
            .then(|| Poly::new(self.coeffs.iter().map(|c| c.primal.w.clone()).collect()))
    }

    /// Division with remainder by a monic real polynomial (real polynomials
    /// are central, so left and right division agree).
    pub fn div_rem_real(&self, m: &Poly<S>) -> (Self, Self) {
        let dm = m.degree().expect("nonzero divisor");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Dq::zero(); rem.len().saturating_sub(dm)];
        while rem.len() > dm {
            let k = rem.len() - 1 - dm;
            let lc = rem.last().expect("nonempty").scale(&(S::one() / m.leading()));
            for (j, c) in m.coeffs().iter().enumerate() {
                rem[k + j] = &rem[k + j] - &lc.scale(c);
            }
            quot[k] = lc;
            rem.pop();
        }
        (Self::new(quot), Self::new(rem))
    }

    /// `P = Q·(t − r) + remainder`.
    pub fn right_div_linear(&self, r: &Dq<S>) -> (Self, Dq<S>) {
        let n = self.coeffs.len();
        if n < 2 {
            return (Self::new(Vec::new()), self.coeff(0));
        }
        let mut q = vec![Dq::zero(); n - 1];
        q[n - 2] = self.coeffs[n - 1].clone();
        for k in (1..n - 1).rev() {
            q[k - 1] = &self.coeffs[k] + &(&q[k] * r);
        }
        let rem = &self.coeffs[0] + &(&q[0] * r);
        (Self::new(q), rem)
    }
}

/// `t − a − b·h` with `b ≠ 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct RevoluteFactor<S> {
    pub a: S,
    pub b: S,
    pub axis: Line<S>,
}

impl<S: Scalar> RevoluteFactor<S> {
    pub fn new(a: S, b: S, axis: Line<S>) -> Result<Self> {
        if b.is_zero() {
            return Err(Error::Precondition { step: "revolute factor", message: "b must be nonzero".into() });
        }
        Ok(Self { a, b, axis })
    }

    /// The root `a + b h`, so that the factor is `t − root`.
    pub fn root(&self) -> Dq<S> {
        &Dq::scalar(self.a.clone()) + &self.axis.as_dq().scale(&self.b)
    }

    pub fn polynomial(&self) -> MotionPolynomial<S> {
        MotionPolynomial::linear(self.root())
    }

    /// `t² − 2a t + a² + b²`
    pub fn norm_quadratic(&self) -> Poly<S> {
        let (a, b) = (self.a.clone(), self.b.clone());
        Poly::new(vec![a.clone() * a.clone() + b.clone() * b, S::from_i64(-2) * a, S::one()])
    }

    /// Reads `r = a + b h` back, with `b > 0`. `None` when `r` has a dual
    /// scalar part, a zero vector part or an irrational `b`.
    pub fn from_root(r: &Dq<S>, tol: f64) -> Option<Self> {
        if !r.dual.w.approx_zero(tol) {
            return None;
        }
        let v = r.vector_part();
        let b = v.primal.norm_sq().sqrt()?;
        if b.approx_zero(tol) {
            return None;
        }
        let axis = Line::with_tolerance(v.scale(&(S::one() / b.clone())), tol).ok()?;
        Some(Self { a: r.primal.w.clone(), b, axis })
    }
}

/// Product and its norm, with the reality of the norm checked.
pub fn mp_mul_norm<S: Scalar>(
    p: &MotionPolynomial<S>,
    q: &MotionPolynomial<S>,
) -> Result<(MotionPolynomial<S>, Poly<S>)> {
    let prod = p.mul(q);
    let norm = prod.norm()?;
    Ok((prod, norm))
}

/// Right factor `t − r` of `P` whose norm is the monic quadratic `M`.
///
/// The remainder of `P` modulo `M` is `c1 t + c0`; its zero `r = −c1⁻¹c0`
/// is the common right zero of `P` and `M`.
pub fn extract_right_factor<S: Scalar>(p: &MotionPolynomial<S>, m: &Poly<S>) -> Result<Dq<S>> {
    if m.degree() != Some(2) {
        return Err(Error::Precondition { step: "right factor", message: "divisor must be a quadratic".into() });
    }
    let m = m.monic();
    let (_, rem) = p.div_rem_real(&m);
    let c0 = rem.coeff(0);
    let c1 = rem.coeff(1);
    let inv = c1
        .inverse()
        .map_err(|_| Error::NonGeneric("remainder has a non-invertible leading coefficient".into()))?;
    let r = -(&inv * &c0);
    let (_, left) = p.right_div_linear(&r);
    if !left.approx_zero(DEFAULT_TOL) {
        return Err(Error::Verification("t − r does not right-divide P".into()));
    }
    let norm = MotionPolynomial::linear(r.clone()).norm()?;
    if !norm.approx_eq(&m, DEFAULT_TOL) {
        return Err(Error::Verification("norm of the right factor differs from M".into()));
    }
    Ok(r)
}

/// One factorization `(t − r0)(t − r1)(t − r2)` of a cubic.
#[derive(Clone, Debug, PartialEq)]
pub struct Factorization<S> {
    /// `norm_order[k]` indexes the norm quadratic of factor `k` (left to right).
    pub norm_order: [usize; 3],
    pub roots: [Dq<S>; 3],
    /// Each factor as `t − a − b h` when that form is available in `S`.
    pub revolute: [Option<RevoluteFactor<S>>; 3],
}

impl<S: Scalar> Factorization<S> {
    pub fn product(&self) -> MotionPolynomial<S> {
        self.roots
            .iter()
            .fold(MotionPolynomial::one(), |acc, r| acc.mul(&MotionPolynomial::linear(r.clone())))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CubicFactorizations<S> {
    /// The three monic quadratic factors of the norm, with repetition.
    pub quadratics: [Poly<S>; 3],
    pub factorizations: Vec<Factorization<S>>,
    /// `false` when the quadratics are not pairwise distinct; the list is then partial.
    pub generic: bool,
}

/// All factorizations of a monic cubic motion polynomial into monic linear
/// factors, one attempt per ordering of the norm's quadratic factors.
pub fn factor_cubic<S: Scalar>(p: &MotionPolynomial<S>) -> Result<CubicFactorizations<S>> {
    check_monic_cubic(p)?;
    let quads = norm_quadratic_factors(&p.norm()?)?;
    factor_cubic_with_norms(p, quads)
}

/// As [`factor_cubic`] with the norm's quadratic factors supplied.
pub fn factor_cubic_with_norms<S: Scalar>(
    p: &MotionPolynomial<S>,
    quadratics: [Poly<S>; 3],
) -> Result<CubicFactorizations<S>> {
    check_monic_cubic(p)?;
    let quadratics = quadratics.map(|m| m.monic());
    let norm = p.norm()?;
    let prod = quadratics.iter().fold(Poly::constant(S::one()), |acc, m| acc.mul(m));
    if !prod.approx_eq(&norm, DEFAULT_TOL) {
        return Err(Error::Verification("quadratics do not multiply to the norm".into()));
    }
    let generic = (0..3).all(|i| (i + 1..3).all(|j| !quadratics[i].approx_eq(&quadratics[j], DEFAULT_TOL)));
    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut found: Vec<Factorization<S>> = Vec::new();
    for order in PERMS {
        let Ok(f) = factor_in_order(p, &quadratics, order) else { continue };
        if found.iter().any(|g| roots_equal(&g.roots, &f.roots)) {
            continue;
        }
        found.push(f);
    }
    if found.is_empty() {
        return Err(Error::NoFactorization);
    }
    Ok(CubicFactorizations { quadratics, factorizations: found, generic })
}

fn roots_equal<S: Scalar>(a: &[Dq<S>; 3], b: &[Dq<S>; 3]) -> bool {
    a.iter().zip(b).all(|(x, y)| x.approx_eq(y, DEFAULT_TOL))
}

fn check_monic_cubic<S: Scalar>(p: &MotionPolynomial<S>) -> Result<()> {
    if p.degree() != Some(3) || !p.coeff(3).approx_eq(&Dq::one(), DEFAULT_TOL) {
        return Err(Error::Precondition { step: "factor cubic", message: "expected a monic cubic".into() });
    }
    Ok(())
}

/// The factorization whose factor `k` has norm `quads[order[k]]`, peeled
/// from the right.
pub fn factor_in_order<S: Scalar>(
    p: &MotionPolynomial<S>,
    quads: &[Poly<S>; 3],
    order: [usize; 3],
) -> Result<Factorization<S>> {
    let r2 = extract_right_factor(p, &quads[order[2]])?;
    let (p2, _) = p.right_div_linear(&r2);
    let r1 = extract_right_factor(&p2, &quads[order[1]])?;
    let (p1, _) = p2.right_div_linear(&r1);
    if !p1.coeff(1).approx_eq(&Dq::one(), DEFAULT_TOL) {
        return Err(Error::Verification("left factor is not monic".into()));
    }
    let r0 = -p1.coeff(0);
    if !MotionPolynomial::linear(r0.clone()).norm()?.approx_eq(&quads[order[0]], DEFAULT_TOL) {
        return Err(Error::Verification("left factor has the wrong norm".into()));
    }
    let roots = [r0, r1, r2];
    let f = Factorization {
        norm_order: order,
        revolute: std::array::from_fn(|k| RevoluteFactor::from_root(&roots[k], DEFAULT_TOL)),
        roots,
    };
    if !f.product().approx_eq(p, DEFAULT_TOL) {
        return Err(Error::Verification("factors do not multiply back".into()));
    }
    Ok(f)
}

/// Splits a real sextic norm into three monic quadratics without real roots.
///
/// Square-free parts are split numerically; for rationals the quadratics are
/// rationalized within [`RATIONALIZE_TOL`] and the product checked exactly.
pub fn norm_quadratic_factors<S: Scalar>(norm: &Poly<S>) -> Result<[Poly<S>; 3]> {
    if norm.degree() != Some(6) {
        return Err(Error::Precondition { step: "norm factors", message: "norm of a cubic has degree 6".into() });
    }
    let norm = norm.monic();
    let tol = if S::EXACT { 0.0 } else { 1e-8 };
    let mut quads: Vec<Poly<S>> = Vec::new();
    for (part, mult) in norm.squarefree_decomposition(tol) {
        let roots = part.complex_roots();
        if roots.iter().any(|z| z.im.abs() <= 1e-9 * z.re.abs().max(1.0)) {
            return Err(Error::RealRootInNorm);
        }
        let mut upper: Vec<_> = roots.into_iter().filter(|z| z.im > 0.0).collect();
        upper.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        let mut from_part = Poly::constant(S::one());
        for z in upper {
            let c1 = S::from_f64_approx(-2.0 * z.re, RATIONALIZE_TOL * (2.0 * z.re).abs().max(1.0))
                .ok_or_else(|| Error::NonGeneric("could not rationalize norm factor".into()))?;
            let c0 = S::from_f64_approx(z.norm_sqr(), RATIONALIZE_TOL * z.norm_sqr().max(1.0))
                .ok_or_else(|| Error::NonGeneric("could not rationalize norm factor".into()))?;
            let q = Poly::new(vec![c0, c1, S::one()]);
            from_part = from_part.mul(&q);
            for _ in 0..mult {
                quads.push(q.clone());
            }
        }
        if !from_part.approx_eq(&part, 1e-8) {
            return Err(Error::NonGeneric("norm does not split into the rationalized quadratics".into()));
        }
    }
    let quads: [Poly<S>; 3] = quads
        .try_into()
        .map_err(|_| Error::NonGeneric("norm is not a product of three quadratics".into()))?;
    Ok(quads)
}

/// Six joint axes from the two factorizations `R1R2R3 = R6R5R4` with
/// matching factor norms, signs chosen so that `b_{i+3} = −b_i`.
pub fn linkage_from_cubic<S: Scalar>(factors: &[RevoluteFactor<S>; 3]) -> Result<Linkage<S>> {
    let quads = [0, 1, 2].map(|i| factors[i].norm_quadratic());
    for i in 0..3 {
        for j in i + 1..3 {
            if quads[i].approx_eq(&quads[j], DEFAULT_TOL) {
                return Err(Error::NonGeneric(format!("factors {} and {} have equal norms", i + 1, j + 1)));
            }
        }
    }
    let product = factors
        .iter()
        .fold(MotionPolynomial::one(), |acc, f| acc.mul(&f.polynomial()));
    let matched = factor_in_order(&product, &quads, [2, 1, 0])
        .map_err(|e| Error::NonGeneric(format!("no factorization with matched norms: {e}")))?;
    // matched.roots = [r6, r5, r4]; R_{i+3} = t − a_i + b_i h_{i+3}
    let opposite: Vec<Line<S>> = (0..3)
        .map(|i| {
            let r = &matched.roots[2 - i];
            let f = &factors[i];
            let h = (&Dq::scalar(f.a.clone()) - r).scale(&(S::one() / f.b.clone()));
            Line::with_tolerance(h, DEFAULT_TOL)
        })
        .collect::<Result<_>>()?;
    let [h4, h5, h6]: [Line<S>; 3] = opposite.try_into().expect("three axes");
    let linkage = Linkage::new([
        factors[0].axis.clone(),
        factors[1].axis.clone(),
        factors[2].axis.clone(),
        h4,
        h5,
        h6,
    ])?;
    let closure = closure_polynomial(&linkage, factors);
    if closure.as_real(DEFAULT_TOL).is_none() {
        return Err(Error::Verification("degree-six closure product is not real".into()));
    }
    Ok(linkage)
}

/// `(t−a1−b1h1)(t−a2−b2h2)(t−a3−b3h3)(t−a1−b1h4)(t−a2−b2h5)(t−a3−b3h6)`.
pub fn closure_polynomial<S: Scalar>(linkage: &Linkage<S>, params: &[RevoluteFactor<S>; 3]) -> MotionPolynomial<S> {
    (0..6).fold(MotionPolynomial::one(), |acc, i| {
        let p = &params[i % 3];
        let f = RevoluteFactor { a: p.a.clone(), b: p.b.clone(), axis: linkage.joints()[i].clone() };
        acc.mul(&f.polynomial())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{q, Rational};

    type Mp = MotionPolynomial<Rational>;

    fn lin(h: Dq<Rational>) -> Mp {
        Mp::linear(h)
    }

    #[test]
    fn product_of_i_and_j() {
        let (p, n) = mp_mul_norm(&lin(Dq::i()), &lin(Dq::j())).unwrap();
        // t² − (i + j)t + k
        assert_eq!(p.coeffs(), &[Dq::k(), -(&Dq::i() + &Dq::j()), Dq::one()]);
        let s = Poly::new(vec![q(1, 1), q(0, 1), q(1, 1)]);
        assert_eq!(n, s.mul(&s));
    }

    #[test]
    fn linear_factor_of_linear_polynomial() {
        let h = Dq::pure([q(3, 5), q(4, 5), q(0, 1)], [q(4, 1), q(-3, 1), q(2, 1)]);
        let p = lin(h.clone());
        let m = Poly::new(vec![q(1, 1), q(0, 1), q(1, 1)]);
        assert_eq!(extract_right_factor(&p, &m).unwrap(), h);
        assert_eq!(p.norm().unwrap(), m);
    }

    #[test]
    fn non_motion_polynomial_norm_rejected() {
        let p = Mp::new(vec![Dq::epsilon(), Dq::one()]);
        assert!(matches!(mp_mul_norm(&p, &Mp::one()), Err(Error::NormNotReal)));
        let (_, n) = mp_mul_norm(&lin(Dq::i()), &Mp::one()).unwrap();
        assert_eq!(n.degree(), Some(2));
    }

    #[test]
    fn right_division_roundtrip() {
        let p = lin(Dq::i()).mul(&lin(Dq::j())).mul(&lin(Dq::k()));
        let (q_, rem) = p.right_div_linear(&Dq::k());
        assert!(rem.is_zero());
        assert_eq!(q_.mul(&lin(Dq::k())), p);
    }
}
