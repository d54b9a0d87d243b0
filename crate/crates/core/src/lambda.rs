//! The lambda matrix of a linkage.
//!
//! With `λ = 1` each of the six cyclic forms of the closure equation
//! `(t1−h1)(t2−h2)(t3−h3) = λ (t3+h6)(t2+h5)(t1+h4)` is trilinear in
//! `(t1, t2, t3)` and has no `t1t2t3` term. Its coefficients against
//! `X = [t1t2, t1t3, t2t3, t3, t2, t1, 1]` form one row of dual quaternions.
//! The rows here carry the sign of `right − left`; the null space is the same.

use std::fmt::Write as _;

use crate::algebra::{DualQuaternion, Scalar, DEFAULT_TOL};
use crate::error::Result;
use crate::linalg::{self, RankMode};
use crate::linkage::{ConfigParam, Linkage, SymConfiguration};
use crate::poly::Multilinear3;

type Dq<S> = DualQuaternion<S>;

/// `g_i = h_i + h_{i+3}` for `i = 1, 2, 3` (stored 0-based).
#[derive(Clone, Debug, PartialEq)]
pub struct GVector<S> {
    pub g: [Dq<S>; 3],
}

impl<S: Scalar> GVector<S> {
    pub fn of(linkage: &Linkage<S>) -> Self {
        let h = |i: usize| linkage.h(i).as_dq();
        Self { g: [h(1) + h(4), h(2) + h(5), h(3) + h(6)] }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LambdaMatrix<S> {
    rows: [[Dq<S>; 7]; 6],
    real_form: Vec<Vec<S>>,
}

impl<S: Scalar> LambdaMatrix<S> {
    pub fn rows(&self) -> &[[Dq<S>; 7]; 6] {
        &self.rows
    }

    /// The 48×7 real matrix; row `8i + c` holds coordinate `c` (basis order
    /// `1, i, j, k, ε, εi, εj, εk`) of dual-quaternion row `i`.
    pub fn real_form(&self) -> &[Vec<S>] {
        &self.real_form
    }

    /// Rows `8i..8i+8` of the real form.
    pub fn block(&self, i: usize) -> &[Vec<S>] {
        &self.real_form[8 * i..8 * i + 8]
    }

    /// `M·X` for one monomial vector, one dual quaternion per row.
    pub fn contract(&self, x: &[S; 7]) -> [Dq<S>; 6] {
        std::array::from_fn(|i| {
            self.rows[i]
                .iter()
                .zip(x)
                .fold(Dq::zero(), |acc, (e, xi)| &acc + &e.scale(xi))
        })
    }

    pub fn rank(&self, mode: RankMode) -> Result<usize> {
        linalg::rank(&self.real_form, mode)
    }

    /// Real rows as trilinear polynomials in `(t1, t2, t3)`.
    pub fn polynomials(&self) -> Vec<Multilinear3<S>> {
        self.real_form.iter().map(|r| Multilinear3::from_monomial_row(r)).collect()
    }

    /// Indices into the real form of a row basis (greedy in row order).
    pub fn row_basis(&self, tol: f64) -> Vec<usize> {
        linalg::independent_rows(&self.real_form, tol)
    }

    /// Row-major CSV of the real form, one line per real row.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for row in &self.real_form {
            let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            writeln!(out, "{}", cells.join(",")).expect("write to string");
        }
        out
    }
}

pub fn build_lambda_matrix<S: Scalar>(linkage: &Linkage<S>) -> LambdaMatrix<S> {
    let h = |i: usize| linkage.h(i).as_dq().clone();
    let (h1, h2, h3, h4, h5, h6) = (h(1), h(2), h(3), h(4), h(5), h(6));
    let GVector { g: [g1, g2, g3] } = GVector::of(linkage);
    let m2 = |a: &Dq<S>, b: &Dq<S>| a * b;
    let m3 = |a: &Dq<S>, b: &Dq<S>, c: &Dq<S>| &(a * b) * c;
    let head = [g3, g2, g1];
    let row = |c4: Dq<S>, c5: Dq<S>, c6: Dq<S>, c7: Dq<S>| -> [Dq<S>; 7] {
        let [a, b, c] = head.clone();
        [a, b, c, c4, c5, c6, c7]
    };
    let rows = [
        row(
            &m2(&h5, &h4) - &m2(&h1, &h2),
            &m2(&h6, &h4) - &m2(&h1, &h3),
            &m2(&h6, &h5) - &m2(&h2, &h3),
            &m3(&h6, &h5, &h4) + &m3(&h1, &h2, &h3),
        ),
        row(
            &m2(&h1, &h5) - &m2(&h2, &h4),
            &m2(&h1, &h6) - &m2(&h3, &h4),
            &m2(&h6, &h5) - &m2(&h2, &h3),
            &m3(&h1, &h6, &h5) + &m3(&h2, &h3, &h4),
        ),
        row(
            &m2(&h2, &h1) - &m2(&h4, &h5),
            &m2(&h1, &h6) - &m2(&h3, &h4),
            &m2(&h2, &h6) - &m2(&h3, &h5),
            &m3(&h2, &h1, &h6) + &m3(&h3, &h4, &h5),
        ),
        row(
            &m2(&h2, &h1) - &m2(&h4, &h5),
            &m2(&h3, &h1) - &m2(&h4, &h6),
            &m2(&h3, &h2) - &m2(&h5, &h6),
            &m3(&h3, &h2, &h1) + &m3(&h4, &h5, &h6),
        ),
        row(
            &m2(&h4, &h2) - &m2(&h5, &h1),
            &m2(&h4, &h3) - &m2(&h6, &h1),
            &m2(&h3, &h2) - &m2(&h5, &h6),
            &m3(&h4, &h3, &h2) + &m3(&h5, &h6, &h1),
        ),
        row(
            &m2(&h5, &h4) - &m2(&h1, &h2),
            &m2(&h4, &h3) - &m2(&h6, &h1),
            &m2(&h5, &h3) - &m2(&h6, &h2),
            &m3(&h5, &h4, &h3) + &m3(&h6, &h1, &h2),
        ),
    ];
    let real_form = rows
        .iter()
        .flat_map(|r| {
            let coords: Vec<[S; 8]> = r.iter().map(Dq::coords).collect();
            (0..8).map(move |c| coords.iter().map(|e| e[c].clone()).collect::<Vec<S>>())
        })
        .collect();
    LambdaMatrix { rows, real_form }
}

pub fn lambda_rank<S: Scalar>(m: &LambdaMatrix<S>, mode: RankMode) -> Result<usize> {
    m.rank(mode)
}

/// Exact for rational input, SVD with the default threshold otherwise.
pub fn default_rank_mode<S: Scalar>() -> RankMode {
    if S::EXACT {
        RankMode::Exact
    } else {
        RankMode::Tolerance(DEFAULT_TOL)
    }
}

/// `X = [t1t2, t1t3, t2t3, t3, t2, t1, 1]`.
pub fn monomials<S: Scalar>(t: &[S; 3]) -> [S; 7] {
    let [t1, t2, t3] = t.clone();
    [
        t1.clone() * t2.clone(),
        t1.clone() * t3.clone(),
        t2.clone() * t3.clone(),
        t3,
        t2,
        t1,
        S::one(),
    ]
}

/// `X` for projective parameters `(n_i : d_i)`, scaled by `d1 d2 d3` so that
/// infinite parameters are allowed.
pub fn monomials_projective<S: Scalar>(config: &SymConfiguration<S>) -> [S; 7] {
    let [(n1, d1), (n2, d2), (n3, d3)] = config.t.clone().map(|p: ConfigParam<S>| p.projective());
    let m = |a: &S, b: &S, c: &S| a.clone() * b.clone() * c.clone();
    [
        m(&n1, &n2, &d3),
        m(&n1, &d2, &n3),
        m(&d1, &n2, &n3),
        m(&d1, &d2, &n3),
        m(&d1, &n2, &d3),
        m(&n1, &d2, &d3),
        m(&d1, &d2, &d3),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{q, Rational};
    use crate::examples::example_one;

    #[test]
    fn example_one_rank_three() {
        let m = build_lambda_matrix(&example_one());
        assert_eq!(m.real_form().len(), 48);
        assert_eq!(m.rank(RankMode::Exact).unwrap(), 3);
        let mf = build_lambda_matrix(&example_one().to_f64());
        assert_eq!(mf.rank(RankMode::Tolerance(1e-9)).unwrap(), 3);
    }

    #[test]
    fn example_one_g1_vanishes() {
        let g = GVector::of(&example_one());
        assert!(g.g[0].is_zero());
        assert!(!g.g[1].primal.is_zero());
        assert!(!g.g[2].primal.is_zero());
    }

    #[test]
    fn contraction_vanishes_on_motion() {
        let m = build_lambda_matrix(&example_one());
        for t in [q(1, 1), q(-2, 1), q(1, 2), q(3, 1)] {
            let x = monomials(&[q(5, 4) * t.clone(), t.clone(), t]);
            assert!(m.contract(&x).iter().all(Dq::is_zero));
        }
        let inf = monomials_projective(&SymConfiguration::<Rational>::identity());
        assert!(m.contract(&inf).iter().all(Dq::is_zero));
    }

    #[test]
    fn csv_dump_shape() {
        let csv = build_lambda_matrix(&example_one()).to_csv();
        assert_eq!(csv.lines().count(), 48);
        assert!(csv.lines().all(|l| l.split(',').count() == 7));
        assert!(csv.contains("7/11") || csv.contains("/"));
    }
}
