//! Dense matrix rank, row bases and null spaces for the lambda matrix.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::algebra::{Rational, Scalar};
use crate::error::{Error, Result};

/// How to compute a rank.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RankMode {
    /// Fraction-free elimination over the integers; rational input only.
    Exact,
    /// Count singular values above `tol × σ_max`.
    Tolerance(f64),
}

impl Default for RankMode {
    fn default() -> Self {
        RankMode::Tolerance(1e-9)
    }
}

pub fn rank<S: Scalar>(rows: &[Vec<S>], mode: RankMode) -> Result<usize> {
    match mode {
        RankMode::Exact => {
            if !S::EXACT {
                return Err(Error::ExactScalarsRequired);
            }
            let rat: Vec<Vec<Rational>> = rows
                .iter()
                .map(|r| r.iter().map(|x| x.to_rational().expect("exact scalar")).collect())
                .collect();
            Ok(bareiss_rank(&rat))
        }
        RankMode::Tolerance(tol) => Ok(svd_rank(rows, tol)),
    }
}

/// Clears denominators row by row, then runs Bareiss elimination on integers.
/// Every division in the loop is exact.
pub fn bareiss_rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            let l = r.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            r.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .filter(|r: &Vec<BigInt>| r.iter().any(|x| !x.is_zero()))
        .collect();
    let ncols = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for i in rank + 1..m.len() {
            for j in col + 1..ncols {
                let v = &m[rank][col] * &m[i][j] - &m[i][col] * &m[rank][j];
                m[i][j] = v / &prev;
            }
            m[i][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

fn svd_rank<S: Scalar>(rows: &[Vec<S>], tol: f64) -> usize {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    if nrows == 0 || ncols == 0 {
        return 0;
    }
    let m = DMatrix::from_fn(nrows, ncols, |i, j| rows[i][j].to_f64());
    let sv = m.singular_values();
    let max = sv.iter().cloned().fold(0.0, f64::max);
    if max == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > tol * max).count()
}

/// Reduced row echelon form by Gauss-Jordan elimination with largest-pivot
/// selection. Returns the nonzero rows and the pivot columns.
pub fn rref<S: Scalar>(rows: &[Vec<S>], tol: f64) -> (Vec<Vec<S>>, Vec<usize>) {
    let mut m: Vec<Vec<S>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == m.len() {
            break;
        }
        let best = (r..m.len())
            .filter(|&i| !m[i][col].approx_zero(tol))
            .max_by(|&a, &b| {
                m[a][col]
                    .abs()
                    .partial_cmp(&m[b][col].abs())
                    .expect("ordered scalars")
            });
        let Some(p) = best else { continue };
        m.swap(r, p);
        let inv = S::one() / m[r][col].clone();
        for j in 0..ncols {
            m[r][j] = m[r][j].clone() * inv.clone();
        }
        for i in 0..m.len() {
            if i == r || m[i][col].is_zero() {
                continue;
            }
            let f = m[i][col].clone();
            for j in 0..ncols {
                m[i][j] = m[i][j].clone() - f.clone() * m[r][j].clone();
            }
        }
        pivots.push(col);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

/// Indices of a maximal set of linearly independent rows, chosen greedily
/// in input order.
pub fn independent_rows<S: Scalar>(rows: &[Vec<S>], tol: f64) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    // reduced rows, each with a unit pivot that is zero in all others
    let mut basis: Vec<(usize, Vec<S>)> = Vec::new();
    let mut picked = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        if basis.len() == ncols {
            break;
        }
        let mut r = row.clone();
        for (pc, b) in &basis {
            if r[*pc].is_zero() {
                continue;
            }
            let f = r[*pc].clone();
            for j in 0..ncols {
                r[j] = r[j].clone() - f.clone() * b[j].clone();
            }
        }
        let Some(pc) = (0..ncols)
            .filter(|&j| !r[j].approx_zero(tol))
            .max_by(|&a, &b| r[a].abs().partial_cmp(&r[b].abs()).expect("ordered scalars"))
        else {
            continue;
        };
        let inv = S::one() / r[pc].clone();
        let r: Vec<S> = r.into_iter().map(|x| x * inv.clone()).collect();
        for (_, b) in basis.iter_mut() {
            if b[pc].is_zero() {
                continue;
            }
            let f = b[pc].clone();
            for j in 0..ncols {
                b[j] = b[j].clone() - f.clone() * r[j].clone();
            }
        }
        basis.push((pc, r));
        picked.push(i);
    }
    picked
}

/// Basis of `{x : M x = 0}`.
pub fn nullspace<S: Scalar>(rows: &[Vec<S>], tol: f64) -> Vec<Vec<S>> {
    let ncols = rows.first().map_or(0, Vec::len);
    let (r, pivots) = rref(rows, tol);
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![S::zero(); ncols];
            v[free] = S::one();
            for (row, &pc) in r.iter().zip(&pivots) {
                v[pc] = -row[free].clone();
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::q;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| q(x, 1)).collect()).collect()
    }

    #[test]
    fn exact_rank_of_small_matrices() {
        assert_eq!(bareiss_rank(&m(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(bareiss_rank(&m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]])), 2);
        assert_eq!(bareiss_rank(&m(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(bareiss_rank(&m(&[&[0, 1], &[1, 0], &[1, 1]])), 2);
        let frac = vec![vec![q(1, 3), q(1, 7)], vec![q(7, 1), q(3, 1)]];
        assert_eq!(bareiss_rank(&frac), 1);
    }

    #[test]
    fn exact_mode_rejects_floats() {
        let rows = vec![vec![1.0, 0.0]];
        assert!(matches!(rank(&rows, RankMode::Exact), Err(Error::ExactScalarsRequired)));
        assert_eq!(rank(&rows, RankMode::Tolerance(1e-9)).unwrap(), 1);
    }

    #[test]
    fn nullspace_is_annihilated() {
        let a = m(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 1]]);
        let ns = nullspace(&a, 0.0);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for row in &a {
                let d = row.iter().zip(v).fold(q(0, 1), |acc, (x, y)| acc + x * y);
                assert_eq!(d, q(0, 1));
            }
        }
        assert_eq!(independent_rows(&a, 0.0), vec![0, 2]);
    }
}
