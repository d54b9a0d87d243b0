//! Numerical tracing of the angle-symmetric configuration curve and pose export.
//!
//! Each grid value fixes one parameter; two independent rows of the lambda
//! matrix then become bilinear equations in the other two, which are solved
//! by a resultant. Every candidate is re-verified on the full closure product.

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use rayon::prelude::*;

use crate::algebra::Scalar;
use crate::error::{Error, Result};
use crate::lambda::{build_lambda_matrix, default_rank_mode};
use crate::linkage::{
    closure_residual_sym, transform_by_configuration, ConfigParam, LambdaSign, Linkage, SymConfiguration,
    CLOSURE_TOL,
};
use crate::poly::{Multilinear3, Poly};

/// Header line of the pose file format.
pub const POSE_HEADER: &str = "# hexalink poses v1";

const DEDUP_TOL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq)]
pub struct TraceOptions {
    /// Parameter held fixed on each slice, 0-based (`2` is `t3`).
    pub slice: usize,
    /// Relative closure residual a candidate must reach.
    pub closure_tol: f64,
}

impl Default for TraceOptions {
    fn default() -> Self {
        Self { slice: 2, closure_tol: CLOSURE_TOL }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TracedPoint {
    pub grid_index: usize,
    pub config: SymConfiguration<f64>,
    pub residual: f64,
}

/// `n` evenly spaced values from `a` to `b` inclusive.
pub fn linear_grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => (0..n).map(|k| a + (b - a) * k as f64 / (n - 1) as f64).collect(),
    }
}

pub fn trace_configuration_curve<S: Scalar>(linkage: &Linkage<S>, grid: &[f64]) -> Result<Vec<TracedPoint>> {
    trace_with_options(linkage, grid, &TraceOptions::default())
}

pub fn trace_with_options<S: Scalar>(
    linkage: &Linkage<S>,
    grid: &[f64],
    opts: &TraceOptions,
) -> Result<Vec<TracedPoint>> {
    if opts.slice > 2 {
        return Err(Error::Precondition { step: "trace", message: "slice variable must be t1, t2 or t3".into() });
    }
    let m = build_lambda_matrix(linkage);
    let rank = m.rank(default_rank_mode::<S>())?;
    if !(2..=4).contains(&rank) {
        return Err(Error::Precondition {
            step: "trace",
            message: format!("lambda-matrix rank {rank} is outside 2..=4"),
        });
    }
    let tol = if S::EXACT { 0.0 } else { crate::algebra::DEFAULT_TOL };
    let polys = m.polynomials();
    let rows: Vec<Multilinear3<f64>> = m
        .row_basis(tol)
        .into_iter()
        .map(|i| Multilinear3 { coeffs: polys[i].coeffs.clone().map(|c| c.to_f64()) })
        .collect();
    let lf = linkage.to_f64();
    let points: Vec<Vec<TracedPoint>> = grid
        .par_iter()
        .enumerate()
        .map(|(k, &s)| solve_slice(&lf, &rows, opts, k, s))
        .collect();
    let points: Vec<TracedPoint> = points.into_iter().flatten().collect();
    if points.is_empty() {
        return Err(Error::NoRealMotion);
    }
    Ok(points)
}

/// Bilinear `c00 + c10 x + c01 y + c11 xy` as `A(y) x + B(y)`.
struct Bilinear {
    a: Poly<f64>,
    b: Poly<f64>,
}

impl Bilinear {
    fn from_row(row: &Multilinear3<f64>, slice: usize, s: f64) -> Option<Self> {
        let (vx, vy) = Multilinear3::<f64>::others(slice);
        let mut c = [[0.0; 2]; 2];
        for (mask, &coef) in row.coeffs.iter().enumerate() {
            let factor = if mask >> slice & 1 == 1 { s } else { 1.0 };
            c[mask >> vx & 1][mask >> vy & 1] += coef * factor;
        }
        let scale = c.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
        if scale == 0.0 {
            return None;
        }
        let c = c.map(|r| r.map(|v| v / scale));
        Some(Self { a: Poly::new(vec![c[1][0], c[1][1]]), b: Poly::new(vec![c[0][0], c[0][1]]) })
    }
}

fn solve_slice(
    linkage: &Linkage<f64>,
    rows: &[Multilinear3<f64>],
    opts: &TraceOptions,
    grid_index: usize,
    s: f64,
) -> Vec<TracedPoint> {
    let eqs: Vec<Bilinear> = rows.iter().filter_map(|r| Bilinear::from_row(r, opts.slice, s)).collect();
    let mut ys: Vec<ConfigParam<f64>> = Vec::new();
    let resultant = (0..eqs.len())
        .flat_map(|i| (i + 1..eqs.len()).map(move |j| (i, j)))
        .map(|(i, j)| eqs[i].a.mul(&eqs[j].b).sub(&eqs[j].a.mul(&eqs[i].b)).trimmed(1e-12))
        .find(|r| !r.approx_zero(1e-12));
    let Some(res) = resultant else { return Vec::new() };
    // near-real pairs from double roots are kept; closure decides afterwards
    ys.extend(res.real_roots(1e-6, DEDUP_TOL).into_iter().map(ConfigParam::Finite));
    ys.push(ConfigParam::Infinite);

    let (vx, vy) = Multilinear3::<f64>::others(opts.slice);
    let mut out: Vec<TracedPoint> = Vec::new();
    for y in ys {
        let Some(x) = back_solve(&eqs, &y) else { continue };
        let (x, y) = match (x, y) {
            (ConfigParam::Finite(x), ConfigParam::Finite(y)) => {
                let (x, y) = polish(&eqs, x, y);
                (ConfigParam::Finite(x + 0.0), ConfigParam::Finite(y + 0.0))
            }
            other => other,
        };
        let mut t: [ConfigParam<f64>; 3] = std::array::from_fn(|_| ConfigParam::Infinite);
        t[opts.slice] = ConfigParam::Finite(s);
        t[vx] = x;
        t[vy] = y;
        let config = SymConfiguration { t };
        let Ok(report) = closure_residual_sym(linkage, &config) else { continue };
        if report.residual <= opts.closure_tol && report.lambda_sign == Some(LambdaSign::Plus) {
            if out.iter().any(|p| same_config(&p.config, &config)) {
                continue;
            }
            out.push(TracedPoint { grid_index, config, residual: report.residual });
        }
    }
    out.sort_by(|p, q| param_key(&p.config.t[vy]).total_cmp(&param_key(&q.config.t[vy])));
    out
}

/// `x` from the equation with the largest `|A(y)|`; `∞` when every `A(y)` vanishes.
fn back_solve(eqs: &[Bilinear], y: &ConfigParam<f64>) -> Option<ConfigParam<f64>> {
    let at = |p: &Poly<f64>| match y {
        ConfigParam::Finite(v) => p.eval(v),
        ConfigParam::Infinite => p.coeff(1),
    };
    let (a, b) = eqs
        .iter()
        .map(|e| (at(&e.a), at(&e.b)))
        .max_by(|u, v| u.0.abs().total_cmp(&v.0.abs()))?;
    if a.abs() > 1e-12 {
        Some(ConfigParam::Finite(-b / a))
    } else if eqs.iter().any(|e| at(&e.b).abs() > 1e-9) {
        Some(ConfigParam::Infinite)
    } else {
        None
    }
}

/// Gauss-Newton on all slice equations `A_k(y) x + B_k(y) = 0`.
fn polish(eqs: &[Bilinear], mut x: f64, mut y: f64) -> (f64, f64) {
    for _ in 0..20 {
        let (mut jtj, mut jtf) = ([[0.0; 2]; 2], [0.0; 2]);
        for e in eqs {
            let f = e.a.eval(&y) * x + e.b.eval(&y);
            let j = [e.a.eval(&y), e.a.coeff(1) * x + e.b.coeff(1)];
            for r in 0..2 {
                jtf[r] += j[r] * f;
                for c in 0..2 {
                    jtj[r][c] += j[r] * j[c];
                }
            }
        }
        let det = jtj[0][0] * jtj[1][1] - jtj[0][1] * jtj[1][0];
        if det.abs() <= 1e-300 {
            break;
        }
        let dx = (jtj[1][1] * jtf[0] - jtj[0][1] * jtf[1]) / det;
        let dy = (jtj[0][0] * jtf[1] - jtj[1][0] * jtf[0]) / det;
        x -= dx;
        y -= dy;
        if dx.abs().max(dy.abs()) <= 1e-15 * x.abs().max(y.abs()).max(1.0) {
            break;
        }
    }
    (x, y)
}

fn param_key(p: &ConfigParam<f64>) -> f64 {
    match p {
        ConfigParam::Finite(v) => *v,
        ConfigParam::Infinite => f64::INFINITY,
    }
}

fn same_config(a: &SymConfiguration<f64>, b: &SymConfiguration<f64>) -> bool {
    a.t.iter().zip(&b.t).all(|(p, q)| match (p, q) {
        (ConfigParam::Finite(x), ConfigParam::Finite(y)) => (x - y).abs() <= DEDUP_TOL * x.abs().max(1.0),
        (ConfigParam::Infinite, ConfigParam::Infinite) => true,
        _ => false,
    })
}

/// Pose text for each configuration: the parameters, then direction and
/// anchor of the six transformed axes. Every configuration must close
/// (exactly for rationals).
pub fn format_poses<S: Scalar>(linkage: &Linkage<S>, configs: &[SymConfiguration<S>]) -> Result<String> {
    let mut out = String::new();
    writeln!(out, "{POSE_HEADER}").expect("write to string");
    for config in configs {
        let moved = transform_by_configuration(linkage, &config.expand(), CLOSURE_TOL)?;
        let params: Vec<String> = config.t.iter().map(|p| fmt_param(&p.to_f64())).collect();
        writeln!(out, "{}", params.join(" ")).expect("write to string");
        for h in moved.joints() {
            let cells: Vec<String> = h
                .direction()
                .iter()
                .chain(h.anchor().iter())
                .map(|c| fmt_float(c.to_f64()))
                .collect();
            writeln!(out, "{}", cells.join(" ")).expect("write to string");
        }
    }
    Ok(out)
}

pub fn export_poses<S: Scalar>(linkage: &Linkage<S>, configs: &[SymConfiguration<S>], path: &Path) -> Result<()> {
    let text = format_poses(linkage, configs)?;
    let mut f = std::fs::File::create(path)?;
    f.write_all(text.as_bytes())?;
    Ok(())
}

fn fmt_float(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.16e}")
}

fn fmt_param(p: &ConfigParam<f64>) -> String {
    match p {
        ConfigParam::Finite(v) => fmt_float(*v),
        ConfigParam::Infinite => "inf".into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Rational;
    use crate::examples::example_one;

    fn has_point(points: &[TracedPoint], t: [f64; 3]) -> bool {
        points.iter().any(|p| {
            p.config
                .t
                .iter()
                .zip(t)
                .all(|(c, v)| c.finite().is_some_and(|x| (x - v).abs() < 1e-8))
        })
    }

    #[test]
    fn reference_motion_on_slices() {
        let pts = trace_configuration_curve(&example_one(), &[1.0, -2.0, -1.0]).unwrap();
        assert!(has_point(&pts, [1.25, 1.0, 1.0]));
        assert!(has_point(&pts, [-1.25, -1.0, -1.0]));
        assert!(has_point(&pts, [-2.5, -2.0, -2.0]));
        assert!(pts.iter().all(|p| p.residual < 1e-9));
        assert!(pts.windows(2).all(|w| w[0].grid_index <= w[1].grid_index));
    }

    #[test]
    fn pose_block_at_rest() {
        let text = format_poses(&example_one(), &[SymConfiguration::<Rational>::identity()]).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 8);
        assert_eq!(lines[0], POSE_HEADER);
        assert_eq!(lines[1], "inf inf inf");
        let h1: Vec<f64> = lines[2].split(' ').map(|c| c.parse().unwrap()).collect();
        let want = [0.0, 1.0, 0.0, 0.0, 0.0, 7.0 / 11.0];
        assert!(h1.iter().zip(want).all(|(a, b)| (a - b).abs() < 1e-15));
        assert_eq!(format_poses::<Rational>(&example_one(), &[]).unwrap(), format!("{POSE_HEADER}\n"));
    }

    #[test]
    fn grid_endpoints() {
        assert_eq!(linear_grid(-1.0, 1.0, 3), vec![-1.0, 0.0, 1.0]);
        assert!(linear_grid(0.0, 1.0, 0).is_empty());
    }
}
