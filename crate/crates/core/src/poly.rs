//! Real polynomials: univariate, bivariate, and the multilinear trivariate
//! forms that the lambda matrix rows define.

use std::fmt;

use nalgebra::DMatrix;

use crate::algebra::Scalar;

/// Univariate polynomial, coefficients in ascending degree, no trailing zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Poly<S> {
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: S) -> Self {
        Self::new(vec![c])
    }

    /// `x − r`
    pub fn linear_root(r: S) -> Self {
        Self::new(vec![-r, S::one()])
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> S {
        self.coeffs.get(k).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn approx_zero(&self, tol: f64) -> bool {
        self.coeffs.iter().all(|c| c.approx_zero(tol))
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.sub(other).approx_zero(tol)
    }

    /// Drops leading coefficients within `tol` of zero (exact zeros for rationals).
    pub fn trimmed(&self, tol: f64) -> Self {
        let mut c = self.coeffs.clone();
        while c.last().is_some_and(|x| x.approx_zero(tol)) {
            c.pop();
        }
        Self { coeffs: c }
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> S {
        self.coeffs.last().cloned().unwrap_or_else(S::zero)
    }

    pub fn eval(&self, x: &S) -> S {
        self.coeffs
            .iter()
            .rev()
            .fold(S::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![S::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, s: &S) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&(S::one() / self.leading()))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * S::from_i64(k as i64))
                .collect(),
        )
    }

    /// Euclidean division over a field. Panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let lc = d.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![S::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let f = rem[rem.len() - 1].clone() / lc.clone();
            for (j, c) in d.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - f.clone() * c.clone();
            }
            quot[k] = f;
            rem.pop();
        }
        (Self::new(quot), Self::new(rem))
    }

    /// Monic gcd; remainders within `tol` of zero count as zero in float mode.
    pub fn gcd(&self, other: &Self, tol: f64) -> Self {
        let mut a = self.trimmed(tol);
        let mut b = other.trimmed(tol);
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.trimmed(tol);
        }
        a.monic()
    }

    /// Yun's square-free decomposition: `(factor, multiplicity)` pairs with
    /// monic, pairwise coprime, square-free factors of positive degree.
    pub fn squarefree_decomposition(&self, tol: f64) -> Vec<(Self, usize)> {
        let f = self.monic();
        let mut out = Vec::new();
        if f.degree().unwrap_or(0) == 0 {
            return out;
        }
        let df = f.derivative();
        let a0 = f.gcd(&df, tol);
        let mut b = f.div_rem(&a0).0;
        let mut c = df.div_rem(&a0).0;
        let mut d = c.sub(&b.derivative());
        let mut k = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d.trimmed(tol), tol);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), k));
            }
            b = b.div_rem(&a).0;
            c = d.div_rem(&a).0;
            d = c.sub(&b.derivative());
            k += 1;
        }
        out
    }

    /// Roots of a polynomial of degree at most two that lie in the scalar
    /// field: rationals only return rational roots.
    pub fn low_degree_roots(&self) -> Option<Vec<S>> {
        match self.degree() {
            None | Some(0) => Some(Vec::new()),
            Some(1) => Some(vec![-self.coeff(0) / self.coeff(1)]),
            Some(2) => {
                let (a, b, c) = (self.coeff(2), self.coeff(1), self.coeff(0));
                let disc = b.clone() * b.clone() - S::from_i64(4) * a.clone() * c;
                if disc < S::zero() {
                    return Some(Vec::new());
                }
                let root = disc.sqrt()?;
                let two_a = S::from_i64(2) * a;
                let mut roots = vec![
                    (-b.clone() - root.clone()) / two_a.clone(),
                    (-b + root) / two_a,
                ];
                roots.sort_by(|x, y| x.partial_cmp(y).expect("ordered"));
                roots.dedup();
                Some(roots)
            }
            Some(_) => None,
        }
    }

    pub fn to_f64(&self) -> Poly<f64> {
        Poly::new(self.coeffs.iter().map(Scalar::to_f64).collect())
    }

    /// All complex roots via companion-matrix eigenvalues, polished by Newton.
    pub fn complex_roots(&self) -> Vec<nalgebra::Complex<f64>> {
        use nalgebra::Complex;
        let p = self.to_f64();
        let Some(n) = p.degree() else { return Vec::new() };
        if n == 0 {
            return Vec::new();
        }
        let lc = p.leading();
        let mut comp = DMatrix::<f64>::zeros(n, n);
        for i in 1..n {
            comp[(i, i - 1)] = 1.0;
        }
        for i in 0..n {
            comp[(i, n - 1)] = -p.coeff(i) / lc;
        }
        let eval = |z: Complex<f64>, c: &[f64]| {
            c.iter().rev().fold(Complex::new(0.0, 0.0), |acc, &a| acc * z + a)
        };
        let dp = p.derivative();
        comp.complex_eigenvalues()
            .iter()
            .map(|&z0| {
                let mut z = z0;
                for _ in 0..50 {
                    let d = eval(z, dp.coeffs());
                    if d.norm() == 0.0 {
                        break;
                    }
                    let step = eval(z, p.coeffs()) / d;
                    z -= step;
                    if step.norm() <= 1e-15 * z.norm().max(1.0) {
                        break;
                    }
                }
                z
            })
            .collect()
    }

    /// Real roots (refined to ~1e-12), sorted, deduplicated at `dedup_tol`.
    pub fn real_roots(&self, imag_tol: f64, dedup_tol: f64) -> Vec<f64> {
        let mut roots: Vec<f64> = self
            .complex_roots()
            .into_iter()
            .filter(|z| z.im.abs() <= imag_tol * z.re.abs().max(1.0))
            .map(|z| z.re)
            .collect();
        roots.sort_by(|a, b| a.total_cmp(b));
        roots.dedup_by(|a, b| (*a - *b).abs() <= dedup_tol);
        roots
    }
}

impl<S: Scalar> fmt::Display for Poly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("{c}"),
                1 => format!("({c})t"),
                _ => format!("({c})t^{k}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Bivariate polynomial `Σ c[i][j] x^i y^j`, stored as a polynomial in `y`
/// with coefficients in `x`.
#[derive(Clone, Debug, PartialEq)]
pub struct BiPoly<S> {
    /// `ycoeffs[j]` is the coefficient of `y^j`.
    ycoeffs: Vec<Poly<S>>,
}

impl<S: Scalar> BiPoly<S> {
    pub fn from_y_coeffs(mut ycoeffs: Vec<Poly<S>>) -> Self {
        while ycoeffs.last().is_some_and(Poly::is_zero) {
            ycoeffs.pop();
        }
        Self { ycoeffs }
    }

    /// From a dense table `c[i][j]` of `x^i y^j` coefficients.
    pub fn from_table(c: &[Vec<S>]) -> Self {
        let ny = c.iter().map(Vec::len).max().unwrap_or(0);
        Self::from_y_coeffs(
            (0..ny)
                .map(|j| {
                    Poly::new(c.iter().map(|row| row.get(j).cloned().unwrap_or_else(S::zero)).collect())
                })
                .collect(),
        )
    }

    pub fn zero() -> Self {
        Self { ycoeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.ycoeffs.is_empty()
    }

    pub fn y_coeffs(&self) -> &[Poly<S>] {
        &self.ycoeffs
    }

    pub fn deg_y(&self) -> Option<usize> {
        self.ycoeffs.len().checked_sub(1)
    }

    pub fn deg_x(&self) -> Option<usize> {
        self.ycoeffs.iter().filter_map(Poly::degree).max()
    }

    /// `(deg_x, deg_y)`, `(0, 0)` for zero.
    pub fn bidegree(&self) -> (usize, usize) {
        (self.deg_x().unwrap_or(0), self.deg_y().unwrap_or(0))
    }

    pub fn coeff(&self, i: usize, j: usize) -> S {
        self.ycoeffs.get(j).map(|p| p.coeff(i)).unwrap_or_else(S::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.ycoeffs.len().max(o.ycoeffs.len());
        Self::from_y_coeffs((0..n).map(|j| self.yc(j).add(&o.yc(j))).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.ycoeffs.len().max(o.ycoeffs.len());
        Self::from_y_coeffs((0..n).map(|j| self.yc(j).sub(&o.yc(j))).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Poly::zero(); self.ycoeffs.len() + o.ycoeffs.len() - 1];
        for (i, a) in self.ycoeffs.iter().enumerate() {
            for (j, b) in o.ycoeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::from_y_coeffs(out)
    }

    fn yc(&self, j: usize) -> Poly<S> {
        self.ycoeffs.get(j).cloned().unwrap_or_else(Poly::zero)
    }

    fn scale_x(&self, p: &Poly<S>) -> Self {
        Self::from_y_coeffs(self.ycoeffs.iter().map(|c| c.mul(p)).collect())
    }

    fn shift_y(&self, k: usize) -> Self {
        let mut c = vec![Poly::zero(); k];
        c.extend(self.ycoeffs.iter().cloned());
        Self::from_y_coeffs(c)
    }

    pub fn eval(&self, x: &S, y: &S) -> S {
        self.eval_x(x).eval(y)
    }

    /// Fix `x`, leaving a polynomial in `y`.
    pub fn eval_x(&self, x: &S) -> Poly<S> {
        Poly::new(self.ycoeffs.iter().map(|c| c.eval(x)).collect())
    }

    /// Substitute `y = slope·x + intercept`, leaving a polynomial in `x`.
    pub fn substitute_linear_y(&self, slope: &S, intercept: &S) -> Poly<S> {
        let lin = Poly::new(vec![intercept.clone(), slope.clone()]);
        let mut pow = Poly::constant(S::one());
        let mut acc = Poly::zero();
        for c in &self.ycoeffs {
            acc = acc.add(&c.mul(&pow));
            pow = pow.mul(&lin);
        }
        acc
    }

    /// Content with respect to `y`: monic gcd of the `x`-coefficients.
    pub fn content(&self, tol: f64) -> Poly<S> {
        self.ycoeffs
            .iter()
            .fold(Poly::zero(), |g, c| if g.is_zero() { c.monic() } else { g.gcd(c, tol) })
    }

    pub fn primitive_part(&self, tol: f64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content(tol);
        let pp = Self::from_y_coeffs(self.ycoeffs.iter().map(|p| p.div_rem(&c).0).collect());
        // normalize so the leading x-coefficient of the leading y-coefficient is 1
        let lc = pp.ycoeffs.last().map(Poly::leading).unwrap_or_else(S::one);
        pp.scale_x(&Poly::constant(S::one() / lc))
    }

    /// Pseudo-remainder of `self` by `d` with respect to `y`.
    fn pseudo_rem(&self, d: &Self, tol: f64) -> Self {
        let dd = d.deg_y().expect("nonzero divisor");
        let lc = d.ycoeffs[dd].clone();
        let mut r = self.clone();
        while let Some(dr) = r.deg_y() {
            if dr < dd {
                break;
            }
            let lr = r.ycoeffs[dr].clone();
            r = r.scale_x(&lc).sub(&d.scale_x(&lr).shift_y(dr - dd));
            r = r.trim(tol);
        }
        r
    }

    fn trim(&self, tol: f64) -> Self {
        Self::from_y_coeffs(
            self.ycoeffs
                .iter()
                .map(|c| {
                    let t = c.trimmed(tol);
                    if t.approx_zero(tol) {
                        Poly::zero()
                    } else {
                        t
                    }
                })
                .collect(),
        )
    }

    /// Greatest common divisor in `S[x][y]`, normalized as in
    /// [`BiPoly::primitive_part`]. Exact for rationals.
    pub fn gcd(&self, other: &Self, tol: f64) -> Self {
        if self.is_zero() {
            return other.primitive_part(tol).scale_x(&other.content(tol));
        }
        if other.is_zero() {
            return self.primitive_part(tol).scale_x(&self.content(tol));
        }
        let cont = self.content(tol).gcd(&other.content(tol), tol);
        let mut a = self.primitive_part(tol);
        let mut b = other.primitive_part(tol);
        if a.deg_y() < b.deg_y() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b, tol);
            a = b;
            b = if r.is_zero() { r } else { r.primitive_part(tol) };
        }
        a.primitive_part(tol).scale_x(&cont)
    }
}

/// Polynomial of degree at most one in each of `t1, t2, t3`.
///
/// Coefficients are indexed by a bit mask: bit 0 for `t1`, bit 1 for `t2`,
/// bit 2 for `t3` (so index 3 is `t1 t2`).
#[derive(Clone, Debug, PartialEq)]
pub struct Multilinear3<S> {
    pub coeffs: [S; 8],
}

/// Bit masks of the monomials `[t1t2, t1t3, t2t3, t3, t2, t1, 1]` in order.
pub const MONOMIAL_MASKS: [usize; 7] = [0b011, 0b101, 0b110, 0b100, 0b010, 0b001, 0b000];

impl<S: Scalar> Multilinear3<S> {
    /// From a coefficient row against `[t1t2, t1t3, t2t3, t3, t2, t1, 1]`.
    pub fn from_monomial_row(row: &[S]) -> Self {
        let mut coeffs: [S; 8] = std::array::from_fn(|_| S::zero());
        for (c, &m) in row.iter().zip(MONOMIAL_MASKS.iter()) {
            coeffs[m] = c.clone();
        }
        Self { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn eval(&self, t: &[S; 3]) -> S {
        (0..8).fold(S::zero(), |acc, m| {
            let mut term = self.coeffs[m].clone();
            for (v, tv) in t.iter().enumerate() {
                if m >> v & 1 == 1 {
                    term = term * tv.clone();
                }
            }
            acc + term
        })
    }

    /// The two remaining variables after removing `var` (0-based), ascending.
    pub fn others(var: usize) -> (usize, usize) {
        match var {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        }
    }

    /// Writes `F = A·t_var + B`; `A` and `B` are bilinear in the other two
    /// variables `(x, y)` as given by [`Multilinear3::others`].
    pub fn split(&self, var: usize) -> (BiPoly<S>, BiPoly<S>) {
        let (vx, vy) = Self::others(var);
        let mut a = vec![vec![S::zero(); 2]; 2];
        let mut b = vec![vec![S::zero(); 2]; 2];
        for (m, c) in self.coeffs.iter().enumerate() {
            let (i, j) = (m >> vx & 1, m >> vy & 1);
            if m >> var & 1 == 1 {
                a[i][j] = c.clone();
            } else {
                b[i][j] = c.clone();
            }
        }
        (BiPoly::from_table(&a), BiPoly::from_table(&b))
    }

    /// Substitute `t_var = value`, leaving a bilinear polynomial in the other two.
    pub fn substitute(&self, var: usize, value: &S) -> BiPoly<S> {
        let (a, b) = self.split(var);
        a.scale_x(&Poly::constant(value.clone())).add(&b)
    }

    /// Leading part as `t_var → ∞`: the coefficient `A` of `t_var`.
    pub fn at_infinity(&self, var: usize) -> BiPoly<S> {
        self.split(var).0
    }
}

/// Resultant of two polynomials of degree at most one in `t_var`.
///
/// With `F = A₁t + B₁`, `G = A₂t + B₂` this is `A₁B₂ − A₂B₁`. When only one of
/// them involves `t_var` the other (degree zero) is returned, following
/// `Res(f, g) = f^{deg g}` for constant `f`. `None` if neither involves it.
pub fn linear_resultant<S: Scalar>(f: &Multilinear3<S>, g: &Multilinear3<S>, var: usize) -> Option<BiPoly<S>> {
    let (a1, b1) = f.split(var);
    let (a2, b2) = g.split(var);
    match (a1.is_zero(), a2.is_zero()) {
        (true, true) => None,
        (true, false) => Some(b1),
        (false, true) => Some(b2),
        (false, false) => Some(a1.mul(&b2).sub(&a2.mul(&b1))),
    }
}
