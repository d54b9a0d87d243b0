//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use hexalink::algebra::{q, DualQuaternion, Line, Rational};
use hexalink::linkage::Linkage;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Coords = [Rational; 8];

pub fn zero() -> Rational {
    q(0, 1)
}

/// Product of quaternion units `e_a e_b` (0 = 1, 1 = i, 2 = j, 3 = k) as `(sign, unit)`.
fn unit_product(a: usize, b: usize) -> (i64, usize) {
    const TABLE: [[(i64, usize); 4]; 4] = [
        [(1, 0), (1, 1), (1, 2), (1, 3)],
        [(1, 1), (-1, 0), (1, 3), (-1, 2)],
        [(1, 2), (-1, 3), (-1, 0), (1, 1)],
        [(1, 3), (1, 2), (-1, 1), (-1, 0)],
    ];
    TABLE[a][b]
}

/// Multiplication from structure constants in the basis `1,i,j,k,ε,εi,εj,εk`.
pub fn oracle_mul(a: &Coords, b: &Coords) -> Coords {
    let mut out: Coords = std::array::from_fn(|_| zero());
    for (x, ax) in a.iter().enumerate() {
        for (y, by) in b.iter().enumerate() {
            if (x >= 4 && y >= 4) || ax == &zero() || by == &zero() {
                continue;
            }
            let (sign, unit) = unit_product(x % 4, y % 4);
            let slot = unit + if x >= 4 || y >= 4 { 4 } else { 0 };
            out[slot] += ax * by * Rational::from_integer(sign.into());
        }
    }
    out
}

pub fn oracle_add(a: &Coords, b: &Coords) -> Coords {
    std::array::from_fn(|i| &a[i] + &b[i])
}

pub fn oracle_sub(a: &Coords, b: &Coords) -> Coords {
    std::array::from_fn(|i| &a[i] - &b[i])
}

pub fn real(x: &Rational) -> Coords {
    std::array::from_fn(|i| if i == 0 { x.clone() } else { zero() })
}

pub fn coords(h: &Line<Rational>) -> Coords {
    h.as_dq().coords()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rational(rng: &mut ChaCha8Rng, bound: i64) -> Rational {
    q(rng.gen_range(-bound..=bound), rng.gen_range(1..=bound))
}

pub fn random_dq(rng: &mut ChaCha8Rng) -> DualQuaternion<Rational> {
    DualQuaternion::from_coords(std::array::from_fn(|_| small_rational(rng, 9)))
}

pub fn random_pure(rng: &mut ChaCha8Rng) -> DualQuaternion<Rational> {
    DualQuaternion::from_coords(std::array::from_fn(|i| if i % 4 == 0 { zero() } else { small_rational(rng, 9) }))
}

/// A rational line: unit direction from the inverse stereographic projection
/// of a random rational point, anchored at a random rational point.
pub fn random_line(rng: &mut ChaCha8Rng) -> Line<Rational> {
    let (a, b) = (small_rational(rng, 7), small_rational(rng, 7));
    let n = &a * &a + &b * &b + q(1, 1);
    let d = [q(2, 1) * &a / &n, q(2, 1) * &b / &n, (&a * &a + &b * &b - q(1, 1)) / &n];
    let p = [small_rational(rng, 9), small_rational(rng, 9), small_rational(rng, 9)];
    Line::through(d, p).expect("unit direction")
}

pub fn random_linkage(rng: &mut ChaCha8Rng) -> Linkage<Rational> {
    Linkage::new(std::array::from_fn(|_| random_line(rng))).expect("six lines")
}

/// `right − left` for the `k`-th cyclic form of the angle-symmetric closure
/// equation, evaluated by direct multiplication of the six rotors.
pub fn cyclic_form_difference(linkage: &Linkage<Rational>, k: usize, t: &[Rational; 3]) -> Coords {
    let h = |i: usize| coords(linkage.h((i - 1) % 6 + 1));
    let param = |i: usize| t[(i - 1) % 3].clone();
    let minus = |i: usize| oracle_sub(&real(&param(i)), &h(i));
    let plus = |i: usize| oracle_add(&real(&param(i)), &h(i + 3));
    let left = oracle_mul(&oracle_mul(&minus(k), &minus(k + 1)), &minus(k + 2));
    let right = oracle_mul(&oracle_mul(&plus(k + 2), &plus(k + 1)), &plus(k));
    oracle_sub(&right, &left)
}

/// Vector cross product of the pure parts, computed coordinate-wise:
/// `(a + εa') × (b + εb') = a×b + ε(a×b' + a'×b)`.
pub fn oracle_cross(g: &Coords, h: &Coords) -> Coords {
    fn c(x: [&Rational; 3], y: [&Rational; 3]) -> [Rational; 3] {
        [
            x[1] * y[2] - x[2] * y[1],
            x[2] * y[0] - x[0] * y[2],
            x[0] * y[1] - x[1] * y[0],
        ]
    }
    fn p(v: &Coords) -> [&Rational; 3] {
        [&v[1], &v[2], &v[3]]
    }
    fn d(v: &Coords) -> [&Rational; 3] {
        [&v[5], &v[6], &v[7]]
    }
    let pp = c(p(g), p(h));
    let pd = c(p(g), d(h));
    let dp = c(d(g), p(h));
    [
        zero(),
        pp[0].clone(),
        pp[1].clone(),
        pp[2].clone(),
        zero(),
        &pd[0] + &dp[0],
        &pd[1] + &dp[1],
        &pd[2] + &dp[2],
    ]
}
