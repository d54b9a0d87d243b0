mod common;

use common::{cyclic_form_difference, oracle_cross, random_linkage, rng, small_rational, zero, Coords};
use hexalink::algebra::{q, DualQuaternion, Line, Rational};
use hexalink::examples::example_one;
use hexalink::lambda::{build_lambda_matrix, monomials, GVector};
use hexalink::linalg::RankMode;
use hexalink::linkage::{
    closure_residual, closure_residual_sym, lambda_sign, link_parameters, parallel_pairing, transform_by_configuration,
    ConfigParam, Configuration, LambdaSign, Linkage, SymConfiguration,
};

fn combo(rows: &[[DualQuaternion<Rational>; 7]; 6], plus: [usize; 2], minus: [usize; 2]) -> Vec<Coords> {
    (0..7)
        .map(|c| {
            let v = &(&rows[plus[0]][c] + &rows[plus[1]][c]) - &(&rows[minus[0]][c] + &rows[minus[1]][c]);
            v.coords()
        })
        .collect()
}

fn twice(v: &Coords) -> Coords {
    std::array::from_fn(|i| q(2, 1) * &v[i])
}

fn sym(t: [Rational; 3]) -> SymConfiguration<Rational> {
    SymConfiguration::finite(t)
}

#[test]
fn rows_are_the_cyclic_closure_forms() {
    let mut r = rng(11);
    for _ in 0..10 {
        let l = random_linkage(&mut r);
        let m = build_lambda_matrix(&l);
        for _ in 0..3 {
            let t = [small_rational(&mut r, 9), small_rational(&mut r, 9), small_rational(&mut r, 9)];
            let contracted = m.contract(&monomials(&t));
            for (k, row) in contracted.iter().enumerate() {
                assert_eq!(row.coords(), cyclic_form_difference(&l, k + 1, &t), "row {}", k + 1);
            }
        }
    }
}

#[test]
fn leading_columns_are_the_g_vector() {
    let mut r = rng(12);
    let l = random_linkage(&mut r);
    let m = build_lambda_matrix(&l);
    let g = GVector::of(&l).g;
    for row in m.rows() {
        assert_eq!(row[0], g[2]);
        assert_eq!(row[1], g[1]);
        assert_eq!(row[2], g[0]);
    }
    for (i, gi) in g.iter().enumerate() {
        assert_eq!(gi, &(l.h(i + 1).as_dq() + l.h(i + 4).as_dq()));
    }
}

#[test]
fn row_combinations_reduce_to_cross_products() {
    let mut r = rng(13);
    for _ in 0..20 {
        let l = random_linkage(&mut r);
        let m = build_lambda_matrix(&l);
        let g = GVector::of(&l).g.map(|x| x.coords());
        let a = combo(m.rows(), [0, 3], [1, 4]);
        for c in [0, 1, 2, 5] {
            assert!(a[c].iter().all(|x| x == &zero()), "column {}", c + 1);
        }
        assert_eq!(a[3], twice(&oracle_cross(&g[1], &g[0])));
        assert_eq!(a[4], twice(&oracle_cross(&g[2], &g[0])));
        let b = combo(m.rows(), [0, 3], [2, 5]);
        for c in [0, 1, 2, 3] {
            assert!(b[c].iter().all(|x| x == &zero()), "column {}", c + 1);
        }
        assert_eq!(b[4], twice(&oracle_cross(&g[2], &g[0])));
        assert_eq!(b[5], twice(&oracle_cross(&g[2], &g[1])));
    }
}

#[test]
fn reference_linkage_rank_and_contraction() {
    let l = example_one();
    let m = build_lambda_matrix(&l);
    assert_eq!(m.real_form().len(), 48);
    assert!(m.real_form().iter().all(|row| row.len() == 7));
    assert_eq!(m.rank(RankMode::Exact).unwrap(), 3);
    assert_eq!(build_lambda_matrix(&l.to_f64()).rank(RankMode::Tolerance(1e-9)).unwrap(), 3);
    let x = monomials(&[q(5, 4), q(1, 1), q(1, 1)]);
    assert!(m.contract(&x).iter().all(DualQuaternion::is_zero));
    for row in m.real_form() {
        let s = row.iter().zip(&x).fold(q(0, 1), |acc, (a, b)| acc + a * b);
        assert_eq!(s, q(0, 1));
    }
    // g1 = h1 + h4 vanishes for the printed orientations.
    assert!(GVector::of(&l).g[0].is_zero());
}

#[test]
fn csv_dump_has_one_line_per_real_row() {
    let csv = build_lambda_matrix(&example_one()).to_csv();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 48);
    assert!(lines.iter().all(|l| l.split(',').count() == 7));
    assert!(csv.contains('/'));
}

#[test]
fn rank_is_invariant_under_paired_reorientation() {
    let l = example_one();
    for i in 1..=3 {
        let mut joints = l.joints().clone();
        joints[i - 1] = joints[i - 1].reversed();
        joints[i + 2] = joints[i + 2].reversed();
        let flipped = Linkage::new(joints).unwrap();
        assert_eq!(build_lambda_matrix(&flipped).rank(RankMode::Exact).unwrap(), 3);
    }
}

#[test]
fn reference_motion_closes_exactly() {
    let l = example_one();
    for t in [q(-2, 1), q(-1, 1), q(1, 2), q(1, 1), q(3, 1)] {
        let c = sym([q(5, 4) * &t, t.clone(), t.clone()]);
        let report = closure_residual_sym(&l, &c).unwrap();
        assert_eq!(report.residual, q(0, 1), "t = {t}");
        assert_eq!(report.lambda_sign, Some(LambdaSign::Plus));
    }
    assert_eq!(lambda_sign(&l, &SymConfiguration::identity()), Some(LambdaSign::Plus));
    let off = closure_residual_sym(&l, &sym([q(1, 1), q(1, 1), q(1, 1)])).unwrap();
    assert!(off.residual > q(0, 1));
    assert_eq!(off.lambda_sign, None);
}

#[test]
fn closure_is_invariant_under_cyclic_relabelling() {
    let l = example_one();
    let t = [q(5, 4), q(1, 1), q(1, 1), q(5, 4), q(1, 1), q(1, 1)];
    for shift in 0..6 {
        let shifted = l.cyclic_shift(shift);
        let ts: [Rational; 6] = std::array::from_fn(|i| t[(i + shift) % 6].clone());
        let report = closure_residual(&shifted, &Configuration::finite(ts)).unwrap();
        assert_eq!(report.residual, q(0, 1), "shift {shift}");
    }
}

#[test]
fn transformation_keeps_link_geometry_and_composes() {
    let l = example_one();
    let c = sym([q(5, 2), q(2, 1), q(2, 1)]).expand();
    let moved = transform_by_configuration(&l, &c, 0.0).unwrap();
    assert_eq!(link_parameters(&moved).unwrap(), link_parameters(&l).unwrap());
    assert_eq!(moved.h(1), l.h(1));
    // Moving to c and then by its inverse returns to the rest pose.
    let inv = Configuration { t: c.t.clone().map(|p| p.inverse()) };
    let report = closure_residual(&moved, &inv).unwrap();
    assert_eq!(report.residual, q(0, 1));
    let back = transform_by_configuration(&moved, &inv, 0.0).unwrap();
    for i in 1..=6 {
        assert!(back.h(i).same_axis(l.h(i), 0.0), "joint {i}");
    }
    // The moved linkage closes at s exactly when the original closes at c ∘ s.
    let target = sym([q(5, 4), q(1, 1), q(1, 1)]).expand();
    let s = Configuration { t: std::array::from_fn(|i| inv.t[i].compose(&target.t[i])) };
    assert_eq!(closure_residual(&moved, &s).unwrap().residual, q(0, 1));
    let open = sym([q(1, 1), q(1, 1), q(1, 1)]).expand();
    assert!(closure_residual(&moved, &open).unwrap().residual > q(0, 1));
}

#[test]
fn transformation_rejects_open_configurations() {
    let l = example_one();
    let c = sym([q(1, 1), q(1, 1), q(1, 1)]).expand();
    assert!(transform_by_configuration(&l, &c, 0.0).is_err());
    assert_eq!(transform_by_configuration(&l, &Configuration::identity(), 0.0).unwrap(), l);
}

#[test]
fn reference_pairing() {
    let p = parallel_pairing(&example_one(), 0.0).unwrap();
    assert_eq!(p.pairs, [(1, 4), (2, 3), (5, 6)]);
    assert_eq!(p.shift, 0);
    let shifted = parallel_pairing(&example_one().cyclic_shift(1), 0.0).unwrap();
    assert_eq!(shifted.shift % 3, 2);
    assert_eq!(shifted.pairs.map(|(a, b)| (a.min(b), a.max(b))), [(3, 6), (4, 5), (1, 2)]);
    let mut r = rng(14);
    assert!(parallel_pairing(&random_linkage(&mut r), 1e-9).is_none());
}

#[test]
fn infinite_parameters_are_the_identity_rotation() {
    let h = Line::new(DualQuaternion::<Rational>::k()).unwrap();
    assert_eq!(ConfigParam::<Rational>::Infinite.rotor(&h), DualQuaternion::one());
    let p = ConfigParam::from_projective(q(3, 1), q(0, 1)).unwrap();
    assert_eq!(p, ConfigParam::Infinite);
}
