//! Built-in reference data: the parallel-property linkage with
//! `h1 = −(7/11)εi + j` and its construction inputs.

use crate::algebra::{q, DualQuaternion, Line, Rational};
use crate::linkage::Linkage;

fn line(primal: [Rational; 3], dual: [Rational; 3]) -> Line<Rational> {
    Line::new(DualQuaternion::pure(primal, dual)).expect("reference line")
}

fn r(n: i64) -> Rational {
    q(n, 1)
}

/// Inputs `(u, h1, h2, h3, r)` of the reference parallel-property construction.
pub fn example_one_inputs() -> (Line<Rational>, Line<Rational>, Line<Rational>, Line<Rational>, Rational) {
    let u = line([r(1), r(0), r(0)], [r(0), r(0), r(0)]);
    let h1 = line([r(0), r(1), r(0)], [q(-7, 11), r(0), r(0)]);
    let h2 = line([q(-3, 5), q(-4, 5), r(0)], [r(2), q(-3, 2), r(-1)]);
    let h3 = line([q(3, 5), q(4, 5), r(0)], [r(-2), q(3, 2), r(2)]);
    (u, h1, h2, h3, q(14, 11))
}

/// The printed `h4, h5, h6` of the reference linkage.
pub fn example_one_outputs() -> [Line<Rational>; 3] {
    [
        line([r(0), r(-1), r(0)], [q(7, 11), r(0), r(0)]),
        line([q(-3, 5), q(4, 5), r(0)], [r(2), q(3, 2), r(1)]),
        line([q(3, 5), q(-4, 5), r(0)], [r(-2), q(-3, 2), r(-2)]),
    ]
}

/// The reference linkage: rank 3, parallel property, motion
/// `(5t/4, t, t, 5t/4, t, t)`.
pub fn example_one() -> Linkage<Rational> {
    let (_, h1, h2, h3, _) = example_one_inputs();
    let [h4, h5, h6] = example_one_outputs();
    Linkage::new([h1, h2, h3, h4, h5, h6]).expect("reference linkage")
}
