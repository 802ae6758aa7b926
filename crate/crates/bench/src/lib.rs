//! Curves shared by the benchmarks.

use gfweight_core::arith::{int, FieldElem, NumberField};
use gfweight_core::{GFCurve, PointSpec};

pub fn two_four() -> GFCurve {
    GFCurve::with_rationals(2, 4, &[int(-1), int(2)]).unwrap()
}

pub fn three_three(lambda: i64) -> GFCurve {
    GFCurve::with_rationals(3, 3, &[int(lambda)]).unwrap()
}

/// `(5, 3)` with `lambda = -1` over `Q(t)`, `t^5 = 2`, and the point
/// `[1 : 1 : -t : 0]`.
pub fn five_three_strict() -> (GFCurve, PointSpec) {
    let k = NumberField::binomial(5, int(2)).unwrap();
    let c = GFCurve::with_rationals(5, 3, &[int(-1)]).unwrap().over(&k).unwrap();
    let t = FieldElem::generator(&k);
    let p = PointSpec::Embedded {
        coords: vec![FieldElem::one(&k), FieldElem::one(&k), -&t, FieldElem::zero(&k)],
    };
    (c, p)
}
