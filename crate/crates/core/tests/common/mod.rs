//! Fixtures and property checks shared by the integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use gfweight_core::arith::{int, rat, FieldElem, NumberField, Rational};
use gfweight_core::charts::fixed_points;
use gfweight_core::moduli::{is_isomorphic, orbit, sym_action, Permutation};
use gfweight_core::series::Order;
use gfweight_core::{gap_sequence, GFCurve, PointSpec, TruncatedSeries};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub fn q() -> Arc<NumberField> {
    NumberField::rationals()
}

pub fn curve(k: u32, n: usize, lambda: &[i64]) -> GFCurve {
    let l: Vec<Rational> = lambda.iter().map(|&v| int(v)).collect();
    GFCurve::with_rationals(k, n, &l).unwrap()
}

/// The types used throughout, each with admissible parameters.
pub fn grid() -> Vec<GFCurve> {
    vec![
        curve(2, 4, &[-1, 2]),
        curve(2, 5, &[-1, 2, 3]),
        curve(3, 3, &[-1]),
        curve(3, 4, &[-1, 2]),
        curve(5, 3, &[-1]),
    ]
}

/// `(2, 4)` with all 40 fixed points defined over `Q(zeta_8)`.
pub fn two_four_split() -> GFCurve {
    let f = NumberField::new(vec![int(1), int(0), int(0), int(0), int(1)]).unwrap();
    GFCurve::with_rationals(2, 4, &[int(-49), rat(169, 144)]).unwrap().over(&f).unwrap()
}

/// `(5, 3)`, `lambda = -1`, over `Q(t)` with `t^5 = 2`, and `[1 : 1 : -t : 0]`.
pub fn five_three_point() -> (GFCurve, PointSpec) {
    let f = NumberField::binomial(5, int(2)).unwrap();
    let c = curve(5, 3, &[-1]).over(&f).unwrap();
    let t = FieldElem::generator(&f);
    let p = PointSpec::Embedded {
        coords: vec![FieldElem::one(&f), FieldElem::one(&f), -&t, FieldElem::zero(&f)],
    };
    (c, p)
}

/// Curves with at least some fixed points in their field of definition.
pub fn mode_agreement_curves() -> Vec<GFCurve> {
    let cubic = NumberField::binomial(3, int(3)).unwrap();
    vec![
        two_four_split(),
        five_three_point().0,
        GFCurve::classic(5).unwrap(),
        curve(3, 3, &[-8]).over(&cubic).unwrap(),
    ]
}

/// Compares the generic weight of each axis with every embedded fixed point
/// on it; returns how many embedded points were checked.
pub fn check_mode_agreement(c: &GFCurve) -> Result<usize, String> {
    let mut checked = 0;
    for axis in 0..=c.n() {
        let fp = fixed_points(c, axis).map_err(|e| e.to_string())?;
        let generic = gap_sequence(c, &fp.generic, None).map_err(|e| e.to_string())?;
        for p in &fp.embedded {
            let emb = gap_sequence(c, p, None).map_err(|e| e.to_string())?;
            if emb != generic {
                return Err(format!("{c} axis {axis}: generic {generic:?} vs embedded {emb:?} at {p:?}"));
            }
            checked += 1;
        }
    }
    Ok(checked)
}

/// An embedded point off the fixed locus together with a curve through it.
///
/// Over `F = Q(s)`, `s^k = A = -1 - q^k`, the point `[1 : q : s : r_3 s : ...]`
/// lies on the curve with `lambda_i = r_i^k (1 + q^k) - q^k`.
pub fn sampled_point(k: u32, n: usize, q: Rational) -> (GFCurve, PointSpec) {
    let qk = pow(&q, k);
    let a = -(int(1) + &qk);
    let f = NumberField::binomial(k as usize, a).unwrap();
    let s = FieldElem::generator(&f);
    let mut coords = vec![FieldElem::one(&f), FieldElem::from_rational(&f, q.clone()), s.clone()];
    let mut lambda = Vec::new();
    for i in 3..=n {
        let r = int(i as i64 - 1);
        lambda.push(FieldElem::from_rational(&f, pow(&r, k) * (int(1) + &qk) - &qk));
        coords.push(s.scale(&r));
    }
    let c = GFCurve::new(k, n, lambda, &f).unwrap();
    (c, PointSpec::embedded(coords).unwrap())
}

fn pow(x: &Rational, k: u32) -> Rational {
    (0..k).fold(int(1), |acc, _| acc * x)
}

pub fn sample_offsets() -> Vec<Rational> {
    vec![int(1), int(2), int(3), rat(1, 2), rat(2, 3)]
}

// Strategies.

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=7).prop_map(|(p, q)| rat(p, q))
}

pub fn cubic_field() -> Arc<NumberField> {
    NumberField::binomial(3, int(2)).unwrap()
}

pub fn cubic_elem() -> impl Strategy<Value = FieldElem> {
    proptest::collection::vec(small_rational(), 3).prop_map(|c| FieldElem::from_coeffs(&cubic_field(), c))
}

pub fn series(truncation: usize) -> impl Strategy<Value = TruncatedSeries> {
    proptest::collection::vec(small_rational(), truncation)
        .prop_map(move |c| TruncatedSeries::from_rationals(&q(), &c, truncation))
}

/// Parameters in `P_n` for `n = 3` or `4`.
pub fn moduli_point() -> impl Strategy<Value = Vec<FieldElem>> {
    proptest::collection::vec(small_rational(), 1..=2).prop_filter_map("not in P_n", |l| {
        let f = q();
        let elems: Vec<FieldElem> = l.into_iter().map(|x| FieldElem::from_rational(&f, x)).collect();
        GFCurve::new(2, elems.len() + 2, elems.clone(), &f).ok().map(|_| elems)
    })
}

pub fn permutation(len: usize) -> impl Strategy<Value = Permutation> {
    Just((0..len).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::new(v).unwrap())
}

// Property checks, shared by the proptest suites and the acceptance harness.

pub fn check_field_axioms(a: &FieldElem, b: &FieldElem, c: &FieldElem) -> Result<(), TestCaseError> {
    prop_assert_eq!(&(a + b) + c, a + &(b + c));
    prop_assert_eq!(&(a * b) * c, a * &(b * c));
    prop_assert_eq!(a + b, b + a);
    prop_assert_eq!(a * b, b * a);
    prop_assert_eq!(a * &(b + c), &(a * b) + &(a * c));
    prop_assert!((a + &-a).is_zero());
    prop_assert_eq!(a * &FieldElem::one(a.field()), a.clone());
    if !a.is_zero() {
        prop_assert!((a * &a.inv().unwrap()).is_one());
    }
    Ok(())
}

pub fn check_series_ring(a: &TruncatedSeries, b: &TruncatedSeries, c: &TruncatedSeries) -> Result<(), TestCaseError> {
    let mul = |x: &TruncatedSeries, y: &TruncatedSeries| x.checked_mul(y).unwrap();
    let add = |x: &TruncatedSeries, y: &TruncatedSeries| x.checked_add(y).unwrap();
    prop_assert_eq!(mul(a, b), mul(b, a));
    prop_assert_eq!(mul(&mul(a, b), c), mul(a, &mul(b, c)));
    prop_assert_eq!(mul(a, &add(b, c)), add(&mul(a, b), &mul(a, c)));
    Ok(())
}

/// `ord(ab) = ord(a) + ord(b)` whenever the sum is visible.
pub fn check_order_additivity(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<(), TestCaseError> {
    let prod = a.checked_mul(b).unwrap();
    match (a.order(), b.order()) {
        (Order::Exact(x), Order::Exact(y)) if x + y < a.truncation() => {
            prop_assert_eq!(prod.order(), Order::Exact(x + y))
        }
        _ => prop_assert_eq!(prod.order(), Order::AtLeast(a.truncation())),
    }
    Ok(())
}

/// `y = (1 + u)^(1/k)` satisfies `y^k = 1 + u` and `y(0) = 1`.
pub fn check_root(u: &TruncatedSeries, k: u32) -> Result<(), TestCaseError> {
    let mut c = u.coeffs().to_vec();
    c[0] = FieldElem::zero(u.field());
    let u = TruncatedSeries::from_coeffs(u.field(), c).unwrap();
    let y = TruncatedSeries::kth_root_one_plus(&u, k).unwrap();
    prop_assert!(y.coeff(0).is_one());
    let one_plus_u = u.checked_add(&TruncatedSeries::one(u.field(), u.truncation())).unwrap();
    prop_assert_eq!(y.int_pow(k as u64), one_plus_u);
    Ok(())
}

/// Identity acts trivially and `(s t) . l = s . (t . l)`.
pub fn check_group_laws(lambda: &[FieldElem], s: &Permutation, t: &Permutation) -> Result<(), TestCaseError> {
    let f = q();
    let len = lambda.len() + 3;
    prop_assert_eq!(sym_action(&Permutation::identity(len), lambda, &f).unwrap(), lambda.to_vec());
    let step = sym_action(s, &sym_action(t, lambda, &f).unwrap(), &f).unwrap();
    prop_assert_eq!(sym_action(&s.compose(t), lambda, &f).unwrap(), step);
    Ok(())
}

/// Reflexive, symmetric and transitive on images under the action, and the
/// orbit is closed.
pub fn check_isomorphism(lambda: &[FieldElem], s: &Permutation, t: &Permutation) -> Result<(), TestCaseError> {
    let f = q();
    let a = sym_action(t, lambda, &f).unwrap();
    let b = sym_action(s, &a, &f).unwrap();
    prop_assert!(is_isomorphic(lambda, lambda, &f).unwrap());
    prop_assert!(is_isomorphic(lambda, &a, &f).unwrap());
    prop_assert!(is_isomorphic(&a, lambda, &f).unwrap());
    prop_assert!(is_isomorphic(&a, &b, &f).unwrap() && is_isomorphic(lambda, &b, &f).unwrap());
    let orb = orbit(lambda, &f).unwrap();
    prop_assert_eq!(orbit(&b, &f).unwrap(), orb);
    Ok(())
}
