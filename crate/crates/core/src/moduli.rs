//! The action of the symmetric group `S_{n+1}` on `P_n`.
//!
//! A parameter tuple `lambda` stands for the `n+1` marked points
//! `(infinity, 0, 1, lambda_1, ..., lambda_{n-2})` of the projective line,
//! the marking `i` being the branch value under which `x_i` vanishes. A
//! permutation relabels the markings and a Moebius map brings the first three
//! back to `infinity, 0, 1`.

use std::sync::Arc;

use crate::arith::{FieldElem, NumberField};
use crate::error::{Error, Result};

/// Homogeneous point `[T : U]` of the projective line; `U = 0` is infinity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct P1Point {
    pub t: FieldElem,
    pub u: FieldElem,
}

impl P1Point {
    pub fn infinity(field: &Arc<NumberField>) -> Self {
        P1Point {
            t: FieldElem::one(field),
            u: FieldElem::zero(field),
        }
    }

    pub fn affine(value: FieldElem) -> Self {
        let u = FieldElem::one(value.field());
        P1Point { t: value, u }
    }

    pub fn is_infinity(&self) -> bool {
        self.u.is_zero()
    }

    /// `T / U`, or `None` at infinity.
    pub fn value(&self) -> Option<FieldElem> {
        (!self.is_infinity()).then(|| self.t.checked_div(&self.u).expect("nonzero denominator"))
    }
}

fn det(a: &P1Point, b: &P1Point) -> FieldElem {
    &(&a.t * &b.u) - &(&a.u * &b.t)
}

/// The Moebius map sending `a, b, c` to `infinity, 0, 1`, as a function of
/// homogeneous points.
pub(crate) fn normalize(a: &P1Point, b: &P1Point, c: &P1Point, x: &P1Point) -> P1Point {
    P1Point {
        t: &det(x, b) * &det(c, a),
        u: &det(x, a) * &det(c, b),
    }
}

/// A permutation of `0..len`, stored as the image of each index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidArgument(format!("{images:?} is not a permutation")));
            }
        }
        Ok(Permutation(images))
    }

    pub fn identity(len: usize) -> Self {
        Permutation((0..len).collect())
    }

    pub fn transposition(len: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<usize> = (0..len).collect();
        images.swap(a, b);
        Permutation(images)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Permutation(inv)
    }

    /// `self * other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        Permutation(other.0.iter().map(|&i| self.0[i]).collect())
    }

    /// All permutations of `0..len` in lexicographic order.
    pub fn all(len: usize) -> Vec<Self> {
        let mut cur: Vec<usize> = (0..len).collect();
        let mut out = vec![Permutation(cur.clone())];
        loop {
            let Some(i) = (1..len).rev().find(|&i| cur[i - 1] < cur[i]) else {
                return out;
            };
            let j = (i..len).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
            out.push(Permutation(cur.clone()));
        }
    }
}

fn markings(lambda: &[FieldElem], field: &Arc<NumberField>) -> Vec<P1Point> {
    let mut out = vec![
        P1Point::infinity(field),
        P1Point::affine(FieldElem::zero(field)),
        P1Point::affine(FieldElem::one(field)),
    ];
    out.extend(lambda.iter().cloned().map(P1Point::affine));
    out
}

/// Image of `lambda` under `sigma`: the marking at position `i` moves to
/// position `sigma(i)`, then the first three positions are renormalized.
pub fn sym_action(sigma: &Permutation, lambda: &[FieldElem], field: &Arc<NumberField>) -> Result<Vec<FieldElem>> {
    let n1 = lambda.len() + 3;
    if sigma.len() != n1 {
        return Err(Error::InvalidArgument(format!(
            "permutation of {} symbols acting on {n1} markings",
            sigma.len()
        )));
    }
    let gamma = markings(lambda, field);
    let inv = sigma.inverse();
    let moved: Vec<&P1Point> = (0..n1).map(|i| &gamma[inv.apply(i)]).collect();
    moved[3..]
        .iter()
        .map(|x| {
            normalize(moved[0], moved[1], moved[2], x)
                .value()
                .ok_or_else(|| Error::Internal("Moebius image of a marking hit infinity".into()))
        })
        .collect()
}

/// The orbit of `lambda`, sorted and deduplicated.
pub fn orbit(lambda: &[FieldElem], field: &Arc<NumberField>) -> Result<Vec<Vec<FieldElem>>> {
    let mut out = Permutation::all(lambda.len() + 3)
        .iter()
        .map(|sigma| sym_action(sigma, lambda, field))
        .collect::<Result<Vec<_>>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}

pub fn is_isomorphic(a: &[FieldElem], b: &[FieldElem], field: &Arc<NumberField>) -> Result<bool> {
    if a.len() != b.len() {
        return Ok(false);
    }
    let b: Vec<FieldElem> = b.iter().map(|x| x.lift_to(field)).collect::<Result<_>>()?;
    Ok(orbit(a, field)?.contains(&b))
}

/// Least element of the orbit in the order of [`FieldElem`]. This choice of
/// representative is a convention of this crate.
pub fn canonical_representative(lambda: &[FieldElem], field: &Arc<NumberField>) -> Result<Vec<FieldElem>> {
    Ok(orbit(lambda, field)?.swap_remove(0))
}
