//! Search for `k`-th roots inside a number field.
//!
//! Candidates come from two places: exact monomial roots `q t^i` when the
//! modulus is binomial, and rational reconstruction from the complex
//! embeddings otherwise. Every candidate is verified exactly before it is
//! returned, so a returned root is always correct; a root that the search
//! misses is reported by callers as "field too small".

use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use super::field::{FieldElem, NumberField};
use super::rational::{rational_kth_roots, Rational};

const MAX_COMBINATIONS: usize = 1 << 15;

/// Every `y` found in the field with `y^k = value`, sorted and deduplicated.
pub fn kth_roots(value: &FieldElem, k: u32) -> Vec<FieldElem> {
    let field = value.field();
    if value.is_zero() {
        return vec![value.clone()];
    }
    if field.is_rational() {
        return rational_kth_roots(value.as_rational().unwrap(), k)
            .into_iter()
            .map(|q| FieldElem::from_rational(field, q))
            .collect();
    }
    let mut found = monomial_roots(value, k);
    found.extend(numeric_roots(value, k));
    found.retain(|y| y.pow(k as u64) == *value);
    found.sort();
    found.dedup();
    found
}

fn monomial_roots(value: &FieldElem, k: u32) -> Vec<FieldElem> {
    let field = value.field();
    let Some(c) = field.binomial_constant() else {
        return match value.as_rational() {
            Some(q) => rational_kth_roots(q, k)
                .into_iter()
                .map(|r| FieldElem::from_rational(field, r))
                .collect(),
            None => Vec::new(),
        };
    };
    let d = field.degree();
    let nonzero: Vec<usize> = (0..d).filter(|&i| !value.coeffs()[i].is_zero()).collect();
    let [j] = nonzero[..] else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for i in 0..d {
        let e = i * k as usize;
        if e % d != j {
            continue;
        }
        // (q t^i)^k = q^k c^(e / d) t^(e mod d)
        let carried = num_traits::pow(c.clone(), e / d);
        for q in rational_kth_roots(&(&value.coeffs()[j] / carried), k) {
            let mut coeffs = vec![Rational::zero(); d];
            coeffs[i] = q;
            out.push(FieldElem::from_coeffs(field, coeffs));
        }
    }
    out
}

fn poly_roots(monic: &[Rational]) -> Vec<Complex64> {
    let coeffs: Vec<f64> = monic.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect();
    let d = coeffs.len() - 1;
    let eval = |z: Complex64| coeffs.iter().rev().fold(Complex64::zero(), |acc, &c| acc * z + c);
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..d).map(|i| seed.powu(i as u32 + 1)).collect();
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..d {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..d {
                if i != j {
                    denom *= roots[i] - roots[j];
                }
            }
            let step = eval(roots[i]) / denom;
            roots[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 {
            break;
        }
    }
    roots
}

fn solve(mut a: Vec<Vec<Complex64>>, mut b: Vec<Complex64>) -> Option<Vec<Complex64>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&x, &y| a[x][col].norm().total_cmp(&a[y][col].norm()))?;
        if a[piv][col].norm() < 1e-300 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            let pivot = a[col].clone();
            for (x, p) in a[row][col..].iter_mut().zip(&pivot[col..]) {
                *x -= f * p;
            }
            let v = b[col];
            b[row] -= f * v;
        }
    }
    let mut x = vec![Complex64::zero(); n];
    for row in (0..n).rev() {
        let mut s = b[row];
        for c in row + 1..n {
            s -= a[row][c] * x[c];
        }
        x[row] = s / a[row][row];
    }
    Some(x)
}

/// Best rational approximation with bounded denominator, accepted only if
/// it is within `tol` of `x`.
fn reconstruct(x: f64, tol: f64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    let (mut p0, mut q0, mut p1, mut q1) = (0i128, 1i128, 1i128, 0i128);
    let mut r = x;
    for _ in 0..40 {
        let a = r.floor();
        if a.abs() > 1e15 {
            break;
        }
        let a = a as i128;
        let (p2, q2) = (a * p1 + p0, a * q1 + q0);
        if q2 > 1_000_000_000 {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        if ((p1 as f64) / (q1 as f64) - x).abs() <= tol {
            return Some(Rational::new(BigInt::from(p1), BigInt::from(q1)));
        }
        let frac = r - a as f64;
        if frac.abs() < 1e-300 {
            break;
        }
        r = 1.0 / frac;
    }
    None
}

fn numeric_roots(value: &FieldElem, k: u32) -> Vec<FieldElem> {
    let field: &Arc<NumberField> = value.field();
    let d = field.degree();
    if (k as usize).checked_pow(d as u32).is_none_or(|c| c > MAX_COMBINATIONS) {
        return Vec::new();
    }
    let embeddings = poly_roots(field.modulus());
    let coeffs: Vec<f64> = value.coeffs().iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect();
    let images: Vec<Complex64> = embeddings
        .iter()
        .map(|&r| coeffs.iter().rev().fold(Complex64::zero(), |acc, &c| acc * r + c))
        .collect();
    let unit = |m: u32| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * m as f64 / k as f64);
    let principal: Vec<Complex64> = images.iter().map(|w| w.powf(1.0 / k as f64)).collect();
    let vandermonde: Vec<Vec<Complex64>> = embeddings
        .iter()
        .map(|&r| (0..d).map(|i| r.powu(i as u32)).collect())
        .collect();

    let mut out = Vec::new();
    let mut choice = vec![0u32; d];
    loop {
        let rhs: Vec<Complex64> = (0..d).map(|j| principal[j] * unit(choice[j])).collect();
        if let Some(sol) = solve(vandermonde.clone(), rhs) {
            let scale = sol.iter().map(|z| z.norm()).fold(1.0, f64::max);
            if sol.iter().all(|z| z.im.abs() <= 1e-7 * scale) {
                let coords: Option<Vec<Rational>> =
                    sol.iter().map(|z| reconstruct(z.re, 1e-9 * scale)).collect();
                if let Some(coords) = coords {
                    out.push(FieldElem::from_coeffs(field, coords));
                }
            }
        }
        // odometer over the k^d root choices
        let mut idx = 0;
        loop {
            if idx == d {
                return out;
            }
            choice[idx] += 1;
            if choice[idx] < k {
                break;
            }
            choice[idx] = 0;
            idx += 1;
        }
    }
}
