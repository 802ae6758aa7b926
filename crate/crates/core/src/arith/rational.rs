use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Parse(text.to_string());
    let parse_int = |s: &str| -> Result<BigInt> {
        let s = s.trim();
        let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        s.parse::<BigInt>().map_err(|_| bad())
    };
    match text.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(text)?)),
        Some((p, q)) => {
            if !q.trim().starts_with(|c: char| c.is_ascii_digit()) {
                return Err(bad());
            }
            let q = parse_int(q)?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(parse_int(p)?, q))
        }
    }
}

/// Formats as `"p/q"`, omitting `/q` when `q = 1`.
pub fn format_rational(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

fn exact_int_root(value: &BigInt, k: u32) -> Option<BigInt> {
    let root = value.nth_root(k);
    (num_traits::pow(root.clone(), k as usize) == *value).then_some(root)
}

/// All rational `y` with `y^k = value`.
pub fn rational_kth_roots(value: &Rational, k: u32) -> Vec<Rational> {
    if value.is_zero() {
        return vec![Rational::zero()];
    }
    if value.is_negative() && k.is_multiple_of(2) {
        return Vec::new();
    }
    let num = exact_int_root(&value.numer().abs(), k);
    let den = exact_int_root(value.denom(), k);
    let (Some(num), Some(den)) = (num, den) else {
        return Vec::new();
    };
    let root = Rational::new(num, den);
    if k % 2 == 1 {
        vec![if value.is_negative() { -root } else { root }]
    } else {
        vec![root.clone(), -root]
    }
}

/// Generalized binomial coefficients `C(alpha, m)` for `m = 0..count` by the
/// multiplicative recurrence `C(alpha, m) = C(alpha, m-1) (alpha - m + 1) / m`.
pub fn binomial_sequence(alpha: &Rational, count: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(count);
    let mut current = Rational::one();
    for m in 0..count {
        if m > 0 {
            current = current * (alpha - int(m as i64 - 1)) / int(m as i64);
        }
        out.push(current.clone());
    }
    out
}
