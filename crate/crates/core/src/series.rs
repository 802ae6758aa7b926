//! Dense truncated power series over a number field.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::arith::{binomial_sequence, int, same_field, FieldElem, NumberField, Rational};
use crate::error::{Error, Result};

/// Order of vanishing of a truncated series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    Exact(usize),
    /// Every stored coefficient vanishes; the true order is at least this.
    AtLeast(usize),
}

impl Order {
    pub fn exact(self) -> Option<usize> {
        match self {
            Order::Exact(o) => Some(o),
            Order::AtLeast(_) => None,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Exact(o) => write!(f, "{o}"),
            Order::AtLeast(t) => write!(f, ">= {t}"),
        }
    }
}

/// `c_0 + c_1 z + ... + c_{T-1} z^{T-1} + O(z^T)`; `T` is the number of
/// stored coefficients and is never zero.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    field: Arc<NumberField>,
    coeffs: Vec<FieldElem>,
}

impl TruncatedSeries {
    pub fn from_coeffs(field: &Arc<NumberField>, coeffs: Vec<FieldElem>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument("truncation must be positive".into()));
        }
        if coeffs.iter().any(|c| !same_field(c.field(), field)) {
            return Err(Error::FieldMismatch);
        }
        Ok(TruncatedSeries {
            field: Arc::clone(field),
            coeffs,
        })
    }

    pub fn from_rationals(field: &Arc<NumberField>, coeffs: &[Rational], truncation: usize) -> Self {
        let mut out = Self::zero(field, truncation);
        for (slot, c) in out.coeffs.iter_mut().zip(coeffs) {
            *slot = FieldElem::from_rational(field, c.clone());
        }
        out
    }

    pub fn zero(field: &Arc<NumberField>, truncation: usize) -> Self {
        assert!(truncation > 0, "truncation must be positive");
        TruncatedSeries {
            field: Arc::clone(field),
            coeffs: vec![FieldElem::zero(field); truncation],
        }
    }

    pub fn constant(value: FieldElem, truncation: usize) -> Self {
        let mut out = Self::zero(value.field(), truncation);
        out.coeffs[0] = value;
        out
    }

    pub fn one(field: &Arc<NumberField>, truncation: usize) -> Self {
        Self::constant(FieldElem::one(field), truncation)
    }

    /// `coeff * z^exp`, which is zero when `exp >= truncation`.
    pub fn monomial(coeff: FieldElem, exp: usize, truncation: usize) -> Self {
        let mut out = Self::zero(coeff.field(), truncation);
        if exp < truncation {
            out.coeffs[exp] = coeff;
        }
        out
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<FieldElem> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &FieldElem {
        &self.coeffs[i]
    }

    pub fn order(&self) -> Order {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(o) => Order::Exact(o),
            None => Order::AtLeast(self.truncation()),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(FieldElem::is_zero)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if !same_field(&self.field, &other.field) {
            return Err(Error::FieldMismatch);
        }
        if self.truncation() != other.truncation() {
            return Err(Error::TruncationMismatch {
                left: self.truncation(),
                right: other.truncation(),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(TruncatedSeries {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(TruncatedSeries {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    /// Cauchy product truncated to the common truncation.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let t = self.truncation();
        let mut out = vec![FieldElem::zero(&self.field); t];
        let rhs: Vec<(usize, &FieldElem)> =
            other.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for &(j, b) in &rhs {
                if i + j >= t {
                    break;
                }
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Ok(TruncatedSeries {
            field: Arc::clone(&self.field),
            coeffs: out,
        })
    }

    pub(crate) fn mul(&self, other: &Self) -> Self {
        self.checked_mul(other).expect("incompatible series")
    }

    pub fn scale(&self, factor: &FieldElem) -> Self {
        TruncatedSeries {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn scale_rational(&self, factor: &Rational) -> Self {
        TruncatedSeries {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().map(|c| c.scale(factor)).collect(),
        }
    }

    /// Multiplies by `z^shift`, keeping the truncation.
    pub fn shift(&self, shift: usize) -> Self {
        let t = self.truncation();
        let mut out = vec![FieldElem::zero(&self.field); t];
        if shift < t {
            out[shift..].clone_from_slice(&self.coeffs[..t - shift]);
        }
        TruncatedSeries {
            field: Arc::clone(&self.field),
            coeffs: out,
        }
    }

    /// Substitutes `z -> z^stride` and multiplies by `z^offset`, producing a
    /// series with the given truncation.
    pub fn inflate(&self, stride: usize, offset: usize, truncation: usize) -> Self {
        let mut out = Self::zero(&self.field, truncation);
        for (i, c) in self.coeffs.iter().enumerate() {
            let e = offset + stride * i;
            if e >= truncation {
                break;
            }
            out.coeffs[e] = c.clone();
        }
        out
    }

    pub fn truncate(&self, truncation: usize) -> Self {
        assert!(truncation > 0 && truncation <= self.truncation());
        TruncatedSeries {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs[..truncation].to_vec(),
        }
    }

    /// `self^exp` by repeated squaring.
    pub fn int_pow(&self, mut exp: u64) -> Self {
        let mut acc = Self::one(&self.field, self.truncation());
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `(1 + u)^(1/k)` for `u` with zero constant term.
    ///
    /// A single-term `u = a z^s` goes through the generalized binomial
    /// coefficients directly; anything else through the power recurrence
    /// `m y_m = sum_j ((alpha + 1) j - m) u_j y_{m-j}` derived from
    /// `(1 + u) y' = alpha u' y`.
    pub fn kth_root_one_plus(u: &Self, k: u32) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidArgument(format!("root index {k} must be at least 2")));
        }
        if !u.coeffs[0].is_zero() {
            return Err(Error::NonZeroConstant);
        }
        let support: Vec<usize> = (1..u.truncation()).filter(|&i| !u.coeffs[i].is_zero()).collect();
        match support[..] {
            [] => Ok(Self::one(&u.field, u.truncation())),
            [s] => Ok(root_binomial(u, s, k)),
            _ => Ok(root_recurrence(u, &support, k)),
        }
    }

    /// Value of the truncated polynomial at a real root of the modulus;
    /// sanity checks only.
    pub fn eval_f64(&self, root: f64, z: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * z + c.eval_f64(root))
    }
}

fn root_binomial(u: &TruncatedSeries, s: usize, k: u32) -> TruncatedSeries {
    let t = u.truncation();
    let field = &u.field;
    let a = &u.coeffs[s];
    let binom = binomial_sequence(&Rational::new(1.into(), k.into()), (t - 1) / s + 1);
    let mut out = TruncatedSeries::zero(field, t);
    let mut power = FieldElem::one(field);
    for (m, c) in binom.iter().enumerate() {
        out.coeffs[m * s] = power.scale(c);
        power = &power * a;
    }
    out
}

fn root_recurrence(u: &TruncatedSeries, support: &[usize], k: u32) -> TruncatedSeries {
    let field = &u.field;
    let alpha_plus_one = Rational::new(1.into(), k.into()) + Rational::one();
    let mut y = vec![FieldElem::one(field)];
    for m in 1..u.truncation() {
        let mut acc = FieldElem::zero(field);
        for &j in support.iter().take_while(|&&j| j <= m) {
            let weight = &alpha_plus_one * int(j as i64) - int(m as i64);
            if weight.is_zero() {
                continue;
            }
            acc = &acc + &(&u.coeffs[j] * &y[m - j]).scale(&weight);
        }
        y.push(acc.scale(&Rational::new(1.into(), (m as i64).into())));
    }
    TruncatedSeries {
        field: Arc::clone(field),
        coeffs: y,
    }
}

pub fn series_mul(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<TruncatedSeries> {
    a.checked_mul(b)
}

pub fn series_int_pow(a: &TruncatedSeries, exp: u64) -> TruncatedSeries {
    a.int_pow(exp)
}

pub fn kth_root_one_plus(u: &TruncatedSeries, k: u32) -> Result<TruncatedSeries> {
    TruncatedSeries::kth_root_one_plus(u, k)
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})*z^{i}")?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(z^{})", self.truncation())
    }
}

impl Zero for Order {
    fn zero() -> Self {
        Order::Exact(0)
    }
    fn is_zero(&self) -> bool {
        *self == Order::Exact(0)
    }
}

impl std::ops::Add for Order {
    type Output = Order;
    fn add(self, rhs: Order) -> Order {
        match (self, rhs) {
            (Order::Exact(a), Order::Exact(b)) => Order::Exact(a + b),
            (Order::Exact(a), Order::AtLeast(b)) | (Order::AtLeast(b), Order::Exact(a)) => Order::AtLeast(a + b),
            (Order::AtLeast(a), Order::AtLeast(b)) => Order::AtLeast(a + b),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn q() -> Arc<NumberField> {
        NumberField::rationals()
    }

    fn s(c: &[Rational], t: usize) -> TruncatedSeries {
        TruncatedSeries::from_rationals(&q(), c, t)
    }

    #[test]
    fn products() {
        let one_plus = s(&[int(1), int(1)], 3);
        let one_minus = s(&[int(1), int(-1)], 3);
        assert_eq!(series_mul(&one_plus, &one_minus).unwrap(), s(&[int(1), int(0), int(-1)], 3));

        let z2 = s(&[int(0), int(0), int(1)], 4);
        let z3 = s(&[int(0), int(0), int(0), int(1)], 4);
        let prod = series_mul(&z2, &z3).unwrap();
        assert!(prod.is_zero());
        assert_eq!(prod.order(), Order::AtLeast(4));

        let zero = TruncatedSeries::zero(&q(), 3);
        assert!(series_mul(&one_plus, &zero).unwrap().is_zero());
    }

    #[test]
    fn mismatched_truncation_is_an_error() {
        let a = s(&[int(1)], 3);
        let b = s(&[int(1)], 4);
        assert!(matches!(series_mul(&a, &b), Err(Error::TruncationMismatch { .. })));
    }

    #[test]
    fn powers() {
        let one_plus = s(&[int(1), int(1)], 3);
        assert_eq!(series_int_pow(&one_plus, 2), s(&[int(1), int(2), int(1)], 3));
        assert_eq!(series_int_pow(&one_plus, 0), TruncatedSeries::one(&q(), 3));
        let z3 = s(&[int(0), int(0), int(0), int(1)], 4);
        assert_eq!(series_int_pow(&z3, 2).order(), Order::AtLeast(4));
    }

    #[test]
    fn roots() {
        let zero = TruncatedSeries::zero(&q(), 5);
        assert_eq!(kth_root_one_plus(&zero, 3).unwrap(), TruncatedSeries::one(&q(), 5));

        let z = s(&[int(0), int(1)], 3);
        let root = kth_root_one_plus(&z, 2).unwrap();
        assert_eq!(root, s(&[int(1), rat(1, 2), rat(-1, 8)], 3));
        // (1 + z/2 - z^2/8)^2 = 1 + z + O(z^3)
        assert_eq!(series_int_pow(&root, 2), s(&[int(1), int(1)], 3));

        let z = s(&[int(0), int(1)], 2);
        assert_eq!(kth_root_one_plus(&z, 5).unwrap(), s(&[int(1), rat(1, 5)], 2));

        assert_eq!(
            kth_root_one_plus(&s(&[int(1), int(1)], 3), 2),
            Err(Error::NonZeroConstant)
        );
    }

    #[test]
    fn binomial_and_recurrence_routes_agree() {
        let u = s(&[int(0), int(0), rat(-3, 7)], 13);
        assert_eq!(root_binomial(&u, 2, 3), root_recurrence(&u, &[2], 3));
        let u = s(&[int(0), int(5)], 9);
        assert_eq!(root_binomial(&u, 1, 4), root_recurrence(&u, &[1], 4));

        let mut two_term = vec![int(0), int(0), int(3), int(0), int(0), int(1)];
        two_term.resize(12, int(0));
        let u = s(&two_term, 12);
        let mut one_plus_u = u.clone();
        one_plus_u.coeffs[0] = FieldElem::one(&q());
        assert_eq!(series_int_pow(&kth_root_one_plus(&u, 3).unwrap(), 3), one_plus_u);
    }

    #[test]
    fn inflate_places_coefficients() {
        let a = s(&[int(1), int(2)], 2);
        let b = a.inflate(3, 1, 6);
        assert_eq!(b, s(&[int(0), int(1), int(0), int(0), int(2), int(0)], 6));
    }
}
