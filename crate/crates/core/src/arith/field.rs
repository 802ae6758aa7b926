use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::QPoly;
use super::rational::{format_rational, Rational};
use crate::error::{Error, Result};

/// A simple extension `Q[t]/(m(t))`. Degree one is the rational field.
///
/// Irreducibility of `m` is the caller's responsibility; construction only
/// rejects moduli that are not squarefree or (in degree > 1) have a rational
/// root. A reducible modulus that slips through surfaces later as
/// [`Error::ReducibleModulus`] when some inversion hits a zero divisor.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NumberField {
    /// Monic, constant term first, length `degree + 1`.
    modulus: Vec<Rational>,
}

impl NumberField {
    pub fn rationals() -> Arc<Self> {
        Arc::new(NumberField {
            modulus: vec![Rational::zero(), Rational::one()],
        })
    }

    /// Field defined by the given modulus coefficients (constant term first).
    /// The polynomial is made monic.
    pub fn new(coeffs: Vec<Rational>) -> Result<Arc<Self>> {
        let poly = QPoly::new(coeffs);
        let degree = poly
            .degree()
            .filter(|&d| d >= 1)
            .ok_or_else(|| Error::InvalidModulus("degree must be at least 1".into()))?;
        let poly = poly.monic();
        if poly.gcd(&poly.derivative()).degree() != Some(0) {
            return Err(Error::InvalidModulus(format!("{poly} is not squarefree")));
        }
        if degree > 1 {
            if let Some(root) = rational_root(&poly)? {
                return Err(Error::InvalidModulus(format!(
                    "{poly} has the rational root {}",
                    format_rational(&root)
                )));
            }
        }
        Ok(Arc::new(NumberField { modulus: poly.0 }))
    }

    /// `Q[t]/(t^degree - constant)`.
    pub fn binomial(degree: usize, constant: Rational) -> Result<Arc<Self>> {
        let mut coeffs = vec![Rational::zero(); degree + 1];
        coeffs[0] = -constant;
        coeffs[degree] = Rational::one();
        Self::new(coeffs)
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[Rational] {
        &self.modulus
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    /// `Some(c)` when the modulus is `t^d - c`.
    pub fn binomial_constant(&self) -> Option<Rational> {
        let d = self.degree();
        (d > 1 && self.modulus[1..d].iter().all(Zero::is_zero)).then(|| -self.modulus[0].clone())
    }

    pub(crate) fn modulus_poly(&self) -> QPoly {
        QPoly(self.modulus.clone())
    }

    /// Reduces a coefficient vector of any length modulo the modulus.
    fn reduce(&self, mut coeffs: Vec<Rational>) -> Vec<Rational> {
        let d = self.degree();
        if d == 1 {
            // t is the root of t - c, so the element is its evaluation at c.
            let c = -&self.modulus[0];
            let value = QPoly(coeffs).eval(&c);
            return vec![value];
        }
        for i in (d..coeffs.len()).rev() {
            if coeffs[i].is_zero() {
                continue;
            }
            let top = std::mem::take(&mut coeffs[i]);
            for (j, m) in self.modulus[..d].iter().enumerate() {
                if !m.is_zero() {
                    coeffs[i - d + j] -= &top * m;
                }
            }
        }
        coeffs.resize(d, Rational::zero());
        coeffs
    }
}

fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let n = n
        .abs()
        .to_u64()
        .filter(|&v| v <= 1 << 48)
        .ok_or_else(|| Error::InvalidModulus("coefficients too large for the rational-root test".into()))?;
    let mut out = Vec::new();
    let mut i = 1u64;
    while i * i <= n {
        if n % i == 0 {
            out.push(BigInt::from(i));
            if i * i != n {
                out.push(BigInt::from(n / i));
            }
        }
        i += 1;
    }
    Ok(out)
}

fn rational_root(poly: &QPoly) -> Result<Option<Rational>> {
    if poly.0[0].is_zero() {
        return Ok(Some(Rational::zero()));
    }
    let lcm = poly
        .0
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = poly
        .0
        .iter()
        .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let nums = divisors(&ints[0])?;
    let dens = divisors(ints.last().unwrap())?;
    for p in &nums {
        for q in &dens {
            for cand in [Rational::new(p.clone(), q.clone()), Rational::new(-p.clone(), q.clone())] {
                if poly.eval(&cand).is_zero() {
                    return Ok(Some(cand));
                }
            }
        }
    }
    Ok(None)
}

/// An element of a [`NumberField`], in the unique reduced representation
/// `c_0 + c_1 t + ... + c_{d-1} t^{d-1}`.
#[derive(Clone)]
pub struct FieldElem {
    field: Arc<NumberField>,
    coeffs: Vec<Rational>,
}

pub fn same_field(a: &Arc<NumberField>, b: &Arc<NumberField>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl FieldElem {
    pub fn from_coeffs(field: &Arc<NumberField>, coeffs: Vec<Rational>) -> Self {
        let coeffs = field.reduce(coeffs);
        FieldElem {
            field: Arc::clone(field),
            coeffs,
        }
    }

    pub fn from_rational(field: &Arc<NumberField>, value: Rational) -> Self {
        let mut coeffs = vec![Rational::zero(); field.degree()];
        coeffs[0] = value;
        FieldElem {
            field: Arc::clone(field),
            coeffs,
        }
    }

    pub fn from_int(field: &Arc<NumberField>, value: i64) -> Self {
        Self::from_rational(field, Rational::from_integer(value.into()))
    }

    pub fn zero(field: &Arc<NumberField>) -> Self {
        Self::from_rational(field, Rational::zero())
    }

    pub fn one(field: &Arc<NumberField>) -> Self {
        Self::from_rational(field, Rational::one())
    }

    /// The class of `t`.
    pub fn generator(field: &Arc<NumberField>) -> Self {
        Self::from_coeffs(field, vec![Rational::zero(), Rational::one()])
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| &self.coeffs[0])
    }

    /// Re-expresses a rational element in another field.
    pub fn lift_to(&self, field: &Arc<NumberField>) -> Result<Self> {
        if same_field(&self.field, field) {
            return Ok(self.clone());
        }
        match self.as_rational() {
            Some(q) if self.field.is_rational() => Ok(Self::from_rational(field, q.clone())),
            _ => Err(Error::FieldMismatch),
        }
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        FieldElem {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        Ok(FieldElem {
            field: Arc::clone(&self.field),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        Ok(self.mul_unchecked(other))
    }

    /// Inverse by the extended Euclidean algorithm against the modulus.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.field.is_rational() {
            return Ok(Self::from_rational(&self.field, self.coeffs[0].recip()));
        }
        let (g, s) = QPoly::new(self.coeffs.clone()).gcd_with_cofactor(&self.field.modulus_poly());
        if g.degree() != Some(0) {
            return Err(Error::ReducibleModulus {
                factor: g.to_string(),
            });
        }
        Ok(Self::from_coeffs(&self.field, s.0))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.checked_mul(&other.inv()?)
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if same_field(&self.field, &other.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        FieldElem {
            field: Arc::clone(&self.field),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let d = self.field.degree();
        if d == 1 {
            return FieldElem {
                field: Arc::clone(&self.field),
                coeffs: vec![&self.coeffs[0] * &other.coeffs[0]],
            };
        }
        let mut prod = vec![Rational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Self::from_coeffs(&self.field, prod)
    }

    /// Numerical value at a real root of the modulus; sanity checks only.
    pub fn eval_f64(&self, root: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * root + c.to_f64().unwrap_or(f64::NAN))
    }
}

pub fn field_add(a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
    a.checked_add(b)
}

pub fn field_mul(a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
    a.checked_mul(b)
}

pub fn field_inv(a: &FieldElem) -> Result<FieldElem> {
    a.inv()
}

// Operator forms panic on mismatched fields; library code only combines
// elements after the boundary has been checked.
impl Add for &FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: &FieldElem) -> FieldElem {
        self.checked_add(rhs).expect("field mismatch")
    }
}

impl Sub for &FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: &FieldElem) -> FieldElem {
        self.checked_sub(rhs).expect("field mismatch")
    }
}

impl Mul for &FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: &FieldElem) -> FieldElem {
        self.checked_mul(rhs).expect("field mismatch")
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        same_field(&self.field, &other.field) && self.coeffs == other.coeffs
    }
}

impl Eq for FieldElem {}

impl PartialOrd for FieldElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on the coordinate vector (constant term first); used only
/// to pick deterministic representatives.
impl Ord for FieldElem {
    fn cmp(&self, other: &Self) -> Ordering {
        self.field
            .modulus
            .cmp(&other.field.modulus)
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return write!(f, "{}", format_rational(q));
        }
        write!(f, "{}", QPoly::new(self.coeffs.clone()))
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
