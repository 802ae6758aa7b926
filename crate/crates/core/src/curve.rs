//! Generalized Fermat curves of type `(k, n)` and their graded coordinate
//! rings.
//!
//! The curve `C(k, n, lambda)` is the complete intersection in `P^n` cut out by
//!
//! ```text
//! x_i^k = -mu_i x_0^k - x_1^k      (2 <= i <= n)
//! ```
//!
//! with `mu_2 = 1` and `mu_i = lambda_{i-2}` for `i >= 3`. The rewriting rules
//! `x_i^k -> ...` form a Groebner basis, so monomials with `e_i < k` for all
//! `i >= 2` are a basis of each graded piece.

use std::fmt;
use std::sync::Arc;

use crate::arith::{FieldElem, NumberField, Rational};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct GFCurve {
    k: u32,
    n: usize,
    lambda: Vec<FieldElem>,
    field: Arc<NumberField>,
}

impl GFCurve {
    /// Builds a curve, checking only that `lambda` lies in `P_n`. Use
    /// [`GFCurve::validate`] when the curve must also have genus at least 2.
    pub fn new(k: u32, n: usize, lambda: Vec<FieldElem>, field: &Arc<NumberField>) -> Result<Self> {
        if k < 2 || n < 2 {
            return Err(Error::InvalidArgument(format!("need k, n >= 2, got ({k}, {n})")));
        }
        if k > 64 || n > 24 || (k as u128).checked_pow(n as u32).is_none_or(|p| p > 1 << 40) {
            return Err(Error::Overflow("k^n"));
        }
        if lambda.len() != n - 2 {
            return Err(Error::InvalidArgument(format!(
                "type ({k}, {n}) needs {} parameter(s), got {}",
                n - 2,
                lambda.len()
            )));
        }
        let lambda = lambda
            .into_iter()
            .map(|l| l.lift_to(field))
            .collect::<Result<Vec<_>>>()?;
        for (i, l) in lambda.iter().enumerate() {
            if l.is_zero() || l.is_one() {
                return Err(Error::NotInModuli(format!("lambda_{} = {l} is 0 or 1", i + 1)));
            }
            if let Some(j) = lambda[..i].iter().position(|m| m == l) {
                return Err(Error::NotInModuli(format!("lambda_{} = lambda_{} = {l}", j + 1, i + 1)));
            }
        }
        Ok(GFCurve {
            k,
            n,
            lambda,
            field: Arc::clone(field),
        })
    }

    /// [`GFCurve::new`] plus the requirement `(k-1)(n-1) > 2`.
    pub fn validate(k: u32, n: usize, lambda: Vec<FieldElem>, field: &Arc<NumberField>) -> Result<Self> {
        let curve = Self::new(k, n, lambda, field)?;
        curve.require_genus()?;
        Ok(curve)
    }

    pub fn with_rationals(k: u32, n: usize, lambda: &[Rational]) -> Result<Self> {
        let q = NumberField::rationals();
        let lambda = lambda.iter().map(|l| FieldElem::from_rational(&q, l.clone())).collect();
        Self::new(k, n, lambda, &q)
    }

    /// The classic Fermat curve `x_0^k + x_1^k + x_2^k = 0`.
    pub fn classic(k: u32) -> Result<Self> {
        Self::with_rationals(k, 2, &[])
    }

    /// Same curve with parameters re-expressed in a larger field. Only
    /// rational parameters can move between fields.
    pub fn over(&self, field: &Arc<NumberField>) -> Result<Self> {
        Self::new(self.k, self.n, self.lambda.clone(), field)
    }

    pub(crate) fn require_genus(&self) -> Result<()> {
        let product = (self.k as u64 - 1) * (self.n as u64 - 1);
        if product <= 2 {
            return Err(Error::GenusTooSmall {
                k: self.k,
                n: self.n,
                product,
            });
        }
        Ok(())
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lambda(&self) -> &[FieldElem] {
        &self.lambda
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn genus(&self) -> u64 {
        genus(self.k, self.n)
    }

    pub fn canonical_twist(&self) -> i64 {
        canonical_twist(self.k, self.n)
    }

    pub fn degree(&self) -> u64 {
        (self.k as u64).pow(self.n as u32 - 1)
    }

    /// Number of fixed points of the standard generators, `(n+1) k^(n-1)`.
    pub fn fixed_point_count(&self) -> u64 {
        (self.n as u64 + 1) * self.degree()
    }

    /// `mu_i` in `x_i^k = -mu_i x_0^k - x_1^k`; `mu_0` is unused and `mu_1 = 0`.
    pub fn mu(&self, i: usize) -> FieldElem {
        match i {
            0 | 1 => FieldElem::zero(&self.field),
            2 => FieldElem::one(&self.field),
            _ => self.lambda[i - 3].clone(),
        }
    }

    /// Position of `x_i` on the branch line `t = -(x_1/x_0)^k`: `x_i`
    /// vanishes exactly over `t = mu_i` (`x_0` over `t = infinity`).
    pub fn markings(&self) -> Vec<crate::moduli::P1Point> {
        use crate::moduli::P1Point;
        let mut out = vec![P1Point::infinity(&self.field)];
        out.extend((1..=self.n).map(|i| P1Point::affine(self.mu(i))));
        out
    }

    /// `x_i^k + mu_i x_0^k + x_1^k` at the given coordinates, for each `i >= 2`.
    pub fn residuals(&self, coords: &[FieldElem]) -> Result<Vec<FieldElem>> {
        if coords.len() != self.n + 1 {
            return Err(Error::InvalidArgument(format!(
                "expected {} coordinates, got {}",
                self.n + 1,
                coords.len()
            )));
        }
        let k = self.k as u64;
        let x0k = coords[0].pow(k);
        let x1k = coords[1].pow(k);
        (2..=self.n)
            .map(|i| {
                let mu = self.mu(i).lift_to(coords[i].field())?;
                Ok(&(&coords[i].pow(k) + &(&mu * &x0k)) + &x1k)
            })
            .collect()
    }

    pub fn contains(&self, coords: &[FieldElem]) -> Result<bool> {
        Ok(coords.iter().any(|c| !c.is_zero()) && self.residuals(coords)?.iter().all(FieldElem::is_zero))
    }

    pub fn monomial_basis(&self, m: usize) -> GradedBasis {
        GradedBasis {
            m,
            monomials: normal_monomials(self.k, self.n + 1, self.n + 1, m),
        }
    }

    pub fn dim_gamma(&self, m: usize) -> usize {
        self.monomial_basis(m).len()
    }

    pub fn hilbert_coefficient(&self, m: usize) -> u64 {
        hilbert_coefficient(self.k, self.n, m)
    }

    /// Dimension of `Q(r - j)`, the piece multiplied by `x_n^j` in the
    /// canonical space.
    pub fn s_dim(&self, j: u32) -> Result<i64> {
        if j >= self.k {
            return Err(Error::InvalidArgument(format!("j = {j} must be below k = {}", self.k)));
        }
        Ok(s_dim(self.k, self.n, j))
    }

    /// Normal-form monomials of degree `m - j` avoiding `x_n`; empty when
    /// `m < j`.
    pub fn sub_basis_q(&self, m: usize, j: u32) -> Result<GradedBasis> {
        if j >= self.k {
            return Err(Error::InvalidArgument(format!("j = {j} must be below k = {}", self.k)));
        }
        let Some(deg) = m.checked_sub(j as usize) else {
            return Ok(GradedBasis {
                m: 0,
                monomials: Vec::new(),
            });
        };
        Ok(GradedBasis {
            m: deg,
            monomials: normal_monomials(self.k, self.n + 1, self.n, deg),
        })
    }

    /// The type `(k, n-1)` curve obtained by forgetting `x_n`.
    pub fn quotient_curve(&self) -> Result<GFCurve> {
        if self.n == 2 {
            return Err(Error::NoQuotient);
        }
        GFCurve::new(self.k, self.n - 1, self.lambda[..self.n - 3].to_vec(), &self.field)
    }

    /// `dim H^0(O(m))` by Riemann-Roch, using `omega = O(r)`.
    pub fn h_prime(&self, m: i64) -> i64 {
        let r = self.canonical_twist();
        let g = self.genus() as i64;
        let d0 = self.degree() as i64;
        if m < 0 {
            0
        } else if m == 0 {
            1
        } else if m == r {
            g
        } else if m > r {
            m * d0 - g + 1
        } else {
            // 0 < m < r: the coordinate ring is projectively normal, so
            // h^0 equals the Hilbert function.
            self.hilbert_coefficient(m as usize) as i64
        }
    }
}

impl fmt::Debug for GFCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C(k={}, n={}, lambda=[", self.k, self.n)?;
        for (i, l) in self.lambda.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "])")
    }
}

impl fmt::Display for GFCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub fn genus(k: u32, n: usize) -> u64 {
    let k = k as i128;
    let n = n as i128;
    let value = (k.pow(n as u32 - 1) * ((n - 1) * (k - 1) - 2) + 2) / 2;
    value as u64
}

/// `k^(n-2) (n(k-1) - 2 - 2j) / 2 + delta_{j, k-1}`, for `0 <= j < k`.
pub fn s_dim(k: u32, n: usize, j: u32) -> i64 {
    let (k, n, j) = (k as i64, n as i64, j as i64);
    k.pow(n as u32 - 2) * (n * (k - 1) - 2 - 2 * j) / 2 + i64::from(j == k - 1)
}

pub fn canonical_twist(k: u32, n: usize) -> i64 {
    (n as i64 - 1) * (k as i64 - 1) - 2
}

fn binomial(n: i128, r: i128) -> i128 {
    if r < 0 || n < r {
        return 0;
    }
    (0..r).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Coefficient of `t^m` in `(1 - t^k)^(n-1) / (1 - t)^(n+1)`.
pub fn hilbert_coefficient(k: u32, n: usize, m: usize) -> u64 {
    let (k, n, m) = (k as i128, n as i128, m as i128);
    let total: i128 = (0..n)
        .map(|j| {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * binomial(n - 1, j) * binomial(m - j * k + n, n)
        })
        .sum();
    total as u64
}

/// Exponent vector `(e_0, ..., e_n)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_normal(&self, k: u32) -> bool {
        self.0.iter().skip(2).all(|&e| e < k)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            match e {
                1 => write!(f, "x{i}")?,
                _ => write!(f, "x{i}^{e}")?,
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedBasis {
    pub m: usize,
    pub monomials: Vec<Monomial>,
}

impl GradedBasis {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }
}

/// Degree-`m` exponent vectors of length `vars`, supported on the first
/// `active` variables, with `e_i < k` for `i >= 2`. Lexicographically
/// descending, so `x_0^m` comes first.
fn normal_monomials(k: u32, vars: usize, active: usize, m: usize) -> Vec<Monomial> {
    fn rec(k: u32, active: usize, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == active {
            if i < 2 || left < k {
                cur[i] = left;
                out.push(Monomial(cur.clone()));
                cur[i] = 0;
            }
            return;
        }
        let cap = if i < 2 { left } else { left.min(k - 1) };
        for e in (0..=cap).rev() {
            cur[i] = e;
            rec(k, active, i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    if active == 0 {
        if m == 0 {
            out.push(Monomial(vec![0; vars]));
        }
        return out;
    }
    let mut cur = vec![0; vars];
    rec(k, active, 0, m as u32, &mut cur, &mut out);
    out
}
