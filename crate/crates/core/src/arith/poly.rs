//! Dense univariate polynomials over the rationals, coefficients stored from
//! the constant term upwards. Only what the number-field layer needs.

use num_traits::{One, Zero};

use super::rational::{format_rational, int, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct QPoly(pub Vec<Rational>);

impl QPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPoly(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.0.last()
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(lead) => QPoly(self.0.iter().map(|c| c / lead).collect()),
        }
    }

    pub fn derivative(&self) -> Self {
        QPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let len = self.0.len().max(other.0.len());
        let zero = Rational::zero();
        QPoly::new(
            (0..len)
                .map(|i| self.0.get(i).unwrap_or(&zero) - other.0.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return QPoly(Vec::new());
        }
        let mut out = vec![Rational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }

    /// Euclidean division; `divisor` must be nonzero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading().unwrap();
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            return (QPoly(Vec::new()), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let factor = &rem[i] / lead;
            for (j, c) in divisor.0.iter().enumerate() {
                let idx = i - dd + j;
                rem[idx] = &rem[idx] - &factor * c;
            }
            quot[i - dd] = factor;
        }
        rem.truncate(dd);
        (QPoly::new(quot), QPoly::new(rem))
    }

    /// Extended Euclid: returns monic `g = gcd(self, other)` and `s` with
    /// `s * self = g (mod other)`.
    pub fn gcd_with_cofactor(&self, other: &Self) -> (Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (QPoly(vec![Rational::one()]), QPoly(Vec::new()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        match r0.leading().cloned() {
            None => (r0, s0),
            Some(lead) => (r0.monic(), QPoly(s0.0.iter().map(|c| c / &lead).collect())),
        }
    }

    pub fn gcd(&self, other: &Self) -> Self {
        self.gcd_with_cofactor(other).0
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.0
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }
}

impl std::fmt::Display for QPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", format_rational(c))?,
                1 => write!(f, "({})*t", format_rational(c))?,
                _ => write!(f, "({})*t^{i}", format_rational(c))?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;

    fn p(c: &[i64]) -> QPoly {
        QPoly::new(c.iter().map(|&v| int(v)).collect())
    }

    #[test]
    fn division_and_gcd() {
        // (t^2 - 1) = (t - 1)(t + 1)
        let (q, r) = p(&[-1, 0, 1]).div_rem(&p(&[-1, 1]));
        assert_eq!(q, p(&[1, 1]));
        assert!(r.is_zero());
        assert_eq!(p(&[-1, 0, 1]).gcd(&p(&[1, 2, 1])), p(&[1, 1]));
    }

    #[test]
    fn cofactor_inverts_modulo() {
        let m = p(&[-2, 0, 0, 0, 0, 1]);
        let a = p(&[0, 1]);
        let (g, s) = a.gcd_with_cofactor(&m);
        assert_eq!(g, p(&[1]));
        let (_, r) = a.mul(&s).div_rem(&m);
        assert_eq!(r, p(&[1]));
        assert_eq!(s, QPoly::new(vec![int(0), int(0), int(0), int(0), rat(1, 2)]));
    }
}
