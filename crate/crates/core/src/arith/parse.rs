//! Text form of field elements: a polynomial in the generator `t`, such as
//! `-t`, `3/2*t^2 - t + 1`, `t^4/2` or the `(c)*t^i` form printed by
//! `Display`.

use std::sync::Arc;

use num_traits::{One, Zero};

use super::field::{FieldElem, NumberField};
use super::rational::{parse_rational, Rational};
use crate::error::{Error, Result};

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.text[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.text[self.pos..].chars().next().unwrap().len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<&str> {
        self.skip_ws();
        let start = self.pos;
        let len = self.text[start..].bytes().take_while(u8::is_ascii_digit).count();
        self.pos += len;
        (len > 0).then(|| &self.text[start..start + len])
    }

    /// `p` or `p/q`, unsigned.
    fn rational(&mut self) -> Option<Result<Rational>> {
        let start = self.pos;
        self.digits()?;
        let save = self.pos;
        if self.eat('/') && self.digits().is_none() {
            self.pos = save;
        }
        Some(parse_rational(&self.text[start..self.pos]))
    }
}

pub(crate) fn parse_elem(text: &str, field: &Arc<NumberField>) -> Result<FieldElem> {
    let err = || Error::Parse(text.to_string());
    let mut cur = Cursor { text, pos: 0 };
    let mut coeffs: Vec<Rational> = Vec::new();
    let mut first = true;
    while cur.peek().is_some() {
        let mut sign = Rational::one();
        if cur.eat('-') {
            sign = -sign;
        } else if !cur.eat('+') && !first {
            return Err(err());
        }
        first = false;

        let mut coef: Option<Rational> = None;
        if cur.eat('(') {
            let negative = cur.eat('-');
            let q = cur.rational().ok_or_else(err)??;
            if !cur.eat(')') {
                return Err(err());
            }
            coef = Some(if negative { -q } else { q });
        } else if let Some(q) = cur.rational() {
            coef = Some(q?);
        }
        if coef.is_some() {
            cur.eat('*');
        }
        let mut power = None;
        if cur.eat('t') {
            power = Some(1usize);
            if cur.eat('^') {
                let e = cur.digits().ok_or_else(err)?;
                power = Some(e.parse().map_err(|_| err())?);
            }
        }
        if coef.is_none() && power.is_none() {
            return Err(err());
        }
        let mut value = coef.unwrap_or_else(Rational::one) * sign;
        if cur.eat('/') {
            let d = cur.digits().ok_or_else(err)?;
            let d = parse_rational(d)?;
            if d.is_zero() {
                return Err(err());
            }
            value /= d;
        }
        let e = power.unwrap_or(0);
        if coeffs.len() <= e {
            coeffs.resize(e + 1, Rational::zero());
        }
        coeffs[e] += value;
    }
    if first {
        return Err(err());
    }
    Ok(FieldElem::from_coeffs(field, coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    #[test]
    fn polynomials() {
        let k = NumberField::binomial(5, int(2)).unwrap();
        let t = FieldElem::generator(&k);
        assert_eq!(parse_elem("-t", &k).unwrap(), -&t);
        assert_eq!(parse_elem("t^4/2", &k).unwrap(), t.inv().unwrap());
        assert_eq!(parse_elem("t^5", &k).unwrap(), FieldElem::from_int(&k, 2));
        let x = parse_elem("3/2*t^2 - t + 1", &k).unwrap();
        assert_eq!(x.coeffs()[..3], [int(1), int(-1), rat(3, 2)]);
        assert_eq!(parse_elem(&x.to_string(), &k).unwrap(), x);
        let y = parse_elem("(-1/2)*t^4 + (3)*t", &k).unwrap();
        assert_eq!(parse_elem(&y.to_string(), &k).unwrap(), y);
        for bad in ["", "t^", "1/0", "2 3", "x", "+"] {
            assert!(parse_elem(bad, &k).is_err(), "{bad}");
        }
    }

    #[test]
    fn rationals() {
        let q = NumberField::rationals();
        assert_eq!(parse_elem("-7/3", &q).unwrap(), FieldElem::from_rational(&q, rat(-7, 3)));
        assert_eq!(parse_elem("5", &q).unwrap(), FieldElem::from_int(&q, 5));
    }
}
