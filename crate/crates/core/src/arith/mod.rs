//! Exact scalars: reduced big rationals and elements of a single simple
//! extension `Q[t]/(m)`.

mod field;
mod parse;
mod poly;
mod rational;
mod roots;

pub use field::{field_add, field_inv, field_mul, same_field, FieldElem, NumberField};
pub use rational::{binomial_sequence, format_rational, int, parse_rational, rat, rational_kth_roots, Rational};
pub use roots::kth_roots;

use std::sync::Arc;

/// Parses a polynomial in the generator `t`, e.g. `-t` or `3/2*t^2 + 1`.
pub fn parse_elem(text: &str, field: &Arc<NumberField>) -> crate::Result<FieldElem> {
    parse::parse_elem(text, field)
}
