//! Vanishing orders of linear systems at a point.
//!
//! A family of forms is evaluated along a local expansion; the orders
//! achieved by nonzero linear combinations are found by exact elimination,
//! and from them the normal-form exponents, ramification indices and gap
//! values follow.
//!
//! At a fixed point each evaluated form is `z^j R(z^k)`, so forms whose
//! offsets differ mod `k` never cancel each other and can be eliminated
//! separately. Root constants are nonzero scalars and do not change the span,
//! which is why the symbolic expansions give the answer for every choice of
//! roots at once.

use std::collections::BTreeMap;

use crate::arith::FieldElem;
use crate::charts::{local_expansion, LocalExpansion, PointSpec, Root};
use crate::curve::{GFCurve, GradedBasis};
use crate::error::{Error, Result};
use crate::series::TruncatedSeries;

/// Tag of an evaluated form: the residue of its `z`-offset modulo the
/// stride, plus the reduced exponents of the symbolic roots it carries.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassKey {
    pub residue: usize,
    pub roots: Vec<u32>,
}

/// `z^(class.residue) * series(z^stride)`.
#[derive(Debug, Clone)]
pub struct EvaluatedForm {
    pub class: ClassKey,
    pub series: TruncatedSeries,
}

#[derive(Debug, Clone)]
pub struct FormMatrix {
    pub stride: usize,
    pub truncation: usize,
    pub forms: Vec<EvaluatedForm>,
}

pub fn evaluate_forms(basis: &GradedBasis, expansion: &LocalExpansion) -> Result<FormMatrix> {
    let n1 = expansion.coords.len();
    if let Some(m) = basis.monomials.iter().find(|m| m.exponents().len() != n1) {
        return Err(Error::InvalidArgument(format!("monomial {m} has the wrong number of variables")));
    }
    let k = expansion.k;
    let stride = expansion.stride;
    let tz = expansion.zeta_truncation();
    let field = &expansion.field;

    let mut powers: Vec<Vec<TruncatedSeries>> = Vec::with_capacity(n1);
    for (i, c) in expansion.coords.iter().enumerate() {
        let top = basis.monomials.iter().map(|m| m.exponents()[i]).max().unwrap_or(0);
        let mut row = vec![TruncatedSeries::one(field, tz)];
        for e in 1..=top as usize {
            let next = row[e - 1].checked_mul(&c.series)?;
            row.push(next);
        }
        powers.push(row);
    }

    let mut forms = Vec::with_capacity(basis.len());
    for m in &basis.monomials {
        let e = m.exponents();
        let mut offset = 0;
        let mut scalar = FieldElem::one(field);
        let mut roots = Vec::new();
        let mut series: Option<TruncatedSeries> = None;
        for (i, c) in expansion.coords.iter().enumerate() {
            offset += e[i] as usize * c.offset;
            match &c.root {
                Root::Known(r) => {
                    if !expansion.generic && e[i] > 0 {
                        scalar = &scalar * &r.pow(e[i] as u64);
                    }
                }
                Root::Symbolic { .. } => roots.push(e[i] % k),
            }
            if e[i] > 0 {
                let p = &powers[i][e[i] as usize];
                series = Some(match series {
                    None => p.clone(),
                    Some(s) => s.checked_mul(p)?,
                });
            }
        }
        let series = series.unwrap_or_else(|| TruncatedSeries::one(field, tz));
        let series = series.shift(offset / stride);
        let series = if scalar.is_one() { series } else { series.scale(&scalar) };
        forms.push(EvaluatedForm {
            class: ClassKey {
                residue: offset % stride,
                roots,
            },
            series,
        });
    }
    Ok(FormMatrix {
        stride,
        truncation: expansion.truncation,
        forms,
    })
}

/// Orders achieved by nonzero combinations of the rows, by order-pivoted
/// elimination. Among rows of equal minimal order the lowest index pivots.
/// `Err(n)` reports `n` rows that vanish identically to the truncation.
fn eliminate(rows: Vec<TruncatedSeries>) -> std::result::Result<Vec<usize>, usize> {
    let mut rows: Vec<Vec<FieldElem>> = rows.into_iter().map(TruncatedSeries::into_coeffs).collect();
    let order_of = |r: &[FieldElem]| r.iter().position(|c| !c.is_zero());
    let mut orders: Vec<Option<usize>> = rows.iter().map(|r| order_of(r)).collect();
    let mut alive: Vec<bool> = vec![true; rows.len()];
    let mut out = Vec::with_capacity(rows.len());
    for _ in 0..rows.len() {
        let dead = (0..rows.len()).filter(|&i| alive[i] && orders[i].is_none()).count();
        if dead > 0 {
            return Err(dead);
        }
        let (piv, o) = (0..rows.len())
            .filter(|&i| alive[i])
            .map(|i| (i, orders[i].unwrap()))
            .min_by_key(|&(i, o)| (o, i))
            .unwrap();
        alive[piv] = false;
        out.push(o);
        let inv = rows[piv][o].inv().expect("pivot is nonzero");
        let pivot: Vec<FieldElem> = rows[piv][o..].iter().map(|c| c * &inv).collect();
        for i in 0..rows.len() {
            if !alive[i] || orders[i] != Some(o) {
                continue;
            }
            let factor = rows[i][o].clone();
            for (slot, p) in rows[i][o..].iter_mut().zip(&pivot) {
                if !p.is_zero() {
                    *slot = &*slot - &(&factor * p);
                }
            }
            orders[i] = order_of(&rows[i]);
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Pivot orders of plain series rows (a single class, stride 1).
pub fn series_pivot_orders(rows: &[TruncatedSeries]) -> Result<Vec<usize>> {
    let truncation = rows.first().map_or(0, TruncatedSeries::truncation);
    eliminate(rows.to_vec()).map_err(|unresolved| Error::TruncationExhausted { truncation, unresolved })
}

/// Orders in `z` achievable by the family, computed class by class.
pub fn pivot_orders(matrix: &FormMatrix) -> Result<Vec<usize>> {
    let mut classes: BTreeMap<usize, Vec<TruncatedSeries>> = BTreeMap::new();
    for f in &matrix.forms {
        classes.entry(f.class.residue).or_default().push(f.series.clone());
    }
    let mut out = Vec::with_capacity(matrix.forms.len());
    for (residue, rows) in classes {
        let orders = eliminate(rows).map_err(|unresolved| Error::TruncationExhausted {
            truncation: matrix.truncation,
            unresolved,
        })?;
        out.extend(orders.into_iter().map(|o| residue + matrix.stride * o));
    }
    out.sort_unstable();
    if out.windows(2).any(|w| w[0] == w[1]) || out.len() != matrix.forms.len() {
        return Err(Error::IndependenceViolated(format!(
            "{} orders for {} forms: {out:?}",
            out.len(),
            matrix.forms.len()
        )));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OscProfile {
    /// `o_0 < o_1 < ... < o_{N-1}`.
    pub orders: Vec<usize>,
    /// `alphas[i-1] = alpha_i = o_i - o_{i-1} - 1` for `i = 1..N-1`.
    pub alphas: Vec<usize>,
    /// `bees[l] = b_l = alpha_{l+1}`, starting at `l = 0`.
    pub bees: Vec<usize>,
    pub truncation: usize,
}

impl OscProfile {
    pub fn from_orders(orders: Vec<usize>, truncation: usize) -> Self {
        let alphas: Vec<usize> = orders.windows(2).map(|w| w[1] - w[0] - 1).collect();
        OscProfile {
            bees: alphas.clone(),
            alphas,
            orders,
            truncation,
        }
    }

    /// `sum b_l`; a point is hyperosculating when this (or `o_0`) is positive.
    pub fn total_ramification(&self) -> usize {
        self.orders[0] + self.bees.iter().sum::<usize>()
    }

    pub fn is_hyperosculating(&self) -> bool {
        self.orders.iter().enumerate().any(|(i, &o)| o != i)
    }
}

/// Largest order any nonzero form of the family can have, plus one.
fn order_cap(curve: &GFCurve, basis: &GradedBasis) -> usize {
    basis.m * curve.degree() as usize + 1
}

pub fn default_truncation(curve: &GFCurve, basis: &GradedBasis) -> usize {
    let g = curve.genus() as usize;
    let k = curve.k() as usize;
    (2 * g + 2 * k).max(basis.len() + 2 * k).min(order_cap(curve, basis))
}

/// Profile at an explicit truncation, without escalation.
pub fn profile_at(curve: &GFCurve, basis: &GradedBasis, point: &PointSpec, truncation: usize) -> Result<OscProfile> {
    let expansion = local_expansion(curve, point, truncation)?;
    let orders = pivot_orders(&evaluate_forms(basis, &expansion)?)?;
    Ok(OscProfile::from_orders(orders, truncation))
}

/// Profile of the family at the point. Starts at `truncation` (or the
/// default) and doubles on exhaustion, up to the degree bound.
pub fn profile(curve: &GFCurve, basis: &GradedBasis, point: &PointSpec, truncation: Option<usize>) -> Result<OscProfile> {
    if basis.is_empty() {
        return Err(Error::DegenerateFamily("the family is empty".into()));
    }
    let cap = order_cap(curve, basis);
    let mut t = truncation.unwrap_or_else(|| default_truncation(curve, basis)).max(1);
    loop {
        match profile_at(curve, basis, point, t) {
            Err(Error::TruncationExhausted { unresolved, .. }) if t >= cap => {
                return Err(Error::DegenerateFamily(format!(
                    "{unresolved} form(s) vanish beyond the degree bound {}",
                    cap - 1
                )))
            }
            Err(Error::TruncationExhausted { .. }) => t = (2 * t).min(cap),
            other => return other,
        }
    }
}

pub fn is_hyperosculating(curve: &GFCurve, basis: &GradedBasis, point: &PointSpec) -> Result<bool> {
    Ok(profile(curve, basis, point, None)?.is_hyperosculating())
}

/// Profile of the standard embedding (the degree-one forms).
pub fn embedding_profile(curve: &GFCurve, point: &PointSpec) -> Result<OscProfile> {
    profile(curve, &curve.monomial_basis(1), point, None)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapData {
    pub gaps: Vec<u64>,
    pub weight: u64,
}

impl GapData {
    pub fn from_gaps(gaps: Vec<u64>) -> Self {
        let weight = gaps.iter().enumerate().map(|(i, &a)| a - (i as u64 + 1)).sum();
        GapData { gaps, weight }
    }
}

/// Gap values from the canonical family `Gamma_r`, which is the canonical
/// linear system.
pub fn gap_sequence(curve: &GFCurve, point: &PointSpec, truncation: Option<usize>) -> Result<GapData> {
    curve.require_genus()?;
    let g = curve.genus();
    let r = curve.canonical_twist() as usize;
    let prof = profile(curve, &curve.monomial_basis(r), point, truncation)?;
    let data = GapData::from_gaps(prof.orders.iter().map(|&o| o as u64 + 1).collect());
    if data.gaps.len() as u64 != g {
        return Err(Error::Internal(format!("{} gaps for genus {g}", data.gaps.len())));
    }
    if data.gaps[0] != 1 || *data.gaps.last().unwrap() > 2 * g - 1 {
        return Err(Error::Internal(format!("gap sequence {:?} out of range", data.gaps)));
    }
    Ok(data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, NumberField, Rational};

    fn q_series(c: &[i64], t: usize) -> TruncatedSeries {
        let q = NumberField::rationals();
        let c: Vec<Rational> = c.iter().map(|&v| int(v)).collect();
        TruncatedSeries::from_rationals(&q, &c, t)
    }

    fn curve(k: u32, n: usize, lambda: &[i64]) -> GFCurve {
        let l: Vec<Rational> = lambda.iter().map(|&v| int(v)).collect();
        GFCurve::with_rationals(k, n, &l).unwrap()
    }

    #[test]
    fn small_matrices() {
        let rows = [q_series(&[1], 4), q_series(&[0, 1], 4), q_series(&[0, 0, 1], 4)];
        assert_eq!(series_pivot_orders(&rows).unwrap(), vec![0, 1, 2]);
        let rows = [q_series(&[1, 1], 4), q_series(&[1, -1], 4)];
        assert_eq!(series_pivot_orders(&rows).unwrap(), vec![0, 1]);
        let rows = [q_series(&[1, 1], 4), q_series(&[2, 2], 4)];
        assert!(matches!(series_pivot_orders(&rows), Err(Error::TruncationExhausted { .. })));
    }

    #[test]
    fn embedding_profiles_at_fixed_points() {
        let c = curve(5, 3, &[-1]);
        let p = embedding_profile(&c, &PointSpec::GenericFixed { axis: 1 }).unwrap();
        assert_eq!(p.orders, vec![0, 1, 5, 10]);
        assert_eq!(p.bees, vec![0, 3, 4]);
        let c = curve(2, 4, &[-1, 2]);
        let p = embedding_profile(&c, &PointSpec::GenericFixed { axis: 3 }).unwrap();
        assert_eq!(p.bees, vec![0, 0, 1, 1]);
    }

    #[test]
    fn gaps_of_two_four() {
        let c = curve(2, 4, &[-1, 2]);
        for axis in 0..=4 {
            let d = gap_sequence(&c, &PointSpec::GenericFixed { axis }, None).unwrap();
            assert_eq!(d.gaps, vec![1, 2, 3, 5, 7]);
            assert_eq!(d.weight, 3);
        }
    }

    #[test]
    fn classic_weight() {
        let c = GFCurve::classic(5).unwrap();
        let d = gap_sequence(&c, &PointSpec::GenericFixed { axis: 2 }, None).unwrap();
        assert_eq!(d.weight, 9);
    }

    #[test]
    fn generic_fiber_is_not_hyperosculating() {
        let c = curve(3, 4, &[-1, 2]);
        let p = embedding_profile(&c, &PointSpec::GenericFiber { t: FieldElem::from_int(c.field(), 7) }).unwrap();
        assert!(!p.is_hyperosculating());
    }
}
