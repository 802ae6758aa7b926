//! Closed forms and checks built on the osculation engine: the weight lower
//! bound, Pluecker closure, ramification totals, the strictness diagnostic
//! through the quotient covering, and membership probes for the loci where
//! the bound is attained.

use crate::charts::{branch_values, move_to_axis, project, PointSpec};
use crate::curve::{genus, s_dim, GFCurve, GradedBasis};
use crate::error::{Error, Result};
use crate::osc::{embedding_profile, gap_sequence, profile};

/// `(k-1)(k^(n-1)-2)(k^n+k^(n-1)-12)/24`.
pub fn w_hat(k: u32, n: usize) -> Result<u64> {
    let (kk, n) = (k as i128, n as u32);
    let kn1 = kk.pow(n - 1);
    let num = (kk - 1) * (kn1 - 2) * (kk.pow(n) + kn1 - 12);
    if num % 24 != 0 || num < 0 {
        return Err(Error::Internal(format!("w_hat({k}, {n}) = {num}/24 is not a nonnegative integer")));
    }
    u64::try_from(num / 24).map_err(|_| Error::Overflow("w_hat"))
}

/// The smallest possible weight when every class `x_n^j Q(r-j)` contributes
/// the orders `j, j+k, j+2k, ...`:
/// `sum_j sum_{i < s(r-j)} (k i + j + 1) - g(g+1)/2`.
pub fn w_hat_sum_check(k: u32, n: usize) -> i64 {
    let g = genus(k, n) as i64;
    let mut total = 0i64;
    for j in 0..k {
        for i in 0..s_dim(k, n, j).max(0) {
            total += k as i64 * i + j as i64 + 1;
        }
    }
    total - g * (g + 1) / 2
}

/// `b_0, ..., b_{n-1}` summed over the fixed points, in closed form.
pub fn b_totals(curve: &GFCurve) -> Vec<u64> {
    let f = curve.fixed_point_count();
    let k = curve.k() as u64;
    (0..curve.n())
        .map(|l| match l {
            0 => 0,
            1 => f * (k - 2),
            _ => f * (k - 1),
        })
        .collect()
}

/// The same totals from the embedding profile at one point per axis, times
/// the number of points on that axis.
pub fn b_totals_from_profiles(curve: &GFCurve) -> Result<Vec<u64>> {
    let mut totals = vec![0u64; curve.n()];
    for axis in 0..=curve.n() {
        let p = embedding_profile(curve, &PointSpec::GenericFixed { axis })?;
        for (t, b) in totals.iter_mut().zip(&p.bees) {
            *t += *b as u64 * curve.degree();
        }
    }
    Ok(totals)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlueckerData {
    /// `d_0, ..., d_n`; `d_{-1} = 0` is implicit.
    pub dees: Vec<i64>,
    pub bee_totals: Vec<u64>,
}

/// Runs `d_{l+1} = 2 d_l - d_{l-1} + 2g - 2 - b_l` forward from `d_{-1} = 0`,
/// `d_0 = k^(n-1)` and fails unless `d_n = 0`.
pub fn pluecker_sequence(curve: &GFCurve) -> Result<PlueckerData> {
    let bees = b_totals(curve);
    let g = curve.genus() as i64;
    let mut dees = vec![curve.degree() as i64];
    let mut prev = 0i64;
    for &b in &bees {
        let cur = *dees.last().unwrap();
        dees.push(2 * cur - prev + 2 * g - 2 - b as i64);
        prev = cur;
    }
    let last = *dees.last().unwrap();
    if last != 0 {
        return Err(Error::PlueckerClosure(last));
    }
    Ok(PlueckerData { dees, bee_totals: bees })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrictnessReport {
    pub point: PointSpec,
    pub w_hat: u64,
    pub w: u64,
    pub gaps: Vec<u64>,
    /// Whether the image point is hyperosculating for `Q(r - j)`, `j = 0..k`.
    pub per_j: Vec<bool>,
    pub predicted_equal: bool,
    /// `predicted_equal` agrees with `w == w_hat`.
    pub consistent: bool,
}

/// The family `Q(r - j)` on the quotient, empty when `r < j`.
fn quotient_family(quotient: &GFCurve, r: i64, j: u32) -> GradedBasis {
    match usize::try_from(r - j as i64) {
        Ok(m) => quotient.monomial_basis(m),
        Err(_) => GradedBasis {
            m: 0,
            monomials: Vec::new(),
        },
    }
}

fn family_flag(quotient: &GFCurve, basis: &GradedBasis, point: &PointSpec, truncation: Option<usize>) -> Result<bool> {
    if basis.is_empty() {
        return Ok(false);
    }
    Ok(profile(quotient, basis, point, truncation)?.is_hyperosculating())
}

pub fn strictness_diagnostic(curve: &GFCurve, p: &PointSpec, truncation: Option<usize>) -> Result<StrictnessReport> {
    curve.require_genus()?;
    let n = curve.n();
    if n < 3 {
        return Err(Error::NoQuotient);
    }
    if p.fixed_axis().is_none() {
        return Err(Error::InvalidArgument("the strictness diagnostic needs a fixed point".into()));
    }
    let data = gap_sequence(curve, p, truncation)?;
    let (moved, q) = move_to_axis(curve, p, n)?;
    let quotient = moved.quotient_curve()?;
    let image = project(&moved, &q)?;
    let r = curve.canonical_twist();
    let per_j = (0..curve.k())
        .map(|j| family_flag(&quotient, &quotient_family(&quotient, r, j), &image, None))
        .collect::<Result<Vec<bool>>>()?;
    let w_hat = w_hat(curve.k(), n)?;
    let predicted_equal = !per_j.iter().any(|&f| f);
    Ok(StrictnessReport {
        point: p.clone(),
        w_hat,
        w: data.weight,
        gaps: data.gaps,
        per_j,
        predicted_equal,
        consistent: predicted_equal == (data.weight == w_hat),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbeMode {
    /// One symbolic point stands for the whole fiber of branch values.
    Generic,
    /// Every branch value explicitly, in the curve's field.
    Embedded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MhoOutcome {
    Member,
    NotMember,
    /// Only some branch values are expressible in the field.
    Undetermined { missing: Vec<String> },
}

/// Whether `lambda` lies in the locus where no branch value is
/// hyperosculating for `Q(r - j)`.
pub fn mho_probe(curve: &GFCurve, j: u32, mode: ProbeMode) -> Result<MhoOutcome> {
    curve.require_genus()?;
    if j >= curve.k() {
        return Err(Error::InvalidArgument(format!("j = {j} must be below k = {}", curve.k())));
    }
    let bv = branch_values(curve)?;
    let basis = quotient_family(&bv.quotient, curve.canonical_twist(), j);
    let flagged = match mode {
        ProbeMode::Generic => family_flag(&bv.quotient, &basis, &bv.generic, None)?,
        ProbeMode::Embedded => {
            if !bv.missing.is_empty() {
                return Err(Error::FieldTooSmall { missing: bv.missing });
            }
            let mut any = false;
            for p in &bv.embedded {
                any |= family_flag(&bv.quotient, &basis, p, None)?;
            }
            if (bv.embedded.len() as u64) < bv.count {
                return Ok(if any {
                    MhoOutcome::NotMember
                } else {
                    MhoOutcome::Undetermined {
                        missing: vec![format!(
                            "{} of {} branch values",
                            bv.count - bv.embedded.len() as u64,
                            bv.count
                        )],
                    }
                });
            }
            any
        }
    };
    Ok(if flagged { MhoOutcome::NotMember } else { MhoOutcome::Member })
}

/// `g^3 - g` minus the given weights; a negative budget means some weight
/// was overcounted.
pub fn residual_weight(curve: &GFCurve, weights: &[u64]) -> Result<i64> {
    let g = curve.genus() as i64;
    let used: i64 = weights.iter().map(|&w| w as i64).sum();
    let left = g * g * g - g - used;
    if left < 0 {
        return Err(Error::Internal(format!("weights exceed g^3 - g by {}", -left)));
    }
    Ok(left)
}

/// Weight at one point of each axis; every fixed point on an axis has the
/// same weight.
pub fn fixed_point_weights(curve: &GFCurve, truncation: Option<usize>) -> Result<Vec<u64>> {
    (0..=curve.n())
        .map(|axis| Ok(gap_sequence(curve, &PointSpec::GenericFixed { axis }, truncation)?.weight))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, FieldElem, NumberField, Rational};

    fn curve(k: u32, n: usize, lambda: &[i64]) -> GFCurve {
        let l: Vec<Rational> = lambda.iter().map(|&v| int(v)).collect();
        GFCurve::with_rationals(k, n, &l).unwrap()
    }

    #[test]
    fn bound_values() {
        assert_eq!(w_hat(2, 4).unwrap(), 3);
        assert_eq!(w_hat(3, 3).unwrap(), 14);
        assert_eq!(w_hat(5, 3).unwrap(), 529);
        assert_eq!(w_hat_sum_check(2, 4), 3);
        assert_eq!(w_hat_sum_check(5, 3), 529);
        assert_eq!(w_hat_sum_check(5, 2), 9);
    }

    #[test]
    fn totals_and_closure() {
        assert_eq!(b_totals(&curve(2, 4, &[-1, 2])), vec![0, 0, 40, 40]);
        assert_eq!(b_totals(&curve(5, 3, &[-1])), vec![0, 300, 400]);
        assert_eq!(b_totals(&curve(3, 4, &[-1, 2])), vec![0, 135, 270, 270]);
        assert_eq!(pluecker_sequence(&curve(2, 4, &[-1, 2])).unwrap().dees, vec![8, 24, 48, 40, 0]);
        assert_eq!(pluecker_sequence(&curve(5, 3, &[-1])).unwrap().dees, vec![25, 200, 225, 0]);
        let c = curve(3, 4, &[-1, 2]);
        assert_eq!(b_totals_from_profiles(&c).unwrap(), b_totals(&c));
    }

    #[test]
    fn residual_budget() {
        let c = curve(2, 4, &[-1, 2]);
        assert_eq!(residual_weight(&c, &[3; 40]).unwrap(), 0);
        assert_eq!(residual_weight(&c, &[]).unwrap(), 120);
        assert!(residual_weight(&c, &[3; 41]).unwrap_err().is_internal());
        assert_eq!(residual_weight(&GFCurve::classic(6).unwrap(), &[25; 18]).unwrap(), 540);
    }

    #[test]
    fn two_four_is_clean() {
        let c = curve(2, 4, &[-1, 2]);
        let rep = strictness_diagnostic(&c, &PointSpec::GenericFixed { axis: 4 }, None).unwrap();
        assert_eq!((rep.w, rep.w_hat), (3, 3));
        assert!(rep.predicted_equal && rep.consistent);
    }

    #[test]
    fn five_three_is_strict() {
        let k = NumberField::binomial(5, int(2)).unwrap();
        let c = curve(5, 3, &[-1]).over(&k).unwrap();
        let t = FieldElem::generator(&k);
        let p = PointSpec::Embedded {
            coords: vec![FieldElem::one(&k), FieldElem::one(&k), -&t, FieldElem::zero(&k)],
        };
        let rep = strictness_diagnostic(&c, &p, None).unwrap();
        assert!(rep.w > 529, "{rep:?}");
        assert!(rep.per_j[4]);
        assert!(rep.consistent);
        assert_eq!(mho_probe(&c, 4, ProbeMode::Generic).unwrap(), MhoOutcome::NotMember);
    }
}
