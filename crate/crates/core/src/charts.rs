//! Points of a curve and exact local parametrizations around them.
//!
//! Every chart has the same shape: one base coordinate is 1, at most one
//! distinguished coordinate equals the local parameter `z`, and every other
//! coordinate is `c_i * (1 + a_i zeta)^(1/k)` (or a general root series at
//! points off the branch locus), where `zeta = z^stride` and `c_i^k = kappa_i`.
//! At a fixed point the stride is `k`, which is the `z^j g(z^k)` structure of
//! the series there.
//!
//! Along the branch coordinate `t = -(x_1/x_0)^k` the equations read
//! `(x_i/x_0)^k = eps_i (t - mu_i)` with `eps_1 = -1`, `mu_1 = 0` and
//! `eps_i = 1` for `i >= 2`.

use std::sync::Arc;

use crate::arith::{kth_roots, FieldElem, NumberField};
use crate::curve::GFCurve;
use crate::error::{Error, Result};
use crate::moduli::{normalize, sym_action, P1Point, Permutation};
use crate::series::TruncatedSeries;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PointSpec {
    /// Any of the `k^(n-1)` points where `x_axis` vanishes, with the root
    /// choices left symbolic. All of them share one gap sequence, since the
    /// deck group permutes them.
    GenericFixed { axis: usize },
    /// Any point over the non-branch value `t` of `t = -(x_1/x_0)^k`.
    GenericFiber { t: FieldElem },
    /// Explicit coordinates, scaled so the first nonzero one is 1.
    Embedded { coords: Vec<FieldElem> },
}

impl PointSpec {
    /// Normalizes and wraps explicit coordinates.
    pub fn embedded(coords: Vec<FieldElem>) -> Result<Self> {
        let lead = coords
            .iter()
            .find(|c| !c.is_zero())
            .ok_or_else(|| Error::NotOnCurve("all coordinates vanish".into()))?
            .inv()?;
        let coords = coords.iter().map(|c| c.checked_mul(&lead)).collect::<Result<_>>()?;
        Ok(PointSpec::Embedded { coords })
    }

    pub fn is_generic(&self) -> bool {
        !matches!(self, PointSpec::Embedded { .. })
    }

    pub fn field(&self) -> Option<&Arc<NumberField>> {
        match self {
            PointSpec::GenericFixed { .. } => None,
            PointSpec::GenericFiber { t } => Some(t.field()),
            PointSpec::Embedded { coords } => Some(coords[0].field()),
        }
    }

    /// The vanishing coordinate, if this is a fixed point.
    pub fn fixed_axis(&self) -> Option<usize> {
        match self {
            PointSpec::GenericFixed { axis } => Some(*axis),
            PointSpec::GenericFiber { .. } => None,
            PointSpec::Embedded { coords } => coords.iter().position(FieldElem::is_zero),
        }
    }
}

fn eps(i: usize) -> i64 {
    if i == 1 {
        -1
    } else {
        1
    }
}

fn signed(value: FieldElem, sign: i64) -> FieldElem {
    if sign < 0 {
        -&value
    } else {
        value
    }
}

/// The `kappa_i = c_i^k` of the non-base coordinates at points over `t`
/// (relative to `x_0`), for `i` in `1..=last`.
fn fiber_kappas(curve: &GFCurve, t: &FieldElem, last: usize) -> Vec<FieldElem> {
    (1..=last)
        .map(|i| signed(t - &curve.mu(i).lift_to(t.field()).unwrap(), eps(i)))
        .collect()
}

/// Cartesian product of the `k`-th roots of each value, or the values with
/// no root in their field.
fn root_choices(values: &[FieldElem], k: u32) -> Result<Vec<Vec<FieldElem>>> {
    let mut per: Vec<Vec<FieldElem>> = Vec::new();
    let mut missing = Vec::new();
    for v in values {
        let roots = kth_roots(v, k);
        if roots.is_empty() {
            missing.push(format!("a {k}-th root of {v}"));
        }
        per.push(roots);
    }
    if !missing.is_empty() {
        return Err(Error::FieldTooSmall { missing });
    }
    let mut out: Vec<Vec<FieldElem>> = vec![Vec::new()];
    for roots in per {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                roots.iter().map(move |r| {
                    let mut next = prefix.clone();
                    next.push(r.clone());
                    next
                })
            })
            .collect();
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct FixedPoints {
    pub axis: usize,
    pub count: u64,
    pub generic: PointSpec,
    /// Those fixed points whose coordinates lie in the curve's field.
    pub embedded: Vec<PointSpec>,
}

pub fn fixed_points(curve: &GFCurve, axis: usize) -> Result<FixedPoints> {
    let n = curve.n();
    if axis > n {
        return Err(Error::InvalidArgument(format!("axis {axis} out of range 0..={n}")));
    }
    let field = curve.field();
    let k = curve.k();
    let (base, kappas): (usize, Vec<(usize, FieldElem)>) = if axis == 0 {
        (1, (2..=n).map(|i| (i, FieldElem::from_int(field, -1))).collect())
    } else {
        let t = curve.mu(axis);
        let kappas = fiber_kappas(curve, &t, n);
        (0, (1..=n).filter(|&i| i != axis).map(|i| (i, kappas[i - 1].clone())).collect())
    };
    let values: Vec<FieldElem> = kappas.iter().map(|(_, v)| v.clone()).collect();
    let embedded = match root_choices(&values, k) {
        Ok(choices) => choices
            .into_iter()
            .map(|roots| {
                let mut coords = vec![FieldElem::zero(field); n + 1];
                coords[base] = FieldElem::one(field);
                for ((i, _), r) in kappas.iter().zip(roots) {
                    coords[*i] = r;
                }
                debug_assert!(curve.contains(&coords).unwrap());
                PointSpec::Embedded { coords }
            })
            .collect(),
        Err(Error::FieldTooSmall { .. }) => Vec::new(),
        Err(e) => return Err(e),
    };
    Ok(FixedPoints {
        axis,
        count: curve.degree(),
        generic: PointSpec::GenericFixed { axis },
        embedded,
    })
}

/// All points over the non-branch value `t` expressible in `t`'s field.
pub fn fiber_points(curve: &GFCurve, t: &FieldElem) -> Result<Vec<PointSpec>> {
    let curve = curve.over(t.field())?;
    check_fiber(&curve, t)?;
    let kappas = fiber_kappas(&curve, t, curve.n());
    Ok(root_choices(&kappas, curve.k())?
        .into_iter()
        .map(|roots| {
            let mut coords = vec![FieldElem::one(t.field())];
            coords.extend(roots);
            PointSpec::Embedded { coords }
        })
        .collect())
}

fn check_fiber(curve: &GFCurve, t: &FieldElem) -> Result<()> {
    if (1..=curve.n()).any(|i| curve.mu(i).lift_to(t.field()).ok().as_ref() == Some(t)) {
        return Err(Error::InvalidArgument(format!("t = {t} is a branch value of {curve}")));
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct BranchValues {
    pub quotient: GFCurve,
    pub count: u64,
    pub generic: PointSpec,
    pub embedded: Vec<PointSpec>,
    /// Empty when every branch value is expressible in the field.
    pub missing: Vec<String>,
}

/// The image of the fixed points of `x_n` in the quotient curve: the fiber
/// over `t = lambda_{n-2}`.
pub fn branch_values(curve: &GFCurve) -> Result<BranchValues> {
    let quotient = curve.quotient_curve()?;
    let t = curve.mu(curve.n());
    let (embedded, missing) = match fiber_points(&quotient, &t) {
        Ok(points) => (points, Vec::new()),
        Err(Error::FieldTooSmall { missing }) => (Vec::new(), missing),
        Err(e) => return Err(e),
    };
    Ok(BranchValues {
        count: curve.degree(),
        quotient,
        generic: PointSpec::GenericFiber { t },
        embedded,
        missing,
    })
}

/// The covering `[x_0 : ... : x_n] -> [x_0 : ... : x_{n-1}]`.
pub fn project(curve: &GFCurve, p: &PointSpec) -> Result<PointSpec> {
    let n = curve.n();
    if n == 2 {
        return Err(Error::NoQuotient);
    }
    Ok(match p {
        PointSpec::GenericFixed { axis } if *axis == n => PointSpec::GenericFiber { t: curve.mu(n) },
        PointSpec::GenericFixed { axis } => PointSpec::GenericFixed { axis: *axis },
        PointSpec::GenericFiber { t } => PointSpec::GenericFiber { t: t.clone() },
        PointSpec::Embedded { coords } => PointSpec::embedded(coords[..n].to_vec())?,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Chart {
    /// At a point where `x_axis` vanishes: `z = x_axis / x_0` (or `x_0 / x_1`
    /// when the axis is 0), stride `k`.
    Fixed { axis: usize },
    /// Over a non-branch value `t0`: `z = t - t0`.
    Fiber { t0: FieldElem },
    /// At an explicit point with no vanishing coordinate: `z = x_1/x_0 - c_1`.
    Dense { c1: FieldElem },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Root {
    Known(FieldElem),
    /// A `k`-th root of `kappa` left unnamed.
    Symbolic { kappa: FieldElem },
}

/// `root * z^offset * series(zeta)` with `series(0) = 1`.
#[derive(Debug, Clone)]
pub struct CoordExpansion {
    pub root: Root,
    pub offset: usize,
    pub series: TruncatedSeries,
}

#[derive(Debug, Clone)]
pub struct LocalExpansion {
    pub chart: Chart,
    pub generic: bool,
    pub k: u32,
    pub stride: usize,
    /// Number of known coefficients in `z`.
    pub truncation: usize,
    pub field: Arc<NumberField>,
    pub coords: Vec<CoordExpansion>,
}

impl LocalExpansion {
    /// Coefficients known in `zeta`.
    pub fn zeta_truncation(&self) -> usize {
        self.truncation.div_ceil(self.stride)
    }

    /// Coordinate `i` as a series in `z`. Symbolic roots are replaced by 1.
    pub fn z_series(&self, i: usize) -> TruncatedSeries {
        let c = &self.coords[i];
        let inflated = c.series.inflate(self.stride, c.offset, self.truncation);
        match &c.root {
            Root::Known(r) => inflated.scale(r),
            Root::Symbolic { .. } => inflated,
        }
    }

    /// Substitutes the expansion into every defining equation and checks
    /// that each vanishes to the truncation.
    pub fn check_equations(&self, curve: &GFCurve) -> Result<()> {
        let k = self.k as u64;
        let t = self.truncation;
        let powers: Vec<TruncatedSeries> = (0..self.coords.len())
            .map(|i| {
                let s = self.z_series(i).int_pow(k);
                match &self.coords[i].root {
                    Root::Symbolic { kappa } => s.scale(kappa),
                    Root::Known(_) => s,
                }
            })
            .collect();
        for i in 2..=curve.n() {
            let mu = curve.mu(i).lift_to(&self.field)?;
            let residual = powers[i]
                .checked_add(&powers[0].scale(&mu))?
                .checked_add(&powers[1])?;
            if !residual.is_zero() {
                return Err(Error::Internal(format!(
                    "equation {i} does not vanish to order {t} at the expansion"
                )));
            }
        }
        Ok(())
    }
}

/// `(1 + a zeta)^(1/k)`.
fn binomial_root(a: FieldElem, k: u32, truncation: usize) -> Result<TruncatedSeries> {
    TruncatedSeries::kth_root_one_plus(&TruncatedSeries::monomial(a, 1, truncation), k)
}

fn unit_coord(field: &Arc<NumberField>, offset: usize, truncation: usize) -> CoordExpansion {
    CoordExpansion {
        root: Root::Known(FieldElem::one(field)),
        offset,
        series: TruncatedSeries::one(field, truncation),
    }
}

/// Expansion at a fixed point; `roots` holds the explicit coordinates in
/// embedded mode.
fn fixed_expansion(curve: &GFCurve, axis: usize, roots: Option<&[FieldElem]>, truncation: usize) -> Result<LocalExpansion> {
    let n = curve.n();
    let k = curve.k();
    let field = match roots {
        Some(r) => Arc::clone(r[0].field()),
        None => Arc::clone(curve.field()),
    };
    let curve = curve.over(&field)?;
    let stride = k as usize;
    let tz = truncation.div_ceil(stride);
    let mut coords = Vec::with_capacity(n + 1);
    let base = if axis == 0 { 1 } else { 0 };
    for i in 0..=n {
        if i == base {
            coords.push(unit_coord(&field, 0, tz));
            continue;
        }
        if i == axis {
            coords.push(unit_coord(&field, 1, tz));
            continue;
        }
        let (kappa, a) = if axis == 0 {
            (FieldElem::from_int(&field, -1), curve.mu(i))
        } else {
            let kappa = signed(&curve.mu(axis) - &curve.mu(i), eps(i));
            let a = signed(kappa.inv()?, eps(i) * eps(axis));
            (kappa, a)
        };
        let root = match roots {
            Some(r) => Root::Known(r[i].clone()),
            None => Root::Symbolic { kappa },
        };
        coords.push(CoordExpansion {
            root,
            offset: 0,
            series: binomial_root(a, k, tz)?,
        });
    }
    Ok(LocalExpansion {
        chart: Chart::Fixed { axis },
        generic: roots.is_none(),
        k,
        stride,
        truncation,
        field,
        coords,
    })
}

fn fiber_expansion(curve: &GFCurve, t0: &FieldElem, truncation: usize) -> Result<LocalExpansion> {
    let field = Arc::clone(t0.field());
    let curve = curve.over(&field)?;
    check_fiber(&curve, t0)?;
    let k = curve.k();
    let mut coords = vec![unit_coord(&field, 0, truncation)];
    for (idx, kappa) in fiber_kappas(&curve, t0, curve.n()).into_iter().enumerate() {
        let i = idx + 1;
        let a = (t0 - &curve.mu(i)).inv()?;
        coords.push(CoordExpansion {
            root: Root::Symbolic { kappa },
            offset: 0,
            series: binomial_root(a, k, truncation)?,
        });
    }
    Ok(LocalExpansion {
        chart: Chart::Fiber { t0: t0.clone() },
        generic: true,
        k,
        stride: 1,
        truncation,
        field,
        coords,
    })
}

fn dense_expansion(curve: &GFCurve, coords: &[FieldElem], truncation: usize) -> Result<LocalExpansion> {
    let field = Arc::clone(coords[0].field());
    let k = curve.k();
    let c1 = &coords[1];
    let x1 = TruncatedSeries::one(&field, truncation)
        .checked_add(&TruncatedSeries::monomial(c1.inv()?, 1, truncation))?;
    // c_1^k - (c_1 + z)^k
    let drop = TruncatedSeries::constant(c1.pow(k as u64), truncation)
        .checked_sub(&x1.int_pow(k as u64).scale(&c1.pow(k as u64)))?;
    let mut out = vec![unit_coord(&field, 0, truncation)];
    out.push(CoordExpansion {
        root: Root::Known(c1.clone()),
        offset: 0,
        series: x1,
    });
    for c in &coords[2..] {
        let u = drop.scale(&c.pow(k as u64).inv()?);
        out.push(CoordExpansion {
            root: Root::Known(c.clone()),
            offset: 0,
            series: TruncatedSeries::kth_root_one_plus(&u, k)?,
        });
    }
    Ok(LocalExpansion {
        chart: Chart::Dense { c1: c1.clone() },
        generic: false,
        k,
        stride: 1,
        truncation,
        field,
        coords: out,
    })
}

/// Exact local parametrization with `truncation` known coefficients in `z`.
pub fn local_expansion(curve: &GFCurve, p: &PointSpec, truncation: usize) -> Result<LocalExpansion> {
    if truncation == 0 {
        return Err(Error::InvalidArgument("truncation must be positive".into()));
    }
    match p {
        PointSpec::GenericFixed { axis } => {
            if *axis > curve.n() {
                return Err(Error::InvalidArgument(format!("axis {axis} out of range 0..={}", curve.n())));
            }
            fixed_expansion(curve, *axis, None, truncation)
        }
        PointSpec::GenericFiber { t } => fiber_expansion(curve, t, truncation),
        PointSpec::Embedded { coords } => {
            let field = coords[0].field();
            let curve = curve.over(field)?;
            if !curve.contains(coords)? {
                return Err(Error::NotOnCurve(format!("{coords:?} on {curve}")));
            }
            let zeros: Vec<usize> = (0..coords.len()).filter(|&i| coords[i].is_zero()).collect();
            match zeros[..] {
                [] => dense_expansion(&curve, coords, truncation),
                [axis] => fixed_expansion(&curve, axis, Some(coords), truncation),
                _ => Err(Error::NotOnCurve(format!("{coords:?} has several vanishing coordinates"))),
            }
        }
    }
}

/// Linear forms `l_i(T, U)` with `x_i^k = l_i(-x_1^k, x_0^k)`, as `(cT, cU)`.
fn branch_form(curve: &GFCurve, i: usize) -> (FieldElem, FieldElem) {
    let f = curve.field();
    match i {
        0 => (FieldElem::zero(f), FieldElem::one(f)),
        1 => (FieldElem::from_int(f, -1), FieldElem::zero(f)),
        _ => (FieldElem::one(f), -&curve.mu(i)),
    }
}

/// Moves a fixed point to an isomorphic model where it lies on `target`,
/// using the transposition of the two markings.
pub fn move_to_axis(curve: &GFCurve, p: &PointSpec, target: usize) -> Result<(GFCurve, PointSpec)> {
    let n = curve.n();
    let axis = p
        .fixed_axis()
        .ok_or_else(|| Error::InvalidArgument("only fixed points can be moved between axes".into()))?;
    if target > n || axis > n {
        return Err(Error::InvalidArgument(format!("axis out of range 0..={n}")));
    }
    if axis == target {
        return Ok((curve.clone(), p.clone()));
    }
    let sigma = Permutation::transposition(n + 1, axis, target);
    let field = match p.field() {
        Some(f) => Arc::clone(f),
        None => Arc::clone(curve.field()),
    };
    let curve = curve.over(&field)?;
    let lambda = sym_action(&sigma, curve.lambda(), &field)?;
    let moved = GFCurve::new(curve.k(), n, lambda, &field)?;
    let coords = match p {
        PointSpec::Embedded { coords } => coords,
        _ => return Ok((moved, PointSpec::GenericFixed { axis: target })),
    };

    // The Moebius map M with markings gamma_{sigma^-1(j)} -> gamma'_j, as a
    // linear map on (T, U).
    let marks = curve.markings();
    let inv = sigma.inverse();
    let (a, b, c) = (&marks[inv.apply(0)], &marks[inv.apply(1)], &marks[inv.apply(2)]);
    let image = |x: &P1Point| normalize(a, b, c, x);
    let e_t = image(&P1Point::infinity(&field));
    let e_u = image(&P1Point::affine(FieldElem::zero(&field)));
    // new coordinates: y_j^k = l'_j(M(T, U)) = beta_j l_{sigma^-1(j)}(T, U)
    let mut betas = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let (pt, pu) = branch_form(&moved, j);
        let composed_t = &(&pt * &e_t.t) + &(&pu * &e_t.u);
        let composed_u = &(&pt * &e_u.t) + &(&pu * &e_u.u);
        let (qt, qu) = branch_form(&curve, inv.apply(j));
        let beta = if !qt.is_zero() {
            composed_t.checked_div(&qt)?
        } else {
            composed_u.checked_div(&qu)?
        };
        debug_assert_eq!(&composed_t * &qu, &composed_u * &qt);
        betas.push(beta);
    }
    let base = if coords[inv.apply(0)].is_zero() { 1 } else { 0 };
    let mut out = Vec::with_capacity(n + 1);
    let mut missing = Vec::new();
    for j in 0..=n {
        let ratio = betas[j].checked_div(&betas[base])?;
        let x = coords[inv.apply(j)].checked_div(&coords[inv.apply(base)])?;
        match kth_roots(&ratio, curve.k()).into_iter().next() {
            Some(root) => out.push(&root * &x),
            None => {
                missing.push(format!("a {}-th root of {ratio}", curve.k()));
                out.push(FieldElem::zero(&field));
            }
        }
    }
    if !missing.is_empty() {
        return Err(Error::FieldTooSmall { missing });
    }
    let point = PointSpec::embedded(out)?;
    if let PointSpec::Embedded { coords } = &point {
        if !moved.contains(coords)? {
            return Err(Error::Internal("moved point is not on the moved curve".into()));
        }
    }
    Ok((moved, point))
}

/// [`move_to_axis`] with target axis 1, the normal position for fixed points.
pub fn canonicalize_point(curve: &GFCurve, p: &PointSpec) -> Result<(GFCurve, PointSpec)> {
    move_to_axis(curve, p, 1)
}
