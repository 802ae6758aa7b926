//! Curve, point and grid descriptions from the command line.

use std::sync::Arc;

use anyhow::{anyhow, bail, Context};
use gfweight_core::arith::{parse_elem, parse_rational};
use gfweight_core::json::{CurveDesc, PointDesc};
use gfweight_core::{FieldElem, GFCurve, NumberField, PointSpec};

use crate::args::Options;

fn split_list(text: &str) -> impl Iterator<Item = &str> {
    text.split(',').map(str::trim).filter(|s| !s.is_empty())
}

pub fn field(opts: &Options) -> anyhow::Result<Arc<NumberField>> {
    match &opts.field {
        None => Ok(NumberField::rationals()),
        Some(text) => {
            let coeffs = split_list(text).map(parse_rational).collect::<Result<Vec<_>, _>>()?;
            Ok(NumberField::new(coeffs)?)
        }
    }
}

pub fn elems(text: &str, field: &Arc<NumberField>) -> anyhow::Result<Vec<FieldElem>> {
    Ok(split_list(text).map(|s| parse_elem(s, field)).collect::<Result<_, _>>()?)
}

/// `(k, n, field)` without the parameters, for commands that supply their own.
pub fn shape(opts: &Options) -> anyhow::Result<(u32, usize, Arc<NumberField>)> {
    if let Some(path) = &opts.curve {
        let desc = read_curve_desc(path)?;
        let field = gfweight_core::json::field_from_desc(desc.field.as_deref())?;
        return Ok((desc.k, desc.n, field));
    }
    let k = opts.k.ok_or_else(|| anyhow!("--k is required (or --curve)"))?;
    let n = opts.n.ok_or_else(|| anyhow!("--n is required (or --curve)"))?;
    Ok((k, n, field(opts)?))
}

fn read_curve_desc(path: &std::path::Path) -> anyhow::Result<CurveDesc> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn curve(opts: &Options) -> anyhow::Result<GFCurve> {
    if let Some(path) = &opts.curve {
        return Ok(read_curve_desc(path)?.to_curve()?);
    }
    let (k, n, field) = shape(opts)?;
    let lambda = match &opts.lambda {
        Some(text) => elems(text, &field)?,
        None if n == 2 => Vec::new(),
        None => bail!("--lambda is required for n = {n}"),
    };
    Ok(GFCurve::new(k, n, lambda, &field)?)
}

/// The point from `--point` or `--axis`, if either was given.
pub fn point(opts: &Options, curve: &GFCurve) -> anyhow::Result<Option<PointSpec>> {
    if let Some(text) = &opts.point {
        if opts.axis.is_some() {
            bail!("--point and --axis are mutually exclusive");
        }
        let text = text.trim();
        let spec = if text.starts_with('{') {
            let desc: PointDesc = serde_json::from_str(text).context("parsing --point")?;
            desc.to_spec(curve.field())?
        } else {
            PointSpec::embedded(elems(text, curve.field())?)?
        };
        if let PointSpec::Embedded { coords } = &spec {
            if coords.len() != curve.n() + 1 {
                bail!("--point needs {} coordinates, got {}", curve.n() + 1, coords.len());
            }
        }
        return Ok(Some(spec));
    }
    match opts.axis {
        Some(axis) if axis > curve.n() => bail!("--axis {axis} out of range 0..={}", curve.n()),
        Some(axis) => Ok(Some(PointSpec::GenericFixed { axis })),
        None => Ok(None),
    }
}

/// Parameter tuples separated by `;`; a blank grid is empty.
pub fn grid(text: &str, field: &Arc<NumberField>) -> anyhow::Result<Vec<Vec<FieldElem>>> {
    text.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|tuple| elems(tuple, field))
        .collect()
}
