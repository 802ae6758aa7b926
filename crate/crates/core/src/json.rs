//! Serializable descriptions of curves and points.
//!
//! Rationals travel as `"p/q"` strings. An element of an extension field is
//! either a polynomial string in `t` or the array of its coordinates in the
//! basis `1, t, ..., t^(d-1)`; output always uses the array form.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith::{format_rational, parse_elem, parse_rational, FieldElem, NumberField, Rational};
use crate::charts::PointSpec;
use crate::curve::GFCurve;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElemDesc {
    Text(String),
    Coords(Vec<String>),
}

impl ElemDesc {
    pub fn from_elem(x: &FieldElem) -> Self {
        match x.field().is_rational() {
            true => ElemDesc::Text(format_rational(&x.coeffs()[0])),
            false => ElemDesc::Coords(x.coeffs().iter().map(format_rational).collect()),
        }
    }

    pub fn to_elem(&self, field: &Arc<NumberField>) -> Result<FieldElem> {
        match self {
            ElemDesc::Text(s) => parse_elem(s, field),
            ElemDesc::Coords(c) => {
                if c.len() > field.degree() {
                    return Err(Error::Parse(format!("{c:?} has more coordinates than the field degree")));
                }
                let coeffs = c.iter().map(|s| parse_rational(s)).collect::<Result<Vec<Rational>>>()?;
                Ok(FieldElem::from_coeffs(field, coeffs))
            }
        }
    }
}

/// Modulus coefficients, constant term first; `None` for the rationals.
pub fn field_desc(field: &NumberField) -> Option<Vec<String>> {
    (!field.is_rational()).then(|| field.modulus().iter().map(format_rational).collect())
}

pub fn field_from_desc(desc: Option<&[String]>) -> Result<Arc<NumberField>> {
    match desc {
        None => Ok(NumberField::rationals()),
        Some(c) => NumberField::new(c.iter().map(|s| parse_rational(s)).collect::<Result<_>>()?),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveDesc {
    pub k: u32,
    pub n: usize,
    #[serde(default)]
    pub lambda: Vec<ElemDesc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<Vec<String>>,
}

impl CurveDesc {
    pub fn from_curve(curve: &GFCurve) -> Self {
        CurveDesc {
            k: curve.k(),
            n: curve.n(),
            lambda: curve.lambda().iter().map(ElemDesc::from_elem).collect(),
            field: field_desc(curve.field()),
        }
    }

    pub fn to_curve(&self) -> Result<GFCurve> {
        let field = field_from_desc(self.field.as_deref())?;
        let lambda = self.lambda.iter().map(|l| l.to_elem(&field)).collect::<Result<_>>()?;
        GFCurve::new(self.k, self.n, lambda, &field)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum PointDesc {
    Fixed { axis: usize },
    Fiber { t: ElemDesc },
    Embedded { coords: Vec<ElemDesc> },
}

impl PointDesc {
    pub fn from_spec(p: &PointSpec) -> Self {
        match p {
            PointSpec::GenericFixed { axis } => PointDesc::Fixed { axis: *axis },
            PointSpec::GenericFiber { t } => PointDesc::Fiber {
                t: ElemDesc::from_elem(t),
            },
            PointSpec::Embedded { coords } => PointDesc::Embedded {
                coords: coords.iter().map(ElemDesc::from_elem).collect(),
            },
        }
    }

    pub fn to_spec(&self, field: &Arc<NumberField>) -> Result<PointSpec> {
        match self {
            PointDesc::Fixed { axis } => Ok(PointSpec::GenericFixed { axis: *axis }),
            PointDesc::Fiber { t } => Ok(PointSpec::GenericFiber { t: t.to_elem(field)? }),
            PointDesc::Embedded { coords } => {
                PointSpec::embedded(coords.iter().map(|c| c.to_elem(field)).collect::<Result<_>>()?)
            }
        }
    }
}
