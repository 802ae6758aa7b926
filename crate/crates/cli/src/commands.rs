use std::sync::Arc;

use anyhow::anyhow;
use gfweight_core::charts::fixed_points;
use gfweight_core::json::{field_desc, CurveDesc, ElemDesc, PointDesc};
use gfweight_core::moduli::{canonical_representative, orbit};
use gfweight_core::theorems::{
    fixed_point_weights, mho_probe, pluecker_sequence, residual_weight, strictness_diagnostic, w_hat, MhoOutcome,
    ProbeMode,
};
use gfweight_core::{gap_sequence, profile, Error, FieldElem, GFCurve, NumberField, PointSpec};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::args::{Command, Mode, Options};
use crate::cache::Cache;
use crate::{inputs, Failure, Outcome, VERSION};

/// Parsed inputs plus their canonical echo, which doubles as the cache key.
pub struct Job {
    pub input: Value,
    curve: Option<GFCurve>,
    point: Option<PointSpec>,
    field: Arc<NumberField>,
    k: u32,
    n: usize,
    grid: Vec<Vec<FieldElem>>,
}

fn elems_json(xs: &[FieldElem]) -> Value {
    json!(xs.iter().map(ElemDesc::from_elem).collect::<Vec<_>>())
}

fn point_json(p: Option<&PointSpec>) -> Value {
    p.map_or(Value::Null, |p| json!(PointDesc::from_spec(p)))
}

fn strictness_input(curve: &GFCurve, point: &PointSpec, truncation: Option<usize>) -> Value {
    json!({
        "curve": CurveDesc::from_curve(curve),
        "point": PointDesc::from_spec(point),
        "truncation": truncation,
    })
}

pub fn prepare(command: Command, opts: &Options) -> Outcome<Job> {
    match command {
        Command::Orbit => {
            let (n, field) = match &opts.curve {
                Some(_) => {
                    let (_, n, field) = inputs::shape(opts)?;
                    (n, field)
                }
                None => (opts.n.ok_or_else(|| anyhow!("--n is required"))?, inputs::field(opts)?),
            };
            let lambda = match &opts.curve {
                Some(_) => inputs::curve(opts)?.lambda().to_vec(),
                None => inputs::elems(opts.lambda.as_deref().unwrap_or(""), &field)?,
            };
            // Any k works for validating the parameters.
            GFCurve::new(2, n, lambda.clone(), &field)?;
            let input = json!({"n": n, "lambda": elems_json(&lambda), "field": field_desc(&field)});
            Ok(Job {
                input,
                curve: None,
                point: None,
                field,
                k: 0,
                n,
                grid: vec![lambda],
            })
        }
        Command::Sweep => {
            let (k, n, field) = inputs::shape(opts)?;
            let grid = inputs::grid(opts.grid.as_deref().unwrap_or(""), &field)?;
            let point = match &opts.point {
                Some(_) => return Err(anyhow!("sweep takes --axis, not --point").into()),
                None => opts.axis.unwrap_or(n),
            };
            if point > n {
                return Err(anyhow!("--axis {point} out of range 0..={n}").into());
            }
            let input = json!({
                "k": k,
                "n": n,
                "field": field_desc(&field),
                "grid": grid.iter().map(|l| elems_json(l)).collect::<Vec<_>>(),
                "point": PointDesc::Fixed { axis: point },
                "truncation": opts.truncation,
            });
            Ok(Job {
                input,
                curve: None,
                point: Some(PointSpec::GenericFixed { axis: point }),
                field,
                k,
                n,
                grid,
            })
        }
        _ => {
            let curve = inputs::curve(opts)?;
            let mut point = inputs::point(opts, &curve)?;
            if matches!(command, Command::Profile | Command::Strictness) && point.is_none() {
                point = Some(PointSpec::GenericFixed { axis: curve.n() });
            }
            let mut input = json!({
                "curve": CurveDesc::from_curve(&curve),
                "point": point_json(point.as_ref()),
                "truncation": opts.truncation,
            });
            match command {
                Command::Profile => input["degree"] = json!(opts.degree),
                Command::Mho => {
                    input["j"] = json!(opts.j);
                    input["mode"] = json!(mode_name(opts.mode));
                }
                _ => {}
            }
            Ok(Job {
                input,
                field: curve.field().clone(),
                k: curve.k(),
                n: curve.n(),
                curve: Some(curve),
                point,
                grid: Vec::new(),
            })
        }
    }
}

fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::Generic => "generic",
        Mode::Embedded => "embedded",
    }
}

pub fn execute(command: Command, job: &Job, opts: &Options, cache: Option<&Cache>) -> Outcome<Value> {
    let t = opts.truncation;
    let curve = || job.curve.as_ref().expect("curve parsed for this command");
    match command {
        Command::Info => info(curve()),
        Command::Gaps => gaps(curve(), job.point.as_ref(), t),
        Command::Weight => weight(curve(), t),
        Command::Profile => {
            let c = curve();
            let p = job.point.as_ref().unwrap();
            let prof = profile(c, &c.monomial_basis(opts.degree), p, t)?;
            Ok(json!({
                "kind": "profile",
                "point": PointDesc::from_spec(p),
                "degree": opts.degree,
                "dimension": prof.orders.len(),
                "orders": prof.orders,
                "alphas": prof.alphas,
                "bees": prof.bees,
                "truncation": prof.truncation,
                "hyperosculating": prof.is_hyperosculating(),
            }))
        }
        Command::Pluecker => {
            let data = pluecker_sequence(curve())?;
            Ok(json!({
                "kind": "pluecker",
                "genus": curve().genus(),
                "dees": data.dees,
                "beeTotals": data.bee_totals,
            }))
        }
        Command::Dims => dims(curve()),
        Command::Strictness => strictness_output(curve(), job.point.as_ref().unwrap(), t),
        Command::Mho => mho(curve(), opts),
        Command::Orbit => {
            let lambda = &job.grid[0];
            let orb = orbit(lambda, &job.field)?;
            let canon = canonical_representative(lambda, &job.field)?;
            Ok(json!({
                "kind": "orbit",
                "size": orb.len(),
                "orbit": orb.iter().map(|l| elems_json(l)).collect::<Vec<_>>(),
                "canonical": elems_json(&canon),
            }))
        }
        Command::Sweep => sweep(job, opts, cache),
    }
}

fn info(c: &GFCurve) -> Outcome<Value> {
    let bound = if c.genus() >= 2 { Some(w_hat(c.k(), c.n())?) } else { None };
    let markings: Vec<String> = c
        .markings()
        .iter()
        .map(|m| m.value().map_or_else(|| "infinity".to_string(), |v| v.to_string()))
        .collect();
    Ok(json!({
        "kind": "info",
        "k": c.k(),
        "n": c.n(),
        "genus": c.genus(),
        "degree": c.degree(),
        "canonicalTwist": c.canonical_twist(),
        "fixedPointCount": c.fixed_point_count(),
        "pointsPerAxis": c.degree(),
        "markings": markings,
        "wHat": bound,
    }))
}

fn gaps(c: &GFCurve, point: Option<&PointSpec>, t: Option<usize>) -> Outcome<Value> {
    let points: Vec<PointSpec> = match point {
        Some(p) => vec![p.clone()],
        None => (0..=c.n()).map(|axis| PointSpec::GenericFixed { axis }).collect(),
    };
    let results = points
        .iter()
        .map(|p| {
            let data = gap_sequence(c, p, t)?;
            Ok(json!({"point": PointDesc::from_spec(p), "gaps": data.gaps, "weight": data.weight}))
        })
        .collect::<Result<Vec<Value>, Error>>()?;
    Ok(json!({"kind": "gaps", "genus": c.genus(), "results": results}))
}

fn weight(c: &GFCurve, t: Option<usize>) -> Outcome<Value> {
    let weights = fixed_point_weights(c, t)?;
    let mut all = Vec::new();
    let per_axis: Vec<Value> = weights
        .iter()
        .enumerate()
        .map(|(axis, &w)| {
            let fp = fixed_points(c, axis)?;
            all.extend(std::iter::repeat_n(w, fp.count as usize));
            Ok(json!({"axis": axis, "points": fp.count, "embeddedPoints": fp.embedded.len(), "weight": w}))
        })
        .collect::<Result<_, Error>>()?;
    let g = c.genus();
    Ok(json!({
        "kind": "weight",
        "genus": g,
        "wHat": w_hat(c.k(), c.n())?,
        "perAxis": per_axis,
        "fixedTotal": all.iter().sum::<u64>(),
        "totalBudget": g * g * g - g,
        "residual": residual_weight(c, &all)?,
    }))
}

fn dims(c: &GFCurve) -> Outcome<Value> {
    let r = c.canonical_twist();
    let s: Vec<i64> = (0..c.k()).map(|j| c.s_dim(j)).collect::<Result<_, _>>()?;
    let pieces: Vec<usize> = (0..c.k())
        .map(|j| c.sub_basis_q(r as usize, j).map(|b| b.len()))
        .collect::<Result<_, _>>()?;
    let table: Vec<Value> = (0..=r + 1)
        .map(|m| json!({"m": m, "hPrime": c.h_prime(m), "dimGamma": c.dim_gamma(m as usize)}))
        .collect();
    Ok(json!({
        "kind": "dims",
        "genus": c.genus(),
        "canonicalTwist": r,
        "sDims": s,
        "sDimTotal": s.iter().sum::<i64>(),
        "monomialCounts": pieces,
        "graded": table,
    }))
}

fn strictness_output(c: &GFCurve, p: &PointSpec, t: Option<usize>) -> Outcome<Value> {
    let rep = strictness_diagnostic(c, p, t)?;
    if !rep.consistent {
        return Err(Failure::Internal(anyhow!(
            "weight {} vs bound {} disagrees with the diagnostic {:?}",
            rep.w,
            rep.w_hat,
            rep.per_j
        )));
    }
    Ok(json!({
        "kind": "strictness",
        "point": PointDesc::from_spec(&rep.point),
        "w": rep.w,
        "wHat": rep.w_hat,
        "gaps": rep.gaps,
        "perJ": rep.per_j,
        "predictedEqual": rep.predicted_equal,
        "consistent": rep.consistent,
    }))
}

fn mho(c: &GFCurve, opts: &Options) -> Outcome<Value> {
    let js: Vec<u32> = match opts.j {
        Some(j) => vec![j],
        None => (0..c.k()).collect(),
    };
    let mode = match opts.mode {
        Mode::Generic => ProbeMode::Generic,
        Mode::Embedded => ProbeMode::Embedded,
    };
    let mut all_member = Some(true);
    let mut results = Vec::new();
    for j in js {
        let entry = match mho_probe(c, j, mode)? {
            MhoOutcome::Member => json!({"j": j, "outcome": "member"}),
            MhoOutcome::NotMember => {
                all_member = all_member.map(|_| false);
                json!({"j": j, "outcome": "notMember"})
            }
            MhoOutcome::Undetermined { missing } => {
                if all_member == Some(true) {
                    all_member = None;
                }
                json!({"j": j, "outcome": "undetermined", "missing": missing})
            }
        };
        results.push(entry);
    }
    Ok(json!({
        "kind": "mho",
        "mode": mode_name(opts.mode),
        "results": results,
        "allMember": all_member,
    }))
}

fn sweep_row(
    k: u32,
    n: usize,
    field: &Arc<NumberField>,
    lambda: &[FieldElem],
    point: &PointSpec,
    t: Option<usize>,
    cache: Option<&Cache>,
) -> Outcome<Value> {
    let head = json!({"lambda": elems_json(lambda)});
    let attempt = || -> Outcome<Value> {
        let c = GFCurve::new(k, n, lambda.to_vec(), field)?;
        let key = json!({"command": "strictness", "input": strictness_input(&c, point, t), "version": VERSION});
        if let Some(hit) = cache.and_then(|cc| cc.load(&key)) {
            return Ok(hit["output"].clone());
        }
        let out = strictness_output(&c, point, t)?;
        if let Some(cc) = cache {
            let rec = json!({"version": VERSION, "command": "strictness", "input": key["input"], "output": out});
            cc.store(&key, &rec)?;
        }
        Ok(out)
    };
    let mut row = head;
    match attempt() {
        Ok(out) => {
            row["w"] = out["w"].clone();
            row["wHat"] = out["wHat"].clone();
            row["equal"] = json!(out["w"] == out["wHat"]);
            row["consistent"] = out["consistent"].clone();
            row["perJ"] = out["perJ"].clone();
            row["status"] = json!("ok");
        }
        Err(Failure::Domain(e)) => {
            row["status"] = json!("undetermined");
            row["message"] = json!(format!("{e:#}"));
        }
        Err(f) => return Err(f),
    }
    Ok(row)
}

fn sweep(job: &Job, opts: &Options, cache: Option<&Cache>) -> Outcome<Value> {
    let point = job.point.as_ref().unwrap();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = opts.jobs {
        builder = builder.num_threads(jobs.max(1));
    }
    let pool = builder.build().map_err(|e| Failure::Domain(e.into()))?;
    let rows = pool.install(|| {
        job.grid
            .par_iter()
            .map(|l| sweep_row(job.k, job.n, &job.field, l, point, opts.truncation, cache))
            .collect::<Outcome<Vec<Value>>>()
    })?;
    Ok(json!({"kind": "sweep", "k": job.k, "n": job.n, "rows": rows}))
}
