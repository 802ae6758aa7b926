use serde_json::Value;

use crate::args::{Command, Format};
use crate::Outcome;

pub fn render(command: Command, format: Format, rec: &Value) -> Outcome<String> {
    Ok(match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(rec).map_err(anyhow::Error::from)?;
            s.push('\n');
            s
        }
        Format::Csv if command == Command::Sweep => sweep_csv(&rec["output"]),
        Format::Csv => {
            let mut out = String::from("key,value\n");
            flatten("", rec, &mut |k, v| {
                out.push_str(&csv_field(k));
                out.push(',');
                out.push_str(&csv_field(&v));
                out.push('\n');
            });
            out
        }
        Format::Pretty => {
            let mut out = String::new();
            pretty(rec, 0, &mut out);
            out
        }
    })
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn flatten(prefix: &str, v: &Value, emit: &mut dyn FnMut(&str, String)) {
    let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(map) => map.iter().for_each(|(k, x)| flatten(&join(k), x, emit)),
        Value::Array(xs) => xs.iter().enumerate().for_each(|(i, x)| flatten(&join(&i.to_string()), x, emit)),
        other => emit(prefix, scalar(other)),
    }
}

/// A field element written as a polynomial in `t` from its coordinates.
fn elem_text(v: &Value) -> String {
    match v {
        Value::Array(coords) => {
            let terms: Vec<String> = coords
                .iter()
                .enumerate()
                .filter_map(|(i, c)| {
                    let c = scalar(c);
                    (c != "0").then(|| match i {
                        0 => format!("({c})"),
                        1 => format!("({c})*t"),
                        _ => format!("({c})*t^{i}"),
                    })
                })
                .collect();
            if terms.is_empty() {
                "0".into()
            } else {
                terms.join(" + ")
            }
        }
        other => scalar(other),
    }
}

fn sweep_csv(out: &Value) -> String {
    let k = out["k"].as_u64().unwrap_or(0);
    let mut header = vec!["lambda".to_string(), "w".into(), "w_hat".into(), "equal".into(), "consistent".into()];
    header.extend((0..k).map(|j| format!("j{j}")));
    header.push("status".into());
    let mut s = header.join(",");
    s.push('\n');
    for row in out["rows"].as_array().into_iter().flatten() {
        let lambda: Vec<String> = row["lambda"].as_array().into_iter().flatten().map(elem_text).collect();
        let mut cells = vec![
            lambda.join(","),
            scalar(&row["w"]),
            scalar(&row["wHat"]),
            if row["status"] == "ok" { scalar(&row["equal"]) } else { String::new() },
            scalar(&row["consistent"]),
        ];
        cells.extend((0..k as usize).map(|j| scalar(&row["perJ"][j])));
        cells.push(scalar(&row["status"]));
        let line: Vec<String> = cells.iter().map(|c| csv_field(c)).collect();
        s.push_str(&line.join(","));
        s.push('\n');
    }
    s
}

fn is_flat(v: &Value) -> bool {
    !matches!(v, Value::Object(_) | Value::Array(_))
}

fn inline(v: &Value) -> String {
    match v {
        Value::Array(xs) => format!("[{}]", xs.iter().map(inline).collect::<Vec<_>>().join(", ")),
        Value::Object(_) => v.to_string(),
        Value::Null => "null".into(),
        other => scalar(other),
    }
}

fn pretty(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let short = is_flat(x) || matches!(x, Value::Array(xs) if xs.iter().all(|y| is_flat(y) || y.is_array()));
                if short {
                    out.push_str(&format!("{pad}{k}: {}\n", inline(x)));
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    pretty(x, depth + 1, out);
                }
            }
        }
        Value::Array(xs) => {
            for (i, x) in xs.iter().enumerate() {
                if is_flat(x) {
                    out.push_str(&format!("{pad}- {}\n", inline(x)));
                } else {
                    out.push_str(&format!("{pad}[{i}]\n"));
                    pretty(x, depth + 1, out);
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn empty_sweep_is_header_only() {
        let rec = json!({"output": {"k": 3, "n": 3, "rows": []}});
        let csv = render(Command::Sweep, Format::Csv, &rec).unwrap();
        assert_eq!(csv, "lambda,w,w_hat,equal,consistent,j0,j1,j2,status\n");
    }

    #[test]
    fn flat_csv_and_pretty() {
        let rec = json!({"output": {"gaps": [1, 2], "note": "a,b"}});
        let csv = render(Command::Gaps, Format::Csv, &rec).unwrap();
        assert_eq!(csv, "key,value\noutput.gaps.0,1\noutput.gaps.1,2\noutput.note,\"a,b\"\n");
        let p = render(Command::Gaps, Format::Pretty, &rec).unwrap();
        assert_eq!(p, "output:\n  gaps: [1, 2]\n  note: a,b\n");
    }

    #[test]
    fn coordinates_as_text() {
        assert_eq!(elem_text(&json!(["-1", "0", "1/2"])), "(-1) + (1/2)*t^2");
        assert_eq!(elem_text(&json!("2/3")), "2/3");
    }
}
