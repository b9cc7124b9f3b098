//! JSON views of library objects and the `--pretty` text layout.
//!
//! Filtrations, matrices and vectors are written in the same shape the
//! problem-file parser reads, so rendered objects parse back unchanged.

use serde_json::{json, Map, Value};

use hodgekit::filtration::{DecreasingFiltration, Grading, IncreasingFiltration};
use hodgekit::linalg::{Matrix, Poly, Scalar, Subspace};
use hodgekit::orbits::CheckReport;

pub fn scalar(x: &Scalar) -> Value {
    Value::String(x.to_string())
}

pub fn vector(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar).collect())
}

pub fn vectors(vs: &[Vec<Scalar>]) -> Value {
    Value::Array(vs.iter().map(|v| vector(v)).collect())
}

pub fn matrix(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|i| vector(&m.row(i))).collect())
}

pub fn subspace(s: &Subspace) -> Value {
    vectors(s.basis())
}

fn steps<'a>(kind: &str, steps: impl Iterator<Item = (i32, &'a Subspace)>) -> Value {
    let mut m = Map::new();
    for (k, s) in steps {
        m.insert(k.to_string(), subspace(s));
    }
    json!({ "kind": kind, "steps": m })
}

pub fn increasing(w: &IncreasingFiltration) -> Value {
    steps("increasing", w.steps().iter().map(|(k, s)| (*k, s)))
}

pub fn decreasing(f: &DecreasingFiltration) -> Value {
    steps("decreasing", f.steps().iter().map(|(k, s)| (*k, s)))
}

pub fn grading(y: &Grading) -> Value {
    let mut eig = Map::new();
    for (k, e) in y.eigen_pairs() {
        eig.insert(k.to_string(), subspace(e));
    }
    json!({ "matrix": matrix(y.op()), "eigenspaces": eig })
}

/// Integers as JSON numbers when they fit, otherwise as decimal strings.
pub fn integer(x: &impl ToString) -> Value {
    let s = x.to_string();
    match s.parse::<i64>() {
        Ok(n) => Value::from(n),
        Err(_) => Value::String(s),
    }
}

pub fn poly(p: &Poly) -> Value {
    let terms: Vec<Value> = p.terms().iter().map(|(m, c)| json!({ "exponents": m, "coefficient": scalar(c) })).collect();
    json!({ "text": p.to_string(), "terms": terms })
}

pub fn report(r: &CheckReport) -> Value {
    let checks: Vec<Value> = r.checks.iter().map(|(name, ok)| json!({ "check": name, "ok": ok })).collect();
    json!({ "ok": r.ok, "checks": checks, "witness": r.witness })
}

/// Indented JSON with arrays of plain values kept on one line.
pub fn json_text(v: &Value) -> String {
    let mut out = String::new();
    json_into(&mut out, v, 0);
    out.push('\n');
    out
}

fn json_into(out: &mut String, v: &Value, indent: usize) {
    let leaf = |x: &Value| serde_json::to_string(x).expect("serializable");
    match v {
        Value::Array(xs) if xs.iter().all(|x| !x.is_array() && !x.is_object()) => {
            out.push('[');
            out.push_str(&xs.iter().map(leaf).collect::<Vec<_>>().join(", "));
            out.push(']');
        }
        Value::Array(xs) => {
            out.push_str("[\n");
            for (k, x) in xs.iter().enumerate() {
                out.push_str(&pad(indent + 2));
                json_into(out, x, indent + 2);
                out.push_str(if k + 1 < xs.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Object(m) if m.is_empty() => out.push_str("{}"),
        Value::Object(m) => {
            out.push_str("{\n");
            for (k, (key, x)) in m.iter().enumerate() {
                out.push_str(&format!("{}{}: ", pad(indent + 2), leaf(&Value::String(key.clone()))));
                json_into(out, x, indent + 2);
                out.push_str(if k + 1 < m.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        _ => out.push_str(&leaf(v)),
    }
}

/// Human layout: nested keys indent, matrices and bases become aligned
/// rows, arrays of flat records become tables.
pub fn pretty(v: &Value) -> String {
    let mut out = String::new();
    block(&mut out, v, 0);
    out
}

fn pad(n: usize) -> String {
    " ".repeat(n)
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Number(n) => n.to_string(),
        Value::Bool(b) => b.to_string(),
        Value::Array(xs) => format!("({})", xs.iter().map(inline).collect::<Vec<_>>().join(", ")),
        Value::Object(m) => format!("{{{}}}", m.iter().map(|(k, x)| format!("{k}: {}", inline(x))).collect::<Vec<_>>().join(", ")),
    }
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(xs) => xs.iter().all(|x| !x.is_array() && !x.is_object()),
        Value::Object(_) => false,
        _ => true,
    }
}

fn as_rows(v: &Value) -> Option<Vec<Vec<String>>> {
    let xs = v.as_array()?;
    if xs.is_empty() {
        return None;
    }
    xs.iter().map(|row| row.as_array().filter(|r| r.iter().all(|x| !x.is_array() && !x.is_object())).map(|r| r.iter().map(inline).collect())).collect()
}

fn as_records(v: &Value) -> Option<(Vec<String>, Vec<Vec<String>>)> {
    let xs = v.as_array()?;
    let first = xs.first()?.as_object()?;
    let keys: Vec<String> = first.keys().cloned().collect();
    let mut rows = Vec::new();
    for x in xs {
        let m = x.as_object()?;
        if m.keys().ne(keys.iter()) || !m.values().all(is_flat) {
            return None;
        }
        rows.push(m.values().map(inline).collect());
    }
    Some((keys, rows))
}

fn aligned(out: &mut String, header: Option<&[String]>, rows: &[Vec<String>], indent: usize, brackets: bool) {
    let ncols = rows.iter().map(Vec::len).chain(header.map(<[String]>::len)).max().unwrap_or(0);
    let mut width = vec![0; ncols];
    for r in rows.iter().chain(header.map(|h| h.to_vec()).as_ref()) {
        for (k, c) in r.iter().enumerate() {
            width[k] = width[k].max(c.chars().count());
        }
    }
    let line = |r: &[String]| -> String {
        let cells: Vec<String> = r.iter().enumerate().map(|(k, c)| format!("{c:>w$}", w = width[k])).collect();
        cells.join("  ")
    };
    if let Some(h) = header {
        out.push_str(&format!("{}{}\n", pad(indent), line(h).trim_end()));
    }
    for r in rows {
        if brackets {
            out.push_str(&format!("{}[ {} ]\n", pad(indent), line(r)));
        } else {
            out.push_str(&format!("{}{}\n", pad(indent), line(r).trim_end()));
        }
    }
}

fn block(out: &mut String, v: &Value, indent: usize) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                if is_flat(x) {
                    out.push_str(&format!("{}{k}: {}\n", pad(indent), inline(x)));
                } else {
                    out.push_str(&format!("{}{k}:\n", pad(indent)));
                    block(out, x, indent + 2);
                }
            }
        }
        Value::Array(xs) => {
            if let Some(rows) = as_rows(v) {
                aligned(out, None, &rows, indent, true);
            } else if let Some((keys, rows)) = as_records(v) {
                aligned(out, Some(&keys), &rows, indent, false);
            } else {
                for (k, x) in xs.iter().enumerate() {
                    if is_flat(x) {
                        out.push_str(&format!("{}[{k}] {}\n", pad(indent), inline(x)));
                    } else {
                        out.push_str(&format!("{}[{k}]\n", pad(indent)));
                        block(out, x, indent + 2);
                    }
                }
            }
        }
        _ => out.push_str(&format!("{}{}\n", pad(indent), inline(v))),
    }
}
