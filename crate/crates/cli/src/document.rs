//! JSON documents holding one RPF in dense or classed form.
//!
//! Dense: `{"format": "rpf-dense-v1", "k": 2, "matrix": [["1", "inf"], ["0", "1"]]}`
//!
//! Classed: `{"format": "rpf-classed-v1", "k": 3, "assignment": [0, 0, 1],
//! "log_values": [0.0, 0.69, 0.0], "class_order": [["1", "inf"], ["0", "1"]]}`
//!
//! Entries are strings in the magnitude syntax (`"0.5"`, `"inf"`, `"*"`);
//! plain non-negative JSON numbers are accepted on input. Output is canonical:
//! sorted keys, two-space indentation, trailing newline.

use relprob::{ClassedRpf, DenseRpf, Magnitude, MagnitudeTable};
use serde_json::{json, Map, Value};

pub const DENSE_FORMAT: &str = "rpf-dense-v1";
pub const CLASSED_FORMAT: &str = "rpf-classed-v1";

#[derive(Debug)]
pub enum Document {
    Dense(MagnitudeTable),
    Classed(ClassedRpf),
}

#[derive(Debug)]
pub enum DocError {
    /// Malformed text or structure.
    Syntax(String),
    /// Well-formed but not an RPF.
    Domain(relprob::RpfError),
}

fn syntax<T>(msg: impl Into<String>) -> Result<T, DocError> {
    Err(DocError::Syntax(msg.into()))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value, DocError> {
    obj.get(key)
        .ok_or_else(|| DocError::Syntax(format!("missing field \"{key}\"")))
}

fn count(v: &Value, what: &str) -> Result<usize, DocError> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| DocError::Syntax(format!("{what} must be a non-negative integer")))
}

fn magnitude(v: &Value) -> Result<Magnitude, DocError> {
    match v {
        Value::String(s) => s
            .parse()
            .map_err(|e| DocError::Syntax(format!("entry {s:?}: {e}"))),
        Value::Number(n) => {
            let x = n.as_f64().unwrap_or(f64::NAN);
            Magnitude::from_linear(x).map_err(|e| DocError::Syntax(format!("entry {n}: {e}")))
        }
        other => syntax(format!("entry {other} is neither a string nor a number")),
    }
}

fn square(v: &Value, k: usize, what: &str) -> Result<MagnitudeTable, DocError> {
    let rows = v
        .as_array()
        .ok_or_else(|| DocError::Syntax(format!("{what} must be an array of rows")))?;
    if rows.len() != k {
        return syntax(format!("{what} has {} rows, expected {k}", rows.len()));
    }
    let mut entries = Vec::with_capacity(k * k);
    for (i, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| DocError::Syntax(format!("{what} row {i} is not an array")))?;
        if row.len() != k {
            return syntax(format!(
                "{what} row {i} has {} entries, expected {k}",
                row.len()
            ));
        }
        for entry in row {
            entries.push(magnitude(entry)?);
        }
    }
    MagnitudeTable::from_entries(k, entries).map_err(DocError::Domain)
}

pub fn parse(text: &str) -> Result<Document, DocError> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| DocError::Syntax(format!("json: {e}")))?;
    let Value::Object(obj) = value else {
        return syntax("document must be a JSON object");
    };
    let k = count(field(&obj, "k")?, "k")?;
    match field(&obj, "format")?.as_str() {
        Some(DENSE_FORMAT) => Ok(Document::Dense(square(
            field(&obj, "matrix")?,
            k,
            "matrix",
        )?)),
        Some(CLASSED_FORMAT) => {
            let assignment = field(&obj, "assignment")?
                .as_array()
                .ok_or_else(|| DocError::Syntax("assignment must be an array".into()))?
                .iter()
                .map(|v| count(v, "class id"))
                .collect::<Result<Vec<_>, _>>()?;
            let log_values = field(&obj, "log_values")?
                .as_array()
                .ok_or_else(|| DocError::Syntax("log_values must be an array".into()))?
                .iter()
                .map(|v| {
                    v.as_f64()
                        .ok_or_else(|| DocError::Syntax(format!("log-value {v} is not a number")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            if assignment.len() != k {
                return syntax(format!(
                    "assignment has {} entries, expected {k}",
                    assignment.len()
                ));
            }
            let classes = assignment.iter().map(|c| c + 1).max().unwrap_or(0);
            let order = square(field(&obj, "class_order")?, classes, "class_order")?;
            ClassedRpf::new(assignment, log_values, order)
                .map(Document::Classed)
                .map_err(DocError::Domain)
        }
        Some(other) => syntax(format!("unknown format {other:?}")),
        None => syntax("format must be a string"),
    }
}

impl Document {
    /// The dense table; classed documents are expanded (always valid).
    pub fn into_table(self) -> MagnitudeTable {
        match self {
            Document::Dense(t) => t,
            Document::Classed(c) => c.to_dense().into_table(),
        }
    }

    /// Parses and checks the axioms.
    pub fn into_rpf(self) -> Result<DenseRpf, relprob::RpfError> {
        match self {
            Document::Dense(t) => DenseRpf::new(t),
            Document::Classed(c) => Ok(c.to_dense()),
        }
    }
}

fn rows(t: &MagnitudeTable) -> Value {
    t.rows()
        .map(|row| {
            row.iter()
                .map(|m| Value::String(m.to_string()))
                .collect::<Value>()
        })
        .collect()
}

/// Canonical text: sorted keys, two-space indentation, arrays of scalars on
/// one line, trailing newline.
pub fn finish(value: Value) -> String {
    let mut text = String::new();
    write_value(&mut text, &value, 0);
    text.push('\n');
    text
}

fn scalar(v: &Value) -> String {
    serde_json::to_string(v).expect("scalars always serialize")
}

fn write_value(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth + 1);
    match v {
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (i, (key, item)) in map.iter().enumerate() {
                out.push_str(&pad);
                out.push_str(&scalar(&Value::String(key.clone())));
                out.push_str(": ");
                write_value(out, item, depth + 1);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(depth));
            out.push('}');
        }
        Value::Array(items) if items.iter().any(|x| x.is_array() || x.is_object()) => {
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                out.push_str(&pad);
                write_value(out, item, depth + 1);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(depth));
            out.push(']');
        }
        Value::Array(items) => {
            let inner: Vec<String> = items.iter().map(scalar).collect();
            out.push('[');
            out.push_str(&inner.join(", "));
            out.push(']');
        }
        other => out.push_str(&scalar(other)),
    }
}

pub fn dense(p: &DenseRpf) -> String {
    finish(json!({
        "format": DENSE_FORMAT,
        "k": p.k(),
        "matrix": rows(p.table()),
    }))
}

pub fn classed(c: &ClassedRpf) -> String {
    finish(json!({
        "format": CLASSED_FORMAT,
        "k": c.k(),
        "assignment": c.assignment(),
        "log_values": c.log_values(),
        "class_order": rows(c.class_order()),
    }))
}
