//! Rendering of command results. JSON goes through `serde_json::Value`,
//! whose maps are ordered, so keys come out sorted and output is stable.

use std::io::Write;

use serde_json::Value;

use crate::Format;

/// A command result plus an optional hand-picked CSV projection.
pub struct Outcome {
    pub json: Value,
    pub table: Option<Table>,
    /// Set when the output is complete but reports a failed check.
    pub failure: Option<String>,
}

pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Outcome {
    pub fn json(json: Value) -> Self {
        Self {
            json,
            table: None,
            failure: None,
        }
    }
}

pub fn render(outcome: &Outcome, format: Format) -> Result<Vec<u8>, String> {
    match format {
        Format::Json => {
            let mut out = serde_json::to_vec_pretty(&outcome.json).map_err(|e| e.to_string())?;
            out.push(b'\n');
            Ok(out)
        }
        Format::Csv => {
            let owned;
            let table = match &outcome.table {
                Some(t) => t,
                None => {
                    owned = flatten(&outcome.json);
                    &owned
                }
            };
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&table.columns).map_err(|e| e.to_string())?;
            for row in &table.rows {
                w.write_record(row).map_err(|e| e.to_string())?;
            }
            w.into_inner().map_err(|e| e.to_string())
        }
    }
}

/// One row per object (or per element of a top-level array). Nested objects
/// become dotted columns, scalar arrays are space-joined and arrays of
/// objects are dropped.
fn flatten(json: &Value) -> Table {
    let objects: Vec<&serde_json::Map<String, Value>> = match json {
        Value::Array(items) => items.iter().filter_map(Value::as_object).collect(),
        Value::Object(map) => vec![map],
        _ => Vec::new(),
    };
    if objects.is_empty() {
        return Table {
            columns: vec!["value".to_string()],
            rows: vec![vec![cell(json).unwrap_or_default()]],
        };
    }
    let flat: Vec<Vec<(String, String)>> = objects
        .iter()
        .map(|obj| {
            let mut cells = Vec::new();
            collect("", obj, &mut cells);
            cells
        })
        .collect();
    let columns: Vec<String> = flat[0].iter().map(|(k, _)| k.clone()).collect();
    let rows = flat
        .iter()
        .map(|cells| {
            columns
                .iter()
                .map(|c| {
                    cells
                        .iter()
                        .find(|(k, _)| k == c)
                        .map(|(_, v)| v.clone())
                        .unwrap_or_default()
                })
                .collect()
        })
        .collect();
    Table { columns, rows }
}

fn collect(prefix: &str, obj: &serde_json::Map<String, Value>, out: &mut Vec<(String, String)>) {
    for (k, v) in obj {
        let key = if prefix.is_empty() {
            k.clone()
        } else {
            format!("{prefix}.{k}")
        };
        match v {
            Value::Object(inner) => collect(&key, inner, out),
            other => {
                if let Some(c) = cell(other) {
                    out.push((key, c));
                }
            }
        }
    }
}

fn cell(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some(String::new()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) => items
            .iter()
            .map(|item| match item {
                Value::Array(_) | Value::Object(_) => None,
                other => cell(other),
            })
            .collect::<Option<Vec<_>>>()
            .map(|parts| parts.join(" ")),
        Value::Object(_) => None,
    }
}

pub fn write(bytes: &[u8], path: Option<&std::path::Path>) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, bytes),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(bytes)?;
            lock.flush()
        }
    }
}
