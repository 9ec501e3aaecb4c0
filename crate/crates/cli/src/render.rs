//! Human-readable view of a [`CommandResult`], derived from its JSON.

use std::fmt::Write;

use serde_json::{Map, Value};

use crate::CommandResult;

pub fn render(result: &CommandResult) -> String {
    let mut out = String::new();
    let status = serde_json::to_value(result.status).expect("status serializes");
    writeln!(out, "status: {}", scalar(&status)).unwrap();
    match &result.payload {
        Value::Object(map) => object(&mut out, map, 0),
        Value::Null => {}
        other => writeln!(out, "{}", scalar(other)).unwrap(),
    }
    if !result.diagnostics.is_empty() {
        out.push_str("diagnostics:\n");
        for d in &result.diagnostics {
            writeln!(out, "  - {d}").unwrap();
        }
    }
    out
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".to_string(),
        Value::Array(items) => items.iter().map(scalar).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(items) => items.iter().all(|i| !i.is_array() && !i.is_object()),
        Value::Object(_) => false,
        _ => true,
    }
}

fn object(out: &mut String, map: &Map<String, Value>, depth: usize) {
    let pad = "  ".repeat(depth);
    for (key, value) in map {
        match value {
            v if is_flat(v) => writeln!(out, "{pad}{key}: {}", scalar(v)).unwrap(),
            Value::Object(inner) => {
                writeln!(out, "{pad}{key}:").unwrap();
                object(out, inner, depth + 1);
            }
            Value::Array(items) => {
                writeln!(out, "{pad}{key}:").unwrap();
                array(out, items, depth + 1);
            }
            _ => unreachable!("flat values handled above"),
        }
    }
}

fn array(out: &mut String, items: &[Value], depth: usize) {
    let rows: Option<Vec<&Map<String, Value>>> = items.iter().map(Value::as_object).collect();
    match rows {
        Some(rows) if rows.iter().all(|r| r.values().all(is_flat)) => table(out, &rows, depth),
        _ => {
            let pad = "  ".repeat(depth);
            for (i, item) in items.iter().enumerate() {
                match item {
                    Value::Object(map) => {
                        writeln!(out, "{pad}[{i}]").unwrap();
                        object(out, map, depth + 1);
                    }
                    other => writeln!(out, "{pad}{}", scalar(other)).unwrap(),
                }
            }
        }
    }
}

/// Column-aligned table; the header is the union of keys in first-seen order.
fn table(out: &mut String, rows: &[&Map<String, Value>], depth: usize) {
    let mut header: Vec<&str> = Vec::new();
    for row in rows {
        for key in row.keys() {
            if !header.contains(&key.as_str()) {
                header.push(key);
            }
        }
    }
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            header
                .iter()
                .map(|h| r.get(*h).map_or("-".into(), scalar))
                .collect()
        })
        .collect();
    let widths: Vec<usize> = header
        .iter()
        .enumerate()
        .map(|(c, h)| {
            cells
                .iter()
                .map(|r| r[c].len())
                .chain([h.len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let pad = "  ".repeat(depth);
    let line = |cols: Vec<&str>| -> String {
        let joined: Vec<String> = cols
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        format!("{pad}{}\n", joined.join("  ").trim_end())
    };
    out.push_str(&line(header.clone()));
    for row in &cells {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
    }
}
