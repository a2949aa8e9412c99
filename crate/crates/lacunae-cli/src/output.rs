//! Output emission: JSON (canonical), CSV for tabular values, and a compact
//! human form.

use serde_json::Value;
use std::io::Write;

use crate::Cli;

pub fn emit(cli: &Cli, value: &Value) -> Result<(), String> {
    let text = match cli.format.as_str() {
        "json" => serde_json::to_string_pretty(value).map_err(|e| e.to_string())? + "\n",
        "csv" => to_csv(value)?,
        _ => human(value, 0) + "\n",
    };
    match &cli.out {
        Some(path) => {
            let mut f = std::fs::File::create(path).map_err(|e| e.to_string())?;
            f.write_all(text.as_bytes()).map_err(|e| e.to_string())
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn scalar_to_string(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Arrays of flat objects become header + rows; a single object becomes one
/// row. Nested values are JSON-encoded in their cell.
fn to_csv(value: &Value) -> Result<String, String> {
    let rows: Vec<&serde_json::Map<String, Value>> = match value {
        Value::Array(items) => items
            .iter()
            .map(|it| {
                it.as_object()
                    .ok_or_else(|| "csv output requires object rows".to_string())
            })
            .collect::<Result<_, _>>()?,
        Value::Object(map) => vec![map],
        _ => return Err("csv output requires an object or array of objects".into()),
    };
    let mut headers: Vec<String> = Vec::new();
    for row in &rows {
        for key in row.keys() {
            if !headers.contains(key) {
                headers.push(key.clone());
            }
        }
    }
    let mut out = String::new();
    out.push_str(&headers.iter().map(|h| csv_escape(h)).collect::<Vec<_>>().join(","));
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = headers
            .iter()
            .map(|h| row.get(h).map(scalar_to_string).unwrap_or_default())
            .map(|c| csv_escape(&c))
            .collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    Ok(out)
}

fn human(value: &Value, indent: usize) -> String {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(map) => map
            .iter()
            .map(|(k, v)| match v {
                Value::Object(_) | Value::Array(_) => {
                    format!("{pad}{k}:\n{}", human(v, indent + 1))
                }
                _ => format!("{pad}{k}: {}", scalar_to_string(v)),
            })
            .collect::<Vec<_>>()
            .join("\n"),
        Value::Array(items) => items
            .iter()
            .map(|v| match v {
                Value::Object(_) | Value::Array(_) => human(v, indent),
                _ => format!("{pad}- {}", scalar_to_string(v)),
            })
            .collect::<Vec<_>>()
            .join(&format!("\n{pad}---\n")),
        other => format!("{pad}{}", scalar_to_string(other)),
    }
}
