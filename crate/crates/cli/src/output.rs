use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Rows for CSV output (and the `table` field of the JSON result).
#[derive(Debug, Clone, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        self.rows.push(row);
    }
}

/// What a command produced, before rendering.
pub struct Outcome {
    pub result: Value,
    pub diagnostics: Value,
    pub pass: Option<bool>,
    pub table: Option<Table>,
}

impl Outcome {
    pub fn new(result: Value) -> Self {
        Outcome {
            result,
            diagnostics: Value::Object(Map::new()),
            pass: None,
            table: None,
        }
    }

    pub fn diagnostics(mut self, d: Value) -> Self {
        self.diagnostics = d;
        self
    }

    pub fn pass(mut self, pass: bool) -> Self {
        self.pass = Some(pass);
        self
    }

    pub fn table(mut self, t: Table) -> Self {
        self.table = Some(t);
        self
    }
}

pub fn document(command: &str, params: &Value, out: &Outcome) -> Value {
    let mut result = out.result.clone();
    if let (Some(t), Value::Object(m)) = (&out.table, &mut result) {
        m.insert("table".into(), serde_json::to_value(t).unwrap_or(Value::Null));
    }
    json!({
        "command": command,
        "params": params,
        "result": result,
        "diagnostics": out.diagnostics,
        "pass": out.pass,
    })
}

pub fn error_document(command: Option<&str>, params: &Value, kind: &str, reason: &str) -> Value {
    json!({
        "command": command,
        "params": params,
        "result": Value::Null,
        "diagnostics": { "error": kind, "reason": reason },
        "pass": false,
    })
}

fn csv_field(v: &Value) -> String {
    match v {
        Value::String(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

pub fn render_csv(out: &Outcome) -> String {
    let mut s = String::new();
    if let Some(t) = &out.table {
        s.push_str(&t.columns.join(","));
        s.push('\n');
        for row in &t.rows {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:e}")).collect();
            s.push_str(&cells.join(","));
            s.push('\n');
        }
        return s;
    }
    // scalar results become one header line and one value line
    let mut keys = Vec::new();
    let mut vals = Vec::new();
    if let Value::Object(m) = &out.result {
        for (k, v) in m {
            if !v.is_array() && !v.is_object() {
                keys.push(k.clone());
                vals.push(csv_field(v));
            }
        }
    }
    if let Some(p) = out.pass {
        keys.push("pass".into());
        vals.push(p.to_string());
    }
    s.push_str(&keys.join(","));
    s.push('\n');
    s.push_str(&vals.join(","));
    s.push('\n');
    s
}

pub fn emit(text: &str, path: Option<&Path>) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()
        }
    }
}
