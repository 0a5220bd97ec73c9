//! JSON and CSV emission of command records.

use std::io::Write;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// One command's output.
#[derive(Debug, Serialize)]
pub struct Record {
    pub command: String,
    pub params: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis: Option<&'static str>,
    pub result: Value,
    /// Column names for results that are lists of tuples.
    #[serde(skip)]
    pub columns: Option<Vec<&'static str>>,
}

impl Record {
    pub fn new(command: &str, params: Value, result: Value) -> Self {
        Record { command: command.into(), params, basis: None, result, columns: None }
    }

    pub fn basis(mut self, b: &'static str) -> Self {
        self.basis = Some(b);
        self
    }

    pub fn columns(mut self, c: &[&'static str]) -> Self {
        self.columns = Some(c.to_vec());
        self
    }
}

/// A float with an absolute error bound, as every float is reported.
pub fn approx(value: f64, err: f64) -> Value {
    json!({ "value": value, "err": err })
}

fn is_approx(m: &Map<String, Value>) -> bool {
    m.len() == 2 && m.contains_key("value") && m.contains_key("err")
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        Value::Bool(b) => b.to_string(),
        other => other.to_string(),
    }
}

/// Flattens one row: `{value, err}` objects become two columns, anything
/// else nested is kept as compact JSON text.
fn flatten_row(obj: &Map<String, Value>) -> Vec<(String, String)> {
    let mut out = Vec::new();
    for (k, v) in obj {
        match v {
            Value::Object(m) if is_approx(m) => {
                out.push((k.clone(), cell(&m["value"])));
                out.push((format!("{k}_err"), cell(&m["err"])));
            }
            _ => out.push((k.clone(), cell(v))),
        }
    }
    out
}

fn rows(rec: &Record) -> (Vec<String>, Vec<Vec<String>>) {
    match &rec.result {
        Value::Array(items) if items.iter().all(Value::is_object) && !items.is_empty() => {
            let flat: Vec<Vec<(String, String)>> =
                items.iter().map(|it| flatten_row(it.as_object().expect("object"))).collect();
            let header: Vec<String> = flat[0].iter().map(|(k, _)| k.clone()).collect();
            let body = flat
                .iter()
                .map(|row| {
                    header
                        .iter()
                        .map(|h| row.iter().find(|(k, _)| k == h).map(|(_, v)| v.clone()).unwrap_or_default())
                        .collect()
                })
                .collect();
            (header, body)
        }
        Value::Array(items) => {
            let width = items.iter().map(|it| it.as_array().map_or(1, Vec::len)).max().unwrap_or(1);
            let header = match &rec.columns {
                Some(c) if c.len() == width => c.iter().map(|s| s.to_string()).collect(),
                _ if width == 1 => vec!["value".to_string()],
                _ => (0..width).map(|i| format!("c{i}")).collect(),
            };
            let body = items
                .iter()
                .map(|it| match it {
                    Value::Array(a) => a.iter().map(cell).collect(),
                    other => vec![cell(other)],
                })
                .collect();
            (header, body)
        }
        Value::Object(m) => {
            let flat = flatten_row(m);
            (flat.iter().map(|(k, _)| k.clone()).collect(), vec![flat.into_iter().map(|(_, v)| v).collect()])
        }
        other => (vec!["result".into()], vec![vec![cell(other)]]),
    }
}

pub fn emit(rec: &Record, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, rec)?;
            writeln!(out)
        }
        Format::Csv => {
            let (header, body) = rows(rec);
            let mut w = csv::Writer::from_writer(out);
            w.write_record(&header)?;
            for row in body {
                w.write_record(&row)?;
            }
            w.flush()
        }
    }
}
