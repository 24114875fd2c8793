//! Report rendering. CSV floats use 17 significant digits; JSON objects have
//! sorted keys.

use serde_json::{Map, Value};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
    Empty,
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format_g17(*v),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => Value::from(*v),
            Cell::Float(v) => float_value(*v),
            Cell::Text(s) => Value::from(s.as_str()),
            Cell::Empty => Value::Null,
        }
    }
}

/// A finite float as a JSON number, anything else as null.
pub fn float_value(v: f64) -> Value {
    serde_json::Number::from_f64(v).map_or(Value::Null, Value::Number)
}

#[derive(Debug, Clone, PartialEq)]
pub enum Report {
    Table {
        header: Vec<&'static str>,
        rows: Vec<Vec<Cell>>,
    },
    Record(Map<String, Value>),
}

impl Report {
    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match (self, format) {
            (Report::Table { header, rows }, Format::Csv) => {
                let mut w = csv::Writer::from_writer(Vec::new());
                let write = |w: &mut csv::Writer<Vec<u8>>, rec: Vec<String>| {
                    w.write_record(rec)
                        .map_err(|e| CliError::Invariant(format!("csv: {e}")))
                };
                write(&mut w, header.iter().map(|h| h.to_string()).collect())?;
                for row in rows {
                    write(&mut w, row.iter().map(Cell::csv).collect())?;
                }
                finish(w)
            }
            (Report::Table { header, rows }, Format::Json) => {
                let items: Vec<Value> = rows
                    .iter()
                    .map(|row| {
                        Value::Object(
                            header
                                .iter()
                                .zip(row)
                                .map(|(h, c)| (h.to_string(), c.json()))
                                .collect(),
                        )
                    })
                    .collect();
                Ok(pretty(&Value::Array(items)))
            }
            (Report::Record(map), Format::Json) => Ok(pretty(&Value::Object(map.clone()))),
            (Report::Record(map), Format::Csv) => {
                let mut w = csv::Writer::from_writer(Vec::new());
                let mut rows = vec![vec!["key".to_string(), "value".to_string()]];
                flatten("", &Value::Object(map.clone()), &mut rows);
                for r in rows {
                    w.write_record(r)
                        .map_err(|e| CliError::Invariant(format!("csv: {e}")))?;
                }
                finish(w)
            }
        }
    }
}

fn finish(w: csv::Writer<Vec<u8>>) -> Result<String, CliError> {
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Invariant(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| CliError::Invariant(e.to_string()))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values are always serializable");
    s.push('\n');
    s
}

/// Nested objects become dotted keys; arrays are written as compact JSON.
fn flatten(prefix: &str, v: &Value, rows: &mut Vec<Vec<String>>) {
    match v {
        Value::Object(map) => {
            for (k, inner) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, inner, rows);
            }
        }
        Value::String(s) => rows.push(vec![prefix.to_string(), s.clone()]),
        Value::Number(n) => {
            let text = match n.as_f64() {
                Some(f) if !n.is_i64() && !n.is_u64() => format_g17(f),
                _ => n.to_string(),
            };
            rows.push(vec![prefix.to_string(), text]);
        }
        other => rows.push(vec![prefix.to_string(), other.to_string()]),
    }
}

/// `%.17g`: 17 significant digits, trailing zeros removed, scientific
/// notation outside `1e-5 ≤ |x| < 1e17`.
pub fn format_g17(x: f64) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    let sci = format!("{:.16e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..17).contains(&exp) {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{m}e{sign}{:02}", exp.abs());
    }
    let decimals = (16 - exp) as usize;
    trim_zeros(&format!("{:.*}", decimals, x)).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
