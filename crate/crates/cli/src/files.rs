//! On-disk formats.
//!
//! - Lattice: `{"n": 2, "basis": [[1, 0], [0, "1/2"]]}`. `basis` lists the
//!   basis vectors (the columns of the basis matrix); entries are integers
//!   or `"p/q"` strings.
//! - Polygon: `[[x, y], ...]`, an ordered vertex list.
//! - Cell complex: `{"V": 8, "E": 12, "F": 4}`.

use std::path::Path;

use serde_json::{json, Value};
use spectral_core::lattice::LatticeBasis;
use spectral_core::polygeom::{CellComplex, Point, PointCloud, Polygon};
use spectral_core::rational::{self, Rational};

use crate::error::CliError;

pub fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| CliError::Format {
        path: path.to_path_buf(),
        message: format!("malformed JSON: {e}"),
    })
}

fn field<'a>(obj: &'a Value, name: &str) -> Result<&'a Value, String> {
    obj.get(name)
        .ok_or_else(|| format!("missing field `{name}`"))
}

fn rational_entry(v: &Value, at: &str) -> Result<Rational, String> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(rational::int)
            .ok_or_else(|| format!("`{at}`: expected an integer or a \"p/q\" string, got {n}")),
        Value::String(s) => rational::parse(s).map_err(|e| format!("`{at}`: {e}")),
        other => Err(format!(
            "`{at}`: expected an integer or a \"p/q\" string, got {other}"
        )),
    }
}

pub fn lattice_from_json(v: &Value) -> Result<LatticeBasis, String> {
    let n = field(v, "n")?
        .as_u64()
        .ok_or("`n`: expected a positive integer")? as usize;
    let columns = field(v, "basis")?
        .as_array()
        .ok_or("`basis`: expected an array of vectors")?;
    if columns.len() != n {
        return Err(format!(
            "`basis`: expected {n} vectors, got {}",
            columns.len()
        ));
    }
    let mut parsed = Vec::with_capacity(n);
    for (j, col) in columns.iter().enumerate() {
        let entries = col
            .as_array()
            .ok_or_else(|| format!("`basis[{j}]`: expected an array"))?;
        if entries.len() != n {
            return Err(format!(
                "`basis[{j}]`: expected {n} entries, got {}",
                entries.len()
            ));
        }
        parsed.push(
            entries
                .iter()
                .enumerate()
                .map(|(i, e)| rational_entry(e, &format!("basis[{j}][{i}]")))
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    LatticeBasis::from_columns(parsed).map_err(|e| format!("`basis`: {e}"))
}

fn rational_json(r: &Rational) -> Value {
    if rational::is_integer(r) {
        if let Ok(i) = i64::try_from(r.numer().clone()) {
            return Value::from(i);
        }
    }
    Value::from(r.to_string())
}

pub fn lattice_to_json(b: &LatticeBasis) -> Value {
    let columns: Vec<Value> = b
        .columns()
        .iter()
        .map(|c| Value::Array(c.iter().map(rational_json).collect()))
        .collect();
    json!({ "n": b.dim(), "basis": columns })
}

fn points_from_json(v: &Value) -> Result<Vec<Point>, String> {
    let items = v.as_array().ok_or("expected an array of [x, y] pairs")?;
    items
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let pair = p
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| format!("`[{i}]`: expected an [x, y] pair"))?;
            let coord = |k: usize| {
                pair[k]
                    .as_f64()
                    .ok_or_else(|| format!("`[{i}][{k}]`: expected a number"))
            };
            Ok([coord(0)?, coord(1)?])
        })
        .collect()
}

pub fn polygon_from_json(v: &Value) -> Result<Polygon, String> {
    Polygon::new(points_from_json(v)?).map_err(|e| e.to_string())
}

pub fn cloud_from_json(v: &Value) -> Result<PointCloud, String> {
    PointCloud::new(points_from_json(v)?).map_err(|e| e.to_string())
}

pub fn polygon_to_json(p: &Polygon) -> Value {
    Value::Array(p.vertices().iter().map(|v| json!([v[0], v[1]])).collect())
}

pub fn complex_from_json(v: &Value) -> Result<CellComplex, String> {
    let count = |name: &str| {
        field(v, name)?
            .as_i64()
            .ok_or_else(|| format!("`{name}`: expected an integer"))
    };
    CellComplex::new(count("V")?, count("E")?, count("F")?).map_err(|e| e.to_string())
}

pub fn complex_to_json(c: &CellComplex) -> Value {
    json!({ "V": c.vertices(), "E": c.edges(), "F": c.faces() })
}

fn with_path<T>(path: &Path, r: Result<T, String>) -> Result<T, CliError> {
    r.map_err(|message| CliError::Format {
        path: path.to_path_buf(),
        message,
    })
}

pub fn load_lattice(path: &Path) -> Result<LatticeBasis, CliError> {
    with_path(path, lattice_from_json(&read_json(path)?))
}

pub fn load_polygon(path: &Path) -> Result<Polygon, CliError> {
    with_path(path, polygon_from_json(&read_json(path)?))
}

pub fn load_cloud(path: &Path) -> Result<PointCloud, CliError> {
    with_path(path, cloud_from_json(&read_json(path)?))
}

pub fn load_complex(path: &Path) -> Result<CellComplex, CliError> {
    with_path(path, complex_from_json(&read_json(path)?))
}
