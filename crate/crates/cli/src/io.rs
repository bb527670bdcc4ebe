//! JSON file formats.
//!
//! Matrix entries are strings in the field's notation (`"3"`, `"-1/2"`), or
//! coefficient lists for extension fields (`[0, 1]`). No floats anywhere.

use std::path::Path;

use matinv::{parse_trace, Elem, Field, MatTuple, Matrix, PointVariety, RegularMapSpec};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TupleFile {
    pub field: String,
    pub n: usize,
    pub m: usize,
    pub mats: Vec<Vec<Vec<Value>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointEntry {
    #[serde(default)]
    pub label: Option<String>,
    pub mats: Vec<Vec<Vec<Value>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VarietyFile {
    pub field: String,
    pub n: usize,
    pub m: usize,
    #[serde(default)]
    pub label: String,
    pub points: Vec<PointEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MapFile {
    pub field: String,
    pub source_m: usize,
    pub target_l: usize,
    pub images: Vec<String>,
}

pub fn elem_to_json(a: &Elem) -> Value {
    match a {
        Elem::ExtResidue(c) => Value::from(c.clone()),
        other => Value::from(other.to_string()),
    }
}

fn elem_from_json(field: &Field, v: &Value) -> Result<Elem, CliError> {
    match v {
        Value::String(s) => Ok(field.parse_elem(s)?),
        Value::Number(num) => Ok(field.parse_elem(&num.to_string())?),
        Value::Array(items) => {
            let coeffs = items
                .iter()
                .map(|c| match c {
                    Value::Number(num) => num.as_i64().ok_or_else(|| bad_entry(c)),
                    Value::String(s) => s.trim().parse::<i64>().map_err(|_| bad_entry(c)),
                    _ => Err(bad_entry(c)),
                })
                .collect::<Result<Vec<i64>, _>>()?;
            Ok(field.from_coeffs(&coeffs)?)
        }
        other => Err(bad_entry(other)),
    }
}

fn bad_entry(v: &Value) -> CliError {
    CliError::Input(format!("matrix entry {v} is neither a string nor a coefficient list"))
}

pub fn matrix_to_json(a: &Matrix) -> Vec<Vec<Value>> {
    (0..a.rows()).map(|i| a.row(i).iter().map(elem_to_json).collect()).collect()
}

fn matrix_from_json(field: &Field, n: usize, rows: &[Vec<Value>]) -> Result<Matrix, CliError> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(CliError::Input(format!("expected a {n} x {n} matrix")));
    }
    let rows = rows
        .iter()
        .map(|r| r.iter().map(|v| elem_from_json(field, v)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Matrix::from_rows(field, rows)?)
}

fn tuple_from_json(field: &Field, n: usize, m: usize, mats: &[Vec<Vec<Value>>]) -> Result<MatTuple, CliError> {
    if mats.len() != m {
        return Err(CliError::Input(format!("expected {m} matrices, found {}", mats.len())));
    }
    let mats = mats.iter().map(|a| matrix_from_json(field, n, a)).collect::<Result<Vec<_>, _>>()?;
    Ok(MatTuple::new(mats)?)
}

impl TupleFile {
    pub fn from_tuple(x: &MatTuple) -> Self {
        TupleFile {
            field: x.field().to_string(),
            n: x.n(),
            m: x.m(),
            mats: x.mats().iter().map(matrix_to_json).collect(),
        }
    }

    pub fn to_tuple(&self) -> Result<MatTuple, CliError> {
        let field: Field = self.field.parse()?;
        tuple_from_json(&field, self.n, self.m, &self.mats)
    }
}

impl VarietyFile {
    pub fn from_variety(x: &PointVariety) -> Self {
        VarietyFile {
            field: x.field().to_string(),
            n: x.n(),
            m: x.m(),
            label: x.label().to_string(),
            points: x
                .points()
                .iter()
                .zip(x.point_labels())
                .map(|(p, label)| PointEntry {
                    label: Some(label.clone()),
                    mats: p.mats().iter().map(matrix_to_json).collect(),
                })
                .collect(),
        }
    }

    pub fn to_variety(&self) -> Result<PointVariety, CliError> {
        let field: Field = self.field.parse()?;
        let points = self
            .points
            .iter()
            .map(|p| tuple_from_json(&field, self.n, self.m, &p.mats))
            .collect::<Result<Vec<_>, _>>()?;
        let labels = self
            .points
            .iter()
            .enumerate()
            .map(|(i, p)| p.label.clone().unwrap_or_else(|| i.to_string()))
            .collect();
        Ok(matinv::variety_from_labelled_points(points, labels, &self.label)?)
    }
}

impl MapFile {
    pub fn from_spec(spec: &RegularMapSpec, field: &Field) -> Self {
        MapFile {
            field: field.to_string(),
            source_m: spec.source_m(),
            target_l: spec.target_l(),
            images: spec.images().iter().map(|t| t.to_string()).collect(),
        }
    }

    pub fn to_spec(&self) -> Result<(Field, RegularMapSpec), CliError> {
        let field: Field = self.field.parse()?;
        if self.images.len() != self.target_l {
            return Err(CliError::Input(format!(
                "target_l is {} but {} images are given",
                self.target_l,
                self.images.len()
            )));
        }
        let images = self.images.iter().map(|s| parse_trace(&field, s)).collect::<Result<Vec<_>, _>>()?;
        Ok((field.clone(), RegularMapSpec::new(self.source_m, images)?))
    }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn read_tuple(path: &Path) -> Result<MatTuple, CliError> {
    read_json::<TupleFile>(path)?.to_tuple()
}

pub fn read_variety(path: &Path) -> Result<PointVariety, CliError> {
    read_json::<VarietyFile>(path)?.to_variety()
}

pub fn read_map(path: &Path) -> Result<(Field, RegularMapSpec), CliError> {
    read_json::<MapFile>(path)?.to_spec()
}
