//! JSON formats for points, polytopes, ground sets and ray configurations.
//!
//! Rationals are strings `"±num"` or `"±num/den"`; plain JSON integers are
//! accepted as well. Errors carry a path such as `vertices[2][0]`.

use serde_json::{json, Value};
use thiserror::Error;

use super::polytope::Polytope;
use super::rational::{format_rational, parse_rational, Rational, RationalPoint};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{path}: {message}")]
pub struct DataError {
    pub path: String,
    pub message: String,
}

impl DataError {
    pub fn new(path: impl Into<String>, message: impl Into<String>) -> DataError {
        DataError {
            path: path.into(),
            message: message.into(),
        }
    }
}

pub fn rational_from_json(v: &Value, path: &str) -> Result<Rational, DataError> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| DataError::new(path, e.to_string())),
        Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(n.as_i64().unwrap().into())),
        _ => Err(DataError::new(path, "expected a rational string")),
    }
}

pub fn rational_to_json(q: &Rational) -> Value {
    Value::String(format_rational(q))
}

pub fn point_from_json(v: &Value, path: &str, dim: Option<usize>) -> Result<RationalPoint, DataError> {
    let arr = v
        .as_array()
        .ok_or_else(|| DataError::new(path, "expected an array of coordinates"))?;
    if let Some(d) = dim {
        if arr.len() != d {
            return Err(DataError::new(
                path,
                format!("expected {d} coordinates, found {}", arr.len()),
            ));
        }
    }
    let coords = arr
        .iter()
        .enumerate()
        .map(|(i, c)| rational_from_json(c, &format!("{path}[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RationalPoint::new(coords))
}

pub fn point_to_json(p: &RationalPoint) -> Value {
    Value::Array(p.coords().iter().map(rational_to_json).collect())
}

fn field<'a>(v: &'a Value, key: &str, path: &str) -> Result<&'a Value, DataError> {
    v.get(key)
        .ok_or_else(|| DataError::new(path, format!("missing field {key:?}")))
}

fn join_path(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

pub fn dim_from_json(v: &Value, path: &str) -> Result<usize, DataError> {
    let d = field(v, "dim", path)?;
    d.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| DataError::new(join_path(path, "dim"), "expected a nonnegative integer"))
}

/// Points listed under `key`, all of dimension `dim`.
pub fn point_list_from_json(
    v: &Value,
    key: &str,
    path: &str,
    dim: usize,
) -> Result<Vec<RationalPoint>, DataError> {
    let list_path = join_path(path, key);
    let arr = field(v, key, path)?
        .as_array()
        .ok_or_else(|| DataError::new(&list_path, "expected an array of points"))?;
    arr.iter()
        .enumerate()
        .map(|(i, p)| point_from_json(p, &format!("{list_path}[{i}]"), Some(dim)))
        .collect()
}

/// `{"dim": n, "vertices": [[...], ...]}`; the hull of the listed points.
pub fn polytope_from_json(v: &Value, path: &str) -> Result<Polytope, DataError> {
    let dim = dim_from_json(v, path)?;
    let pts = point_list_from_json(v, "vertices", path, dim)?;
    Polytope::hull(&pts, dim).map_err(|e| DataError::new(path, e.to_string()))
}

pub fn polytope_to_json(p: &Polytope) -> Value {
    json!({
        "dim": p.dim(),
        "vertices": p.vertices().iter().map(point_to_json).collect::<Vec<_>>(),
    })
}

/// `{"dim": n, "points": [[...], ...]}`.
pub fn ground_set_from_json(v: &Value) -> Result<(usize, Vec<RationalPoint>), DataError> {
    let dim = dim_from_json(v, "")?;
    Ok((dim, point_list_from_json(v, "points", "", dim)?))
}

/// `{"dim": n, "rays": [[...], ...]}`.
pub fn rays_from_json(v: &Value) -> Result<(usize, Vec<RationalPoint>), DataError> {
    let dim = dim_from_json(v, "")?;
    Ok((dim, point_list_from_json(v, "rays", "", dim)?))
}
