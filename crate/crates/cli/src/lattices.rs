//! Lattice selectors, identity sources and assignment files.

use std::collections::HashMap;
use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde_json::Value;

use cvxlat::conv::{RelConvLattice, RelSet};
use cvxlat::geom::io::{ground_set_from_json, point_from_json, polytope_from_json, DataError};
use cvxlat::geom::Polytope;
use cvxlat::term::{builtin_identity, parse_identity, Identity};

pub enum Selected {
    Conv(usize),
    Pointed(usize),
    RelConv(RelConvLattice),
}

pub fn read_json(path: &str) -> Result<Value> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {path}"))?;
    serde_json::from_str(&text).with_context(|| format!("{path}: invalid JSON"))
}

fn parse_dim(s: &str, sel: &str) -> Result<usize> {
    match s.parse::<usize>() {
        Ok(n) if n >= 1 => Ok(n),
        _ => bail!("bad dimension in lattice selector {sel:?}"),
    }
}

fn load_ground(path: &str) -> Result<(usize, Vec<cvxlat::geom::RationalPoint>)> {
    let v = read_json(path)?;
    ground_set_from_json(&v).map_err(|e| anyhow!("{path}: {e}"))
}

/// `conv:<n>`, `pointed:<n>`, `relconv:<path>` or
/// `relconv-pointed:<path>:<point-index>`.
pub fn parse_selector(sel: &str) -> Result<Selected> {
    let (kind, rest) = sel
        .split_once(':')
        .ok_or_else(|| anyhow!("lattice selector {sel:?} has no ':'"))?;
    match kind {
        "conv" => Ok(Selected::Conv(parse_dim(rest, sel)?)),
        "pointed" => Ok(Selected::Pointed(parse_dim(rest, sel)?)),
        "relconv" => {
            let (dim, pts) = load_ground(rest)?;
            Ok(Selected::RelConv(RelConvLattice::new(dim, pts)?))
        }
        "relconv-pointed" => {
            let (path, idx) = rest
                .rsplit_once(':')
                .ok_or_else(|| anyhow!("{sel:?}: expected relconv-pointed:<path>:<index>"))?;
            let idx: usize = idx.parse().with_context(|| format!("{sel:?}: bad point index"))?;
            let (dim, pts) = load_ground(path)?;
            Ok(Selected::RelConv(RelConvLattice::pointed(dim, pts, idx)?))
        }
        _ => bail!("unknown lattice kind {kind:?}"),
    }
}

/// A builtin name such as `D:2`, an identity in the term language, or a file
/// holding one.
pub fn resolve_identity(source: &str) -> Result<Identity> {
    let text = if source.contains('=') {
        source.to_string()
    } else if Path::new(source).is_file() {
        fs::read_to_string(source).with_context(|| format!("cannot read {source}"))?
    } else {
        return builtin_identity(source).map_err(|e| anyhow!("identity {source:?}: {e}"));
    };
    parse_identity(text.trim()).map_err(|e| anyhow!("identity: {e}"))
}

fn data_err(e: DataError) -> anyhow::Error {
    anyhow!("{e}")
}

fn polytope_value(v: &Value, path: &str, dim: usize) -> Result<Polytope> {
    let p = match v {
        Value::Array(items) => {
            let pts = items
                .iter()
                .enumerate()
                .map(|(i, p)| point_from_json(p, &format!("{path}[{i}]"), Some(dim)))
                .collect::<Result<Vec<_>, _>>()
                .map_err(data_err)?;
            Polytope::hull(&pts, dim)?
        }
        _ => polytope_from_json(v, path).map_err(data_err)?,
    };
    if p.dim() != dim {
        bail!("{path}: polytope has dimension {}, lattice has {dim}", p.dim());
    }
    Ok(p)
}

fn relset_value(l: &RelConvLattice, v: &Value, path: &str) -> Result<RelSet> {
    if let Some(idx) = v.get("indices") {
        let idx: Vec<usize> = serde_json::from_value(idx.clone())
            .with_context(|| format!("{path}.indices: expected point indices"))?;
        if let Some(&bad) = idx.iter().find(|&&i| i >= l.ground().len()) {
            bail!("{path}.indices: index {bad} is outside the ground set");
        }
        return Ok(RelSet::from_indices(&idx));
    }
    let items = v
        .as_array()
        .ok_or_else(|| anyhow!("{path}: expected a list of ground points or {{\"indices\": [...]}}"))?;
    let pts = items
        .iter()
        .enumerate()
        .map(|(i, p)| point_from_json(p, &format!("{path}[{i}]"), Some(l.dim())))
        .collect::<Result<Vec<_>, _>>()
        .map_err(data_err)?;
    l.set_of(&pts).with_context(|| path.to_string())
}

fn vars(v: &Value) -> Result<&serde_json::Map<String, Value>> {
    v.get("vars")
        .and_then(Value::as_object)
        .ok_or_else(|| anyhow!("assignment file: missing object \"vars\""))
}

pub fn polytope_assignment(v: &Value, dim: usize) -> Result<HashMap<String, Polytope>> {
    vars(v)?
        .iter()
        .map(|(k, e)| Ok((k.clone(), polytope_value(e, &format!("vars.{k}"), dim)?)))
        .collect()
}

pub fn relset_assignment(v: &Value, l: &RelConvLattice) -> Result<HashMap<String, RelSet>> {
    vars(v)?
        .iter()
        .map(|(k, e)| Ok((k.clone(), relset_value(l, e, &format!("vars.{k}"))?)))
        .collect()
}
