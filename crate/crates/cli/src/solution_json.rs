//! Solution documents with 1-based ids, matching the instance files.

use packcover_core::ratio::format_ratio;
use packcover_core::solution::TrianglePacking;
use packcover_core::{Cov2Solution, CoverSolution, MpcSolution};
use serde_json::{json, Value};

use crate::error::{failed, CliResult};

fn one(ids: &[usize]) -> Vec<usize> {
    ids.iter().map(|&i| i + 1).collect()
}

pub fn packing(p: &TrianglePacking) -> Value {
    json!({ "triangles": p.triangles.iter().map(|t| one(t)).collect::<Vec<_>>() })
}

pub fn cover(c: &CoverSolution) -> Value {
    json!({ "groups": c.groups.iter().map(|g| one(g)).collect::<Vec<_>>() })
}

pub fn mpc(s: &MpcSolution) -> Value {
    json!({ "selected": one(&s.selected), "profit": format_ratio(&s.profit) })
}

pub fn cov2(s: &Cov2Solution) -> Value {
    json!({ "selected": one(&s.selected), "twice_covered": one(&s.twice_covered) })
}

pub fn ids(list: &[usize]) -> Value {
    json!(one(list))
}

/// A report's `solution` field, or the document itself.
pub fn unwrap_report(v: Value) -> Value {
    match v {
        Value::Object(mut m) if m.contains_key("solution") && m.contains_key("algorithm") => m.remove("solution").unwrap(),
        other => other,
    }
}

pub fn has(v: &Value, key: &str) -> bool {
    v.get(key).is_some()
}

fn zero_based(x: &Value, key: &str) -> CliResult<usize> {
    match x.as_u64() {
        Some(i) if i >= 1 => Ok(i as usize - 1),
        _ => Err(failed(format!("`{key}` must hold 1-based ids, found {x}"))),
    }
}

pub fn get_ids(v: &Value, key: &str) -> CliResult<Vec<usize>> {
    let arr = v
        .get(key)
        .and_then(Value::as_array)
        .ok_or_else(|| failed(format!("solution has no `{key}` list")))?;
    arr.iter().map(|x| zero_based(x, key)).collect()
}

pub fn get_groups(v: &Value, key: &str) -> CliResult<Vec<Vec<usize>>> {
    let arr = v
        .get(key)
        .and_then(Value::as_array)
        .ok_or_else(|| failed(format!("solution has no `{key}` list")))?;
    arr.iter()
        .map(|g| {
            g.as_array()
                .ok_or_else(|| failed(format!("`{key}` entries must be lists")))?
                .iter()
                .map(|x| zero_based(x, key))
                .collect()
        })
        .collect()
}

pub fn get_triangles(v: &Value) -> CliResult<TrianglePacking> {
    let groups = get_groups(v, "triangles")?;
    let tris = groups
        .into_iter()
        .map(|g| <[usize; 3]>::try_from(g).map_err(|g| failed(format!("triangle {} does not have three nodes", json!(one(&g))))))
        .collect::<CliResult<Vec<_>>>()?;
    Ok(TrianglePacking::new(tris))
}

/// Accepts `true`/`false` or `1`/`0` entries.
pub fn get_bools(v: &Value, key: &str) -> CliResult<Vec<bool>> {
    let arr = v
        .get(key)
        .and_then(Value::as_array)
        .ok_or_else(|| failed(format!("solution has no `{key}` list")))?;
    arr.iter()
        .map(|x| match x {
            Value::Bool(b) => Ok(*b),
            Value::Number(n) if n.as_u64() == Some(0) => Ok(false),
            Value::Number(n) if n.as_u64() == Some(1) => Ok(true),
            _ => Err(failed(format!("`{key}` entries must be booleans or 0/1"))),
        })
        .collect()
}
