//! Deterministic JSON and CSV rendering. JSON maps are sorted by key (the
//! default serde_json map is ordered), integer vectors stay exact, and every
//! cone object follows the shared schema: ambient_dim, equalities,
//! inequalities, rays, lineality.

use crate::CliError;
use cones::{Int, RationalCone};
use num_traits::ToPrimitive;
use serde_json::{json, Value};

/// Exact integers only: values outside i64 are refused rather than rounded.
pub fn json_int(v: &[Int]) -> Result<Value, CliError> {
    let mut out = Vec::with_capacity(v.len());
    for x in v {
        let i = x
            .to_i64()
            .ok_or_else(|| CliError::Domain("integer output exceeds 64 bits".into()))?;
        out.push(Value::from(i));
    }
    Ok(Value::Array(out))
}

pub fn vectors_json(vs: &[Vec<Int>]) -> Result<Value, CliError> {
    let mut out = Vec::with_capacity(vs.len());
    for v in vs {
        out.push(json_int(v)?);
    }
    Ok(Value::Array(out))
}

/// The shared cone schema, always from the canonical form.
pub fn cone_json(c: &RationalCone) -> Result<Value, CliError> {
    let c = c.canonical();
    Ok(json!({
        "ambient_dim": c.ambient_dim() as i64,
        "equalities": vectors_json(c.equalities())?,
        "inequalities": vectors_json(c.inequalities())?,
        "rays": vectors_json(c.rays())?,
        "lineality": vectors_json(c.lineality())?,
    }))
}

/// One row per constraint or generator of the canonical form, coordinates
/// labeled by vertex name.
pub fn cone_csv(c: &RationalCone, names: &[String]) -> String {
    let c = c.canonical();
    let mut out = String::from("kind");
    for n in names {
        out.push(',');
        out.push_str(n);
    }
    out.push('\n');
    let mut push_rows = |kind: &str, rows: &[Vec<Int>]| {
        for row in rows {
            out.push_str(kind);
            for x in row {
                out.push(',');
                out.push_str(&x.to_string());
            }
            out.push('\n');
        }
    };
    push_rows("equality", c.equalities());
    push_rows("inequality", c.inequalities());
    push_rows("ray", c.rays());
    push_rows("lineality", c.lineality());
    out
}

/// Parses a vector of integers separated by spaces and/or commas.
pub fn int_from_str(text: &str) -> Result<Vec<Int>, CliError> {
    let parts: Vec<&str> =
        text.split(|c: char| c.is_whitespace() || c == ',').filter(|s| !s.is_empty()).collect();
    if parts.is_empty() {
        return Err(CliError::Usage("empty integer vector".into()));
    }
    parts
        .into_iter()
        .map(|p| {
            p.parse::<i64>()
                .map(Int::from)
                .map_err(|_| CliError::Usage(format!("'{p}' is not an integer")))
        })
        .collect()
}
