//! The shipped example instances. They are compiled in, and can be replaced
//! file by file from a directory.

use std::path::Path;

use serde_json::{json, Value};

use crate::algebra::{Algebra, AlgebraInstance, Element};
use crate::error::{Error, Result};
use crate::json::{element_from_json, element_to_json, instance_from_json, instance_to_json};

const SHIPPED: &[(&str, &str)] = &[
    ("diag_f_ov", include_str!("../fixtures/diag_f_ov.json")),
    ("dualnum_ax_x2", include_str!("../fixtures/dualnum_ax_x2.json")),
    ("localization_subring", include_str!("../fixtures/localization_subring.json")),
    ("m2_ov", include_str!("../fixtures/m2_ov.json")),
    ("r1_example", include_str!("../fixtures/r1_example.json")),
    ("r2_example", include_str!("../fixtures/r2_example.json")),
    ("root_p_quotient", include_str!("../fixtures/root_p_quotient.json")),
    ("torsion_trunc_px", include_str!("../fixtures/torsion_trunc_px.json")),
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixture {
    pub name: String,
    pub description: String,
    pub algebra: AlgebraInstance,
    /// Explicit monomial generators, when the file lists them.
    pub generators: Option<Vec<Element>>,
    pub notes: Vec<String>,
}

impl Fixture {
    pub fn from_json_str(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_value(&v)
    }

    pub fn from_value(v: &Value) -> Result<Self> {
        let name = v
            .get("name")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse("$: missing \"name\"".into()))?
            .to_owned();
        let description = v.get("description").and_then(Value::as_str).unwrap_or_default().to_owned();
        let rank = v.get("rank").and_then(Value::as_u64).map(|r| r as usize);
        let alg = v.get("algebra").ok_or_else(|| Error::Parse("$: missing \"algebra\"".into()))?;
        let algebra = instance_from_json("$.algebra", alg, rank)?;
        let generators = match v.get("generators") {
            None | Some(Value::Null) => None,
            Some(Value::Array(gs)) => Some(
                gs.iter()
                    .enumerate()
                    .map(|(i, g)| element_from_json(&algebra, &format!("$.generators[{i}]"), g))
                    .collect::<Result<Vec<_>>>()?,
            ),
            Some(_) => return Err(Error::Parse("$.generators: expected a list".into())),
        };
        let notes = v
            .get("notes")
            .and_then(Value::as_array)
            .map(|ns| ns.iter().filter_map(Value::as_str).map(str::to_owned).collect())
            .unwrap_or_default();
        Ok(Self { name, description, algebra, generators, notes })
    }

    pub fn to_value(&self) -> Value {
        let mut v = json!({
            "name": self.name,
            "description": self.description,
            "rank": self.algebra.rank(),
            "algebra": instance_to_json(&self.algebra),
        });
        if let Some(gs) = &self.generators {
            v["generators"] = Value::Array(gs.iter().map(element_to_json).collect());
        }
        if !self.notes.is_empty() {
            v["notes"] = json!(self.notes);
        }
        v
    }
}

pub fn names() -> impl Iterator<Item = &'static str> {
    SHIPPED.iter().map(|(n, _)| *n)
}

/// The raw JSON text of a shipped fixture, read from `dir` when that
/// directory has a file of the same name.
pub fn load_text(name: &str, dir: Option<&Path>) -> Result<(String, Option<std::path::PathBuf>)> {
    if let Some(dir) = dir {
        let path = dir.join(format!("{name}.json"));
        if path.is_file() {
            let text = std::fs::read_to_string(&path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            return Ok((text, Some(path)));
        }
    }
    let (_, text) = SHIPPED
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::Parse(format!("no fixture named {name:?}")))?;
    Ok(((*text).to_owned(), None))
}

pub fn load(name: &str, dir: Option<&Path>) -> Result<Fixture> {
    let (text, path) = load_text(name, dir)?;
    Fixture::from_json_str(&text).map_err(|e| match (path, e) {
        (Some(p), Error::Parse(msg)) => Error::Parse(format!("{}: {msg}", p.display())),
        (Some(p), e) => Error::Parse(format!("{}: {e}", p.display())),
        (None, e) => e,
    })
}

/// Every shipped fixture, in name order.
pub fn load_all(dir: Option<&Path>) -> Result<Vec<Fixture>> {
    names().map(|n| load(n, dir)).collect()
}
