//! Instance files: a shipped fixture name, a fixture document, or a
//! document whose `"algebra"` names a fixture and adds generators, a
//! quasi-valuation choice or sampling settings.

use std::path::Path;

use cutspec::algebra::Algebra;
use cutspec::fixtures::{self, Fixture};
use cutspec::json::element_from_json;
use cutspec::{Error, Result};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Which {
    Filter,
    MinFormula,
    Both,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Sampling {
    pub count: Option<usize>,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub fixture: Fixture,
    pub qv: Option<Which>,
    pub sampling: Sampling,
}

fn parse_err(ctx: &str, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("{ctx}: {msg}"))
}

/// Prefixes a context onto an error without repeating the parse-error tag.
fn in_context(ctx: &str, e: Error) -> Error {
    match e {
        Error::Parse(msg) => parse_err(ctx, msg),
        e => parse_err(ctx, e),
    }
}

/// A fixture document with its rank replaced before parsing. Components
/// given as shorthands (`"Ov"`, `"P1"`…) follow the new rank.
fn with_rank(mut doc: Value, rank: Option<usize>) -> Value {
    if let Some(r) = rank {
        doc["rank"] = Value::from(r);
        if let Some(alg) = doc.get_mut("algebra").filter(|a| a.get("rank").is_some()) {
            alg["rank"] = Value::from(r);
        }
    }
    doc
}

fn read_json(ctx: &str, text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| parse_err(ctx, e))
}

pub fn load_fixture(name: &str, dir: Option<&Path>, rank: Option<usize>) -> Result<Fixture> {
    if rank.is_none() {
        return fixtures::load(name, dir);
    }
    let (text, _) = fixtures::load_text(name, dir)?;
    let doc = with_rank(read_json(name, &text)?, rank);
    Fixture::from_value(&doc).map_err(|e| in_context(name, e))
}

/// `spec` is a path when a file of that name exists (or it ends in
/// `.json`), else a fixture name.
pub fn load(spec: &str, dir: Option<&Path>, rank: Option<usize>) -> Result<Instance> {
    let path = Path::new(spec);
    if !(path.is_file() || spec.ends_with(".json")) {
        return Ok(Instance { fixture: load_fixture(spec, dir, rank)?, qv: None, sampling: Sampling::default() });
    }
    let text = std::fs::read_to_string(path).map_err(|e| parse_err(spec, e))?;
    let doc = read_json(spec, &text)?;
    from_document(spec, doc, dir, rank)
}

fn from_document(ctx: &str, mut doc: Value, dir: Option<&Path>, rank: Option<usize>) -> Result<Instance> {
    if !doc.is_object() {
        return Err(parse_err(ctx, "$: expected an object"));
    }
    let qv = match doc.get("qv") {
        None | Some(Value::Null) => None,
        Some(Value::String(s)) if s == "filter" => Some(Which::Filter),
        Some(Value::String(s)) if s == "min_formula" => Some(Which::MinFormula),
        Some(other) => return Err(parse_err(ctx, format!("$.qv: expected \"filter\" or \"min_formula\", got {other}"))),
    };
    let sampling = match doc.get("sampling") {
        None | Some(Value::Null) => Sampling::default(),
        Some(s) => Sampling {
            count: opt_u64(ctx, s, "count")?.map(|c| c as usize),
            seed: opt_u64(ctx, s, "seed")?,
        },
    };

    let fixture = if let Some(name) = doc.get("algebra").and_then(Value::as_str).map(str::to_owned) {
        let mut fx = load_fixture(&name, dir, rank.or_else(|| doc.get("rank").and_then(Value::as_u64).map(|r| r as usize)))?;
        if let Some(gs) = doc.get("generators").filter(|g| !g.is_null()) {
            let gs = gs.as_array().ok_or_else(|| parse_err(ctx, "$.generators: expected a list"))?;
            fx.generators = Some(
                gs.iter()
                    .enumerate()
                    .map(|(i, g)| element_from_json(&fx.algebra, &format!("$.generators[{i}]"), g))
                    .collect::<Result<_>>()
                    .map_err(|e| in_context(ctx, e))?,
            );
        }
        fx
    } else {
        if doc.get("name").is_none() {
            let stem = Path::new(ctx).file_stem().and_then(|s| s.to_str()).unwrap_or("instance");
            doc["name"] = Value::from(stem);
        }
        Fixture::from_value(&with_rank(doc, rank)).map_err(|e| in_context(ctx, e))?
    };
    Ok(Instance { fixture, qv, sampling })
}

fn opt_u64(ctx: &str, v: &Value, key: &str) -> Result<Option<u64>> {
    match v.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(x) => x
            .as_u64()
            .map(Some)
            .ok_or_else(|| parse_err(ctx, format!("$.sampling.{key}: expected a nonnegative integer"))),
    }
}

/// Parses an element given inline as JSON, or as `@path` to a JSON file, and
/// checks that it lies in the algebra.
pub fn parse_element<A: Algebra + ?Sized>(r: &A, arg: &str) -> Result<cutspec::algebra::Element> {
    let text = match arg.strip_prefix('@') {
        Some(p) => std::fs::read_to_string(p).map_err(|e| parse_err(p, e))?,
        None => arg.to_owned(),
    };
    let v = read_json("--element", &text)?;
    let x = element_from_json(r, "--element $", &v)?;
    if !r.contains(&x) {
        return Err(Error::NotMember(cutspec::json::element_to_json(&x).to_string()));
    }
    Ok(x)
}
