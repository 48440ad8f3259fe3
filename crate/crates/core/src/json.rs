//! JSON forms of cuts, field elements, ideals, algebra instances and
//! elements. Semantic errors name the JSON path that caused them.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::algebra::{Algebra, AlgebraInstance, Element, MonomialAlgebra, PatternAlgebra, TableEntry};
use crate::error::{Error, Result};
use crate::field_model::{IdealCut, ModelElem};
use crate::ordered_values::{Cut, CutOrInfty, CutRepr, GroupElem};

fn err(path: &str, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("{path}: {msg}"))
}

pub fn cut_to_json(c: &Cut) -> Value {
    match c.repr() {
        CutRepr::Bottom => json!({"cut": "bottom"}),
        CutRepr::Top => json!({"cut": "top"}),
        CutRepr::Prefix(p) => json!({"cut": "prefix", "p": p.to_vec()}),
    }
}

pub fn cut_or_infty_to_json(c: &CutOrInfty) -> Value {
    match c {
        CutOrInfty::Finite(c) => cut_to_json(c),
        CutOrInfty::Infty => json!({"cut": "infty"}),
    }
}

fn int_array(path: &str, v: &Value) -> Result<Vec<i64>> {
    let arr = v.as_array().ok_or_else(|| err(path, "expected an integer array"))?;
    arr.iter()
        .enumerate()
        .map(|(i, x)| x.as_i64().ok_or_else(|| err(&format!("{path}[{i}]"), "expected an integer")))
        .collect()
}

pub fn group_from_json(rank: usize, path: &str, v: &Value) -> Result<GroupElem> {
    let c = int_array(path, v)?;
    if c.len() != rank {
        return Err(err(path, format!("expected {rank} coordinates, got {}", c.len())));
    }
    Ok(GroupElem::new(c))
}

pub fn cut_or_infty_from_json(rank: usize, path: &str, v: &Value) -> Result<CutOrInfty> {
    let tag = v.get("cut").and_then(Value::as_str).ok_or_else(|| err(path, "expected {\"cut\": ...}"))?;
    match tag {
        "bottom" => Ok(CutOrInfty::Finite(Cut::bottom(rank))),
        "top" => Ok(CutOrInfty::Finite(Cut::top(rank))),
        "infty" => Ok(CutOrInfty::Infty),
        "prefix" => {
            let p = v.get("p").ok_or_else(|| err(path, "prefix cut needs \"p\""))?;
            let p = int_array(&format!("{path}.p"), p)?;
            Cut::prefix(rank, p).map(CutOrInfty::Finite).map_err(|e| err(path, e))
        }
        other => Err(err(path, format!("unknown cut kind {other:?}"))),
    }
}

pub fn cut_from_json(rank: usize, path: &str, v: &Value) -> Result<Cut> {
    match cut_or_infty_from_json(rank, path, v)? {
        CutOrInfty::Finite(c) => Ok(c),
        CutOrInfty::Infty => Err(err(path, "infty is not a cut")),
    }
}

/// A shorthand name when one applies, else the boundary cut.
pub fn ideal_to_json(j: &IdealCut) -> Value {
    match j.shorthand() {
        Some(s) => Value::String(s),
        None => cut_to_json(j.boundary()),
    }
}

/// A shorthand (`"Ov"`, `"Iv"`, `"F"`, `"zero"`, `"P1"`…), a boundary cut, or
/// `{"principal": [..]}`.
pub fn ideal_from_json(rank: usize, path: &str, v: &Value) -> Result<IdealCut> {
    if let Some(s) = v.as_str() {
        return IdealCut::from_shorthand(rank, s).map_err(|e| err(path, e));
    }
    if let Some(g) = v.get("principal") {
        return Ok(IdealCut::principal(&group_from_json(rank, &format!("{path}.principal"), g)?));
    }
    Ok(IdealCut::from_boundary(cut_from_json(rank, path, v)?))
}

fn int_value(i: &BigInt) -> Value {
    i64::try_from(i).map(Value::from).unwrap_or_else(|_| Value::String(i.to_string()))
}

/// `[[num, den, [exponent..]], ...]`; integers too large for `i64` become
/// decimal strings.
pub fn model_elem_to_json(x: &ModelElem) -> Value {
    Value::Array(
        x.terms()
            .map(|(e, c)| json!([int_value(c.numer()), int_value(c.denom()), e.coords().to_vec()]))
            .collect(),
    )
}

fn bigint(path: &str, v: &Value) -> Result<BigInt> {
    if let Some(i) = v.as_i64() {
        return Ok(BigInt::from(i));
    }
    v.as_str()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| err(path, "expected an integer"))
}

pub fn model_elem_from_json(rank: usize, path: &str, v: &Value) -> Result<ModelElem> {
    let terms = v.as_array().ok_or_else(|| err(path, "expected a list of [num, den, exponent] terms"))?;
    let mut out = Vec::new();
    for (i, t) in terms.iter().enumerate() {
        let p = format!("{path}[{i}]");
        let parts = t.as_array().filter(|a| a.len() == 3).ok_or_else(|| err(&p, "expected [num, den, exponent]"))?;
        let num = bigint(&format!("{p}[0]"), &parts[0])?;
        let den = bigint(&format!("{p}[1]"), &parts[1])?;
        if den.is_zero() {
            return Err(err(&format!("{p}[1]"), "zero denominator"));
        }
        let exp = group_from_json(rank, &format!("{p}[2]"), &parts[2])?;
        out.push((BigRational::new(num, den), exp));
    }
    Ok(ModelElem::from_terms(out))
}

pub fn element_to_json(x: &Element) -> Value {
    Value::Array(x.0.iter().map(model_elem_to_json).collect())
}

/// Either a full coordinate list or an object keyed by position names
/// (`"e12"`, `"x"`), with missing positions zero. Membership is not checked.
pub fn element_from_json<A: Algebra + ?Sized>(r: &A, path: &str, v: &Value) -> Result<Element> {
    let rank = r.rank();
    let width = r.width();
    let mut coords = vec![ModelElem::zero(); width];
    match v {
        Value::Array(items) => {
            if items.len() != width {
                return Err(err(path, format!("expected {width} coordinates, got {}", items.len())));
            }
            for (i, c) in items.iter().enumerate() {
                coords[i] = model_elem_from_json(rank, &format!("{path}[{i}]"), c)?;
            }
        }
        Value::Object(map) => {
            for (name, c) in map {
                let pos = (0..width)
                    .find(|&p| r.position_name(p) == *name)
                    .ok_or_else(|| err(path, format!("unknown position {name:?}")))?;
                coords[pos] = model_elem_from_json(rank, &format!("{path}.{name}"), c)?;
            }
        }
        _ => return Err(err(path, "expected a coordinate list or a position map")),
    }
    Ok(r.normalize(Element(coords)))
}

pub fn instance_to_json(r: &AlgebraInstance) -> Value {
    match r {
        AlgebraInstance::Pattern(p) => {
            let n = p.n();
            let rows: Vec<Value> = (0..n)
                .map(|i| Value::Array((0..n).map(|j| ideal_to_json(p.comp(i, j))).collect()))
                .collect();
            json!({"kind": "pattern", "rank": p.rank(), "n": n, "components": rows})
        }
        AlgebraInstance::Monomial(m) => {
            let table: Vec<Value> = m
                .table()
                .iter()
                .map(|row| {
                    Value::Array(
                        row.iter()
                            .map(|e| match e {
                                None => Value::Null,
                                Some(e) => json!({"shift": e.shift.coords().to_vec(), "to": m.basis()[e.index]}),
                            })
                            .collect(),
                    )
                })
                .collect();
            json!({
                "kind": "monomial",
                "rank": m.rank(),
                "basis": m.basis(),
                "ann": m.ann().iter().map(ideal_to_json).collect::<Vec<_>>(),
                "table": table,
            })
        }
    }
}

fn field<'a>(path: &str, v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| err(path, format!("missing \"{key}\"")))
}

fn usize_field(path: &str, v: &Value, key: &str) -> Result<usize> {
    field(path, v, key)?
        .as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| err(&format!("{path}.{key}"), "expected a nonnegative integer"))
}

/// Parses an algebra object. `rank` from an enclosing document is used
/// when the object has none.
pub fn instance_from_json(path: &str, v: &Value, rank: Option<usize>) -> Result<AlgebraInstance> {
    let rank = match v.get("rank") {
        Some(_) => usize_field(path, v, "rank")?,
        None => rank.ok_or_else(|| err(path, "missing \"rank\""))?,
    };
    let kind = field(path, v, "kind")?.as_str().ok_or_else(|| err(&format!("{path}.kind"), "expected a string"))?;
    match kind {
        "pattern" => {
            let n = usize_field(path, v, "n")?;
            let rows = field(path, v, "components")?
                .as_array()
                .filter(|r| r.len() == n)
                .ok_or_else(|| err(&format!("{path}.components"), format!("expected {n} rows")))?;
            let mut comps = Vec::with_capacity(n * n);
            for (i, row) in rows.iter().enumerate() {
                let rp = format!("{path}.components[{i}]");
                let row = row.as_array().filter(|r| r.len() == n).ok_or_else(|| err(&rp, format!("expected {n} entries")))?;
                for (j, c) in row.iter().enumerate() {
                    comps.push(ideal_from_json(rank, &format!("{rp}[{j}]"), c)?);
                }
            }
            Ok(PatternAlgebra::new(rank, n, comps).map_err(|e| err(path, e))?.into())
        }
        "monomial" => {
            let basis: Vec<String> = field(path, v, "basis")?
                .as_array()
                .ok_or_else(|| err(&format!("{path}.basis"), "expected a list of names"))?
                .iter()
                .enumerate()
                .map(|(i, b)| {
                    b.as_str().map(str::to_owned).ok_or_else(|| err(&format!("{path}.basis[{i}]"), "expected a name"))
                })
                .collect::<Result<_>>()?;
            let m = basis.len();
            let ann_v = field(path, v, "ann")?
                .as_array()
                .ok_or_else(|| err(&format!("{path}.ann"), "expected a list"))?;
            let ann = ann_v
                .iter()
                .enumerate()
                .map(|(i, a)| ideal_from_json(rank, &format!("{path}.ann[{i}]"), a))
                .collect::<Result<Vec<_>>>()?;
            let rows = field(path, v, "table")?
                .as_array()
                .ok_or_else(|| err(&format!("{path}.table"), "expected rows"))?;
            let mut table = Vec::with_capacity(m);
            for (i, row) in rows.iter().enumerate() {
                let rp = format!("{path}.table[{i}]");
                let row = row.as_array().ok_or_else(|| err(&rp, "expected a row"))?;
                let mut out = Vec::with_capacity(row.len());
                for (j, e) in row.iter().enumerate() {
                    let ep = format!("{rp}[{j}]");
                    if e.is_null() {
                        out.push(None);
                        continue;
                    }
                    let shift = group_from_json(rank, &format!("{ep}.shift"), field(&ep, e, "shift")?)?;
                    let to = field(&ep, e, "to")?;
                    let index = match to.as_str() {
                        Some(name) => basis.iter().position(|b| b == name),
                        None => to.as_u64().map(|x| x as usize),
                    }
                    .ok_or_else(|| err(&format!("{ep}.to"), "expected a basis name or index"))?;
                    out.push(Some(TableEntry { shift, index }));
                }
                table.push(out);
            }
            Ok(MonomialAlgebra::new(rank, basis, ann, table).map_err(|e| err(path, e))?.into())
        }
        other => Err(err(&format!("{path}.kind"), format!("unknown algebra kind {other:?}"))),
    }
}
