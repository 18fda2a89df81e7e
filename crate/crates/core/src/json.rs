//! JSON encodings of elements, families and spectral data.
//!
//! Element format: `{"model": "fn"|"jb"|"censym", "n": int, "data": ...}` where
//! `data` is a vector for `fn`, full row-major rows for `jb`, and the pair
//! `[a0, [y...]]` for `censym`, which additionally carries a `"family"` object
//! (`{"family": "lp", "p": 1.5}`, `{"family": "lp", "p": "inf"}` or
//! `{"family": "stadium", "s": 1.0, "r": 1.0}`).

use nalgebra::{DMatrix, DVector};
use serde_json::{json, Map, Number, Value};

use crate::error::{Error, Result};
use crate::models::norms::{NormFamily, NormKind};
use crate::space::{AElem, ModelKind, ModelSpace, VElem};
use crate::tol::Tol;

/// A float as a JSON number with 17 significant digits.
pub fn num(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    // +0.0 absorbs the sign of negative zero
    let text = format!("{:.16e}", x + 0.0);
    Value::Number(text.parse::<Number>().expect("formatted float is a JSON number"))
}

/// Rewrites every non-integer number of `v` with 17 significant digits.
pub fn canonical(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_u64() || n.is_i64() => Value::Number(n),
        Value::Number(n) => n.as_f64().map(num).unwrap_or(Value::Number(n)),
        Value::Array(a) => Value::Array(a.into_iter().map(canonical).collect()),
        Value::Object(m) => Value::Object(m.into_iter().map(|(k, v)| (k, canonical(v))).collect()),
        other => other,
    }
}

fn vec_json(v: &DVector<f64>) -> Value {
    Value::Array(v.iter().map(|x| num(*x)).collect())
}

fn as_f64(v: &Value, what: &str) -> Result<f64> {
    v.as_f64()
        .ok_or_else(|| Error::Parse(format!("{what} must be a number, got {v}")))
}

fn as_vec(v: &Value, what: &str) -> Result<DVector<f64>> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Parse(format!("{what} must be an array")))?;
    let xs = arr
        .iter()
        .map(|x| as_f64(x, what))
        .collect::<Result<Vec<f64>>>()?;
    Ok(DVector::from_vec(xs))
}

pub fn family_to_json(f: &NormFamily) -> Value {
    match f.kind() {
        NormKind::Lp { p } if p.is_infinite() => json!({"family": "lp", "p": "inf"}),
        NormKind::Lp { p } => json!({"family": "lp", "p": num(p)}),
        NormKind::Stadium { s, r } => json!({"family": "stadium", "s": num(s), "r": num(r)}),
    }
}

pub fn family_from_json(v: &Value, dim: usize) -> Result<NormFamily> {
    let name = v
        .get("family")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Parse("family object needs a \"family\" name".into()))?;
    match name {
        "lp" => {
            let p = match v.get("p") {
                Some(Value::String(s)) if s == "inf" => f64::INFINITY,
                Some(x) => as_f64(x, "p")?,
                None => return Err(Error::Parse("lp family needs \"p\"".into())),
            };
            NormFamily::lp(p, dim)
        }
        "stadium" => {
            let s = as_f64(v.get("s").unwrap_or(&Value::Null), "s")?;
            let r = as_f64(v.get("r").unwrap_or(&Value::Null), "r")?;
            if dim != 2 {
                return Err(Error::InvalidDimension("the stadium family is two-dimensional".into()));
            }
            NormFamily::stadium(s, r)
        }
        other => Err(Error::Parse(format!("unknown family `{other}`"))),
    }
}

/// Parses `lp:1.5`, `lp:inf` or `stadium:1,1`.
pub fn parse_family(descriptor: &str, dim: usize) -> Result<NormFamily> {
    let (name, args) = descriptor
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("family descriptor `{descriptor}` needs a `:`")))?;
    let parse = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|_| Error::Parse(format!("bad number `{s}` in `{descriptor}`")))
    };
    match name {
        "lp" => {
            let p = if args.trim() == "inf" {
                f64::INFINITY
            } else {
                parse(args)?
            };
            NormFamily::lp(p, dim)
        }
        "stadium" => {
            let (s, r) = args
                .split_once(',')
                .ok_or_else(|| Error::Parse("stadium needs `s,r`".into()))?;
            if dim != 2 {
                return Err(Error::InvalidDimension("the stadium family is two-dimensional".into()));
            }
            NormFamily::stadium(parse(s)?, parse(r)?)
        }
        other => Err(Error::Parse(format!("unknown family `{other}`"))),
    }
}

fn header(space: &ModelSpace) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("model".into(), json!(space.model_name()));
    m.insert("n".into(), json!(space.n()));
    if let Some(f) = space.family() {
        m.insert("family".into(), family_to_json(f));
    }
    m
}

pub fn element_to_json(space: &ModelSpace, a: &AElem) -> Value {
    let mut m = header(space);
    let data = match a {
        AElem::Fn(x) => vec_json(x),
        AElem::Jb(x) => Value::Array(
            x.row_iter()
                .map(|r| Value::Array(r.iter().map(|v| num(*v)).collect()))
                .collect(),
        ),
        AElem::CenSym { a0, y } => json!([num(*a0), vec_json(y)]),
    };
    m.insert("data".into(), data);
    Value::Object(m)
}

pub fn state_to_json(space: &ModelSpace, v: &VElem) -> Value {
    let mut m = header(space);
    m.insert("side".into(), json!("dual"));
    let data = match v {
        VElem::Fn(x) => vec_json(x),
        VElem::Jb(x) => Value::Array(
            x.row_iter()
                .map(|r| Value::Array(r.iter().map(|v| num(*v)).collect()))
                .collect(),
        ),
        VElem::CenSym { alpha, x } => json!([num(*alpha), vec_json(x)]),
    };
    m.insert("data".into(), data);
    Value::Object(m)
}

/// Reads the space description of an element file.
pub fn space_from_json(v: &Value, tol: Tol) -> Result<ModelSpace> {
    let model = v
        .get("model")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Parse("element needs a \"model\" field".into()))?;
    let n = v
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Parse("element needs a non-negative integer \"n\"".into()))?
        as usize;
    let kind = match model {
        "fn" => ModelKind::Fn { n },
        "jb" => ModelKind::Jb { n },
        "censym" => {
            let fam = v
                .get("family")
                .ok_or_else(|| Error::Parse("censym element needs a \"family\"".into()))?;
            ModelKind::CenSym {
                family: family_from_json(fam, n)?,
            }
        }
        other => return Err(Error::Parse(format!("unknown model `{other}`"))),
    };
    ModelSpace::new(kind, tol)
}

/// Decodes the payload of an element of `space`.
pub fn element_in(space: &ModelSpace, v: &Value) -> Result<AElem> {
    let data = v
        .get("data")
        .ok_or_else(|| Error::Parse("element needs \"data\"".into()))?;
    let n = space.n();
    let a = match space.kind() {
        ModelKind::Fn { .. } => AElem::Fn(as_vec(data, "data")?),
        ModelKind::Jb { .. } => {
            let rows = data
                .as_array()
                .ok_or_else(|| Error::Parse("matrix data must be an array".into()))?;
            let flat: Vec<f64> = if rows.iter().all(Value::is_array) {
                let mut out = Vec::new();
                for r in rows {
                    out.extend(as_vec(r, "matrix row")?.iter());
                }
                out
            } else {
                as_vec(data, "data")?.iter().copied().collect()
            };
            if flat.len() != n * n {
                return Err(Error::ShapeMismatch(format!(
                    "matrix payload has {} entries, expected {}",
                    flat.len(),
                    n * n
                )));
            }
            AElem::Jb(DMatrix::from_row_slice(n, n, &flat))
        }
        ModelKind::CenSym { .. } => {
            let arr = data
                .as_array()
                .ok_or_else(|| Error::Parse("censym data must be [a0, [y...]]".into()))?;
            match arr.as_slice() {
                [a0, y] if y.is_array() => AElem::CenSym {
                    a0: as_f64(a0, "a0")?,
                    y: as_vec(y, "y")?,
                },
                [a0, rest @ ..] => AElem::CenSym {
                    a0: as_f64(a0, "a0")?,
                    y: DVector::from_vec(
                        rest.iter()
                            .map(|x| as_f64(x, "y"))
                            .collect::<Result<Vec<f64>>>()?,
                    ),
                },
                [] => return Err(Error::Parse("censym data is empty".into())),
            }
        }
    };
    space.check(&a)?;
    Ok(a)
}

pub fn element_from_json(v: &Value, tol: Tol) -> Result<(ModelSpace, AElem)> {
    let space = space_from_json(v, tol)?;
    let a = element_in(&space, v)?;
    Ok((space, a))
}
