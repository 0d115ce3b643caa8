//! JSON vector documents: `{"ring", "g" | "m", "trunc", "coords" | "series"}`.

use std::path::Path;

use num_bigint::BigInt;
use qwitt::exactalg::parse::{parse_integer, parse_zpoly};
use qwitt::witt::Deformation;
use qwitt::{Error, Result};
use serde_json::{json, Map, Value};

/// A parsed input. Every field is optional so bare arrays work too.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Doc {
    pub ring: Option<String>,
    pub deformation: Option<Deformation>,
    pub trunc: Option<usize>,
    /// Coefficient strings; for series these start at t⁰.
    pub coords: Vec<String>,
    pub is_series: bool,
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

/// A file path, or inline JSON, or a bare element string.
pub fn read_input(arg: &str) -> Result<Value> {
    let text = if Path::new(arg).is_file() {
        std::fs::read_to_string(arg).map_err(|e| parse_err(format!("{arg}: {e}")))?
    } else {
        arg.to_string()
    };
    match serde_json::from_str(&text) {
        Ok(v) => Ok(v),
        Err(_) if !text.trim_start().starts_with(['{', '[', '"']) => Ok(Value::String(text.trim().to_string())),
        Err(e) => Err(parse_err(format!("invalid JSON: {e}"))),
    }
}

/// A scalar as text in the coefficient grammar.
pub fn scalar_text(v: &Value) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        other => Err(parse_err(format!("expected a coefficient string, got {other}"))),
    }
}

fn coords_of(v: &Value) -> Result<Vec<String>> {
    v.as_array().ok_or_else(|| parse_err("coordinates must be an array"))?.iter().map(scalar_text).collect()
}

fn deformation_of(obj: &Map<String, Value>) -> Result<Option<Deformation>> {
    match (obj.get("g"), obj.get("m")) {
        (Some(_), Some(_)) => Err(parse_err("document has both g and m")),
        (Some(g), None) => Ok(Some(Deformation::poly(parse_zpoly(&scalar_text(g)?)?))),
        (None, Some(m)) => Ok(Some(Deformation::Integer(parse_integer(&scalar_text(m)?)?))),
        (None, None) => Ok(None),
    }
}

impl Doc {
    pub fn from_value(v: &Value) -> Result<Doc> {
        match v {
            Value::Array(_) => Ok(Doc { coords: coords_of(v)?, ..Doc::default() }),
            Value::Object(obj) => {
                let ring = obj.get("ring").map(|r| r.as_str().map(str::to_string).ok_or_else(|| parse_err("ring must be a string"))).transpose()?;
                let trunc = obj
                    .get("trunc")
                    .map(|t| t.as_u64().map(|t| t as usize).ok_or_else(|| parse_err("trunc must be a non-negative integer")))
                    .transpose()?;
                let (coords, is_series) = match (obj.get("coords"), obj.get("series")) {
                    (Some(c), None) => (coords_of(c)?, false),
                    (None, Some(s)) => (coords_of(s)?, true),
                    (None, None) => (Vec::new(), false),
                    (Some(_), Some(_)) => return Err(parse_err("document has both coords and series")),
                };
                Ok(Doc { ring, deformation: deformation_of(obj)?, trunc, coords, is_series })
            }
            other => Err(parse_err(format!("expected a vector document, got {other}"))),
        }
    }

    pub fn to_value(&self, kind: &str) -> Value {
        let mut obj = Map::new();
        if let Some(r) = &self.ring {
            obj.insert("ring".into(), json!(r));
        }
        match &self.deformation {
            Some(Deformation::Polynomial(g)) => {
                obj.insert("g".into(), json!(g.to_string()));
            }
            Some(Deformation::Integer(m)) => {
                obj.insert("m".into(), integer_value(m));
            }
            None => {}
        }
        if let Some(t) = self.trunc {
            obj.insert("trunc".into(), json!(t));
        }
        obj.insert("kind".into(), json!(kind));
        let key = if self.is_series { "series" } else { "coords" };
        obj.insert(key.into(), json!(self.coords));
        Value::Object(obj)
    }
}

/// A JSON number when it fits in i64, else its decimal string.
pub fn integer_value(n: &BigInt) -> Value {
    match i64::try_from(n) {
        Ok(k) => json!(k),
        Err(_) => json!(n.to_string()),
    }
}
