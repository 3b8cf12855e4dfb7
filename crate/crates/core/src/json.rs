//! JSON forms of scalars, matrices and ring presentations.
//!
//! Rationals are strings `"p/q"` (integers as `"p"`); Gaussian rationals are
//! objects `{"re": "p/q", "im": "r/s"}`.

use serde::Serializer;
use serde_json::{json, Value};
use thiserror::Error;

use crate::exact::scalar::{format_rational, parse_rational};
use crate::exact::{FieldTag, GaussianRational, Matrix, Rational, Scalar};
use crate::rings::{BoolRing, RingError, RingSpec, ScAlgebra, ZMod};

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("schema error: {0}")]
    Schema(String),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Syntax(#[from] serde_json::Error),
}

fn schema(msg: impl Into<String>) -> JsonError {
    JsonError::Schema(msg.into())
}

pub fn ser_rational<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

pub fn ser_rationals<S: Serializer>(rs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(rs.iter().map(format_rational))
}

pub fn rational_to_json(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

pub fn rational_from_json(v: &Value) -> Result<Rational, JsonError> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| schema(e.to_string())),
        Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(n.as_i64().expect("checked").into())),
        other => Err(schema(format!("expected a rational string, found {other}"))),
    }
}

pub fn scalar_to_json<F: Scalar>(x: &F) -> Value {
    let (re, im) = x.parts();
    match F::TAG {
        FieldTag::Q => rational_to_json(&re),
        FieldTag::Qi => json!({"re": format_rational(&re), "im": format_rational(&im)}),
    }
}

/// Accepts a rational (string or integer) in either field and `{"re","im"}` over `Qi`.
pub fn scalar_from_json<F: Scalar>(v: &Value) -> Result<F, JsonError> {
    let (re, im) = match v {
        Value::Object(o) => (
            rational_from_json(o.get("re").ok_or_else(|| schema("scalar object needs \"re\""))?)?,
            rational_from_json(o.get("im").ok_or_else(|| schema("scalar object needs \"im\""))?)?,
        ),
        other => (rational_from_json(other)?, Rational::default()),
    };
    F::from_parts(re, im).ok_or_else(|| schema(format!("{v} is not in field {}", F::TAG)))
}

pub fn vector_to_json<F: Scalar>(v: &[F]) -> Value {
    Value::Array(v.iter().map(scalar_to_json).collect())
}

pub fn vector_from_json<F: Scalar>(v: &Value) -> Result<Vec<F>, JsonError> {
    array(v, "vector")?.iter().map(scalar_from_json).collect()
}

pub fn matrix_to_json<F: Scalar>(m: &Matrix<F>) -> Value {
    Value::Array((0..m.rows()).map(|r| vector_to_json(m.row(r))).collect())
}

/// A list of rows; `cols` fixes the width so that zero-row matrices keep their shape.
pub fn matrix_from_json<F: Scalar>(v: &Value, cols: usize) -> Result<Matrix<F>, JsonError> {
    let rows = array(v, "matrix")?.iter().map(vector_from_json).collect::<Result<Vec<Vec<F>>, _>>()?;
    if rows.iter().any(|r| r.len() != cols) {
        return Err(schema(format!("matrix rows must have length {cols}")));
    }
    Ok(Matrix::from_fn(rows.len(), cols, |r, c| rows[r][c].clone()))
}

pub(crate) fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>, JsonError> {
    v.as_array().ok_or_else(|| schema(format!("{what} must be an array")))
}

pub(crate) fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value, JsonError> {
    v.get(key).ok_or_else(|| schema(format!("missing field {key:?}")))
}

pub(crate) fn usize_field(v: &Value, key: &str) -> Result<usize, JsonError> {
    field(v, key)?
        .as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| schema(format!("{key:?} must be a non-negative integer")))
}

fn sc_table<F: Scalar>(v: &Value, dim: usize) -> Result<Vec<Vec<Vec<F>>>, JsonError> {
    let t = array(v, "table")?
        .iter()
        .map(|row| array(row, "table row")?.iter().map(vector_from_json).collect())
        .collect::<Result<Vec<Vec<Vec<F>>>, JsonError>>()?;
    if t.len() != dim {
        return Err(schema(format!("table must have {dim} rows")));
    }
    Ok(t)
}

fn sc_from_json<F: Scalar>(v: &Value) -> Result<ScAlgebra<F>, JsonError> {
    let dim = usize_field(v, "dim")?;
    let unit = vector_from_json(field(v, "unit")?)?;
    if unit.len() != dim {
        return Err(schema(format!("unit must have {dim} entries")));
    }
    Ok(ScAlgebra::new(sc_table(field(v, "table")?, dim)?, unit)?)
}

pub fn ring_spec_from_json(v: &Value) -> Result<RingSpec, JsonError> {
    match field(v, "kind")?.as_str() {
        Some("zmod") => {
            let n = field(v, "n")?.as_u64().ok_or_else(|| schema("\"n\" must be a positive integer"))?;
            Ok(RingSpec::ZMod(ZMod::new(n)?))
        }
        Some("bool") => {
            let ground = array(field(v, "ground")?, "ground")?
                .iter()
                .map(|g| g.as_str().map(str::to_string).ok_or_else(|| schema("ground labels must be strings")))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(RingSpec::Bool(BoolRing::new(ground)?))
        }
        Some("sc") => match field(v, "field")?.as_str() {
            Some("Q") => Ok(RingSpec::ScQ(sc_from_json(v)?)),
            Some("Qi") => Ok(RingSpec::ScQi(sc_from_json(v)?)),
            _ => Err(schema("\"field\" must be \"Q\" or \"Qi\"")),
        },
        _ => Err(schema("\"kind\" must be \"zmod\", \"bool\" or \"sc\"")),
    }
}

pub fn sc_to_json<F: Scalar>(a: &ScAlgebra<F>) -> Value {
    json!({
        "kind": "sc",
        "field": F::TAG.to_string(),
        "dim": a.dim(),
        "unit": vector_to_json(a.unit()),
        "table": a.table().iter().map(|row| row.iter().map(|v| vector_to_json(v)).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

pub fn ring_spec_to_json(spec: &RingSpec) -> Value {
    match spec {
        RingSpec::ZMod(z) => json!({"kind": "zmod", "n": z.modulus()}),
        RingSpec::Bool(b) => json!({"kind": "bool", "ground": b.ground()}),
        RingSpec::ScQ(a) => sc_to_json(a),
        RingSpec::ScQi(a) => sc_to_json(a),
    }
}

/// The optional `"star"` matrix of an `sc` presentation over `Qi`.
pub fn star_from_json(v: &Value, dim: usize) -> Result<Option<Matrix<GaussianRational>>, JsonError> {
    v.get("star").map(|s| matrix_from_json(s, dim)).transpose()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use crate::rings::function_ring;

    #[test]
    fn scalar_round_trip() {
        let q = rat(-3, 7);
        assert_eq!(scalar_to_json(&q), json!("-3/7"));
        assert_eq!(scalar_from_json::<Rational>(&json!("-3/7")).unwrap(), q);
        assert_eq!(scalar_from_json::<Rational>(&json!(4)).unwrap(), int(4));
        let g = GaussianRational::new(rat(1, 2), int(-1));
        assert_eq!(scalar_to_json(&g), json!({"re": "1/2", "im": "-1"}));
        assert_eq!(scalar_from_json::<GaussianRational>(&scalar_to_json(&g)).unwrap(), g);
        assert!(scalar_from_json::<Rational>(&json!({"re": "1", "im": "1"})).is_err());
        assert!(scalar_from_json::<Rational>(&json!("1/0")).is_err());
    }

    #[test]
    fn ring_spec_round_trip() {
        for v in [
            json!({"kind": "zmod", "n": 12}),
            json!({"kind": "bool", "ground": ["a", "b", "c"]}),
            sc_to_json(&function_ring::<Rational>(2)),
            sc_to_json(&function_ring::<GaussianRational>(3)),
        ] {
            let spec = ring_spec_from_json(&v).unwrap();
            assert_eq!(ring_spec_to_json(&spec), v);
        }
    }

    #[test]
    fn schema_errors() {
        assert!(matches!(ring_spec_from_json(&json!({"kind": "ring"})), Err(JsonError::Schema(_))));
        assert!(matches!(ring_spec_from_json(&json!({"kind": "zmod", "n": 0})), Err(JsonError::Ring(_))));
        let bad = json!({"kind": "sc", "field": "Q", "dim": 1, "unit": ["1"], "table": [[["2"]]]});
        assert!(matches!(ring_spec_from_json(&bad), Err(JsonError::Ring(RingError::BadUnit(0)))));
    }
}
