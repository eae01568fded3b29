//! JSON encodings of fields, scalars, matrices and forms.
//!
//! A field is `{"kind": "Q"}` or `{"kind": "Fp", "p": 5, "e": 1}`; the
//! short strings `"Q"` and `"q"` (a prime power such as `"9"`) are accepted too.
//! Scalars are JSON integers or strings in the syntax of
//! [`Field::parse_scalar`]; a matrix is an array of rows.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::forms::AlternatingForm;
use crate::matrix::Matrix;
use crate::poly::Polynomial;

pub fn parse_field_spec(spec: &str) -> Result<Field> {
    let s = spec.trim();
    if s.eq_ignore_ascii_case("q") || s == "QQ" {
        return Ok(Field::rationals());
    }
    let q: u64 = s
        .parse()
        .map_err(|_| Error::Parse(format!("field spec {spec:?} is neither Q nor a prime power")))?;
    Field::of_order(q)
}

pub fn field_to_json(f: &Field) -> Value {
    match f.galois() {
        None => json!({"kind": "Q"}),
        Some(g) => json!({"kind": "Fp", "p": g.characteristic(), "e": g.degree()}),
    }
}

pub fn field_from_json(v: &Value) -> Result<Field> {
    match v {
        Value::String(s) => parse_field_spec(s),
        Value::Number(n) => parse_field_spec(&n.to_string()),
        Value::Object(m) => match m.get("kind").and_then(Value::as_str) {
            Some("Q") => Ok(Field::rationals()),
            Some("Fp") => {
                let p = m
                    .get("p")
                    .and_then(Value::as_u64)
                    .ok_or_else(|| Error::Parse("field needs an integer \"p\"".into()))?;
                let e = m.get("e").and_then(Value::as_u64).unwrap_or(1);
                let p = u32::try_from(p).map_err(|_| Error::InvalidField(format!("p = {p} is too large")))?;
                let e = u32::try_from(e).map_err(|_| Error::InvalidField(format!("e = {e} is too large")))?;
                Field::finite(p, e)
            }
            _ => Err(Error::Parse("field kind must be \"Q\" or \"Fp\"".into())),
        },
        _ => Err(Error::Parse(format!("cannot read a field from {v}"))),
    }
}

pub fn scalar_to_json(f: &Field, x: &Scalar) -> Value {
    let s = f.format_scalar(x);
    match s.parse::<i64>() {
        Ok(n) => json!(n),
        Err(_) => json!(s),
    }
}

pub fn scalar_from_json(f: &Field, v: &Value) -> Result<Scalar> {
    match v {
        Value::Number(n) => f.parse_scalar(&n.to_string()),
        Value::String(s) => f.parse_scalar(s),
        Value::Array(_) => f.parse_scalar(&v.to_string()),
        _ => Err(Error::Parse(format!("cannot read a scalar from {v}"))),
    }
}

pub fn scalars_from_json(f: &Field, v: &Value) -> Result<Vec<Scalar>> {
    v.as_array()
        .ok_or_else(|| Error::Parse(format!("expected an array, got {v}")))?
        .iter()
        .map(|x| scalar_from_json(f, x))
        .collect()
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    let f = m.field();
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(|x| scalar_to_json(f, x)).collect()))
            .collect(),
    )
}

pub fn matrix_from_json(f: &Field, v: &Value) -> Result<Matrix> {
    let rows = v
        .as_array()
        .ok_or_else(|| Error::Parse("a matrix is an array of rows".into()))?;
    let rows = rows
        .iter()
        .map(|r| scalars_from_json(f, r))
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(f, rows)
}

pub fn form_from_json(f: &Field, v: &Value) -> Result<AlternatingForm> {
    AlternatingForm::new(matrix_from_json(f, v)?)
}

/// A polynomial as an ascending coefficient array.
pub fn polynomial_from_json(f: &Field, v: &Value) -> Result<Polynomial> {
    match v {
        Value::Array(_) => Ok(Polynomial::new(f.clone(), scalars_from_json(f, v)?)),
        _ => Ok(Polynomial::constant(f, scalar_from_json(f, v)?)),
    }
}

pub fn polynomial_to_json(p: &Polynomial) -> Value {
    Value::Array(p.coeffs().iter().map(|c| scalar_to_json(p.field(), c)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_round_trip() {
        for f in [Field::rationals(), Field::prime(7).unwrap(), Field::finite(3, 2).unwrap()] {
            assert_eq!(field_from_json(&field_to_json(&f)).unwrap(), f);
        }
        assert_eq!(parse_field_spec("Q").unwrap(), Field::rationals());
        assert_eq!(parse_field_spec("9").unwrap(), Field::finite(3, 2).unwrap());
        assert!(parse_field_spec("6").is_err());
    }

    #[test]
    fn matrix_round_trip() {
        let f = Field::rationals();
        let m = Matrix::new(&f, 1, 2, vec![f.rational(1, 2), f.from_i64(-3)]).unwrap();
        let v = matrix_to_json(&m);
        assert_eq!(v, json!([["1/2", -3]]));
        assert_eq!(matrix_from_json(&f, &v).unwrap(), m);
        let f9 = Field::finite(3, 2).unwrap();
        let g = f9.generator().unwrap();
        let m = Matrix::new(&f9, 1, 1, vec![g]).unwrap();
        assert_eq!(matrix_from_json(&f9, &matrix_to_json(&m)).unwrap(), m);
    }

    #[test]
    fn form_rejects_symmetric() {
        let f = Field::prime(5).unwrap();
        assert!(matches!(
            form_from_json(&f, &json!([[0, 1], [1, 0]])),
            Err(Error::NotAlternating(_))
        ));
    }
}
