//! JSON encoding of exact rationals as `[num, den]` pairs.
//!
//! Integers that fit in `i64` are written as JSON numbers, larger ones as
//! decimal strings. Decoding also accepts plain numbers and `"p/q"` strings.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serializer};
use serde_json::{json, Value};

use super::rational::{parse_rational, Rational};

fn big(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(x) => json!(x),
        None => Value::String(n.to_string()),
    }
}

fn parse_big(v: &Value) -> Result<BigInt, String> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| format!("expected an integer, got {n}")),
        Value::String(s) => s
            .trim()
            .parse()
            .map_err(|_| format!("expected an integer, got {s:?}")),
        other => Err(format!("expected an integer, got {other}")),
    }
}

pub trait ToJson {
    fn to_json(&self) -> Value;
}

pub trait FromJson: Sized {
    fn from_json(v: &Value) -> Result<Self, String>;
}

impl ToJson for Rational {
    fn to_json(&self) -> Value {
        json!([big(self.numer()), big(self.denom())])
    }
}

impl FromJson for Rational {
    fn from_json(v: &Value) -> Result<Self, String> {
        match v {
            Value::Array(xs) if xs.len() == 2 => {
                let n = parse_big(&xs[0])?;
                let d = parse_big(&xs[1])?;
                if d == BigInt::from(0) {
                    return Err("zero denominator".into());
                }
                Ok(Rational::new(n, d))
            }
            Value::Number(n) => match n.as_i64() {
                Some(x) => Ok(Rational::from_integer(x.into())),
                None => parse_rational(&n.to_string()).map_err(|e| e.to_string()),
            },
            Value::String(s) => parse_rational(s).map_err(|e| e.to_string()),
            other => Err(format!("expected a rational as [num, den], got {other}")),
        }
    }
}

impl<T: ToJson> ToJson for Vec<T> {
    fn to_json(&self) -> Value {
        Value::Array(self.iter().map(ToJson::to_json).collect())
    }
}

impl<T: ToJson> ToJson for [T] {
    fn to_json(&self) -> Value {
        Value::Array(self.iter().map(ToJson::to_json).collect())
    }
}

impl<T: FromJson> FromJson for Vec<T> {
    fn from_json(v: &Value) -> Result<Self, String> {
        match v {
            Value::Array(xs) => xs.iter().map(T::from_json).collect(),
            other => Err(format!("expected an array, got {other}")),
        }
    }
}

impl<T: ToJson> ToJson for Option<T> {
    fn to_json(&self) -> Value {
        self.as_ref().map_or(Value::Null, ToJson::to_json)
    }
}

impl<T: FromJson> FromJson for Option<T> {
    fn from_json(v: &Value) -> Result<Self, String> {
        match v {
            Value::Null => Ok(None),
            v => T::from_json(v).map(Some),
        }
    }
}

/// For `#[serde(serialize_with = "...")]`.
pub fn ser<T: ToJson + ?Sized, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    serde::Serialize::serialize(&v.to_json(), s)
}

/// For `#[serde(deserialize_with = "...")]`.
pub fn de<'de, T: FromJson, D: Deserializer<'de>>(d: D) -> Result<T, D::Error> {
    let v = Value::deserialize(d)?;
    T::from_json(&v).map_err(serde::de::Error::custom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    #[test]
    fn round_trip() {
        let q = rat(-3, 4);
        assert_eq!(q.to_json(), json!([-3, 4]));
        assert_eq!(Rational::from_json(&q.to_json()).unwrap(), q);
        assert_eq!(Rational::from_json(&json!("5/10")).unwrap(), rat(1, 2));
        assert_eq!(Rational::from_json(&json!(7)).unwrap(), int(7));
        let huge = Rational::from_integer(BigInt::from(10).pow(30));
        assert_eq!(Rational::from_json(&huge.to_json()).unwrap(), huge);
        assert!(Rational::from_json(&json!([1, 0])).is_err());
    }
}
