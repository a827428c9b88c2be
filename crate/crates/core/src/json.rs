//! JSON formats.
//!
//! * scalar: `{"re": x, "im": y}`; binary64 parts are JSON numbers (shortest
//!   round-trip representation), exact parts are `"p/q"` strings.
//! * N-vector: `{"m", "n", "entries": [{"idx": [1-based labels], "re", "im"}]}`.
//! * factorization: `{"m", "factors": [[scalar, …], …]}`.
//! * candidate set: `{"m", "n", "kind", "claims": {"orthogonal", "independent"},
//!   "members": [factorization, …], "metadata"?}`.
//!
//! The backend of a document is detected from its first scalar part.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};

use crate::constructions::{CandidateSet, Claims, Kind};
use crate::error::{Error, Result};
use crate::factorization::Factorization;
use crate::index::MultiIndex;
use crate::nvector::NVector;
use crate::scalar::{format_rational, parse_rational, Scalar, C64, CQ};

/// Scalars with a JSON encoding.
pub trait JsonScalar: Scalar {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;
}

fn part<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| Error::Format(format!("scalar is missing \"{key}\"")))
}

impl JsonScalar for C64 {
    fn to_json(&self) -> Value {
        json!({"re": self.re, "im": self.im})
    }

    fn from_json(v: &Value) -> Result<Self> {
        let num = |key| {
            part(v, key)?
                .as_f64()
                .ok_or_else(|| Error::Format(format!("\"{key}\" must be a number")))
        };
        let z = C64::new(num("re")?, num("im")?);
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(z)
    }
}

impl JsonScalar for CQ {
    fn to_json(&self) -> Value {
        json!({"re": format_rational(&self.re), "im": format_rational(&self.im)})
    }

    fn from_json(v: &Value) -> Result<Self> {
        let rat = |key| {
            let p = part(v, key)?;
            p.as_str()
                .and_then(parse_rational)
                .ok_or_else(|| Error::Format(format!("\"{key}\" must be a \"p/q\" string, got {p}")))
        };
        Ok(CQ::new(rat("re")?, rat("im")?))
    }
}

fn usize_field(v: &Value, key: &str) -> Result<usize> {
    v.get(key)
        .and_then(Value::as_u64)
        .map(|x| x as usize)
        .ok_or_else(|| Error::Format(format!("missing or invalid \"{key}\"")))
}

fn array_field<'a>(v: &'a Value, key: &str) -> Result<&'a Vec<Value>> {
    v.get(key)
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Format(format!("missing or invalid \"{key}\"")))
}

pub fn nvector_to_json<S: JsonScalar>(v: &NVector<S>) -> Value {
    let entries: Vec<Value> = v
        .entries()
        .map(|(idx, s)| {
            let mut e = s.to_json();
            e["idx"] = Value::from(idx.one_based());
            e
        })
        .collect();
    json!({"m": v.m(), "n": v.n(), "entries": entries})
}

pub fn nvector_from_json<S: JsonScalar>(v: &Value) -> Result<NVector<S>> {
    let (m, n) = (usize_field(v, "m")?, usize_field(v, "n")?);
    let entries = array_field(v, "entries")?
        .iter()
        .map(|e| {
            let labels: Vec<usize> = array_field(e, "idx")?
                .iter()
                .map(|x| {
                    x.as_u64()
                        .map(|x| x as usize)
                        .ok_or_else(|| Error::Format(format!("bad label {x}")))
                })
                .collect::<Result<_>>()?;
            Ok((MultiIndex::from_one_based(&labels, m)?, S::from_json(e)?))
        })
        .collect::<Result<Vec<_>>>()?;
    NVector::from_entries(m, n, entries)
}

pub fn factorization_to_json<S: JsonScalar>(f: &Factorization<S>) -> Value {
    let factors: Vec<Value> = f
        .factors()
        .iter()
        .map(|v| Value::from(v.iter().map(JsonScalar::to_json).collect::<Vec<_>>()))
        .collect();
    json!({"m": f.m(), "factors": factors})
}

pub fn factorization_from_json<S: JsonScalar>(v: &Value) -> Result<Factorization<S>> {
    let m = usize_field(v, "m")?;
    let factors = array_field(v, "factors")?
        .iter()
        .map(|f| {
            f.as_array()
                .ok_or_else(|| Error::Format("a factor must be an array".into()))?
                .iter()
                .map(S::from_json)
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Factorization::new(m, factors)
}

pub fn candidate_set_to_json<S: JsonScalar>(s: &CandidateSet<S>) -> Value {
    let mut out = json!({
        "m": s.m,
        "n": s.n,
        "kind": s.kind,
        "claims": s.claims,
        "members": s.members.iter().map(factorization_to_json).collect::<Vec<_>>(),
    });
    if !s.metadata.is_empty() {
        out["metadata"] = Value::Object(s.metadata.clone());
    }
    out
}

pub fn candidate_set_from_json<S: JsonScalar>(v: &Value) -> Result<CandidateSet<S>> {
    let (m, n) = (usize_field(v, "m")?, usize_field(v, "n")?);
    let kind: Kind = serde_json::from_value(v.get("kind").cloned().unwrap_or(Value::Null))
        .map_err(|e| Error::Format(format!("kind: {e}")))?;
    let claims: Claims = serde_json::from_value(v.get("claims").cloned().unwrap_or(Value::Null))
        .map_err(|e| Error::Format(format!("claims: {e}")))?;
    let members = array_field(v, "members")?
        .iter()
        .map(factorization_from_json)
        .collect::<Result<Vec<_>>>()?;
    let mut set = CandidateSet::new(m, n, kind, claims, members)?;
    if let Some(meta) = v.get("metadata") {
        set.metadata = meta
            .as_object()
            .cloned()
            .ok_or_else(|| Error::Format("metadata must be an object".into()))?;
    }
    Ok(set)
}

/// Either backend, as detected from the document.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyCandidateSet {
    Float(CandidateSet<C64>),
    Exact(CandidateSet<CQ>),
}

/// Whether the first scalar part found in `v` is a string.
fn first_part_is_string(v: &Value) -> Option<bool> {
    match v {
        Value::Object(map) => {
            if let Some(re) = map.get("re") {
                return Some(re.is_string());
            }
            map.values().find_map(first_part_is_string)
        }
        Value::Array(items) => items.iter().find_map(first_part_is_string),
        _ => None,
    }
}

fn is_exact(v: &Value) -> bool {
    let scope = v.get("members").or_else(|| v.get("factors")).or_else(|| v.get("entries"));
    scope.and_then(first_part_is_string).unwrap_or(false)
}

impl AnyCandidateSet {
    pub fn from_json(v: &Value) -> Result<Self> {
        Ok(if is_exact(v) {
            Self::Exact(candidate_set_from_json(v)?)
        } else {
            Self::Float(candidate_set_from_json(v)?)
        })
    }

    pub fn to_json(&self) -> Value {
        match self {
            Self::Float(s) => candidate_set_to_json(s),
            Self::Exact(s) => candidate_set_to_json(s),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum AnyFactorization {
    Float(Factorization<C64>),
    Exact(Factorization<CQ>),
}

impl AnyFactorization {
    pub fn from_json(v: &Value) -> Result<Self> {
        Ok(if is_exact(v) {
            Self::Exact(factorization_from_json(v)?)
        } else {
            Self::Float(factorization_from_json(v)?)
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum AnyNVector {
    Float(NVector<C64>),
    Exact(NVector<CQ>),
}

impl AnyNVector {
    pub fn from_json(v: &Value) -> Result<Self> {
        Ok(if is_exact(v) {
            Self::Exact(nvector_from_json(v)?)
        } else {
            Self::Float(nvector_from_json(v)?)
        })
    }

    pub fn to_json(&self) -> Value {
        match self {
            Self::Float(x) => nvector_to_json(x),
            Self::Exact(x) => nvector_to_json(x),
        }
    }
}

macro_rules! serde_via_value {
    ($ty:ident, $to:ident, $from:ident) => {
        impl<S: JsonScalar> Serialize for $ty<S> {
            fn serialize<Z: Serializer>(&self, serializer: Z) -> std::result::Result<Z::Ok, Z::Error> {
                $to(self).serialize(serializer)
            }
        }

        impl<'de, S: JsonScalar> Deserialize<'de> for $ty<S> {
            fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
                let v = Value::deserialize(deserializer)?;
                $from(&v).map_err(D::Error::custom)
            }
        }
    };
}

serde_via_value!(NVector, nvector_to_json, nvector_from_json);
serde_via_value!(Factorization, factorization_to_json, factorization_from_json);
serde_via_value!(CandidateSet, candidate_set_to_json, candidate_set_from_json);
