//! Problem specifications: `{"kind": ..., "options": {...}, "expect": {...}, <payload>}`.

use std::collections::BTreeMap;

use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{Map, Value};
use serde_path_to_error::Segment;

use okounkov_core::exact::json::de;
use okounkov_core::exact::rational::{QVec, Rational};
use okounkov_core::filtration::FiltrationSpec;
use okounkov_core::geometry::Polytope;
use okounkov_core::series::{examples, LatticeSeries};
use okounkov_core::seshadri::SeshadriSpec;
use okounkov_core::valuation::ValuationSpec;

use crate::error::CliError;

pub const KINDS: [&str; 5] = [
    "semigroup",
    "series",
    "filtration",
    "seshadri",
    "check-suite",
];

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    pub max_degree: Option<u64>,
    pub grid: Option<u64>,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemigroupSpec {
    /// `[degree, payload…]` per generator.
    #[serde(default, deserialize_with = "de")]
    pub generators: Option<Vec<QVec>>,
    /// `⟨(1,0), (1,2^{-k}) : k ≤ K⟩`.
    pub nested_family: Option<u32>,
    pub slice: Option<SliceSpec>,
    pub volume_slice: Option<SubspaceSpec>,
    pub growth_degrees: Option<Vec<u64>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SliceSpec {
    #[serde(deserialize_with = "de")]
    pub w: Vec<QVec>,
    #[serde(deserialize_with = "de")]
    pub v: QVec,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubspaceSpec {
    #[serde(deserialize_with = "de")]
    pub w: Vec<QVec>,
}

/// A toric linear series by its lattice polytope.
#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum SeriesSource {
    ProjectiveSpace {
        n: usize,
        d: i64,
    },
    P1xp1 {
        a: i64,
        b: i64,
    },
    HirzebruchF1,
    P1Negative {
        m: i64,
    },
    Polytope {
        #[serde(deserialize_with = "de")]
        vertices: Vec<QVec>,
    },
}

impl SeriesSource {
    pub fn build(&self) -> Result<LatticeSeries, CliError> {
        Ok(match self {
            SeriesSource::ProjectiveSpace { n, d } => examples::projective_space(*n, *d),
            SeriesSource::P1xp1 { a, b } => examples::p1xp1(*a, *b),
            SeriesSource::HirzebruchF1 => examples::hirzebruch_f1(),
            SeriesSource::P1Negative { m } => examples::p1_negative(*m),
            SeriesSource::Polytope { vertices } => {
                let n = vertices.first().map_or(0, Vec::len);
                if n == 0 || vertices.iter().any(|v| v.len() != n) {
                    return Err(CliError::Input(
                        "polytope vertices must be nonempty and of equal length".into(),
                    ));
                }
                LatticeSeries::new(Polytope::hull(n, vertices))
            }
        })
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesSpec {
    pub series: SeriesSource,
    /// Lexicographic order on the chart exponents when absent.
    pub valuation: Option<ValuationSpec>,
    pub twist: Option<Vec<i64>>,
}

#[derive(Clone, Copy, Debug, Default, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum FloorSpec {
    #[default]
    Zero,
    EMin,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiltrationProblem {
    pub series: SeriesSource,
    pub valuation: Option<ValuationSpec>,
    pub filtration: FiltrationSpec,
    #[serde(default)]
    pub floor: FloorSpec,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckSuiteSpec {
    #[serde(default)]
    pub theorems: bool,
    #[serde(default = "yes")]
    pub properties: bool,
}

fn yes() -> bool {
    true
}

#[derive(Clone, Debug)]
pub enum Payload {
    Semigroup(SemigroupSpec),
    Series(SeriesSpec),
    Filtration(FiltrationProblem),
    Seshadri(SeshadriSpec),
    CheckSuite(CheckSuiteSpec),
}

#[derive(Clone, Debug)]
pub struct ProblemSpec {
    pub kind: &'static str,
    pub options: Options,
    pub payload: Payload,
    /// Expected values at JSON pointers into the results.
    pub expect: BTreeMap<String, Value>,
    /// The input as read, echoed in the report.
    pub raw: Value,
}

fn typed<T: DeserializeOwned>(v: Value, prefix: &str) -> Result<T, CliError> {
    serde_path_to_error::deserialize(v).map_err(|e| {
        let mut pointer = prefix.to_string();
        for seg in e.path().iter() {
            match seg {
                Segment::Seq { index } => pointer.push_str(&format!("/{index}")),
                Segment::Map { key } => {
                    pointer.push_str(&format!("/{}", key.replace('~', "~0").replace('/', "~1")))
                }
                Segment::Enum { .. } | Segment::Unknown => {}
            }
        }
        CliError::Schema {
            pointer,
            message: e.into_inner().to_string(),
        }
    })
}

/// Validates the envelope and the payload of the kind it names.
pub fn parse(text: &str) -> Result<ProblemSpec, CliError> {
    let raw: Value = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    let Value::Object(mut obj) = raw.clone() else {
        return Err(CliError::Schema {
            pointer: String::new(),
            message: "a spec is a JSON object".into(),
        });
    };
    let kind = match obj.remove("kind") {
        Some(Value::String(k)) => {
            KINDS
                .iter()
                .find(|x| **x == k)
                .copied()
                .ok_or_else(|| CliError::Schema {
                    pointer: "/kind".into(),
                    message: format!("unknown kind {k:?}; expected one of {}", KINDS.join(", ")),
                })?
        }
        Some(_) => {
            return Err(CliError::Schema {
                pointer: "/kind".into(),
                message: "kind must be a string".into(),
            })
        }
        None => {
            return Err(CliError::Schema {
                pointer: "/kind".into(),
                message: "missing field `kind`".into(),
            })
        }
    };
    let options = match obj.remove("options") {
        Some(v) => typed(v, "/options")?,
        None => Options::default(),
    };
    let expect: BTreeMap<String, Value> = match obj.remove("expect") {
        Some(v) => typed(v, "/expect")?,
        None => BTreeMap::new(),
    };
    if let Some(bad) = expect.keys().find(|k| !k.starts_with('/')) {
        return Err(CliError::Schema {
            pointer: format!("/expect/{bad}"),
            message: "expectation keys are JSON pointers".into(),
        });
    }
    let rest = Value::Object(Map::from_iter(obj));
    let payload = match kind {
        "semigroup" => Payload::Semigroup(typed(rest, "")?),
        "series" => Payload::Series(typed(rest, "")?),
        "filtration" => Payload::Filtration(typed(rest, "")?),
        "seshadri" => Payload::Seshadri(typed(rest, "")?),
        _ => Payload::CheckSuite(typed(rest, "")?),
    };
    Ok(ProblemSpec {
        kind,
        options,
        payload,
        expect,
        raw,
    })
}

/// Generators as graded points; the degree coordinate must be an integer.
pub fn integer_degree(g: &[Rational]) -> Result<i64, CliError> {
    let d = g
        .first()
        .ok_or_else(|| CliError::Input("empty generator".into()))?;
    if !d.is_integer() {
        return Err(CliError::Input(format!(
            "generator degree {d} is not an integer"
        )));
    }
    i64::try_from(d.to_integer())
        .map_err(|_| CliError::Input("generator degree out of range".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_spec_is_a_schema_error() {
        match parse("{}") {
            Err(CliError::Schema { pointer, .. }) => assert_eq!(pointer, "/kind"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn schema_errors_carry_pointers() {
        // tagged objects are buffered whole, so the pointer stops at them
        let bad = r#"{"kind": "series", "series": {"type": "projective_space", "n": 2, "d": "x"}}"#;
        match parse(bad) {
            Err(CliError::Schema { pointer, message }) => {
                assert_eq!(pointer, "/series");
                assert!(message.contains("\"x\""), "{message}");
            }
            other => panic!("{other:?}"),
        }
        let deep =
            r#"{"kind": "semigroup", "generators": [[1, 0]], "slice": {"w": [[0]], "v": true}}"#;
        match parse(deep) {
            Err(CliError::Schema { pointer, .. }) => assert_eq!(pointer, "/slice/v"),
            other => panic!("{other:?}"),
        }
        let extra = r#"{"kind": "series", "series": {"type": "hirzebruch_f1"}, "colour": 1}"#;
        assert!(matches!(parse(extra), Err(CliError::Schema { .. })));
        let opts = r#"{"kind": "series", "series": {"type": "hirzebruch_f1"}, "options": {"max_degree": -1}}"#;
        match parse(opts) {
            Err(CliError::Schema { pointer, .. }) => assert_eq!(pointer, "/options/max_degree"),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("{"), Err(CliError::Parse(_))));
    }

    #[test]
    fn rationals_as_pairs() {
        let s = r#"{"kind": "semigroup", "generators": [[1, 0], [1, [1, 2]]]}"#;
        let Payload::Semigroup(p) = parse(s).unwrap().payload else {
            panic!()
        };
        assert_eq!(
            p.generators.unwrap()[1][1],
            Rational::new(1.into(), 2.into())
        );
    }
}
