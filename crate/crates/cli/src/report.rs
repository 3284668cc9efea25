//! Report assembly and the determinism hash.

use std::path::PathBuf;
use std::time::Duration;

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::run::Outcome;

macro_rules! examples {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../examples/", $name, ".json")))),*]
    };
}

/// Shipped example specs, by file stem.
pub const EXAMPLES: &[(&str, &str)] = examples![
    "p1_body",
    "p1_negative",
    "p2_volume",
    "f1_body",
    "simplex_semigroup",
    "nested_family",
    "p1_filtration",
    "p2_filtration",
    "p2_seshadri",
    "p1xp1_seshadri",
    "check_suite",
];

pub struct Report {
    pub value: Value,
    pub ok: bool,
}

/// SHA-256 of the compact serialization, keys sorted, without the timing
/// and hash fields.
pub fn determinism_hash(report: &Value) -> String {
    let mut v = report.clone();
    if let Value::Object(m) = &mut v {
        m.remove("timing_ms");
        m.remove("determinism_hash");
    }
    hex::encode(Sha256::digest(
        serde_json::to_string(&v)
            .expect("report serializes")
            .as_bytes(),
    ))
}

pub fn build_report(
    kind: &str,
    input: Value,
    outcome: &Outcome,
    figures: &[PathBuf],
    elapsed: Duration,
) -> Report {
    let ok = outcome.checks.iter().all(|(_, ok)| *ok);
    let names: Vec<String> = figures
        .iter()
        .filter_map(|p| p.file_name().and_then(|n| n.to_str()).map(str::to_string))
        .collect();
    let mut value = json!({
        "version": env!("CARGO_PKG_VERSION"),
        "kind": kind,
        "input": input,
        "results": outcome.results,
        "checks": outcome.checks.iter().map(|(name, ok)| json!({"name": name, "holds": ok})).collect::<Vec<_>>(),
        "status": if ok { "ok" } else { "mismatch" },
        "figures": names,
        "timing_ms": elapsed.as_millis() as u64,
    });
    value["determinism_hash"] = Value::String(determinism_hash(&value));
    Report { value, ok }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples_parse() {
        for (name, text) in EXAMPLES {
            crate::spec::parse(text).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }

    #[test]
    fn hash_ignores_timing() {
        let a = json!({"kind": "x", "timing_ms": 1});
        let b = json!({"kind": "x", "timing_ms": 99, "determinism_hash": "zz"});
        assert_eq!(determinism_hash(&a), determinism_hash(&b));
        assert_ne!(
            determinism_hash(&a),
            determinism_hash(&json!({"kind": "y"}))
        );
    }
}
