//! Machine-readable run records: JSON-lines output with exact values
//! preserved (rationals as "p/q" strings, ring scalars as integer
//! 5-tuples) — no floating-point serialization of exact results.

use num_rational::Rational64;
use serde::Serialize;
use sha2::{Digest, Sha256};
use stabinv::engines::EngineResult;

pub fn rational_string(r: Rational64) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[derive(Clone, Debug, Serialize)]
pub struct InputDescriptor {
    pub path: String,
    pub sha256: String,
}

impl InputDescriptor {
    pub fn new(path: &str, contents: &str) -> Self {
        let mut hasher = Sha256::new();
        hasher.update(contents.as_bytes());
        InputDescriptor {
            path: path.to_string(),
            sha256: format!("{:x}", hasher.finalize()),
        }
    }
}

/// One engine's (or closed form's) result inside a record.
#[derive(Clone, Debug, Serialize)]
pub struct MethodResult {
    pub method: String,
    /// "exact-ring" when the full scalar is known, "exact-rational" when
    /// only the magnitude is.
    pub exactness: String,
    /// (a, b, c, d, k) for the scalar (a + bω + cω² + dω³)·2^{−k/2};
    /// absent for magnitude-only methods.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<(i64, i64, i64, i64, i64)>,
    /// log₂ of the magnitude as an exact rational "p/q"; absent when the
    /// value is zero.
    pub magnitude_log2: Option<String>,
    pub wall_us: u128,
}

impl MethodResult {
    pub fn from_engine(r: &EngineResult, wall_us: u128) -> Self {
        MethodResult {
            method: r.method.to_string(),
            exactness: if r.magnitude_only {
                "exact-rational".to_string()
            } else {
                "exact-ring".to_string()
            },
            value: (!r.magnitude_only).then(|| r.value.as_tuple()),
            magnitude_log2: r.magnitude_log2.map(rational_string),
            wall_us,
        }
    }

    pub fn from_log2(method: &str, log2: Rational64, wall_us: u128) -> Self {
        MethodResult {
            method: method.to_string(),
            exactness: "exact-rational".to_string(),
            value: None,
            magnitude_log2: Some(rational_string(log2)),
            wall_us,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunRecord {
    pub command: String,
    pub inputs: Vec<InputDescriptor>,
    /// The invariant spec in its own text format, newline-joined.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariant: Option<String>,
    pub results: Vec<MethodResult>,
    /// True when every method that produced a magnitude agrees; absent
    /// for single-method runs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agreement: Option<bool>,
    /// Command-specific extra payload (report tables, etc.).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extra: Option<serde_json::Value>,
}

impl RunRecord {
    pub fn agreement_from_results(results: &[MethodResult]) -> Option<bool> {
        if results.len() < 2 {
            return None;
        }
        let first = &results[0].magnitude_log2;
        Some(results.iter().all(|r| r.magnitude_log2 == *first))
    }
}
