//! Versioned JSON documents exchanged with the command line.
//!
//! Every document is an object with a top-level `"schema"` field. Sets live
//! under `"set"` as an array of `[lo, hi]` coefficient strings (`"4/3"` means
//! 4π/3); step functions live under `"wavelet"` as `[[lo, hi], "a + b*sqrt2"]`
//! pairs.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::interval_set::IntervalSet;
use crate::step_wavelet::StepFunction;

pub const SCHEMA: &str = "h2wave/1";

pub fn set_document(set: &IntervalSet) -> Value {
    json!({ "schema": SCHEMA, "kind": "interval_set", "set": set })
}

pub fn wavelet_document(f: &StepFunction) -> Value {
    json!({ "schema": SCHEMA, "kind": "step_function", "wavelet": f })
}

fn parse(text: &str) -> Result<Value> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if let Some(schema) = v.get("schema") {
        if schema != SCHEMA {
            return Err(Error::Parse(format!("unsupported schema {schema}")));
        }
    }
    Ok(v)
}

/// Accepts a set document or a bare array of pairs.
pub fn read_set(text: &str) -> Result<IntervalSet> {
    let v = parse(text)?;
    let body = if v.is_array() {
        &v
    } else {
        v.get("set")
            .ok_or_else(|| Error::Parse("missing \"set\"".into()))?
    };
    serde_json::from_value(body.clone()).map_err(|e| Error::Parse(e.to_string()))
}

/// Accepts a wavelet document, a bare array of pieces, or a set document
/// (read as its indicator).
pub fn read_wavelet(text: &str) -> Result<StepFunction> {
    let v = parse(text)?;
    if let Some(w) = v.get("wavelet") {
        return serde_json::from_value(w.clone()).map_err(|e| Error::Parse(e.to_string()));
    }
    if v.get("set").is_some() {
        return read_set(text).map(|s| StepFunction::indicator(&s));
    }
    serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::make_k_r;
    use crate::step_wavelet::make_psi_r;

    #[test]
    fn documents_round_trip() {
        let k = make_k_r(3).unwrap().set;
        assert_eq!(read_set(&set_document(&k).to_string()).unwrap(), k);
        let f = make_psi_r(3).unwrap();
        assert_eq!(read_wavelet(&wavelet_document(&f).to_string()).unwrap(), f);
    }

    #[test]
    fn rejects_other_schema() {
        assert!(read_set(r#"{"schema":"other/9","set":[]}"#).is_err());
        assert!(read_set("not json").is_err());
    }
}
