//! On-disk pairing memo tables, keyed by datum and tool version.

use std::fs;
use std::path::Path;

use qsuper::pairing::PairingSpec;
use qsuper::{QRat, RootDatum};
use serde_json::{json, Value};

use crate::report::datum_json;

fn key(d: &RootDatum) -> Value {
    json!({ "datum": datum_json(d), "tool_version": env!("CARGO_PKG_VERSION") })
}

fn entries_json(s: &PairingSpec) -> Value {
    Value::Array(
        s.export_memo()
            .into_iter()
            .map(|(a, b, v)| json!([a, b, v.to_string()]))
            .collect(),
    )
}

fn parse_entries(v: &Value) -> Option<Vec<(String, String, QRat)>> {
    v.as_array()?
        .iter()
        .map(|e| {
            let a = e.get(0)?.as_str()?.to_string();
            let b = e.get(1)?.as_str()?.to_string();
            let c = QRat::parse(e.get(2)?.as_str()?).ok()?;
            Some((a, b, c))
        })
        .collect()
}

/// Seeds both RTT pairings from `path` when it exists and matches the datum.
/// Returns whether anything was loaded.
pub fn load(path: &Path, d: &RootDatum, sigma: &PairingSpec, sigma_tilde: &PairingSpec) -> Result<bool, String> {
    let Ok(text) = fs::read_to_string(path) else {
        return Ok(false);
    };
    let v: Value = serde_json::from_str(&text).map_err(|e| format!("cache {}: {e}", path.display()))?;
    if v.get("key") != Some(&key(d)) {
        return Ok(false);
    }
    for (field, spec) in [("sigma", sigma), ("sigma_tilde", sigma_tilde)] {
        let entries = v
            .get(field)
            .and_then(parse_entries)
            .ok_or_else(|| format!("cache {}: malformed {field} table", path.display()))?;
        spec.import_memo(&entries).map_err(|e| format!("cache {}: {e}", path.display()))?;
    }
    Ok(true)
}

pub fn store(path: &Path, d: &RootDatum, sigma: &PairingSpec, sigma_tilde: &PairingSpec) -> Result<(), String> {
    let v = json!({
        "key": key(d),
        "sigma": entries_json(sigma),
        "sigma_tilde": entries_json(sigma_tilde),
    });
    let text = serde_json::to_string(&v).expect("json value");
    fs::write(path, text).map_err(|e| format!("cache {}: {e}", path.display()))
}
