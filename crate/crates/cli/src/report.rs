//! JSON report assembly and the plain-text summary.

use qsuper::report::{CheckRow, Status};
use qsuper::{Mode, RootDatum};
use serde_json::{json, Value};

/// Bumped whenever the report layout changes.
pub const SCHEMA_VERSION: u32 = 1;

pub struct SuiteEntry {
    pub name: String,
    pub rows: Vec<CheckRow>,
    pub elapsed_ms: u128,
}

impl SuiteEntry {
    pub fn status(&self) -> Status {
        if self.rows.iter().any(CheckRow::is_fail) {
            Status::Fail
        } else if !self.rows.is_empty() && self.rows.iter().all(|r| r.status == Status::Skipped) {
            Status::Skipped
        } else {
            Status::Pass
        }
    }

    fn count(&self, s: Status) -> usize {
        self.rows.iter().filter(|r| r.status == s).count()
    }

    /// First failing row, the suite's minimal witness.
    fn witness(&self) -> Option<String> {
        self.rows.iter().find(|r| r.is_fail()).map(|r| {
            format!("{}/{}: {}", r.table, r.row_id, r.witness.clone().unwrap_or_default())
        })
    }
}

pub fn datum_json(d: &RootDatum) -> Value {
    let mut v = json!({
        "mode": match d.mode { Mode::Gl => "gl", Mode::Osp => "osp" },
        "parity": d.parity_string(),
        "n_total": d.n,
    });
    if d.mode == Mode::Osp {
        v["theta"] = json!(d.theta_string());
        v["type"] = json!(format!("{:?}", d.type_tag));
    }
    v
}

pub fn report_json(d: &RootDatum, entries: &[SuiteEntry]) -> Value {
    let suites: Vec<Value> = entries
        .iter()
        .map(|e| {
            json!({
                "name": e.name,
                "status": e.status(),
                "witness": e.witness(),
                "counts": {
                    "pass": e.count(Status::Pass),
                    "fail": e.count(Status::Fail),
                    "skipped": e.count(Status::Skipped),
                },
                "elapsed_ms": e.elapsed_ms,
                "rows": e.rows,
            })
        })
        .collect();
    json!({
        "schema_version": SCHEMA_VERSION,
        "tool": "qsuper",
        "tool_version": env!("CARGO_PKG_VERSION"),
        "datum": datum_json(d),
        "suites": suites,
    })
}

pub fn summary(d: &RootDatum, entries: &[SuiteEntry]) -> String {
    let mut out = format!("{}\n", d.describe());
    for e in entries {
        let status = match e.status() {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Skipped => "skipped",
        };
        out.push_str(&format!(
            "  {:<15} {:<8} {:>5} rows {:>4} fail {:>4} skipped {:>7} ms\n",
            e.name,
            status,
            e.rows.len(),
            e.count(Status::Fail),
            e.count(Status::Skipped),
            e.elapsed_ms
        ));
        if let Some(w) = e.witness() {
            out.push_str(&format!("      first failure: {w}\n"));
        }
    }
    out
}
