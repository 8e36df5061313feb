//! Uniform pass/fail rows produced by every verification routine.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckRow {
    /// Table or check family, e.g. `"structure"` or `"B1"`.
    pub table: String,
    pub row_id: String,
    pub status: Status,
    /// Minimal witness for failures, or the reason for a skip.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckRow {
    pub fn pass(table: &str, row: impl Into<String>) -> Self {
        CheckRow {
            table: table.into(),
            row_id: row.into(),
            status: Status::Pass,
            witness: None,
        }
    }

    pub fn fail(table: &str, row: impl Into<String>, witness: impl Into<String>) -> Self {
        CheckRow {
            table: table.into(),
            row_id: row.into(),
            status: Status::Fail,
            witness: Some(witness.into()),
        }
    }

    pub fn skipped(table: &str, row: impl Into<String>, reason: impl Into<String>) -> Self {
        CheckRow {
            table: table.into(),
            row_id: row.into(),
            status: Status::Skipped,
            witness: Some(reason.into()),
        }
    }

    /// Pass when `ok`, else fail with the lazily built witness.
    pub fn check(table: &str, row: impl Into<String>, ok: bool, witness: impl FnOnce() -> String) -> Self {
        if ok {
            Self::pass(table, row)
        } else {
            Self::fail(table, row, witness())
        }
    }

    pub fn is_fail(&self) -> bool {
        self.status == Status::Fail
    }
}

pub fn all_pass(rows: &[CheckRow]) -> bool {
    !rows.iter().any(CheckRow::is_fail)
}

pub fn failures(rows: &[CheckRow]) -> Vec<&CheckRow> {
    rows.iter().filter(|r| r.is_fail()).collect()
}
