//! Verification records shared by every module.

use serde::{Deserialize, Serialize};

use crate::linalg::ExactMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    DocumentedDiscrepancy,
    Skipped,
}

/// Outcome of one exact check. Failing records always carry a witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckRecord {
    pub fn pass(id: impl Into<String>, anchor: impl Into<String>) -> Self {
        CheckRecord {
            id: id.into(),
            anchor: anchor.into(),
            status: Status::Pass,
            witness: None,
        }
    }

    pub fn fail(
        id: impl Into<String>,
        anchor: impl Into<String>,
        witness: impl Into<String>,
    ) -> Self {
        CheckRecord {
            id: id.into(),
            anchor: anchor.into(),
            status: Status::Fail,
            witness: Some(witness.into()),
        }
    }

    pub fn with_status(
        id: impl Into<String>,
        anchor: impl Into<String>,
        status: Status,
        witness: Option<String>,
    ) -> Self {
        CheckRecord {
            id: id.into(),
            anchor: anchor.into(),
            status,
            witness,
        }
    }

    /// Pass iff `ok`; otherwise fail with the lazily built witness.
    pub fn from_bool(
        id: impl Into<String>,
        anchor: impl Into<String>,
        ok: bool,
        witness: impl FnOnce() -> String,
    ) -> Self {
        if ok {
            Self::pass(id, anchor)
        } else {
            Self::fail(id, anchor, witness())
        }
    }

    /// Entrywise comparison; the witness is the first differing entry.
    pub fn matrices_equal(
        id: impl Into<String>,
        anchor: impl Into<String>,
        lhs: &ExactMatrix,
        rhs: &ExactMatrix,
    ) -> Self {
        match lhs.first_difference(rhs) {
            None => Self::pass(id, anchor),
            Some((i, ..)) if i == usize::MAX => Self::fail(
                id,
                anchor,
                format!("dimension {} vs {}", lhs.dim(), rhs.dim()),
            ),
            Some((i, j, a, b)) => Self::fail(id, anchor, format!("entry ({i}, {j}): {a} vs {b}")),
        }
    }

    pub fn matrix_zero(id: impl Into<String>, anchor: impl Into<String>, m: &ExactMatrix) -> Self {
        Self::matrices_equal(id, anchor, m, &ExactMatrix::zeros(m.dim()))
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Everything except an outright failure.
    pub fn acceptable(&self) -> bool {
        self.status != Status::Fail
    }
}

pub fn all_pass(records: &[CheckRecord]) -> bool {
    records.iter().all(CheckRecord::passed)
}

pub fn first_failure(records: &[CheckRecord]) -> Option<&CheckRecord> {
    records.iter().find(|c| c.status == Status::Fail)
}
