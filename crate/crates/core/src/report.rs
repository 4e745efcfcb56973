use std::fmt;

use serde::Serialize;

use crate::scalars::Scalar;
use crate::tensor::Tensor;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    /// A membership claim that bounded saturation could neither confirm
    /// nor refute.
    Unwitnessed,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Skipped => "skipped",
            Status::Unwitnessed => "unwitnessed",
        })
    }
}

/// First nonzero entry of a defect: a multi-index (0-based, codomain legs
/// then domain legs) and its value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub index: Vec<usize>,
    pub value: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub check_id: String,
    pub status: Status,
    pub witness: Option<Witness>,
    pub detail: String,
}

impl CheckReport {
    pub fn pass(id: impl Into<String>) -> Self {
        CheckReport {
            check_id: id.into(),
            status: Status::Pass,
            witness: None,
            detail: String::new(),
        }
    }

    pub fn fail(id: impl Into<String>, detail: impl Into<String>) -> Self {
        CheckReport {
            check_id: id.into(),
            status: Status::Fail,
            witness: None,
            detail: detail.into(),
        }
    }

    pub fn skipped(id: impl Into<String>, why: impl Into<String>) -> Self {
        CheckReport {
            check_id: id.into(),
            status: Status::Skipped,
            witness: None,
            detail: why.into(),
        }
    }

    pub fn unwitnessed(id: impl Into<String>, why: impl Into<String>) -> Self {
        CheckReport {
            check_id: id.into(),
            status: Status::Unwitnessed,
            witness: None,
            detail: why.into(),
        }
    }

    /// Passes iff `defect` is the zero tensor; otherwise carries its first
    /// nonzero entry.
    pub fn from_defect(id: impl Into<String>, defect: &Tensor) -> Self {
        match defect.first_nonzero() {
            None => CheckReport::pass(id),
            Some((index, value)) => CheckReport {
                check_id: id.into(),
                status: Status::Fail,
                witness: Some(Witness { index, value }),
                detail: String::new(),
            },
        }
    }

    /// Compares two tensors of equal flattened shape.
    pub fn compare(id: impl Into<String>, lhs: &Tensor, rhs: &Tensor) -> Self {
        let id = id.into();
        match lhs.sub(rhs) {
            Ok(d) => CheckReport::from_defect(id, &d),
            Err(e) => CheckReport::fail(id, e.to_string()),
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<11} {}", self.status.to_string(), self.check_id)?;
        if let Some(w) = &self.witness {
            let idx: Vec<String> = w.index.iter().map(|i| (i + 1).to_string()).collect();
            write!(f, "  at ({}) = {}", idx.join(","), w.value)?;
        }
        if !self.detail.is_empty() {
            write!(f, "  [{}]", self.detail)?;
        }
        Ok(())
    }
}

/// True when no report failed or stayed unwitnessed; skipped checks are ignored.
pub fn all_passed(reports: &[CheckReport]) -> bool {
    reports
        .iter()
        .all(|r| matches!(r.status, Status::Pass | Status::Skipped))
}
