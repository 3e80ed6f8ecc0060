use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Outcome of one check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub status: Status,
    /// Expected and actual values, or a short explanation.
    pub details: String,
}

impl CheckReport {
    pub fn new(name: impl Into<String>, ok: bool, details: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            details: details.into(),
        }
    }

    pub fn pass(name: impl Into<String>, details: impl Into<String>) -> Self {
        Self::new(name, true, details)
    }

    pub fn fail(name: impl Into<String>, details: impl Into<String>) -> Self {
        Self::new(name, false, details)
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}
