use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Outcome of one check. Field order is fixed so serialized reports are
/// byte-stable.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub check: String,
    pub status: Status,
    pub residual_terms: usize,
    pub seed: Option<u64>,
    pub truncation: Value,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub details: BTreeMap<String, Value>,
}

impl Report {
    pub fn new(check: impl Into<String>) -> Self {
        Self {
            check: check.into(),
            status: Status::Pass,
            residual_terms: 0,
            seed: None,
            truncation: Value::Null,
            details: BTreeMap::new(),
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_truncation(mut self, t: Value) -> Self {
        self.truncation = t;
        self
    }

    pub fn detail(mut self, key: impl Into<String>, v: impl Into<Value>) -> Self {
        self.details.insert(key.into(), v.into());
        self
    }

    /// Records `n` residual terms; any residual fails the check.
    pub fn residual(mut self, n: usize) -> Self {
        self.residual_terms += n;
        if n > 0 {
            self.status = Status::Fail;
        }
        self
    }

    pub fn fail(mut self, why: impl Into<String>) -> Self {
        self.status = Status::Fail;
        self.details.insert("failure".into(), Value::String(why.into()));
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        };
        write!(f, "[{status}] {} (residual terms: {})", self.check, self.residual_terms)?;
        if let Some(s) = self.seed {
            write!(f, " seed={s}")?;
        }
        if !self.truncation.is_null() {
            write!(f, " truncation={}", self.truncation)?;
        }
        for (k, v) in &self.details {
            write!(f, "\n    {k}: {v}")?;
        }
        Ok(())
    }
}

pub fn all_passed(reports: &[Report]) -> bool {
    reports.iter().all(Report::passed)
}
