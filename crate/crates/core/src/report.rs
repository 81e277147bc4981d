use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Outcome of checking one identity exhaustively at one level.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub identity: String,
    /// The formula being checked, in plain notation.
    pub anchor: String,
    pub n: usize,
    pub params: BTreeMap<String, String>,
    pub status: Status,
    /// Number of individual equalities that were checked.
    pub checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl Report {
    pub fn new(identity: &str, anchor: &str, n: usize) -> Self {
        Report {
            identity: identity.to_string(),
            anchor: anchor.to_string(),
            n,
            params: BTreeMap::new(),
            status: Status::Pass,
            checked: 0,
            counterexample: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    /// Records one equality; the first failure is kept as the counterexample.
    pub fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.status == Status::Pass {
            self.status = Status::Fail;
            self.counterexample = Some(describe());
        }
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
        write!(f, "{status} {} n={} ({} checks)", self.identity, self.n, self.checked)?;
        for (k, v) in &self.params {
            write!(f, " {k}={v}")?;
        }
        if let Some(c) = &self.counterexample {
            write!(f, " counterexample: {c}")?;
        }
        Ok(())
    }
}
