//! Law-check reports.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};

/// Violations stored per law before further ones are only counted.
pub const VIOLATION_CAP: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    BoundExceeded,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Violation {
    pub law: String,
    pub instance: String,
    pub explanation: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Stats {
    /// Instances evaluated.
    pub instances: u64,
    /// Instances whose evaluation needed arities beyond the bound.
    pub out_of_range: u64,
    /// Violations found, including those not stored.
    pub violations_total: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub subject: String,
    pub bound: usize,
    pub status: Status,
    pub violations: Vec<Violation>,
    pub stats: Stats,
    /// Extra per-check data, such as flag tables.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub details: BTreeMap<String, serde_json::Value>,
}

impl Report {
    pub fn new(subject: impl Into<String>, bound: usize) -> Report {
        Report {
            subject: subject.into(),
            bound,
            status: Status::Pass,
            violations: Vec::new(),
            stats: Stats::default(),
            details: BTreeMap::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn violation(&mut self, law: &str, instance: impl Into<String>, explanation: impl Into<String>) {
        self.stats.violations_total += 1;
        let stored = self.violations.iter().filter(|v| v.law == law).count();
        if stored < VIOLATION_CAP {
            self.violations.push(Violation {
                law: law.to_string(),
                instance: instance.into(),
                explanation: explanation.into(),
            });
        }
    }

    /// Record the outcome of one law instance.
    ///
    /// `Ok(None)` passes, `Ok(Some(msg))` is a violation, a bound error is
    /// counted as out of range, and any other error is returned.
    pub fn record(
        &mut self,
        law: &str,
        instance: impl FnOnce() -> String,
        outcome: Result<Option<String>>,
    ) -> Result<()> {
        match outcome {
            Ok(None) => {
                self.stats.instances += 1;
                Ok(())
            }
            Ok(Some(msg)) => {
                self.stats.instances += 1;
                self.violation(law, instance(), msg);
                Ok(())
            }
            Err(Error::BoundExceeded(_)) => {
                self.stats.out_of_range += 1;
                Ok(())
            }
            Err(e) => Err(e),
        }
    }

    pub fn merge(&mut self, other: Report) {
        self.stats.instances += other.stats.instances;
        self.stats.out_of_range += other.stats.out_of_range;
        let uncounted = other.stats.violations_total - other.violations.len() as u64;
        for v in other.violations {
            let law = v.law.clone();
            self.violation(&law, v.instance, v.explanation);
        }
        self.stats.violations_total += uncounted;
        self.details.extend(other.details);
    }

    /// Sort violations and settle the status.
    pub fn finish(mut self) -> Report {
        self.violations.sort();
        self.status = if self.stats.violations_total == 0 {
            Status::Pass
        } else {
            Status::Fail
        };
        self
    }

    pub fn laws_violated(&self) -> Vec<String> {
        let mut v: Vec<String> = self.violations.iter().map(|v| v.law.clone()).collect();
        v.dedup();
        v
    }
}

/// Compare two values for a law, rendering a mismatch.
pub(crate) fn expect_eq<T: PartialEq + std::fmt::Display>(lhs: &T, rhs: &T) -> Option<String> {
    if lhs == rhs {
        None
    } else {
        Some(format!("{lhs} ≠ {rhs}"))
    }
}
