use std::fmt;

use serde::{Deserialize, Serialize};

use crate::model::Vector;
use crate::scalar::Scalar;

/// Offending inputs kept per report.
pub const MAX_WITNESS_POINTS: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// Not enough usable samples to decide.
    Inconclusive,
}

impl CheckStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Pass => "pass",
            Self::Fail => "fail",
            Self::Inconclusive => "inconclusive",
        }
    }
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of one property check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub status: CheckStatus,
    pub samples: usize,
    pub max_violation: f64,
    pub tolerance: f64,
    pub witness_points: Vec<Vec<f64>>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == CheckStatus::Fail
    }
}

/// Running maximum of a violation measure over samples visited in a fixed order.
#[derive(Debug, Clone)]
pub(crate) struct Tally {
    name: String,
    tolerance: f64,
    samples: usize,
    max_violation: f64,
    witness_points: Vec<Vec<f64>>,
    inconclusive: bool,
}

impl Tally {
    pub fn new(name: impl Into<String>, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            tolerance,
            samples: 0,
            max_violation: 0.0,
            witness_points: Vec::new(),
            inconclusive: false,
        }
    }

    /// Records one sample. NaN violations count as infinitely bad.
    pub fn record<T: Scalar>(&mut self, x: &Vector<T>, violation: f64) {
        self.samples += 1;
        let v = if violation.is_nan() { f64::INFINITY } else { violation };
        if v > self.max_violation {
            self.max_violation = v;
        }
        if v > self.tolerance && self.witness_points.len() < MAX_WITNESS_POINTS {
            self.witness_points.push(x.to_f64());
        }
    }

    /// Adds one to the violation count when `bad`.
    pub fn count<T: Scalar>(&mut self, x: &Vector<T>, bad: bool) {
        self.samples += 1;
        if bad {
            self.max_violation += 1.0;
            if self.witness_points.len() < MAX_WITNESS_POINTS {
                self.witness_points.push(x.to_f64());
            }
        }
    }

    pub fn add_samples(&mut self, n: usize) {
        self.samples += n;
    }

    pub fn mark_inconclusive(&mut self) {
        self.inconclusive = true;
    }

    pub fn finish(self) -> CheckReport {
        let status = if self.max_violation.is_nan() || self.max_violation > self.tolerance {
            CheckStatus::Fail
        } else if self.inconclusive {
            CheckStatus::Inconclusive
        } else {
            CheckStatus::Pass
        };
        CheckReport {
            check: self.name,
            status,
            samples: self.samples,
            // JSON has no infinity
            max_violation: if self.max_violation.is_finite() { self.max_violation } else { f64::MAX },
            tolerance: self.tolerance,
            witness_points: self.witness_points,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_follows_tolerance() {
        let x = Vector::new(vec![1.0_f64]).unwrap();
        let mut t = Tally::new("t", 0.5);
        t.record(&x, 0.5);
        assert_eq!(t.clone().finish().status, CheckStatus::Pass);
        t.record(&x, 0.75);
        let r = t.finish();
        assert_eq!(r.status, CheckStatus::Fail);
        assert_eq!(r.witness_points, vec![vec![1.0]]);
        assert_eq!(r.samples, 2);
    }

    #[test]
    fn nan_is_a_failure_and_serializes_finitely() {
        let x = Vector::new(vec![0.0_f64]).unwrap();
        let mut t = Tally::new("nan", 1.0);
        t.record(&x, f64::NAN);
        let r = t.finish();
        assert!(r.failed());
        assert_eq!(r.max_violation, f64::MAX);
        let back: CheckReport = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn witness_points_are_capped() {
        let mut t = Tally::new("cap", 0.0);
        for i in 0..50 {
            t.count(&Vector::new(vec![i as f64]).unwrap(), true);
        }
        let r = t.finish();
        assert_eq!(r.witness_points.len(), MAX_WITNESS_POINTS);
        assert_eq!(r.max_violation, 50.0);
    }

    #[test]
    fn inconclusive_only_without_violations() {
        let x = Vector::new(vec![0.0_f64]).unwrap();
        let mut t = Tally::new("thin", 1.0);
        t.mark_inconclusive();
        assert_eq!(t.clone().finish().status, CheckStatus::Inconclusive);
        t.record(&x, 2.0);
        assert_eq!(t.finish().status, CheckStatus::Fail);
    }

    #[test]
    fn json_field_names() {
        let r = Tally::new("retraction_identity", 1e-12).finish();
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(
            s,
            r#"{"check":"retraction_identity","status":"pass","samples":0,"max_violation":0.0,"tolerance":1e-12,"witness_points":[]}"#
        );
    }
}
