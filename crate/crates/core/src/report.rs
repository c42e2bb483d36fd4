//! Check records and suite reports.

use std::fmt::{self, Display};

use serde::Serialize;

use crate::algebra::AlgebraElement;
use crate::calculus::{Form, Tensor};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Serialize, Clone, Copy, Debug, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Reported,
    Error,
}

impl Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Reported => "REPORTED",
            Status::Error => "ERROR",
        })
    }
}

/// One verified identity.
#[derive(Serialize, Clone, Debug, PartialEq)]
pub struct Check {
    pub check_id: String,
    /// Short name of the identity under test.
    pub paper_eq: String,
    pub status: Status,
    pub lhs: String,
    pub rhs: String,
    pub defect: String,
}

/// Values that can be compared exactly and subtracted.
pub trait Exact: Display + Sized {
    fn minus(&self, o: &Self) -> Result<Self>;
    fn vanishes(&self) -> bool;
}

impl Exact for Scalar {
    fn minus(&self, o: &Self) -> Result<Self> {
        Ok(self - o)
    }
    fn vanishes(&self) -> bool {
        self.is_zero()
    }
}

impl Exact for AlgebraElement {
    fn minus(&self, o: &Self) -> Result<Self> {
        self.try_sub(o)
    }
    fn vanishes(&self) -> bool {
        self.is_zero()
    }
}

impl Exact for Form {
    fn minus(&self, o: &Self) -> Result<Self> {
        self.try_sub(o)
    }
    fn vanishes(&self) -> bool {
        self.is_zero()
    }
}

impl Exact for Tensor {
    fn minus(&self, o: &Self) -> Result<Self> {
        self.try_sub(o)
    }
    fn vanishes(&self) -> bool {
        self.is_zero()
    }
}

impl Check {
    pub fn new(id: &str, eq: &str, status: Status, lhs: String, rhs: String, defect: String) -> Check {
        Check { check_id: id.to_string(), paper_eq: eq.to_string(), status, lhs, rhs, defect }
    }

    /// Pass iff `lhs == rhs` exactly; the defect is `lhs − rhs`.
    pub fn equal<T: Exact>(id: &str, eq: &str, lhs: &T, rhs: &T) -> Check {
        match lhs.minus(rhs) {
            Ok(d) => {
                let status = if d.vanishes() { Status::Pass } else { Status::Fail };
                Check::new(id, eq, status, lhs.to_string(), rhs.to_string(), d.to_string())
            }
            Err(e) => Check::error(id, eq, &e),
        }
    }

    /// Pass iff `value` is zero.
    pub fn zero<T: Exact>(id: &str, eq: &str, value: &T) -> Check {
        let status = if value.vanishes() { Status::Pass } else { Status::Fail };
        Check::new(id, eq, status, value.to_string(), "0".into(), value.to_string())
    }

    /// Pass iff `value` is nonzero.
    pub fn nonzero<T: Exact>(id: &str, eq: &str, value: &T) -> Check {
        let status = if value.vanishes() { Status::Fail } else { Status::Pass };
        Check::new(id, eq, status, value.to_string(), "nonzero".into(), value.to_string())
    }

    pub fn truth(id: &str, eq: &str, ok: bool, lhs: impl Display, rhs: impl Display) -> Check {
        let status = if ok { Status::Pass } else { Status::Fail };
        let defect = if ok { "0".to_string() } else { "mismatch".to_string() };
        Check::new(id, eq, status, lhs.to_string(), rhs.to_string(), defect)
    }

    pub fn reported(id: &str, eq: &str, lhs: impl Display, rhs: impl Display, defect: impl Display) -> Check {
        Check::new(id, eq, Status::Reported, lhs.to_string(), rhs.to_string(), defect.to_string())
    }

    pub fn error(id: &str, eq: &str, err: &Error) -> Check {
        Check::new(id, eq, Status::Error, String::new(), String::new(), err.to_string())
    }

    /// Unwrap a fallible check, recording errors as `error` records.
    pub fn guard(id: &str, eq: &str, r: Result<Check>) -> Check {
        r.unwrap_or_else(|e| Check::error(id, eq, &e))
    }

    pub fn is_ok(&self) -> bool {
        matches!(self.status, Status::Pass | Status::Reported)
    }
}

/// A suite's records sorted by `check_id`, with tallies.
#[derive(Serialize, Clone, Debug, PartialEq)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
    pub passed: usize,
    pub failed: usize,
    pub reported: usize,
}

impl Report {
    pub fn new(suite: &str, mut checks: Vec<Check>) -> Report {
        checks.sort_by(|a, b| a.check_id.cmp(&b.check_id));
        let count = |f: fn(&Status) -> bool| checks.iter().filter(|c| f(&c.status)).count();
        Report {
            suite: suite.to_string(),
            passed: count(|s| *s == Status::Pass),
            failed: count(|s| matches!(s, Status::Fail | Status::Error)),
            reported: count(|s| *s == Status::Reported),
            checks,
        }
    }

    pub fn all_ok(&self) -> bool {
        self.failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!("[{}] {} ({})\n", c.status, c.check_id, c.paper_eq));
            if !matches!(c.status, Status::Pass) {
                out.push_str(&format!("    lhs: {}\n    rhs: {}\n    defect: {}\n", c.lhs, c.rhs, c.defect));
            }
        }
        out.push_str(&format!(
            "{}: {} passed, {} failed, {} reported\n",
            self.suite, self.passed, self.failed, self.reported
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_suite_json() {
        assert_eq!(
            Report::new("x", vec![]).to_json(),
            r#"{"suite":"x","checks":[],"passed":0,"failed":0,"reported":0}"#
        );
    }

    #[test]
    fn tallies() {
        let checks = vec![
            Check::zero("b", "one", &Scalar::zero()),
            Check::zero("a", "two", &Scalar::one()),
            Check::reported("c", "three", "l", "r", "d"),
            Check::error("d", "four", &Error::Other("boom".into())),
        ];
        let r = Report::new("s", checks);
        assert_eq!((r.passed, r.failed, r.reported), (1, 2, 1));
        assert_eq!(r.checks[0].check_id, "a");
        assert!(r.to_text().starts_with("[FAIL] a (two)"));
    }
}
