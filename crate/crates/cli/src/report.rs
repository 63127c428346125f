//! The JSON report written by `qosc run`.

use crate::config::RunConfig;
use qosc::verify::VerificationReport;
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct Report {
    pub config: RunConfig,
    pub suites: Vec<SuiteReport>,
    pub version: &'static str,
}

#[derive(Debug, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub instances: Vec<InstanceReport>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// Some identity needs more headroom than the cutoff allows.
    CutoffTooSmall,
}

#[derive(Debug, Serialize)]
pub struct InstanceReport {
    pub descriptor: String,
    pub pass: bool,
    pub status: Status,
    pub checks: usize,
    pub passed: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub needed_cutoff: Option<u32>,
    pub millis: u128,
}

#[derive(Debug, Serialize)]
pub struct Counterexample {
    pub identity: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub row: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub col: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl InstanceReport {
    pub fn from_report(rep: &VerificationReport, cutoff: u32, timings: bool) -> Self {
        let status = if rep.max_headroom > cutoff {
            Status::CutoffTooSmall
        } else if rep.pass() {
            Status::Pass
        } else {
            Status::Fail
        };
        let counterexample = match (rep.first_failure(), rep.errors.first()) {
            _ if rep.pass() => None,
            (Some(f), _) => Some(Counterexample {
                identity: f.label.clone(),
                row: f.failure.as_ref().map(|x| x.row),
                col: f.failure.as_ref().map(|x| x.col),
                residual: f.failure.as_ref().map(|x| x.residual.clone()),
                error: f.error.clone(),
            }),
            (None, Some(e)) => Some(Counterexample { identity: "setup".into(), row: None, col: None, residual: None, error: Some(e.clone()) }),
            (None, None) => Some(Counterexample { identity: "no checks ran".into(), row: None, col: None, residual: None, error: None }),
        };
        InstanceReport {
            descriptor: rep.descriptor.clone(),
            pass: status == Status::Pass,
            status,
            checks: rep.checks,
            passed: rep.passed,
            counterexample,
            needed_cutoff: (status == Status::CutoffTooSmall).then_some(rep.max_headroom),
            millis: if timings { rep.millis } else { 0 },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use qosc::verify::CheckOutcome;

    #[test]
    fn failing_report_carries_a_counterexample() {
        let mut rep = VerificationReport::new("x", "d");
        rep.record(CheckOutcome::pass("ok", 1, 3));
        rep.fail("bad", "went wrong");
        let r = InstanceReport::from_report(&rep, 3, false);
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.counterexample.as_ref().unwrap().identity, "bad");
        assert_eq!(r.millis, 0);
    }

    #[test]
    fn headroom_beyond_cutoff_is_its_own_status() {
        let mut rep = VerificationReport::new("x", "d");
        rep.record(CheckOutcome::error("deep", 4, "headroom 4 exceeds the bosonic cutoff 2".into()));
        let r = InstanceReport::from_report(&rep, 2, true);
        assert_eq!(r.status, Status::CutoffTooSmall);
        assert_eq!(r.needed_cutoff, Some(4));
    }
}
