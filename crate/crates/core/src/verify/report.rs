//! Outcomes of individual checks and whole suites.

#[derive(Clone, Debug, PartialEq)]
pub struct Failure {
    pub identity: String,
    pub row: usize,
    pub col: usize,
    pub residual: String,
}

#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub label: String,
    pub pass: bool,
    pub headroom: u32,
    pub columns: usize,
    pub failure: Option<Failure>,
    pub error: Option<String>,
}

impl CheckOutcome {
    pub fn pass(label: &str, headroom: u32, columns: usize) -> Self {
        CheckOutcome { label: label.into(), pass: true, headroom, columns, failure: None, error: None }
    }

    pub fn fail(label: &str, headroom: u32, columns: usize, f: Failure) -> Self {
        CheckOutcome { label: label.into(), pass: false, headroom, columns, failure: Some(f), error: None }
    }

    pub fn error(label: &str, headroom: u32, msg: String) -> Self {
        CheckOutcome { label: label.into(), pass: false, headroom, columns: 0, failure: None, error: Some(msg) }
    }
}

/// Maximum number of failing checks kept in a report.
pub const MAX_FAILURES: usize = 20;

#[derive(Clone, Debug, Default)]
pub struct VerificationReport {
    pub suite: String,
    pub descriptor: String,
    pub checks: usize,
    pub passed: usize,
    pub failures: Vec<CheckOutcome>,
    pub errors: Vec<String>,
    pub max_headroom: u32,
    pub millis: u128,
}

impl VerificationReport {
    pub fn new(suite: &str, descriptor: &str) -> Self {
        VerificationReport { suite: suite.into(), descriptor: descriptor.into(), ..Default::default() }
    }

    pub fn record(&mut self, o: CheckOutcome) {
        self.checks += 1;
        self.max_headroom = self.max_headroom.max(o.headroom);
        if o.pass {
            self.passed += 1;
        } else if self.failures.len() < MAX_FAILURES {
            self.failures.push(o);
        }
    }

    /// Records a failure that is not tied to a matrix entry.
    pub fn fail(&mut self, label: &str, msg: impl Into<String>) {
        self.record(CheckOutcome::error(label, 0, msg.into()));
    }

    pub fn error(&mut self, msg: impl Into<String>) {
        self.errors.push(msg.into());
    }

    pub fn merge(&mut self, o: VerificationReport) {
        self.checks += o.checks;
        self.passed += o.passed;
        self.max_headroom = self.max_headroom.max(o.max_headroom);
        for f in o.failures {
            if self.failures.len() < MAX_FAILURES {
                self.failures.push(f);
            }
        }
        self.errors.extend(o.errors);
        self.millis += o.millis;
    }

    pub fn pass(&self) -> bool {
        self.errors.is_empty() && self.passed == self.checks && self.checks > 0
    }

    pub fn first_failure(&self) -> Option<&CheckOutcome> {
        self.failures.first()
    }

    /// One-line summary.
    pub fn summary(&self) -> String {
        let status = if self.pass() { "PASS" } else { "FAIL" };
        let mut s = format!("{status} {} [{}] {}/{} checks", self.suite, self.descriptor, self.passed, self.checks);
        if let Some(f) = self.first_failure() {
            s.push_str(&format!("; first failure: {}", f.label));
            if let Some(x) = &f.failure {
                s.push_str(&format!(" at ({},{}) residual {}", x.row, x.col, x.residual));
            }
            if let Some(e) = &f.error {
                s.push_str(&format!(" ({e})"));
            }
        }
        if let Some(e) = self.errors.first() {
            s.push_str(&format!("; error: {e}"));
        }
        s
    }
}
