//! Pass/fail records shared by every verification routine.

use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        })
    }
}

/// One verified identity together with the window it was checked on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub window: String,
    pub counterexample: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>, window: impl Into<String>) -> Self {
        Check { name: name.into(), status: Status::Pass, window: window.into(), counterexample: None }
    }

    pub fn fail(name: impl Into<String>, window: impl Into<String>, counterexample: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: Status::Fail,
            window: window.into(),
            counterexample: Some(counterexample.into()),
        }
    }

    /// Passes iff `failures` is empty; otherwise keeps the first failure
    /// verbatim and the total count.
    pub fn from_failures(name: impl Into<String>, window: impl Into<String>, failures: Vec<String>) -> Self {
        match failures.len() {
            0 => Check::pass(name, window),
            1 => Check::fail(name, window, failures.into_iter().next().unwrap()),
            k => Check::fail(name, window, format!("{} (first of {k} failures)", failures[0])),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: ValidationReport) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }
}
