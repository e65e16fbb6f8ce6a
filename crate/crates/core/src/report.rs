//! Pass/fail bookkeeping shared by all checks.

use std::fmt;
use std::time::{Duration, Instant};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        })
    }
}

#[derive(Clone, Debug)]
pub struct CheckEntry {
    pub name: String,
    pub status: Status,
    /// Counterexample on failure, reason when skipped.
    pub witness: Option<String>,
    pub elapsed: Duration,
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub title: String,
    pub entries: Vec<CheckEntry>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report { title: title.into(), entries: Vec::new() }
    }

    pub fn record(&mut self, name: impl Into<String>, ok: bool, witness: Option<String>) {
        self.entries.push(CheckEntry {
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            witness: if ok { None } else { witness },
            elapsed: Duration::ZERO,
        });
    }

    pub fn pass(&mut self, name: impl Into<String>) {
        self.record(name, true, None);
    }

    pub fn fail(&mut self, name: impl Into<String>, witness: impl Into<String>) {
        self.record(name, false, Some(witness.into()));
    }

    pub fn skip(&mut self, name: impl Into<String>, reason: impl Into<String>) {
        self.entries.push(CheckEntry {
            name: name.into(),
            status: Status::Skipped,
            witness: Some(reason.into()),
            elapsed: Duration::ZERO,
        });
    }

    /// Runs `f` and records its verdict with wall time.
    pub fn timed(&mut self, name: impl Into<String>, f: impl FnOnce() -> Result<(), String>) {
        let start = Instant::now();
        let r = f();
        let elapsed = start.elapsed();
        let (status, witness) = match r {
            Ok(()) => (Status::Pass, None),
            Err(w) => (Status::Fail, Some(w)),
        };
        self.entries.push(CheckEntry { name: name.into(), status, witness, elapsed });
    }

    pub fn extend(&mut self, other: Report) {
        self.entries.extend(other.entries);
    }

    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(|e| e.status != Status::Fail)
    }

    pub fn failures(&self) -> Vec<&CheckEntry> {
        self.entries.iter().filter(|e| e.status == Status::Fail).collect()
    }

    pub fn count(&self, status: Status) -> usize {
        self.entries.iter().filter(|e| e.status == status).count()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.title.is_empty() {
            writeln!(f, "== {} ==", self.title)?;
        }
        for e in &self.entries {
            write!(f, "{} {}", e.status, e.name)?;
            if let Some(w) = &e.witness {
                write!(f, ": {}", w)?;
            }
            writeln!(f)?;
        }
        writeln!(
            f,
            "{} passed, {} failed, {} skipped",
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Skipped)
        )
    }
}
