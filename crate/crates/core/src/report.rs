//! Identity records shared by every verification step.

use std::fmt;

use serde::Serialize;

use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
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

/// One checked identity: `lhs` is what was computed, `rhs` what it must be.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Record {
    pub id: String,
    /// The statement being checked, in words.
    pub anchor: String,
    pub status: Status,
    pub lhs: String,
    pub rhs: String,
}

impl Record {
    pub fn check(
        id: impl Into<String>,
        anchor: impl Into<String>,
        ok: bool,
        lhs: impl fmt::Display,
        rhs: impl fmt::Display,
    ) -> Record {
        Record {
            id: id.into(),
            anchor: anchor.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        }
    }

    pub fn compare<T: PartialEq + fmt::Display>(
        id: impl Into<String>,
        anchor: impl Into<String>,
        lhs: &T,
        rhs: &T,
    ) -> Record {
        Record::check(id, anchor, lhs == rhs, lhs, rhs)
    }

    /// A step that could not be evaluated at all.
    pub fn error(id: impl Into<String>, anchor: impl Into<String>, err: &Error) -> Record {
        Record::check(id, anchor, false, format!("error: {err}"), "a value")
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

impl fmt::Display for Record {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}: {} == {}", self.status, self.id, self.lhs, self.rhs)
    }
}

/// An ordered list of records.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub records: Vec<Record>,
}

impl Report {
    pub fn push(&mut self, r: Record) {
        self.records.push(r);
    }

    pub fn extend(&mut self, other: Report) {
        self.records.extend(other.records);
    }

    pub fn passed(&self) -> bool {
        self.records.iter().all(Record::passed)
    }

    pub fn first_failure(&self) -> Option<&Record> {
        self.records.iter().find(|r| !r.passed())
    }

    pub fn get(&self, id: &str) -> Option<&Record> {
        self.records.iter().find(|r| r.id == id)
    }

    pub fn status(&self) -> Status {
        if self.passed() {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

/// Helper for displaying slices as `(a,b,c)`.
pub(crate) struct Tuple<'a, T>(pub &'a [T]);

impl<T: fmt::Display> fmt::Display for Tuple<'_, T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}
