//! Check outcomes with reproducible witnesses.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// The identity has no finite counterpart to compare against.
    NotCheckable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: String,
    pub status: Status,
    /// Number of tuples evaluated.
    pub instances: usize,
    /// First failing tuple in enumeration order.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl CheckReport {
    pub fn new(suite: impl Into<String>) -> Self {
        CheckReport {
            suite: suite.into(),
            checks: Vec::new(),
        }
    }

    /// Records one check from per-instance outcomes; `Some(w)` marks a failure.
    pub fn tally<I>(&mut self, id: impl Into<String>, outcomes: I) -> bool
    where
        I: IntoIterator<Item = Option<String>>,
    {
        let mut instances = 0;
        let mut witness = None;
        for o in outcomes {
            instances += 1;
            if witness.is_none() {
                witness = o;
            }
        }
        let ok = witness.is_none();
        self.checks.push(Check {
            id: id.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            instances,
            witness,
            note: None,
        });
        ok
    }

    /// Records a single yes/no check.
    pub fn single(&mut self, id: impl Into<String>, ok: bool, witness: impl FnOnce() -> String) -> bool {
        let w = if ok { None } else { Some(witness()) };
        self.tally(id, [w])
    }

    pub fn note_last(&mut self, note: impl Into<String>) {
        if let Some(c) = self.checks.last_mut() {
            c.note = Some(note.into());
        }
    }

    pub fn not_checkable(&mut self, id: impl Into<String>, note: impl Into<String>) {
        self.checks.push(Check {
            id: id.into(),
            status: Status::NotCheckable,
            instances: 0,
            witness: None,
            note: Some(note.into()),
        });
    }

    /// Appends another report's checks, prefixing ids with its suite name.
    pub fn absorb(&mut self, other: CheckReport) {
        for mut c in other.checks {
            c.id = format!("{}.{}", other.suite, c.id);
            self.checks.push(c);
        }
    }

    /// Folds another report's checks into same-named ones, summing instances
    /// and keeping the earliest witness.
    pub fn merge(&mut self, other: CheckReport) {
        for c in other.checks {
            match self.checks.iter_mut().find(|d| d.id == c.id) {
                Some(d) => {
                    d.instances += c.instances;
                    if d.status == Status::Pass && c.status == Status::Fail {
                        d.status = Status::Fail;
                        d.witness = c.witness;
                    }
                    if d.note.is_none() {
                        d.note = c.note;
                    }
                }
                None => self.checks.push(c),
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn get(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| c.status == Status::Fail)
    }

    pub fn status_of(&self, id: &str) -> Option<Status> {
        self.get(id).map(|c| c.status)
    }
}
