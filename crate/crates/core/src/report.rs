//! Itemized check results shared by the verifiers and the command line.

use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One verified condition. `witness` carries exact data: the values that
/// were compared, or a point or interval exhibiting a failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub id: String,
    pub status: Status,
    pub witness: String,
}

impl Check {
    pub fn new(id: impl Into<String>, ok: bool, witness: impl Into<String>) -> Self {
        Check { id: id.into(), status: Status::from_bool(ok), witness: witness.into() }
    }

    pub fn skip(id: impl Into<String>, reason: impl Into<String>) -> Self {
        Check { id: id.into(), status: Status::Skip, witness: reason.into() }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CHECK {} {} {}", self.id, self.status, self.witness)
    }
}

/// Ordered check results of one run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    checks: Vec<Check>,
}

impl CheckReport {
    pub fn new() -> Self {
        CheckReport::default()
    }

    pub fn push(&mut self, c: Check) {
        debug_assert!(!self.checks.iter().any(|o| o.id == c.id), "duplicate check id {}", c.id);
        self.checks.push(c);
    }

    pub fn extend(&mut self, cs: impl IntoIterator<Item = Check>) {
        for c in cs {
            self.push(c);
        }
    }

    pub fn checks(&self) -> &[Check] {
        &self.checks
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    /// 0 when every check passed, 1 otherwise (a skipped check is not a pass).
    pub fn exit_code(&self) -> i32 {
        if self.all_pass() {
            0
        } else {
            1
        }
    }

    pub fn find(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Failure of a chain or ring axiom, or of the shape of its input.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Violation {
    #[error("need at least {needed} maps, got {got}")]
    TooFew { needed: usize, got: usize },

    #[error(transparent)]
    Input(#[from] crate::Error),

    #[error("({axiom}) fails for maps {i} and {j}: {detail}")]
    Axiom { axiom: &'static str, i: usize, j: usize, detail: String },
}

impl From<Violation> for crate::Error {
    fn from(v: Violation) -> Self {
        match v {
            Violation::Input(e) => e,
            other => crate::Error::Precondition(other.to_string()),
        }
    }
}
