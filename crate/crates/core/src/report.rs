//! Pass/fail records produced by the verification routines.

/// Outcome of one identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    /// Equation the check exercises, e.g. `"Eq. (2.17)"`.
    pub anchor: String,
    pub passed: bool,
    /// First counterexample when `passed` is false.
    pub witness: Option<String>,
    /// Informational result that does not affect `passed`.
    pub finding: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>, anchor: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            anchor: anchor.into(),
            passed: true,
            witness: None,
            finding: None,
        }
    }

    pub fn fail(
        name: impl Into<String>,
        anchor: impl Into<String>,
        witness: impl Into<String>,
    ) -> Self {
        Check {
            passed: false,
            witness: Some(witness.into()),
            ..Check::pass(name, anchor)
        }
    }

    /// Pass when `witness` is `None`, otherwise fail with it.
    pub fn from_witness(
        name: impl Into<String>,
        anchor: impl Into<String>,
        witness: Option<String>,
    ) -> Self {
        match witness {
            None => Check::pass(name, anchor),
            Some(w) => Check::fail(name, anchor, w),
        }
    }

    pub fn with_finding(mut self, finding: impl Into<String>) -> Self {
        self.finding = Some(finding.into());
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Checklist {
    pub checks: Vec<Check>,
}

impl Checklist {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: Checklist) {
        self.checks.extend(other.checks);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// First index in `range` where `failing` reports a witness.
pub(crate) fn first_witness<I, F>(range: I, failing: F) -> Option<String>
where
    I: IntoIterator<Item = usize>,
    F: FnMut(usize) -> Option<String>,
{
    range.into_iter().find_map(failing)
}
