//! Outcomes of identity checks: a named condition, whether it holds, and
//! the first failing basis tuple with its residual when it does not.

use serde_json::{json, Value};

use crate::exactla::{is_zero_vector, render_rational, Vector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub tuple: Vec<usize>,
    pub residual: Vector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            holds: true,
            witness: None,
        }
    }

    pub fn fail(name: impl Into<String>, tuple: Vec<usize>, residual: Vector) -> Self {
        Self {
            name: name.into(),
            holds: false,
            witness: Some(Witness { tuple, residual }),
        }
    }

    pub fn from_bool(name: impl Into<String>, holds: bool) -> Self {
        Self {
            name: name.into(),
            holds,
            witness: None,
        }
    }

    /// Scans residuals in iteration order and keeps the first nonzero one.
    pub fn from_residuals<I>(name: impl Into<String>, residuals: I) -> Self
    where
        I: IntoIterator<Item = (Vec<usize>, Vector)>,
    {
        let name = name.into();
        for (tuple, residual) in residuals {
            if !is_zero_vector(&residual) {
                return Self::fail(name, tuple, residual);
            }
        }
        Self::pass(name)
    }

    pub fn to_json(&self) -> Value {
        let mut obj = json!({ "name": self.name, "holds": self.holds });
        if let Some(w) = &self.witness {
            obj["witness"] = json!({
                "tuple": w.tuple,
                "residual": w.residual.iter().map(render_rational).collect::<Vec<_>>(),
            });
        }
        obj
    }
}

/// A conjunction of named checks.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Verdict {
    pub checks: Vec<Check>,
}

impl Verdict {
    pub fn new(checks: Vec<Check>) -> Self {
        Self { checks }
    }

    pub fn holds(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.holds)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: Verdict) {
        self.checks.extend(other.checks);
    }

    /// Prefixes every check name, for nesting sub-verdicts in a report.
    pub fn prefixed(mut self, prefix: &str) -> Self {
        for c in &mut self.checks {
            c.name = format!("{prefix}{}", c.name);
        }
        self
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.checks.iter().map(Check::to_json).collect())
    }
}
