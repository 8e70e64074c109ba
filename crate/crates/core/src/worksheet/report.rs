use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Binding {
    pub name: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssertionResult {
    /// Canonical text of `lhs == rhs`.
    pub expression: String,
    /// Value of the right-hand side.
    pub expected: String,
    /// Value of the left-hand side.
    pub actual: String,
    pub pass: bool,
    pub line: usize,
}

/// Outcome of a worksheet run, in program order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvaluationReport {
    pub worksheet: String,
    pub bindings: Vec<Binding>,
    pub assertions: Vec<AssertionResult>,
    pub notes: Vec<String>,
}

impl EvaluationReport {
    pub fn all_passed(&self) -> bool {
        self.assertions.iter().all(|a| a.pass)
    }

    pub fn failures(&self) -> usize {
        self.assertions.iter().filter(|a| !a.pass).count()
    }

    /// Value bound to `name`, as displayed in the report.
    pub fn binding(&self, name: &str) -> Option<&str> {
        self.bindings.iter().find(|b| b.name == name).map(|b| b.value.as_str())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for EvaluationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "worksheet {}", self.worksheet)?;
        for b in &self.bindings {
            writeln!(f, "  {} = {}", b.name, b.value)?;
        }
        for a in &self.assertions {
            let mark = if a.pass { "ok  " } else { "FAIL" };
            write!(f, "  {mark} line {}: {}", a.line, a.expression)?;
            if !a.pass {
                write!(f, " (got {}, expected {})", a.actual, a.expected)?;
            }
            writeln!(f)?;
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        let passed = self.assertions.len() - self.failures();
        write!(f, "  {passed}/{} assertions passed", self.assertions.len())
    }
}
