//! Machine-readable check reports.

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Case {
    pub label: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CheckReport {
    pub check: String,
    pub cases: Vec<Case>,
    pub pass: bool,
}

impl CheckReport {
    pub fn new(check: impl Into<String>) -> Self {
        CheckReport {
            check: check.into(),
            cases: Vec::new(),
            pass: true,
        }
    }

    pub fn push(&mut self, label: impl Into<String>, pass: bool) {
        self.push_with(label, pass, None);
    }

    pub fn push_with(&mut self, label: impl Into<String>, pass: bool, counterexample: Option<Value>) {
        self.pass &= pass;
        self.cases.push(Case {
            label: label.into(),
            pass,
            counterexample: if pass { None } else { counterexample },
        });
    }

    pub fn merge(&mut self, other: CheckReport) {
        for c in other.cases {
            self.push_with(format!("{}: {}", other.check, c.label), c.pass, c.counterexample);
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Case> {
        self.cases.iter().filter(|c| !c.pass)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_requires_every_case() {
        let mut r = CheckReport::new("demo");
        assert!(r.pass);
        r.push("a", true);
        r.push_with("b", false, Some(Value::from(3)));
        assert!(!r.pass);
        assert_eq!(r.failures().count(), 1);
        let js = serde_json::to_value(&r).unwrap();
        assert_eq!(js["check"], "demo");
        assert!(js["cases"][0].get("counterexample").is_none());
        assert_eq!(js["cases"][1]["counterexample"], 3);
    }
}
