//! Verdicts and witnesses shared by every scan in the crate.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::group::GroupElement;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    /// Conjunction: any failure wins, then any inconclusive result.
    pub fn and(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (Fail, _) | (_, Fail) => Fail,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            _ => Pass,
        }
    }

    pub fn is_pass(self) -> bool {
        self == Verdict::Pass
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

/// Concrete data that lets a reader replay a verdict: named group elements
/// plus exact values rendered as strings.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub elements: BTreeMap<String, GroupElement>,
    pub values: BTreeMap<String, String>,
}

impl Witness {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn element(mut self, name: &str, g: &GroupElement) -> Self {
        self.elements.insert(name.to_string(), g.clone());
        self
    }

    pub fn value(mut self, name: &str, v: impl fmt::Display) -> Self {
        self.values.insert(name.to_string(), v.to_string());
        self
    }

    pub fn get(&self, name: &str) -> Option<&GroupElement> {
        self.elements.get(name)
    }
}

/// One clause of a check, e.g. "associativity" inside group validation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Clause {
    pub name: String,
    pub verdict: Verdict,
    /// Number of instances examined.
    pub checked: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

impl Clause {
    pub fn pass(name: &str, checked: u64) -> Self {
        Clause {
            name: name.to_string(),
            verdict: Verdict::Pass,
            checked,
            witness: None,
            note: None,
        }
    }

    pub fn fail(name: &str, checked: u64, witness: Witness) -> Self {
        Clause {
            name: name.to_string(),
            verdict: Verdict::Fail,
            checked,
            witness: Some(witness),
            note: None,
        }
    }

    /// Pass when `witness` is `None`, fail with it otherwise.
    pub fn from_witness(name: &str, checked: u64, witness: Option<Witness>) -> Self {
        match witness {
            None => Self::pass(name, checked),
            Some(w) => Self::fail(name, checked, w),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn with_witness(mut self, witness: Witness) -> Self {
        self.witness = Some(witness);
        self
    }
}

/// Result of one named check, relative to a ball radius where relevant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ball_radius: Option<u32>,
    pub clauses: Vec<Clause>,
}

impl CheckReport {
    pub fn new(check: &str, ball_radius: Option<u32>) -> Self {
        CheckReport {
            check: check.to_string(),
            ball_radius,
            clauses: Vec::new(),
        }
    }

    pub fn push(&mut self, clause: Clause) {
        self.clauses.push(clause);
    }

    pub fn with(mut self, clause: Clause) -> Self {
        self.clauses.push(clause);
        self
    }

    pub fn verdict(&self) -> Verdict {
        self.clauses
            .iter()
            .fold(Verdict::Pass, |acc, c| acc.and(c.verdict))
    }

    pub fn clause(&self, name: &str) -> Option<&Clause> {
        self.clauses.iter().find(|c| c.name == name)
    }

    /// The first failing clause's witness, if any.
    pub fn first_witness(&self) -> Option<&Witness> {
        self.clauses
            .iter()
            .filter(|c| c.verdict == Verdict::Fail)
            .find_map(|c| c.witness.as_ref())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_conjunction() {
        use Verdict::*;
        assert_eq!(Pass.and(Pass), Pass);
        assert_eq!(Pass.and(Inconclusive), Inconclusive);
        assert_eq!(Inconclusive.and(Fail), Fail);
        let r = CheckReport::new("x", Some(2))
            .with(Clause::pass("a", 3))
            .with(Clause::fail("b", 1, Witness::new().value("k", 2)));
        assert_eq!(r.verdict(), Fail);
        assert_eq!(r.first_witness().unwrap().values["k"], "2");
    }
}
