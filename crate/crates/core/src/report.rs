//! Axiom-check reports.
//!
//! Checkers visit candidate witnesses in lexicographic id order, so the first
//! witness recorded for a rule is the smallest one.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub rule: String,
    pub witness: Vec<usize>,
    pub count: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records a violation; only the first witness per rule is kept.
    pub fn push(&mut self, rule: &str, witness: &[usize]) {
        if let Some(v) = self.violations.iter_mut().find(|v| v.rule == rule) {
            v.count += 1;
            return;
        }
        self.violations.push(Violation {
            rule: rule.to_string(),
            witness: witness.to_vec(),
            count: 1,
        });
    }

    pub fn check(&mut self, ok: bool, rule: &str, witness: &[usize]) {
        if !ok {
            self.push(rule, witness);
        }
    }

    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, rule: &str) -> bool {
        self.violations.iter().any(|v| v.rule == rule)
    }

    pub fn get(&self, rule: &str) -> Option<&Violation> {
        self.violations.iter().find(|v| v.rule == rule)
    }

    pub fn rules(&self) -> Vec<&str> {
        self.violations.iter().map(|v| v.rule.as_str()).collect()
    }

    /// Merges `other`, prefixing its rule names.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for v in other.violations {
            let rule = if prefix.is_empty() {
                v.rule
            } else {
                format!("{prefix}.{}", v.rule)
            };
            match self.violations.iter_mut().find(|w| w.rule == rule) {
                Some(w) => w.count += v.count,
                None => self.violations.push(Violation { rule, ..v }),
            }
        }
    }

    pub fn into_result(self) -> crate::Result<()> {
        if self.is_ok() {
            Ok(())
        } else {
            Err(crate::Error::Invalid(self))
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{} at {:?} ({}x)", v.rule, v.witness, v.count)?;
        }
        Ok(())
    }
}
