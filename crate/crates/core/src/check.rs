//! Named law checks collected by the higher-level constructions.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(String),
    Skipped(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawCheck {
    pub law: String,
    pub outcome: Outcome,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Checks(pub Vec<LawCheck>);

impl Checks {
    pub fn new() -> Self {
        Checks(Vec::new())
    }

    pub fn pass(&mut self, law: impl Into<String>) {
        self.push(law, Outcome::Pass);
    }

    pub fn fail(&mut self, law: impl Into<String>, witness: impl Into<String>) {
        self.push(law, Outcome::Fail(witness.into()));
    }

    pub fn skip(&mut self, law: impl Into<String>, reason: impl Into<String>) {
        self.push(law, Outcome::Skipped(reason.into()));
    }

    pub fn push(&mut self, law: impl Into<String>, outcome: Outcome) {
        self.0.push(LawCheck {
            law: law.into(),
            outcome,
        });
    }

    /// Pass when `cond` holds, otherwise fail with the given witness.
    pub fn expect(&mut self, law: impl Into<String>, cond: bool, witness: impl FnOnce() -> String) {
        if cond {
            self.pass(law);
        } else {
            self.fail(law, witness());
        }
    }

    /// Pass on `Ok`, fail with the error's debug form.
    pub fn result<T, E: fmt::Debug>(&mut self, law: impl Into<String>, r: &Result<T, E>) {
        match r {
            Ok(_) => self.pass(law),
            Err(e) => self.fail(law, format!("{e:?}")),
        }
    }

    /// Pass when the list of problems is empty.
    pub fn empty<E: fmt::Debug>(&mut self, law: impl Into<String>, problems: &[E]) {
        match problems.first() {
            None => self.pass(law),
            Some(e) => self.fail(law, format!("{e:?}")),
        }
    }

    pub fn extend(&mut self, other: Checks) {
        self.0.extend(other.0);
    }

    pub fn all_pass(&self) -> bool {
        self.0.iter().all(|c| !matches!(c.outcome, Outcome::Fail(_)))
    }

    pub fn failures(&self) -> impl Iterator<Item = &LawCheck> {
        self.0.iter().filter(|c| matches!(c.outcome, Outcome::Fail(_)))
    }

    pub fn iter(&self) -> impl Iterator<Item = &LawCheck> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}
