//! Check records and their human and JSON renderings.

use bspec_core::{Checks, Outcome};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Record {
    pub suite: String,
    pub subject: String,
    pub law: String,
    pub status: Status,
    /// Failure witness or skip reason.
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub records: Vec<Record>,
}

#[derive(Serialize)]
struct Json<'a> {
    schema: u32,
    checks: &'a [Record],
    summary: Summary,
}

impl Report {
    pub fn push(&mut self, suite: &str, subject: &str, law: &str, outcome: &Outcome) {
        let (status, witness) = match outcome {
            Outcome::Pass => (Status::Pass, None),
            Outcome::Fail(w) => (Status::Fail, Some(w.clone())),
            Outcome::Skipped(w) => (Status::Skipped, Some(w.clone())),
        };
        self.records.push(Record {
            suite: suite.into(),
            subject: subject.into(),
            law: law.into(),
            status,
            witness,
        });
    }

    pub fn pass(&mut self, suite: &str, subject: &str, law: &str) {
        self.push(suite, subject, law, &Outcome::Pass);
    }

    pub fn fail(&mut self, suite: &str, subject: &str, law: &str, witness: impl Into<String>) {
        self.push(suite, subject, law, &Outcome::Fail(witness.into()));
    }

    /// Appends checks, prefixing each law with `prefix` when non-empty.
    pub fn extend(&mut self, suite: &str, subject: &str, prefix: &str, checks: &Checks) {
        for c in checks.iter() {
            let law = if prefix.is_empty() {
                c.law.clone()
            } else {
                format!("{prefix}: {}", c.law)
            };
            self.push(suite, subject, &law, &c.outcome);
        }
    }

    pub fn summary(&self) -> Summary {
        let mut s = Summary::default();
        for r in &self.records {
            match r.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::Skipped => s.skipped += 1,
            }
        }
        s
    }

    pub fn has_failures(&self) -> bool {
        self.records.iter().any(|r| r.status == Status::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&Json {
            schema: 1,
            checks: &self.records,
            summary: self.summary(),
        })
        .expect("records serialize")
    }

    /// One line per law, then a summary line.
    pub fn to_human(&self, color: bool) -> String {
        let paint = |code: &str, s: &str| {
            if color {
                format!("\x1b[{code}m{s}\x1b[0m")
            } else {
                s.to_string()
            }
        };
        let mut out = String::new();
        for r in &self.records {
            let tag = match r.status {
                Status::Pass => paint("32", "PASS"),
                Status::Fail => paint("31", "FAIL"),
                Status::Skipped => paint("33", "SKIP"),
            };
            out.push_str(&format!("{tag}  [{}] {}: {}", r.suite, r.subject, r.law));
            if let Some(w) = &r.witness {
                out.push_str(&format!(" ({w})"));
            }
            out.push('\n');
        }
        let s = self.summary();
        out.push_str(&format!(
            "{} passed, {} failed, {} skipped\n",
            s.pass, s.fail, s.skipped
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report_json() {
        assert_eq!(
            Report::default().to_json(),
            r#"{"schema":1,"checks":[],"summary":{"pass":0,"fail":0,"skipped":0}}"#
        );
    }

    #[test]
    fn failing_law_carries_its_witness() {
        let mut r = Report::default();
        r.fail("default", "S", "transitive", "(0, 1, 2)");
        assert_eq!(
            r.to_json(),
            r#"{"schema":1,"checks":[{"suite":"default","subject":"S","law":"transitive","status":"fail","witness":"(0, 1, 2)"}],"summary":{"pass":0,"fail":1,"skipped":0}}"#
        );
        assert!(r.has_failures());
        assert!(r
            .to_human(false)
            .starts_with("FAIL  [default] S: transitive ((0, 1, 2))"));
        assert!(r.to_human(true).contains("\x1b[31mFAIL"));
    }
}
