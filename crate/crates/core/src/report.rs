//! Outcomes of law and theorem checks, and their JSON-lines record form.

use std::fmt;
use std::io::{self, Write};

use serde::{Deserialize, Serialize};

/// A concrete counterexample to a law.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub law: String,
    pub witness: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lhs: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rhs: Option<String>,
}

impl Failure {
    pub fn new(law: impl Into<String>, witness: impl Into<String>) -> Self {
        Failure {
            law: law.into(),
            witness: witness.into(),
            lhs: None,
            rhs: None,
        }
    }

    pub fn with_sides(mut self, lhs: impl Into<String>, rhs: impl Into<String>) -> Self {
        self.lhs = Some(lhs.into());
        self.rhs = Some(rhs.into());
        self
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} violated at {}", self.law, self.witness)?;
        if let (Some(l), Some(r)) = (&self.lhs, &self.rhs) {
            write!(f, " (lhs {l}, rhs {r})")?;
        }
        Ok(())
    }
}

impl std::error::Error for Failure {}

/// Result of checking one law over one instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Every case held; `cases` counts the individual assertions made.
    Pass { cases: u64 },
    Fail(Failure),
    /// The hypotheses of the law were not met, so nothing was asserted.
    Skip(String),
}

impl Verdict {
    pub fn pass(cases: u64) -> Self {
        Verdict::Pass { cases }
    }

    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass { .. })
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail(_))
    }

    pub fn failure(&self) -> Option<&Failure> {
        match self {
            Verdict::Fail(f) => Some(f),
            _ => None,
        }
    }

    pub fn cases(&self) -> u64 {
        match self {
            Verdict::Pass { cases } => *cases,
            _ => 0,
        }
    }

    /// Runs `next` only if `self` passed, summing the case counts.
    pub fn and_then(self, next: impl FnOnce() -> Verdict) -> Verdict {
        match self {
            Verdict::Pass { cases } => match next() {
                Verdict::Pass { cases: more } => Verdict::Pass {
                    cases: cases + more,
                },
                other => other,
            },
            other => other,
        }
    }
}

impl From<Result<u64, Failure>> for Verdict {
    fn from(r: Result<u64, Failure>) -> Self {
        match r {
            Ok(cases) => Verdict::Pass { cases },
            Err(f) => Verdict::Fail(f),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

/// One line of a sweep report: a law checked against a named instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub theorem: String,
    #[serde(rename = "instance-id")]
    pub instance: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cases: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub law: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lhs: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rhs: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    /// Seed of the sampled stream behind this record, if any.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl Report {
    pub fn new(theorem: impl Into<String>, instance: impl Into<String>, verdict: Verdict) -> Self {
        let mut r = Report {
            theorem: theorem.into(),
            instance: instance.into(),
            status: Status::Pass,
            cases: None,
            law: None,
            witness: None,
            lhs: None,
            rhs: None,
            reason: None,
            seed: None,
        };
        match verdict {
            Verdict::Pass { cases } => r.cases = Some(cases),
            Verdict::Fail(f) => {
                r.status = Status::Fail;
                r.law = Some(f.law);
                r.witness = Some(f.witness);
                r.lhs = f.lhs;
                r.rhs = f.rhs;
            }
            Verdict::Skip(reason) => {
                r.status = Status::Skip;
                r.reason = Some(reason);
            }
        }
        r
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn verdict(&self) -> Verdict {
        match self.status {
            Status::Pass => Verdict::Pass {
                cases: self.cases.unwrap_or(0),
            },
            Status::Skip => Verdict::Skip(self.reason.clone().unwrap_or_default()),
            Status::Fail => Verdict::Fail(Failure {
                law: self.law.clone().unwrap_or_default(),
                witness: self.witness.clone().unwrap_or_default(),
                lhs: self.lhs.clone(),
                rhs: self.rhs.clone(),
            }),
        }
    }
}

/// Per-theorem counts of pass/fail/skip records.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
    pub cases: u64,
}

/// All records of a sweep, ordered by (theorem, instance).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReportSet {
    pub reports: Vec<Report>,
}

impl ReportSet {
    pub fn new(mut reports: Vec<Report>) -> Self {
        reports.sort_by(|a, b| (&a.theorem, &a.instance).cmp(&(&b.theorem, &b.instance)));
        ReportSet { reports }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Report> {
        self.reports.iter().filter(|r| r.status == Status::Fail)
    }

    pub fn has_failures(&self) -> bool {
        self.failures().next().is_some()
    }

    pub fn for_theorem<'a>(&'a self, theorem: &'a str) -> impl Iterator<Item = &'a Report> + 'a {
        self.reports.iter().filter(move |r| r.theorem == theorem)
    }

    pub fn tallies(&self) -> std::collections::BTreeMap<String, Tally> {
        let mut out = std::collections::BTreeMap::<String, Tally>::new();
        for r in &self.reports {
            let t = out.entry(r.theorem.clone()).or_default();
            match r.status {
                Status::Pass => t.pass += 1,
                Status::Fail => t.fail += 1,
                Status::Skip => t.skip += 1,
            }
            t.cases += r.cases.unwrap_or(0);
        }
        out
    }

    pub fn write_json_lines<W: Write>(&self, mut w: W) -> io::Result<()> {
        for r in &self.reports {
            serde_json::to_writer(&mut w, r)?;
            w.write_all(b"\n")?;
        }
        Ok(())
    }

    pub fn read_json_lines(text: &str) -> serde_json::Result<Self> {
        let reports = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(serde_json::from_str)
            .collect::<Result<Vec<Report>, _>>()?;
        Ok(ReportSet::new(reports))
    }
}
