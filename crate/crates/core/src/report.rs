//! Verification reports shared by the structural checks and the statement suite.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::forms::{Form, FormPrinter};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Verified,
    Refuted,
    NotApplicable,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Verified => "verified",
            Status::Refuted => "refuted",
            Status::NotApplicable => "not-applicable",
        }
    }
}

/// One evaluated condition inside a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool) -> Self {
        Self {
            name: name.into(),
            passed,
            detail: String::new(),
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }
}

/// A form exhibiting a failure or a strict inclusion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub label: String,
    pub form: Form,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<Form>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    /// Stable identifier, e.g. `decomp-11-bc`.
    pub id: String,
    pub statement: String,
    pub spec: String,
    pub status: Status,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub lhs: Vec<Form>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub rhs: Vec<Form>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<Witness>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub flags: BTreeMap<String, bool>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(
        id: impl Into<String>,
        statement: impl Into<String>,
        spec: impl Into<String>,
    ) -> Self {
        Self {
            id: id.into(),
            statement: statement.into(),
            spec: spec.into(),
            status: Status::Verified,
            checks: Vec::new(),
            lhs: Vec::new(),
            rhs: Vec::new(),
            witnesses: Vec::new(),
            flags: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    pub fn not_applicable(
        id: impl Into<String>,
        statement: impl Into<String>,
        spec: impl Into<String>,
        reason: impl Into<String>,
    ) -> Self {
        let mut r = Self::new(id, statement, spec);
        r.status = Status::NotApplicable;
        r.notes.push(reason.into());
        r
    }

    pub fn push_check(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn witness(&mut self, label: impl Into<String>, form: Form, residual: Option<Form>) {
        self.witnesses.push(Witness {
            label: label.into(),
            form,
            residual,
        });
    }

    /// Sets the status from the checks: verified iff all passed.
    pub fn finish(mut self) -> Self {
        if self.status != Status::NotApplicable {
            self.status = if self.checks.iter().all(|c| c.passed) {
                Status::Verified
            } else {
                Status::Refuted
            };
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Verified
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Human-readable rendering.
    pub fn render(&self, printer: FormPrinter) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "[{}] {} ({})",
            self.status.as_str(),
            self.id,
            self.spec
        );
        let _ = writeln!(out, "  {}", self.statement);
        for c in &self.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            if c.detail.is_empty() {
                let _ = writeln!(out, "  {mark} {}", c.name);
            } else {
                let _ = writeln!(out, "  {mark} {}: {}", c.name, c.detail);
            }
        }
        for (k, v) in &self.flags {
            let _ = writeln!(out, "  {k}: {}", if *v { "yes" } else { "no" });
        }
        for w in &self.witnesses {
            let _ = writeln!(out, "  witness {}: {}", w.label, printer.print(&w.form));
            if let Some(r) = &w.residual {
                let _ = writeln!(out, "    residual: {}", printer.print(r));
            }
        }
        for n in &self.notes {
            let _ = writeln!(out, "  note: {n}");
        }
        out
    }
}
