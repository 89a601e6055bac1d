//! Suite reports and their text and tree renderings.

use std::fmt::Write;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::check::Check;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fact {
    pub key: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Section {
    pub name: String,
    pub checks: Vec<Check>,
    pub facts: Vec<Fact>,
}

impl Section {
    pub fn new(name: impl Into<String>) -> Self {
        Section {
            name: name.into(),
            checks: Vec::new(),
            facts: Vec::new(),
        }
    }

    pub fn check(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn fact(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.facts.push(Fact {
            key: key.into(),
            value: value.into(),
        });
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty() && self.facts.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub l1: String,
    pub l2: String,
    pub class: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub source: String,
    pub suite: String,
    pub sections: Vec<Section>,
    pub classification: Option<Classification>,
}

impl Report {
    pub fn checks(&self) -> impl Iterator<Item = &Check> {
        self.sections.iter().flat_map(|s| &s.checks)
    }

    pub fn passed(&self) -> bool {
        self.checks().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks().filter(|c| !c.passed).collect()
    }

    pub fn fact(&self, key: &str) -> Option<&str> {
        self.sections
            .iter()
            .flat_map(|s| &s.facts)
            .find(|f| f.key == key)
            .map(|f| f.value.as_str())
    }

    pub fn find_check(&self, name: &str) -> Option<&Check> {
        self.checks().find(|c| c.name == name)
    }

    /// 0 when every check passes, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Tree,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(ReportFormat::Text),
            "tree" => Ok(ReportFormat::Tree),
            other => Err(Error::Format(format!("unknown report format `{other}`"))),
        }
    }
}

pub fn emit_report(r: &Report, format: ReportFormat) -> String {
    match format {
        ReportFormat::Tree => {
            let mut s = serde_json::to_string_pretty(r).expect("report serializes");
            s.push('\n');
            s
        }
        ReportFormat::Text => emit_text(r),
    }
}

/// Parses a tree rendering back into a report.
pub fn parse_tree(text: &str) -> Result<Report> {
    serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
}

fn emit_text(r: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "report for {} (suite: {})", r.source, r.suite);
    for s in &r.sections {
        let _ = writeln!(out, "\n== {} ==", s.name);
        for f in &s.facts {
            let _ = writeln!(out, "  {}: {}", f.key, f.value);
        }
        for c in &s.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "[{tag}] {}: {}  <{}>", c.name, c.detail, c.anchor);
        }
    }
    if let Some(c) = &r.classification {
        let _ = writeln!(out, "\nclassification: {} (L1 {}; L2 {})", c.class, c.l1, c.l2);
    }
    let total = r.checks().count();
    let failed = r.failures().len();
    let _ = writeln!(out, "\n{} checks, {} passed, {} failed", total, total - failed, failed);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut s = Section::new("contact");
        s.fact("xi", "d/dz");
        s.check(Check::new("eta is a contact form", "contact condition", None));
        s.check(Check::new("L1 is Legendrian", "Legendrian condition", Some("d eta(X, Y) = x".into())));
        Report {
            source: "sample".into(),
            suite: "validate".into(),
            sections: vec![s],
            classification: None,
        }
    }

    #[test]
    fn text_lines_and_tree_round_trip() {
        let r = sample();
        let text = emit_report(&r, ReportFormat::Text);
        assert!(text.contains("[PASS] eta is a contact form"));
        assert!(text.contains("[FAIL] L1 is Legendrian: d eta(X, Y) = x"));
        assert_eq!(r.exit_code(), 1);
        let tree = emit_report(&r, ReportFormat::Tree);
        assert_eq!(parse_tree(&tree).unwrap(), r);
    }
}
