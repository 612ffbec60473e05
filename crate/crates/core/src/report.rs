//! Verdicts and per-check records shared by every obstruction.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Obstructed,
    Inapplicable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Obstructed => "obstructed",
            Verdict::Inapplicable => "inapplicable",
        })
    }
}

pub const NECESSARY_ONLY: &str = "necessary, not sufficient";

/// One check inside an [`ObstructionReport`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub check: String,
    pub verdict: Verdict,
    pub certificate: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub caveat: Option<String>,
}

impl CheckRecord {
    pub fn new(check: &str, verdict: Verdict, certificate: Value) -> Self {
        Self {
            check: check.to_string(),
            verdict,
            certificate,
            caveat: None,
        }
    }

    pub fn with_caveat(mut self, caveat: impl Into<String>) -> Self {
        self.caveat = Some(caveat.into());
        self
    }
}

/// Everything the pipeline established about one input document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub input: Value,
    pub checks: Vec<CheckRecord>,
    pub summary: Verdict,
}

impl ObstructionReport {
    pub fn new(input: Value, checks: Vec<CheckRecord>) -> Self {
        let summary = if checks.iter().any(|c| c.verdict == Verdict::Obstructed) {
            Verdict::Obstructed
        } else {
            Verdict::Pass
        };
        Self {
            input,
            checks,
            summary,
        }
    }

    pub fn check(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.check == name)
    }

    pub fn obstructions(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks
            .iter()
            .filter(|c| c.verdict == Verdict::Obstructed)
    }

    pub fn to_structured(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("input: {}\n", self.input);
        for c in &self.checks {
            out.push_str(&format!("  [{:<12}] {}\n", c.verdict.to_string(), c.check));
            if let Some(caveat) = &c.caveat {
                out.push_str(&format!("      caveat: {caveat}\n"));
            }
            out.push_str(&format!("      certificate: {}\n", c.certificate));
        }
        out.push_str(&format!("summary: {}\n", self.summary));
        out
    }
}
