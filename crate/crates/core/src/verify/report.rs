use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::arith::PrimeSet;
use crate::oracle::Holds;

/// One comparison inside a case.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRow {
    pub name: String,
    pub oracle: Option<Holds>,
    pub brute: Option<bool>,
    pub ok: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckRow {
    pub fn against_oracle(name: &str, oracle: Holds, brute: bool) -> CheckRow {
        CheckRow { name: name.into(), oracle: Some(oracle), brute: Some(brute), ok: oracle.as_bool() == Some(brute), note: None }
    }

    pub fn invariant(name: &str, ok: bool, note: Option<String>) -> CheckRow {
        CheckRow { name: name.into(), oracle: None, brute: None, ok, note }
    }

    fn cell(&self) -> String {
        let mut s = self.name.clone();
        match (self.oracle, self.brute) {
            (Some(o), Some(b)) => write!(s, "={o}/{}", if b { "yes" } else { "no" }).unwrap(),
            (None, Some(b)) => write!(s, "={}", if b { "yes" } else { "no" }).unwrap(),
            _ => {}
        }
        if !self.ok {
            s.push('!');
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseResult {
    pub group: String,
    pub perm: String,
    pub pi: PrimeSet,
    pub rows: Vec<CheckRow>,
    pub agree: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<f64>,
}

/// A case not compared, with the reason.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ListedCase {
    pub group: String,
    pub pi: PrimeSet,
    pub reason: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub cases: usize,
    pub agree: usize,
    pub disagree: usize,
    pub out_of_scope: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossCheckReport {
    pub suite: String,
    pub cases: Vec<CaseResult>,
    pub out_of_scope: Vec<ListedCase>,
    pub skipped: Vec<ListedCase>,
    pub summary: Summary,
}

impl CrossCheckReport {
    pub fn new(suite: &str, cases: Vec<CaseResult>, out_of_scope: Vec<ListedCase>, skipped: Vec<ListedCase>) -> Self {
        let agree = cases.iter().filter(|c| c.agree).count();
        let summary = Summary {
            cases: cases.len(),
            agree,
            disagree: cases.len() - agree,
            out_of_scope: out_of_scope.len(),
            skipped: skipped.len(),
        };
        CrossCheckReport { suite: suite.into(), cases, out_of_scope, skipped, summary }
    }

    pub fn passed(&self) -> bool {
        self.summary.disagree == 0
    }

    pub fn disagreements(&self) -> impl Iterator<Item = &CaseResult> {
        self.cases.iter().filter(|c| !c.agree)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let s = &self.summary;
        let mut out = format!(
            "suite {}: {} cases, {} agree, {} disagree, {} out_of_scope, {} skipped\n",
            self.suite, s.cases, s.agree, s.disagree, s.out_of_scope, s.skipped
        );
        for c in &self.cases {
            let cells: Vec<String> = c.rows.iter().map(CheckRow::cell).collect();
            let time = c.runtime_ms.map(|t| format!(" {t:.1}ms")).unwrap_or_default();
            writeln!(
                out,
                "  {:<10} {:<8} {:<10} {:<8} {}{}",
                c.group,
                c.perm,
                c.pi.to_string(),
                if c.agree { "AGREE" } else { "DISAGREE" },
                cells.join(" "),
                time
            )
            .unwrap();
        }
        for c in &self.out_of_scope {
            writeln!(out, "  {:<10} {:<8} {:<10} OUT_OF_SCOPE {}", c.group, "", c.pi.to_string(), c.reason).unwrap();
        }
        for c in &self.skipped {
            writeln!(out, "  {:<10} {:<8} {:<10} SKIPPED {}", c.group, "", c.pi.to_string(), c.reason).unwrap();
        }
        out
    }
}
