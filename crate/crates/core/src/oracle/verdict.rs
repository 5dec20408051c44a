use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::arith::PrimeSet;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Property {
    E,
    C,
    D,
    U,
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Property::E => "E",
            Property::C => "C",
            Property::D => "D",
            Property::U => "U",
        };
        f.write_str(s)
    }
}

impl FromStr for Property {
    type Err = Error;

    /// Accepts `E`/`epi`, `C`/`cpi`, `D`/`dpi`, `U`/`upi` in any case.
    fn from_str(s: &str) -> Result<Property> {
        match s.to_ascii_lowercase().as_str() {
            "e" | "epi" => Ok(Property::E),
            "c" | "cpi" => Ok(Property::C),
            "d" | "dpi" => Ok(Property::D),
            "u" | "upi" => Ok(Property::U),
            other => {
                Err(Error::Parse { spec: other.to_string(), reason: "unknown property (expected epi, cpi, dpi or upi)".into() })
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Holds {
    Yes,
    No,
    OutOfScope,
}

impl Holds {
    pub fn from_bool(b: bool) -> Holds {
        if b {
            Holds::Yes
        } else {
            Holds::No
        }
    }

    pub fn as_bool(self) -> Option<bool> {
        match self {
            Holds::Yes => Some(true),
            Holds::No => Some(false),
            Holds::OutOfScope => None,
        }
    }
}

impl fmt::Display for Holds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Holds::Yes => "yes",
            Holds::No => "no",
            Holds::OutOfScope => "out_of_scope",
        })
    }
}

/// Which criterion settled a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConditionTag {
    I,
    II(char),
    III(char),
    IV(char),
    TrivialSmallPi,
    EpiCase1,
    EpiCase2A,
    EpiCase2B(char),
}

impl ConditionTag {
    pub fn is_dpi_condition(self) -> bool {
        matches!(
            self,
            ConditionTag::I | ConditionTag::II(_) | ConditionTag::III(_) | ConditionTag::IV(_) | ConditionTag::TrivialSmallPi
        )
    }
}

impl fmt::Display for ConditionTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConditionTag::I => f.write_str("I"),
            ConditionTag::II(c) => write!(f, "II({c})"),
            ConditionTag::III(c) => write!(f, "III({c})"),
            ConditionTag::IV(c) => write!(f, "IV({c})"),
            ConditionTag::TrivialSmallPi => f.write_str("trivial_small_pi"),
            ConditionTag::EpiCase1 => f.write_str("epi_case_1"),
            ConditionTag::EpiCase2A => f.write_str("epi_case_2A"),
            ConditionTag::EpiCase2B(c) => write!(f, "epi_case_2B({c})"),
        }
    }
}

impl FromStr for ConditionTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse { spec: s.to_string(), reason: "unknown condition tag".into() };
        let sub = |prefix: &str| -> Option<char> {
            let inner = s.strip_prefix(prefix)?.strip_prefix('(')?.strip_suffix(')')?;
            let mut chars = inner.chars();
            let c = chars.next()?;
            chars.next().is_none().then_some(c)
        };
        Ok(match s {
            "I" => ConditionTag::I,
            "trivial_small_pi" => ConditionTag::TrivialSmallPi,
            "epi_case_1" => ConditionTag::EpiCase1,
            "epi_case_2A" => ConditionTag::EpiCase2A,
            _ => {
                if let Some(c) = sub("epi_case_2B") {
                    ConditionTag::EpiCase2B(c)
                } else if let Some(c) = sub("III") {
                    ConditionTag::III(c)
                } else if let Some(c) = sub("IV") {
                    ConditionTag::IV(c)
                } else if let Some(c) = sub("II") {
                    ConditionTag::II(c)
                } else {
                    return Err(bad());
                }
            }
        })
    }
}

impl Serialize for ConditionTag {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ConditionTag {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// One evaluated predicate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub pred: String,
    pub args: Value,
    pub value: bool,
}

/// Append-only predicate log.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Trace(pub Vec<TraceRecord>);

impl Trace {
    pub fn new() -> Self {
        Trace(Vec::new())
    }

    /// Records a predicate and hands back its value.
    pub fn check(&mut self, pred: impl Into<String>, args: Value, value: bool) -> bool {
        self.0.push(TraceRecord { pred: pred.into(), args, value });
        value
    }

    pub fn extend(&mut self, other: Trace) {
        self.0.extend(other.0);
    }

    pub fn all_true(&self) -> bool {
        self.0.iter().all(|r| r.value)
    }

    pub fn any_false(&self) -> bool {
        self.0.iter().any(|r| !r.value)
    }

    pub fn find(&self, pred: &str) -> Option<&TraceRecord> {
        self.0.iter().find(|r| r.pred == pred)
    }

    pub fn records(&self) -> &[TraceRecord] {
        &self.0
    }

    pub fn into_records(self) -> Vec<TraceRecord> {
        self.0
    }
}

/// Answer of a property decision.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub group: String,
    pub pi: PrimeSet,
    pub property: Property,
    pub holds: Holds,
    pub condition: Option<ConditionTag>,
    pub hall_cyclic: Option<bool>,
    pub trace: Vec<TraceRecord>,
}

impl Verdict {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("verdict serializes")
    }

    /// One-line human summary.
    pub fn summary(&self) -> String {
        let mut s = format!("{} {} {}: {}", self.property, self.group, self.pi, self.holds);
        if let Some(c) = self.condition {
            s.push_str(&format!(" [{c}]"));
        }
        if self.hall_cyclic == Some(true) {
            s.push_str(" (Hall subgroup cyclic)");
        }
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = self.summary();
        out.push('\n');
        for r in &self.trace {
            out.push_str(&format!("  {} {} {}\n", if r.value { "+" } else { "-" }, r.pred, r.args));
        }
        out
    }
}

/// Result of one subcase attempt inside a condition.
#[derive(Debug, Clone, PartialEq)]
pub struct Attempt {
    pub label: char,
    pub trace: Trace,
    pub ok: bool,
}

/// Outcome of checking one condition: the premise records, every subcase
/// attempted (in listing order), and the first subcase that held.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionOutcome {
    pub premise: Trace,
    pub attempts: Vec<Attempt>,
    pub matched: Option<char>,
}

impl ConditionOutcome {
    pub(crate) fn premise_failed(premise: Trace) -> Self {
        ConditionOutcome { premise, attempts: Vec::new(), matched: None }
    }

    pub(crate) fn from_attempts(premise: Trace, attempts: Vec<Attempt>) -> Self {
        let matched = attempts.iter().find(|a| a.ok).map(|a| a.label);
        ConditionOutcome { premise, attempts, matched }
    }

    /// Premise plus only the matching subcase's records.
    pub fn success_trace(&self) -> Trace {
        let mut t = self.premise.clone();
        if let Some(a) = self.attempts.iter().find(|a| a.ok) {
            t.extend(a.trace.clone());
        }
        t
    }

    /// Premise plus every attempted subcase.
    pub fn full_trace(&self) -> Trace {
        let mut t = self.premise.clone();
        for a in &self.attempts {
            t.extend(a.trace.clone());
        }
        t
    }
}
