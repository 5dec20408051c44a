//! Symbolic scan: no input satisfies a subcase of both Condition II and
//! Condition III, and every yes verdict carries exactly one condition tag.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::arith::{primes_up_to, PrimeSet};
use crate::lie::{pi_intersection, prime_power, Family, GroupId};
use crate::oracle::{
    check_condition_i, check_condition_ii, check_condition_iii, check_condition_iv, classify_epi_minus_dpi, decide_dpi,
    decide_upi, ConditionTag, EpiSubject, Holds,
};
use crate::par::{self, Execution};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExclusivityGrid {
    /// Largest dimension for `A` and `2A`.
    pub max_dimension: u32,
    /// Largest rank for `B`, `C`, `D` and `2D`.
    pub max_rank: u32,
    pub max_q: u64,
    /// Candidate primes are the odd primes up to this bound dividing `|S|`.
    pub max_prime: u64,
    pub subset_sizes: Vec<usize>,
}

impl Default for ExclusivityGrid {
    fn default() -> Self {
        ExclusivityGrid { max_dimension: 6, max_rank: 6, max_q: 32, max_prime: 31, subset_sizes: vec![2, 3] }
    }
}

impl ExclusivityGrid {
    /// Every simple descriptor inside the bounds, in a fixed order.
    pub fn groups(&self) -> Vec<GroupId> {
        let qs: Vec<u64> = (2..=self.max_q).filter(|&q| prime_power(q).is_some()).collect();
        let mut out = Vec::new();
        for fam in Family::ALL {
            let ns: Vec<u32> = match fam {
                Family::A | Family::A2 => (1..=self.max_dimension).collect(),
                Family::B | Family::C | Family::D | Family::D2 => (1..=self.max_rank).collect(),
                _ => vec![0],
            };
            for &n in &ns {
                for &q in &qs {
                    if let Ok(g) = GroupId::with_q(fam, n, q) {
                        out.push(g);
                    }
                }
            }
        }
        out
    }

    fn subsets(&self, g: &GroupId) -> Vec<PrimeSet> {
        let odd = PrimeSet::new(primes_up_to(self.max_prime).into_iter().filter(|&t| t > 2)).expect("primes");
        let inter = pi_intersection(&odd, g);
        self.subset_sizes.iter().flat_map(|&k| inter.subsets_of_size(k)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub group: String,
    pub pi: PrimeSet,
    pub kind: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExclusivityReport {
    pub suite: String,
    pub grid: ExclusivityGrid,
    pub groups: usize,
    pub inputs: usize,
    pub yes_verdicts: usize,
    /// Yes verdicts per condition tag.
    pub by_tag: BTreeMap<String, usize>,
    pub violations: Vec<Violation>,
}

impl ExclusivityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "suite exclusivity: {} groups, {} inputs, {} yes verdicts, {} violations\n",
            self.groups,
            self.inputs,
            self.yes_verdicts,
            self.violations.len()
        );
        for (tag, n) in &self.by_tag {
            writeln!(out, "  {tag:<18} {n}").unwrap();
        }
        for v in &self.violations {
            writeln!(out, "  VIOLATION {} {} {}: {}", v.kind, v.group, v.pi, v.detail).unwrap();
        }
        out
    }
}

struct Scanned {
    yes: Option<ConditionTag>,
    violations: Vec<Violation>,
}

fn scan_one(g: &GroupId, pi: &PrimeSet) -> Scanned {
    let mut violations = Vec::new();
    let mut flag = |kind: &str, detail: String| {
        violations.push(Violation { group: g.to_string(), pi: pi.clone(), kind: kind.into(), detail })
    };
    let d = decide_dpi(g, pi);
    let inter = pi_intersection(pi, g);
    if inter.len() <= 1 && d.condition != Some(ConditionTag::TrivialSmallPi) {
        flag("trivial_tag", format!("|pi∩pi(S)| = {} but condition {:?}", inter.len(), d.condition));
    }
    if inter.len() >= 2 {
        let mut held: Vec<String> = Vec::new();
        if g.family().is_suzuki_ree() {
            if let Some(c) = check_condition_iv(g, pi).expect("odd pi").matched {
                held.push(format!("IV({c})"));
            }
        } else if pi.contains(g.p()) {
            if check_condition_i(g, pi).expect("p in pi").0 {
                held.push("I".into());
            }
        } else {
            let ii = check_condition_ii(g, pi).expect("routing").matched;
            let iii = check_condition_iii(g, pi).expect("routing").matched;
            if let (Some(a), Some(b)) = (ii, iii) {
                flag("II_and_III", format!("II({a}) and III({b}) both hold"));
            }
            held.extend(ii.map(|c| format!("II({c})")));
            held.extend(iii.map(|c| format!("III({c})")));
        }
        match d.holds {
            Holds::Yes if held.len() != 1 || d.condition.is_none() => {
                flag("tag_count", format!("yes with conditions {held:?}, tag {:?}", d.condition));
            }
            Holds::No if !held.is_empty() => flag("tag_count", format!("no although {held:?} hold")),
            _ => {}
        }
    }
    if d.holds == Holds::Yes && !d.trace.iter().all(|r| r.value) {
        flag("trace", "yes verdict with a false predicate".into());
    }
    let u = decide_upi(g, pi);
    if u.holds != d.holds {
        flag("upi_ne_dpi", format!("U={} D={}", u.holds, d.holds));
    }
    if d.holds == Holds::Yes {
        let (case, _) = classify_epi_minus_dpi(&EpiSubject::Lie(g.clone()), pi).expect("odd pi");
        if let Some(tag) = case {
            flag("dpi_and_epi_minus_dpi", format!("D holds yet classified {tag}"));
        }
    }
    Scanned { yes: (d.holds == Holds::Yes).then_some(d.condition).flatten(), violations }
}

pub fn exclusivity_scan(grid: &ExclusivityGrid, exec: Execution) -> ExclusivityReport {
    let groups = grid.groups();
    let per_group = par::map(&groups, exec, |g| grid.subsets(g).into_iter().map(|pi| scan_one(g, &pi)).collect::<Vec<_>>());
    let mut inputs = 0;
    let mut yes_verdicts = 0;
    let mut by_tag = BTreeMap::new();
    let mut violations = Vec::new();
    for s in per_group.into_iter().flatten() {
        inputs += 1;
        if let Some(tag) = s.yes {
            yes_verdicts += 1;
            *by_tag.entry(tag.to_string()).or_insert(0) += 1;
        }
        violations.extend(s.violations);
    }
    ExclusivityReport {
        suite: "exclusivity".into(),
        grid: grid.clone(),
        groups: groups.len(),
        inputs,
        yes_verdicts,
        by_tag,
        violations,
    }
}
