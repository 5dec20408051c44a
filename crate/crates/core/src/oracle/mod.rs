//! Traced decisions of `E_pi`, `C_pi`, `D_pi` and `U_pi` for simple groups
//! of Lie type, plus the composition-factor reduction for arbitrary groups.
//!
//! Routing for `D_pi`:
//!
//! 1. `|pi ∩ pi(S)| <= 1`: yes, tagged `trivial_small_pi`.
//! 2. `2 ∈ pi`: out of scope.
//! 3. Suzuki and Ree groups: Condition IV.
//! 4. `p ∈ pi`: Condition I.
//! 5. Otherwise Condition II, then Condition III.
//!
//! `U_pi` coincides with `D_pi`; `E_pi` holds when `D_pi` does or when the
//! `E_pi \ D_pi` classifier names a case, and `C_pi = E_pi` for odd `pi`.

mod conditions;
mod epi;
mod verdict;

use std::fmt;

use serde_json::json;

pub use conditions::{check_condition_i, check_condition_ii, check_condition_iii, check_condition_iv, condition_iv_sets};
pub use epi::{classify_epi_minus_dpi, EpiSubject, ONAN_PRIMES};
pub use verdict::{Attempt, ConditionOutcome, ConditionTag, Holds, Property, Trace, TraceRecord, Verdict};

use crate::arith::{is_prime_u64, PrimeSet};
use crate::error::{Error, Result};
use crate::lie::{pi_intersection, GroupId};

fn verdict(
    g: &GroupId,
    pi: &PrimeSet,
    property: Property,
    holds: Holds,
    condition: Option<ConditionTag>,
    trace: Trace,
) -> Verdict {
    let hall_cyclic = match condition {
        Some(ConditionTag::II('g')) | Some(ConditionTag::II('h')) => Some(true),
        _ => None,
    };
    Verdict { group: g.to_string(), pi: pi.clone(), property, holds, condition, hall_cyclic, trace: trace.into_records() }
}

/// Shared prefix of every decision: the trivial case and the `2 ∈ pi` cut.
enum Gate {
    Trivial(Trace),
    OutOfScope(Trace),
    Proceed(Trace),
}

fn gate(g: &GroupId, pi: &PrimeSet) -> Gate {
    let mut t = Trace::new();
    let inter = pi_intersection(pi, g);
    let args = json!({ "pi∩pi(S)": inter });
    if inter.len() <= 1 {
        t.check("|pi∩pi(S)| <= 1", args, true);
        return Gate::Trivial(t);
    }
    t.check("|pi∩pi(S)| >= 2", args, true);
    if !t.check("2 ∉ pi", json!({ "pi": pi }), !pi.contains(2)) {
        return Gate::OutOfScope(t);
    }
    Gate::Proceed(t)
}

/// Decides `D_pi` for the simple group `g`.
pub fn decide_dpi(g: &GroupId, pi: &PrimeSet) -> Verdict {
    let mut trace = match gate(g, pi) {
        Gate::Trivial(t) => return verdict(g, pi, Property::D, Holds::Yes, Some(ConditionTag::TrivialSmallPi), t),
        Gate::OutOfScope(t) => return verdict(g, pi, Property::D, Holds::OutOfScope, None, t),
        Gate::Proceed(t) => t,
    };
    if g.family().is_suzuki_ree() {
        trace.check(
            "route: Suzuki/Ree group, Condition IV only",
            json!({ "family": g.family().symbol(), "p_in_pi": pi.contains(g.p()) }),
            true,
        );
        let out = check_condition_iv(g, pi).expect("routing guarantees preconditions");
        return finish_outcome(g, pi, trace, &out, ConditionTag::IV);
    }
    if pi.contains(g.p()) {
        trace.check("p ∈ pi", json!({ "p": g.p() }), true);
        let (ok, t) = check_condition_i(g, pi).expect("routing guarantees preconditions");
        trace.extend(t);
        let (holds, tag) = if ok { (Holds::Yes, Some(ConditionTag::I)) } else { (Holds::No, None) };
        return verdict(g, pi, Property::D, holds, tag, trace);
    }
    trace.check("p ∉ pi", json!({ "p": g.p() }), true);
    let ii = check_condition_ii(g, pi).expect("routing guarantees preconditions");
    if ii.matched.is_some() {
        return finish_outcome(g, pi, trace, &ii, ConditionTag::II);
    }
    let iii = check_condition_iii(g, pi).expect("routing guarantees preconditions");
    if iii.matched.is_some() {
        return finish_outcome(g, pi, trace, &iii, ConditionTag::III);
    }
    trace.extend(ii.full_trace());
    trace.extend(iii.full_trace());
    verdict(g, pi, Property::D, Holds::No, None, trace)
}

fn finish_outcome(
    g: &GroupId,
    pi: &PrimeSet,
    mut trace: Trace,
    out: &ConditionOutcome,
    tag: fn(char) -> ConditionTag,
) -> Verdict {
    match out.matched {
        Some(c) => {
            trace.extend(out.success_trace());
            verdict(g, pi, Property::D, Holds::Yes, Some(tag(c)), trace)
        }
        None => {
            trace.extend(out.full_trace());
            verdict(g, pi, Property::D, Holds::No, None, trace)
        }
    }
}

/// Decides `U_pi`, which agrees with `D_pi` for every finite group.
pub fn decide_upi(g: &GroupId, pi: &PrimeSet) -> Verdict {
    let mut v = decide_dpi(g, pi);
    v.property = Property::U;
    if v.holds != Holds::OutOfScope {
        v.trace.push(TraceRecord { pred: "U_pi = D_pi by main theorem".into(), args: json!({}), value: true });
    }
    v
}

/// Decides `E_pi`: `D_pi`, or membership in `E_pi \ D_pi`.
pub fn decide_epi(g: &GroupId, pi: &PrimeSet) -> Verdict {
    match gate(g, pi) {
        Gate::Trivial(t) => return verdict(g, pi, Property::E, Holds::Yes, Some(ConditionTag::TrivialSmallPi), t),
        Gate::OutOfScope(t) => return verdict(g, pi, Property::E, Holds::OutOfScope, None, t),
        Gate::Proceed(_) => {}
    }
    let d = decide_dpi(g, pi);
    let mut trace = Trace(d.trace.clone());
    if d.holds == Holds::Yes {
        trace.check("D_pi implies E_pi", json!({}), true);
        return verdict(g, pi, Property::E, Holds::Yes, d.condition, trace);
    }
    let (case, t) = classify_epi_minus_dpi(&EpiSubject::Lie(g.clone()), pi).expect("2 ∉ pi checked");
    match case {
        Some(tag) => {
            // The D_pi failure trace is kept out of a yes verdict.
            verdict(g, pi, Property::E, Holds::Yes, Some(tag), t)
        }
        None => {
            trace.extend(t);
            verdict(g, pi, Property::E, Holds::No, None, trace)
        }
    }
}

/// Decides `C_pi`, equal to `E_pi` for odd `pi`.
pub fn decide_cpi(g: &GroupId, pi: &PrimeSet) -> Verdict {
    let mut v = decide_epi(g, pi);
    v.property = Property::C;
    if v.holds != Holds::OutOfScope && v.condition != Some(ConditionTag::TrivialSmallPi) {
        v.trace.push(TraceRecord { pred: "E_pi = C_pi for 2 ∉ pi".into(), args: json!({}), value: true });
    }
    v
}

/// Dispatch on the property.
pub fn decide(g: &GroupId, pi: &PrimeSet, property: Property) -> Verdict {
    match property {
        Property::E => decide_epi(g, pi),
        Property::C => decide_cpi(g, pi),
        Property::D => decide_dpi(g, pi),
        Property::U => decide_upi(g, pi),
    }
}

/// One composition factor of a group handed to [`reduce_composition`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactorDescriptor {
    Lie(GroupId),
    Cyclic(u64),
    /// A factor known to be a pi-group.
    ExplicitPiGroup,
    /// A factor known to be a pi'-group.
    ExplicitPiPrimeGroup,
    Unsupported(String),
}

impl FactorDescriptor {
    pub fn cyclic(p: u64) -> Result<Self> {
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FactorDescriptor::Cyclic(p))
    }
}

impl fmt::Display for FactorDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorDescriptor::Lie(g) => write!(f, "{g}"),
            FactorDescriptor::Cyclic(p) => write!(f, "C{p}"),
            FactorDescriptor::ExplicitPiGroup => f.write_str("pi-group"),
            FactorDescriptor::ExplicitPiPrimeGroup => f.write_str("pi'-group"),
            FactorDescriptor::Unsupported(name) => write!(f, "{name}"),
        }
    }
}

/// Conjunction of per-factor verdicts. A `no` anywhere decides `no`;
/// otherwise an unsupported factor makes the answer out of scope.
pub fn reduce_composition(factors: &[FactorDescriptor], pi: &PrimeSet, property: Property) -> Result<Verdict> {
    let label = format!("composition[{}]", factors.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(", "));
    let mut trace = Trace::new();
    let base = |holds: Holds, trace: Trace| Verdict {
        group: label.clone(),
        pi: pi.clone(),
        property,
        holds,
        condition: None,
        hall_cyclic: None,
        trace: trace.into_records(),
    };
    match property {
        Property::C => {
            return Err(Error::Precondition("C_pi is not closed under extensions; reduce E_pi instead".into()));
        }
        Property::E if pi.contains(2) => {
            trace.check("2 ∉ pi (E_pi reduction)", json!({ "pi": pi }), false);
            return Ok(base(Holds::OutOfScope, trace));
        }
        _ => {}
    }
    if factors.is_empty() {
        trace.check("trivial group (no composition factors)", json!({}), true);
        return Ok(base(Holds::Yes, trace));
    }
    let mut any_no = false;
    let mut any_oos = false;
    for f in factors {
        let holds = match f {
            FactorDescriptor::Lie(g) => decide(g, pi, property).holds,
            FactorDescriptor::Cyclic(_) | FactorDescriptor::ExplicitPiGroup | FactorDescriptor::ExplicitPiPrimeGroup => {
                Holds::Yes
            }
            FactorDescriptor::Unsupported(_) => Holds::OutOfScope,
        };
        any_no |= holds == Holds::No;
        any_oos |= holds == Holds::OutOfScope;
        let value = holds == Holds::Yes;
        trace.check(format!("factor {f} satisfies {property}_pi"), json!({ "factor": f.to_string(), "holds": holds }), value);
    }
    let holds = if any_no {
        Holds::No
    } else if any_oos {
        Holds::OutOfScope
    } else {
        Holds::Yes
    };
    Ok(base(holds, trace))
}
