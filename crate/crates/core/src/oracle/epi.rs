//! Classification of simple groups in `E_pi \ D_pi` for `2 ∉ pi`.

use num_traits::Zero;
use serde_json::json;

use super::conditions::Setting;
use super::verdict::{Attempt, ConditionOutcome, ConditionTag, Trace};
use crate::arith::PrimeSet;
use crate::error::{Error, Result};
use crate::lie::{pi_intersection, weyl_order, Family, GroupId};

/// One row of the exceptional subcases.
type ExceptionalCase = (char, Family, &'static str, u8, &'static [u64], &'static [u64]);

/// Subject of the classification: a group of Lie type, or the sporadic
/// O'Nan group (the only non-Lie entry of the list).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EpiSubject {
    Lie(GroupId),
    ONan,
}

/// Prime divisors of `|O'N| = 2^9 3^4 5 7^3 11 19 31`.
pub const ONAN_PRIMES: [u64; 7] = [2, 3, 5, 7, 11, 19, 31];

/// Names the matching case, or `None`. The trace holds only the matched
/// case's predicates on success, and every attempted case otherwise.
pub fn classify_epi_minus_dpi(subject: &EpiSubject, pi: &PrimeSet) -> Result<(Option<ConditionTag>, Trace)> {
    if pi.contains(2) {
        return Err(Error::Precondition("2 must not lie in pi".into()));
    }
    match subject {
        EpiSubject::ONan => {
            let inter = pi.filter(|t| ONAN_PRIMES.contains(&t));
            let mut t = Trace::new();
            let ok = t.check("G = O'N and pi∩pi(G) = {3,5}", json!({ "pi∩pi(G)": inter }), inter.as_slice() == [3, 5]);
            Ok((ok.then_some(ConditionTag::EpiCase1), t))
        }
        EpiSubject::Lie(g) => Ok(classify_lie(g, pi)),
    }
}

fn classify_lie(g: &GroupId, pi: &PrimeSet) -> (Option<ConditionTag>, Trace) {
    let mut head = Trace::new();
    let inter = pi_intersection(pi, g);
    if !head.check("|pi∩pi(G)| >= 2", json!({ "pi∩pi(G)": inter }), inter.len() >= 2) {
        return (None, head);
    }
    if pi.contains(g.p()) {
        head.check("p ∈ pi", json!({ "p": g.p() }), true);
        let mut t = Trace::new();
        let p = g.p();
        let weyl = weyl_order(g);
        let q_minus_one = g.q() - 1u32;
        let rest = inter.without(p);
        let a = t.check("p divides |W(G)|", json!({ "p": p, "|W(G)|": weyl.to_string() }), (&weyl % p).is_zero());
        let b = t.check(
            "every t in (pi∩pi(G))\\{p} divides q-1",
            json!({ "t": rest, "q-1": q_minus_one.to_string() }),
            rest.iter().all(|s| (&q_minus_one % s).is_zero()),
        );
        let c = t.check(
            "no t in (pi∩pi(G))\\{p} divides |W(G)|",
            json!({ "t": rest, "|W(G)|": weyl.to_string() }),
            rest.iter().all(|s| !(&weyl % s).is_zero()),
        );
        head.extend(t);
        return ((a && b && c).then_some(ConditionTag::EpiCase2A), head);
    }
    head.check("p ∉ pi", json!({ "p": g.p() }), true);
    let outcome = case_2b(g, pi);
    let tag = outcome.matched.map(ConditionTag::EpiCase2B);
    let mut trace = head;
    trace.extend(if tag.is_some() { outcome.success_trace() } else { outcome.full_trace() });
    (tag, trace)
}

fn case_2b(g: &GroupId, pi: &PrimeSet) -> ConditionOutcome {
    let s = Setting::new(g, pi).expect("nonempty intersection");
    let r = s.r;
    let n = s.n;
    let er = s.e(r);
    let q = s.q.clone();
    let r_part = u64::try_from(crate::arith::r_part_pow_minus_one(&q, r - 1, r).expect("r coprime to q")).expect("small r-part");
    let floors = (n / (r - 1), n / r);
    let mut attempts = Vec::new();

    let family_check = |t: &mut Trace, fam: Family, label: &str| {
        t.check(format!("G = {label}"), json!({ "group": g.to_string() }), g.family() == fam)
    };

    // (a)-(c): linear and unitary groups.
    for (label, fam, name) in [('a', Family::A, "PSL_n(q)"), ('b', Family::A2, "PSU_n(q)"), ('c', Family::A2, "PSU_n(q)")] {
        let mut t = Trace::new();
        let mut ok = family_check(&mut t, fam, name);
        if ok {
            let target_e = match label {
                'a' | 'b' => r - 1,
                _ => (r - 1) / 2,
            };
            if label == 'b' {
                ok &= t.check("r ≡ 1 (mod 4)", json!({ "r": r }), r % 4 == 1);
            }
            if label == 'c' {
                ok &= t.check("r ≡ 3 (mod 4)", json!({ "r": r }), r % 4 == 3);
            }
            let e_name = if label == 'c' { "e(q,r) == (r-1)/2" } else { "e(q,r) == r-1" };
            ok &= t.check(e_name, json!({ "r": r, "e(q,r)": er }), er == target_e);
            ok &= t.check("(q^(r-1)-1)_r == r", json!({ "r": r, "value": r_part }), r_part == r);
            ok &= t.check(
                "floor(n/(r-1)) == floor(n/r)",
                json!({ "n": n, "r": r, "floor(n/(r-1))": floors.0, "floor(n/r)": floors.1 }),
                floors.0 == floors.1,
            );
            let want = if fam == Family::A { 1 } else { 2 };
            let per: serde_json::Map<String, serde_json::Value> = s.tau.iter().map(|t| (t.to_string(), json!(s.e(t)))).collect();
            ok &= t.check(
                format!("e(q,s) == {want} for every s in tau"),
                json!({ "tau": s.tau, "e(q,s)": per }),
                s.tau.iter().all(|x| s.e(x) == want),
            );
            ok &= t.check("n < s for every s in tau", json!({ "n": n, "tau": s.tau }), s.tau.iter().all(|x| n < x));
        }
        attempts.push(Attempt { label, trace: t, ok });
    }

    // (d)-(i): exceptional groups with pi∩pi(G) inside pi(q-1) or pi(q+1).
    let q_minus = &q - 1u32;
    let q_plus = &q + 1u32;
    let inside = |v: &num_bigint::BigUint| s.inter.iter().all(|x| (v % x).is_zero());
    let in_minus = inside(&q_minus);
    let in_plus = inside(&q_plus);
    let has = |x: u64| s.inter.contains(x);
    let cases: [ExceptionalCase; 6] = [
        ('d', Family::E6, "E6(q)", 0, &[3, 13], &[5]),
        ('e', Family::E6_2, "2E6(q)", 1, &[3, 13], &[5]),
        ('f', Family::E7, "E7(q)", 2, &[3, 13], &[5, 7]),
        ('g', Family::E8, "E8(q)", 2, &[3, 13], &[5, 7]),
        ('h', Family::E8, "E8(q)", 2, &[5, 31], &[3, 7]),
        ('i', Family::F4, "F4(q)", 2, &[3, 13], &[]),
    ];
    for (label, fam, name, torus, required, forbidden) in cases {
        let mut t = Trace::new();
        let mut ok = family_check(&mut t, fam, name);
        if ok {
            let args = json!({ "pi∩pi(G)": s.inter, "q-1": q_minus.to_string(), "q+1": q_plus.to_string() });
            ok &= match torus {
                0 => t.check("pi∩pi(G) ⊆ pi(q-1)", args, in_minus),
                1 => t.check("pi∩pi(G) ⊆ pi(q+1)", args, in_plus),
                _ => t.check("pi∩pi(G) ⊆ pi(q-1) or pi∩pi(G) ⊆ pi(q+1)", args, in_minus || in_plus),
            };
            ok &= t.check(format!("{required:?} ⊆ pi∩pi(G)"), json!({ "pi∩pi(G)": s.inter }), required.iter().all(|&x| has(x)));
            if !forbidden.is_empty() {
                ok &= t.check(
                    format!("{forbidden:?} ∩ pi∩pi(G) = ∅"),
                    json!({ "pi∩pi(G)": s.inter }),
                    forbidden.iter().all(|&x| !has(x)),
                );
            }
        }
        attempts.push(Attempt { label, trace: t, ok });
    }
    ConditionOutcome::from_attempts(Trace::new(), attempts)
}
