//! Conditions I-IV: the arithmetic criterion for `D_pi` in a simple group
//! of Lie type when `2 ∉ pi` and `|pi ∩ pi(S)| >= 2`.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde_json::json;

use super::verdict::{Attempt, ConditionOutcome, Trace};
use crate::arith::{multiplicative_order, r_part_pow_minus_one, PrimeSet};
use crate::error::{Error, Result};
use crate::lie::{pi_intersection, weyl_order, Family, GroupId};

/// Values shared by every condition: `pi ∩ pi(S)`, its minimum `r`, and
/// `tau = (pi ∩ pi(S)) \ {r}`.
pub(crate) struct Setting<'a> {
    pub g: &'a GroupId,
    pub q: BigUint,
    pub n: u64,
    pub inter: PrimeSet,
    pub r: u64,
    pub tau: PrimeSet,
}

impl<'a> Setting<'a> {
    pub fn new(g: &'a GroupId, pi: &PrimeSet) -> Option<Setting<'a>> {
        let inter = pi_intersection(pi, g);
        let r = inter.smallest()?;
        let tau = inter.without(r);
        Some(Setting { g, q: g.q(), n: g.n() as u64, inter, r, tau })
    }

    /// `e(q, t)`; `t` is an odd prime other than the characteristic.
    pub fn e(&self, t: u64) -> u64 {
        multiplicative_order(&self.q, t).expect("t odd and coprime to q")
    }

    fn e_map(&self, primes: &PrimeSet) -> serde_json::Map<String, serde_json::Value> {
        primes.iter().map(|t| (t.to_string(), json!(self.e(t)))).collect()
    }

    /// `(q^(r-1) - 1)_r`.
    fn r_part_q_r_minus_one(&self) -> u64 {
        let v = r_part_pow_minus_one(&self.q, self.r - 1, self.r).expect("r coprime to q");
        u64::try_from(v).expect("r-part is small")
    }
}

fn family_args(g: &GroupId) -> serde_json::Value {
    json!({ "group": g.to_string(), "family": g.family().symbol() })
}

fn check_common(g: &GroupId, pi: &PrimeSet, need_p_outside: bool) -> Result<()> {
    if pi.contains(2) {
        return Err(Error::Precondition("2 must not lie in pi".into()));
    }
    if need_p_outside && pi.contains(g.p()) {
        return Err(Error::Precondition(format!("the characteristic {} lies in pi", g.p())));
    }
    Ok(())
}

/// Condition I (`p ∈ pi`): `tau ⊆ pi(q-1)` and no prime of `pi ∩ pi(S)`
/// divides `|W(S)|`. Returns the holding flag and the evaluated predicates.
pub fn check_condition_i(g: &GroupId, pi: &PrimeSet) -> Result<(bool, Trace)> {
    check_common(g, pi, false)?;
    let p = g.p();
    if !pi.contains(p) {
        return Err(Error::Precondition(format!("Condition I requires p = {p} in pi")));
    }
    let inter = pi_intersection(pi, g);
    let tau = inter.without(p);
    let q_minus_one = g.q() - 1u32;
    let weyl = weyl_order(g);
    let mut t = Trace::new();
    let in_torus = tau.iter().all(|s| (&q_minus_one % s).is_zero());
    t.check("tau ⊆ pi(q-1)", json!({ "tau": tau, "q-1": q_minus_one.to_string() }), in_torus);
    let offenders: Vec<u64> = inter.iter().filter(|&s| (&weyl % s).is_zero()).collect();
    t.check(
        "no prime of pi∩pi(S) divides |W(S)|",
        json!({ "pi∩pi(S)": inter, "|W(S)|": weyl.to_string(), "dividing": offenders }),
        offenders.is_empty(),
    );
    Ok((in_torus && offenders.is_empty(), t))
}

fn premise_trace_small<'a>(g: &'a GroupId, pi: &PrimeSet) -> Result<Setting<'a>> {
    check_common(g, pi, true)?;
    if g.family().is_suzuki_ree() {
        return Err(Error::Precondition(format!("{} is a Suzuki or Ree group", g)));
    }
    let s = Setting::new(g, pi).ok_or_else(|| Error::Precondition("pi ∩ pi(S) is empty".into()))?;
    if s.inter.len() < 2 {
        return Err(Error::Precondition("|pi ∩ pi(S)| must be at least 2".into()));
    }
    Ok(s)
}

struct SubcaseBuilder<'s, 'a> {
    s: &'s Setting<'a>,
    trace: Trace,
    ok: bool,
}

impl<'s, 'a> SubcaseBuilder<'s, 'a> {
    fn new(s: &'s Setting<'a>) -> Self {
        SubcaseBuilder { s, trace: Trace::new(), ok: true }
    }

    /// Records the family gate. Returns false when the family does not
    /// match so the remaining predicates are skipped.
    fn family(&mut self, allowed: &[Family], label: &str) -> bool {
        let v = allowed.contains(&self.s.g.family());
        self.trace.check(format!("S ≅ {label}"), family_args(self.s.g), v);
        self.ok &= v;
        v
    }

    fn pred(&mut self, name: impl Into<String>, args: serde_json::Value, v: bool) {
        self.trace.check(name, args, v);
        self.ok &= v;
    }

    fn for_all_tau(&mut self, name: &str, mut f: impl FnMut(u64) -> bool) {
        let s = self.s;
        let per: serde_json::Map<String, serde_json::Value> = s.tau.iter().map(|t| (t.to_string(), json!(f(t)))).collect();
        let v = per.values().all(|x| x.as_bool() == Some(true));
        self.pred(format!("{name} for every s in tau"), json!({ "tau": s.tau, "per_s": per }), v);
    }

    fn finish(self, label: char) -> Attempt {
        Attempt { label, trace: self.trace, ok: self.ok }
    }
}

fn floor_eq(s: &Setting<'_>, plus: u64) -> (serde_json::Value, bool) {
    let a = s.n / (s.r - 1);
    let b = s.n / s.r;
    (json!({ "n": s.n, "r": s.r, "floor(n/(r-1))": a, "floor(n/r)": b }), a == b + plus)
}

/// Condition II (`p ∉ pi`, some `t ∈ tau` with `e(q,t) != e(q,r)`).
/// Subcases are tried in listing order; the first match is reported.
pub fn check_condition_ii(g: &GroupId, pi: &PrimeSet) -> Result<ConditionOutcome> {
    let s = premise_trace_small(g, pi)?;
    let a = s.e(s.r);
    let mut premise = Trace::new();
    let witness = s.tau.iter().find(|&t| s.e(t) != a);
    let e_values = s.e_map(&s.inter);
    premise.check(
        "exists t in tau with e(q,t) != a",
        json!({ "r": s.r, "a": a, "e(q,t)": e_values, "t": witness }),
        witness.is_some(),
    );
    let Some(t0) = witness else {
        return Ok(ConditionOutcome::premise_failed(premise));
    };
    let b = s.e(t0);
    let r = s.r;
    let n = s.n;
    let r_part = s.r_part_q_r_minus_one();
    let ab = json!({ "a": a, "b": b, "r": r });

    let mut attempts = Vec::new();

    // (a), (b): linear groups.
    for (label, plus) in [('a', 0u64), ('b', 1)] {
        let mut sc = SubcaseBuilder::new(&s);
        if sc.family(&[Family::A], "A_{n-1}(q)") {
            sc.pred("a == r-1", ab.clone(), a == r - 1);
            sc.pred("b == r", ab.clone(), b == r);
            sc.pred("(q^(r-1)-1)_r == r", json!({ "r": r, "value": r_part }), r_part == r);
            let (args, v) = floor_eq(&s, plus);
            let name = if plus == 0 { "floor(n/(r-1)) == floor(n/r)" } else { "floor(n/(r-1)) == floor(n/r)+1" };
            sc.pred(name, args, v);
            if plus == 1 {
                sc.pred("n ≡ -1 (mod r)", json!({ "n": n, "r": r }), (n + 1) % r == 0);
            }
            sc.for_all_tau("e(q,s) == b", |t| s.e(t) == b);
            sc.for_all_tau("n < b*s", |t| n < b * t);
        }
        attempts.push(sc.finish(label));
    }

    // (c)-(f): unitary groups.
    for (label, r_mod4, plus) in [('c', 1u64, 0u64), ('d', 3, 0), ('e', 1, 1), ('f', 3, 1)] {
        let mut sc = SubcaseBuilder::new(&s);
        if sc.family(&[Family::A2], "2A_{n-1}(q)") {
            sc.pred(format!("r ≡ {r_mod4} (mod 4)"), json!({ "r": r }), r % 4 == r_mod4);
            if r_mod4 == 1 {
                sc.pred("a == r-1", ab.clone(), a == r - 1);
            } else {
                sc.pred("a == (r-1)/2", ab.clone(), 2 * a == r - 1);
            }
            sc.pred("b == 2r", ab.clone(), b == 2 * r);
            sc.pred("(q^(r-1)-1)_r == r", json!({ "r": r, "value": r_part }), r_part == r);
            let (args, v) = floor_eq(&s, plus);
            let name = if plus == 0 { "floor(n/(r-1)) == floor(n/r)" } else { "floor(n/(r-1)) == floor(n/r)+1" };
            sc.pred(name, args, v);
            if plus == 1 {
                sc.pred("n ≡ -1 (mod r)", json!({ "n": n, "r": r }), (n + 1) % r == 0);
            }
            sc.for_all_tau("e(q,s) == b", |t| s.e(t) == b);
        }
        attempts.push(sc.finish(label));
    }

    // (g), (h): 2D_n with cyclic Hall subgroups.
    {
        let mut sc = SubcaseBuilder::new(&s);
        if sc.family(&[Family::D2], "2D_n(q)") {
            sc.pred("a odd", ab.clone(), a % 2 == 1);
            sc.pred("n == b == 2a", json!({ "n": n, "a": a, "b": b }), n == 2 * a && b == 2 * a);
            sc.for_all_tau("e(q,s) ∈ {a,b}", |t| {
                let e = s.e(t);
                e == a || e == b
            });
        }
        attempts.push(sc.finish('g'));
        let mut sc = SubcaseBuilder::new(&s);
        if sc.family(&[Family::D2], "2D_n(q)") {
            sc.pred("b odd", ab.clone(), b % 2 == 1);
            sc.pred("n == a == 2b", json!({ "n": n, "a": a, "b": b }), n == 2 * b && a == 2 * b);
            sc.for_all_tau("e(q,s) ∈ {a,b}", |t| {
                let e = s.e(t);
                e == a || e == b
            });
        }
        attempts.push(sc.finish('h'));
    }

    Ok(ConditionOutcome::from_attempts(premise, attempts))
}

/// Condition III (`p ∉ pi`, `e(q,t) = e(q,r)` for every `t ∈ tau`).
pub fn check_condition_iii(g: &GroupId, pi: &PrimeSet) -> Result<ConditionOutcome> {
    let s = premise_trace_small(g, pi)?;
    let c = s.e(s.r);
    let mut premise = Trace::new();
    let same = s.tau.iter().all(|t| s.e(t) == c);
    premise.check("e(q,t) == c for every t in tau", json!({ "r": s.r, "c": c, "e(q,t)": s.e_map(&s.inter) }), same);
    if !same {
        return Ok(ConditionOutcome::premise_failed(premise));
    }
    let n = s.n;
    let r = s.r;
    let cr = json!({ "c": c, "r": r });
    let excluded = |primes: &[u64]| primes.iter().all(|&x| !s.tau.contains(x));

    let mut attempts = Vec::new();
    let mut push = |label: char, sc: SubcaseBuilder<'_, '_>| attempts.push(sc.finish(label));

    let mut sc = SubcaseBuilder::new(&s);
    if sc.family(&[Family::A], "A_{n-1}(q)") {
        sc.for_all_tau("n < c*s", |t| n < c * t);
    }
    push('a', sc);

    let mut sc = SubcaseBuilder::new(&s);
    if sc.family(&[Family::A2], "2A_{n-1}(q)") {
        sc.pred("c ≡ 0 (mod 4)", cr.clone(), c % 4 == 0);
        sc.for_all_tau("n < c*s", |t| n < c * t);
    }
    push('b', sc);

    let mut sc = SubcaseBuilder::new(&s);
    if sc.family(&[Family::A2], "2A_{n-1}(q)") {
        sc.pred("c ≡ 2 (mod 4)", cr.clone(), c % 4 == 2);
        sc.for_all_tau("2n < c*s", |t| 2 * n < c * t);
    }
    push('c', sc);

    let mut sc = SubcaseBuilder::new(&s);
    if sc.family(&[Family::A2], "2A_{n-1}(q)") {
        sc.pred("c odd", cr.clone(), c % 2 == 1);
        sc.for_all_tau("n < 2c*s", |t| n < 2 * c * t);
    }
    push('d', sc);

    let mut sc = SubcaseBuilder::new(&s);
    if sc.family(&[Family::B, Family::C, Family::D2], "B_n(q), C_n(q) or 2D_n(q)") {
        sc.pred("c even", cr.clone(), c % 2 == 0);
        sc.for_all_tau("2n < c*s", |t| 2 * n < c * t);
    }
    push('e', sc);

    let mut sc = SubcaseBuilder::new(&s);
    if sc.family(&[Family::B, Family::C, Family::D], "B_n(q), C_n(q) or D_n(q)") {
        sc.pred("c odd", cr.clone(), c % 2 == 1);
        sc.for_all_tau("n < c*s", |t| n < c * t);
    }
    push('f', sc);

    let mut sc = SubcaseBuilder::new(&s);
    if sc.family(&[Family::D], "D_n(q)") {
        sc.pred("c even", cr.clone(), c % 2 == 0);
        sc.for_all_tau("2n <= c*s", |t| 2 * n <= c * t);
    }
    push('g', sc);

    let mut sc = SubcaseBuilder::new(&s);
    if sc.family(&[Family::D2], "2D_n(q)") {
        sc.pred("c odd", cr.clone(), c % 2 == 1);
        sc.for_all_tau("n <= c*s", |t| n <= c * t);
    }
    push('h', sc);

    let mut sc = SubcaseBuilder::new(&s);
    sc.family(&[Family::D4_3], "3D4(q)");
    push('i', sc);

    let mut sc = SubcaseBuilder::new(&s);
    if sc.family(&[Family::E6], "E6(q)") {
        sc.pred(
            "r = 3 and c = 1 implies 5,13 ∉ tau",
            json!({ "r": r, "c": c, "tau": s.tau }),
            !(r == 3 && c == 1) || excluded(&[5, 13]),
        );
    }
    push('j', sc);

    let mut sc = SubcaseBuilder::new(&s);
    if sc.family(&[Family::E6_2], "2E6(q)") {
        sc.pred(
            "r = 3 and c = 2 implies 5,13 ∉ tau",
            json!({ "r": r, "c": c, "tau": s.tau }),
            !(r == 3 && c == 2) || excluded(&[5, 13]),
        );
    }
    push('k', sc);

    let c12 = c == 1 || c == 2;
    let mut sc = SubcaseBuilder::new(&s);
    if sc.family(&[Family::E7], "E7(q)") {
        sc.pred(
            "r = 3 and c ∈ {1,2} implies 5,7,13 ∉ tau",
            json!({ "r": r, "c": c, "tau": s.tau }),
            !(r == 3 && c12) || excluded(&[5, 7, 13]),
        );
        sc.pred(
            "r = 5 and c ∈ {1,2} implies 7 ∉ tau",
            json!({ "r": r, "c": c, "tau": s.tau }),
            !(r == 5 && c12) || excluded(&[7]),
        );
    }
    push('l', sc);

    let mut sc = SubcaseBuilder::new(&s);
    if sc.family(&[Family::E8], "E8(q)") {
        sc.pred(
            "r = 3 and c ∈ {1,2} implies 5,7,13 ∉ tau",
            json!({ "r": r, "c": c, "tau": s.tau }),
            !(r == 3 && c12) || excluded(&[5, 7, 13]),
        );
        sc.pred(
            "r = 5 and c ∈ {1,2} implies 7,31 ∉ tau",
            json!({ "r": r, "c": c, "tau": s.tau }),
            !(r == 5 && c12) || excluded(&[7, 31]),
        );
    }
    push('m', sc);

    let mut sc = SubcaseBuilder::new(&s);
    sc.family(&[Family::G2], "G2(q)");
    push('n', sc);

    let mut sc = SubcaseBuilder::new(&s);
    if sc.family(&[Family::F4], "F4(q)") {
        sc.pred(
            "r = 3 and c = 1 implies 13 ∉ tau",
            json!({ "r": r, "c": c, "tau": s.tau }),
            !(r == 3 && c == 1) || excluded(&[13]),
        );
    }
    push('o', sc);

    Ok(ConditionOutcome::from_attempts(premise, attempts))
}

/// The torus orders whose prime sets Condition IV tests, labeled by the
/// expression they come from.
pub fn condition_iv_sets(g: &GroupId) -> Result<Vec<(String, BigUint)>> {
    let q = g.q();
    let m = (g.f() - 1) / 2;
    let two = BigUint::from(2u32);
    let one = BigUint::one();
    Ok(match g.family() {
        Family::B2_2 => {
            let root = two.pow(m + 1);
            vec![
                ("2^(2m+1)-1".into(), &q - &one),
                ("2^(2m+1)+2^(m+1)+1".into(), &q + &root + &one),
                ("2^(2m+1)-2^(m+1)+1".into(), &q - &root + &one),
            ]
        }
        Family::G2_2 => {
            let root = BigUint::from(3u32).pow(m + 1);
            vec![
                ("3^(2m+1)-1".into(), &q - &one),
                ("3^(2m+1)+3^(m+1)+1".into(), &q + &root + &one),
                ("3^(2m+1)-3^(m+1)+1".into(), &q - &root + &one),
            ]
        }
        Family::F4_2 => {
            let q2 = &q * &q;
            let r1 = two.pow(m + 1);
            let r3 = two.pow(3 * m + 2);
            vec![
                ("2^(2(2m+1))+1".into(), &q2 + &one),
                ("2^(2(2m+1))-1".into(), &q2 - &one),
                ("2^(2m+1)+2^(m+1)+1".into(), &q + &r1 + &one),
                ("2^(2m+1)-2^(m+1)+1".into(), &q - &r1 + &one),
                // Signs paired top-with-top: (+,-) and (-,+).
                ("2^(2(2m+1))+2^(3m+2)-2^(m+1)-1".into(), &q2 + &r3 - &r1 - &one),
                ("2^(2(2m+1))-2^(3m+2)+2^(m+1)-1".into(), &q2 - &r3 + &r1 - &one),
                // The two factors of q^4-q^2+1, paired (+,+) and (-,-).
                ("2^(2(2m+1))+2^(3m+2)+2^(2m+1)+2^(m+1)+1".into(), &q2 + &r3 + &q + &r1 + &one),
                ("2^(2(2m+1))-2^(3m+2)+2^(2m+1)-2^(m+1)+1".into(), &q2 - &r3 + &q - &r1 + &one),
            ]
        }
        _ => {
            return Err(Error::Precondition(format!("Condition IV applies to Suzuki and Ree groups, not {g}")));
        }
    })
}

/// Condition IV: `pi ∩ pi(S)` lies inside the prime set of one of the
/// listed torus orders. The subcase letter follows the family.
pub fn check_condition_iv(g: &GroupId, pi: &PrimeSet) -> Result<ConditionOutcome> {
    if pi.contains(2) {
        return Err(Error::Precondition("2 must not lie in pi".into()));
    }
    let sets = condition_iv_sets(g)?;
    let label = match g.family() {
        Family::B2_2 => 'a',
        Family::G2_2 => 'b',
        _ => 'c',
    };
    let inter = pi_intersection(pi, g);
    let mut premise = Trace::new();
    premise.check("S is a Suzuki or Ree group", family_args(g), true);
    let mut attempts = Vec::new();
    for (expr, value) in sets {
        let mut t = Trace::new();
        let inside = inter.iter().all(|s| (&value % s).is_zero());
        t.check(
            format!("pi∩pi(S) ⊆ pi({expr})"),
            json!({ "pi∩pi(S)": inter, "value": value.to_string(), "m": (g.f() - 1) / 2 }),
            inside,
        );
        attempts.push(Attempt { label, trace: t, ok: inside });
    }
    Ok(ConditionOutcome::from_attempts(premise, attempts))
}
