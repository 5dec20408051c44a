use std::time::Instant;

use super::grid::{perm_spec, Grid, GridCase};
use super::report::{CaseResult, CheckRow, CrossCheckReport, ListedCase};
use crate::arith::{order_mod, prime_divisors_u64, PrimeSet};
use crate::lie::{pi_intersection, GroupId};
use crate::oracle::{decide_cpi, decide_dpi, decide_epi, decide_upi, Holds};
use crate::par::{self, Execution};
use crate::perm::{construct_named, enumerate_subgroups, Brute, BruteProperty, Lattice};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct VerifyOptions {
    pub exec: Execution,
    /// Adds per-case runtimes, which makes reports nondeterministic.
    pub timings: bool,
    /// Overrides the grid's order cap.
    pub max_order: Option<u64>,
}

enum Route {
    Run,
    OutOfScope(String),
    Skip(String),
}

struct Built {
    group: GroupId,
    perm: String,
    lattice: Result<Lattice, String>,
}

fn build_lattices(groups: &[GroupId], cap: u64, exec: Execution) -> Vec<Built> {
    par::map(groups, exec, |g| {
        let (perm, lattice) = match perm_spec(g) {
            Ok(spec) => {
                let lat = construct_named(&spec).and_then(|grp| enumerate_subgroups(&grp, cap)).map_err(|e| e.to_string());
                (spec, lat)
            }
            Err(reason) => (String::new(), Err(reason)),
        };
        Built { group: g.clone(), perm, lattice }
    })
}

fn run_suite<R, E>(suite: &str, grid: &Grid, opts: &VerifyOptions, route: R, eval: E) -> CrossCheckReport
where
    R: Fn(&GridCase) -> Route,
    E: Fn(&GridCase, &Brute) -> Vec<CheckRow> + Sync + Send,
{
    let cap = opts.max_order.unwrap_or(grid.max_order);
    let mut out_of_scope = Vec::new();
    let mut skipped = Vec::new();
    let mut runnable = Vec::new();
    for c in &grid.cases {
        match route(c) {
            Route::Run => runnable.push(c.clone()),
            Route::OutOfScope(reason) => out_of_scope.push(ListedCase { group: c.group.to_string(), pi: c.pi.clone(), reason }),
            Route::Skip(reason) => skipped.push(ListedCase { group: c.group.to_string(), pi: c.pi.clone(), reason }),
        }
    }
    let mut groups: Vec<GroupId> = Vec::new();
    for c in &runnable {
        if !groups.contains(&c.group) {
            groups.push(c.group.clone());
        }
    }
    let built = build_lattices(&groups, cap, opts.exec);
    let mut jobs = Vec::new();
    for c in runnable {
        let b = built.iter().find(|b| b.group == c.group).expect("built every group");
        match &b.lattice {
            Ok(_) => jobs.push((c, b)),
            Err(reason) => skipped.push(ListedCase { group: c.group.to_string(), pi: c.pi, reason: reason.clone() }),
        }
    }
    let cases = par::map(&jobs, opts.exec, |(c, b)| {
        let lattice = b.lattice.as_ref().expect("filtered");
        let brute = Brute::new(lattice, b.perm.clone());
        let start = Instant::now();
        let rows = eval(c, &brute);
        let runtime_ms = opts.timings.then(|| start.elapsed().as_secs_f64() * 1e3);
        CaseResult {
            group: c.group.to_string(),
            perm: b.perm.clone(),
            pi: c.pi.clone(),
            agree: rows.iter().all(|r| r.ok),
            rows,
            runtime_ms,
        }
    });
    CrossCheckReport::new(suite, cases, out_of_scope, skipped)
}

fn odd_route(c: &GridCase) -> Route {
    if c.pi.contains(2) {
        Route::OutOfScope("2 ∈ pi".into())
    } else {
        Route::Run
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Oracle `D_pi`, `E_pi` and `C_pi` against the brute-force lattice, plus
/// the lattice-internal consistency checks.
pub fn cross_check_simple(grid: &Grid, opts: &VerifyOptions) -> CrossCheckReport {
    run_suite("cross", grid, opts, odd_route, |c, brute| {
        let (g, pi) = (&c.group, &c.pi);
        let bd = brute.evaluate(pi, BruteProperty::D).holds;
        let be = brute.evaluate(pi, BruteProperty::E).holds;
        let bc = brute.evaluate(pi, BruteProperty::C).holds;
        let mut rows = vec![
            CheckRow::against_oracle("dpi", decide_dpi(g, pi).holds, bd),
            CheckRow::against_oracle("epi", decide_epi(g, pi).holds, be),
            CheckRow::against_oracle("cpi", decide_cpi(g, pi).holds, bc),
        ];
        let by_containment = brute.dpi_by_containment(pi);
        let whole = brute.lattice.classes.last().expect("nonempty lattice").representative();
        let direct = brute.dpi_within(whole, pi);
        rows.push(CheckRow::invariant(
            "dpi_definitions",
            bd == by_containment && bd == direct,
            Some(format!("maximal={} containment={} direct={}", yes_no(bd), yes_no(by_containment), yes_no(direct))),
        ));
        rows.push(CheckRow::invariant("epi_iff_cpi", be == bc, None));
        let failures = brute.hall_intersection_failures(pi);
        rows.push(CheckRow::invariant(
            "hall_intersection",
            failures.is_empty(),
            (!failures.is_empty()).then(|| format!("{} normal subgroups fail", failures.len())),
        ));
        let nilpotent_hall =
            brute.pi_hall_subgroups(pi).into_iter().any(|h| brute.is_nilpotent(brute.lattice.classes[h].representative()));
        rows.push(CheckRow::invariant("nilpotent_hall_implies_dpi", !nilpotent_hall || bd, None));
        let mut sylow_ok = true;
        for t in pi.intersection(&prime_divisors_u64(brute.lattice.order())).iter() {
            let single = PrimeSet::new([t]).expect("prime");
            let classes = brute.pi_hall_subgroups(&single);
            sylow_ok &= brute.evaluate(&single, BruteProperty::D).holds
                && classes.len() == 1
                && brute.lattice.classes[classes[0]].class_size % t == 1;
        }
        rows.push(CheckRow::invariant("sylow", sylow_ok, None));
        rows
    })
}

/// Whenever brute `D_pi` holds, every overgroup of a pi-Hall subgroup is
/// `D_pi`; the oracle's `U_pi` is compared where it is in scope.
pub fn main_theorem_check(grid: &Grid, opts: &VerifyOptions) -> CrossCheckReport {
    run_suite(
        "main-theorem",
        grid,
        opts,
        |_| Route::Run,
        |c, brute| {
            let bd = brute.evaluate(&c.pi, BruteProperty::D).holds;
            let bu = brute.evaluate(&c.pi, BruteProperty::U);
            let mut row = CheckRow::invariant("dpi_implies_upi", !bd || bu.holds, Some(format!("brute D={}", yes_no(bd))));
            row.brute = Some(bu.holds);
            if !row.ok {
                let w: Vec<String> =
                    bu.witnesses.iter().map(|w| format!("{} order={} gens={}", w.role, w.order, w.gens)).collect();
                row.note = Some(format!("counterexample: {}", w.join("; ")));
            }
            let mut rows = vec![row];
            let oracle = decide_upi(&c.group, &c.pi).holds;
            if oracle != Holds::OutOfScope {
                rows.push(CheckRow::against_oracle("upi", oracle, bu.holds));
            }
            rows
        },
    )
}

/// `D_pi ⇒ (*)` for `2, p ∉ pi`, and the converse when `E_pi` holds and
/// `e(q,s) = e(q,r)` for every `s ∈ tau`.
pub fn star_consistency_check(grid: &Grid, opts: &VerifyOptions) -> CrossCheckReport {
    let route = |c: &GridCase| {
        if c.pi.contains(2) {
            Route::OutOfScope("2 ∈ pi".into())
        } else if c.pi.contains(c.group.p()) {
            Route::Skip(format!("p = {} ∈ pi", c.group.p()))
        } else {
            Route::Run
        }
    };
    run_suite("star", grid, opts, route, |c, brute| {
        let pi = &c.pi;
        let bd = brute.evaluate(pi, BruteProperty::D).holds;
        let be = brute.evaluate(pi, BruteProperty::E).holds;
        let star = brute.evaluate(pi, BruteProperty::Star);
        let mut first = CheckRow::invariant("dpi_implies_star", !bd || star.holds, Some(format!("brute D={}", yes_no(bd))));
        first.brute = Some(star.holds);
        let mut rows = vec![first];
        let inter = pi_intersection(pi, &c.group);
        if let (Some(r), Some(q)) = (inter.smallest(), c.group.q_u64()) {
            let er = order_mod(q, r).expect("r odd, coprime to q");
            let equal_e = inter.without(r).iter().all(|s| order_mod(q, s).expect("coprime") == er);
            if be && equal_e {
                rows.push(CheckRow::invariant("dpi_iff_star", bd == star.holds, Some(format!("brute D={}", yes_no(bd)))));
            }
        }
        rows
    })
}
