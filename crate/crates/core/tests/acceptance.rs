//! Acceptance suite: one PASS/FAIL line per criterion. Exits nonzero when
//! any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use hallpi::arith::{pi_part, primes_up_to, r_part_pow_minus_one, r_part_pow_minus_sign, PrimeSet};
use hallpi::lie::{group_order, parse_group_id};
use hallpi::oracle::{classify_epi_minus_dpi, decide_dpi, ConditionTag, EpiSubject, Holds};
use hallpi::verify::{
    cross_check_simple, exclusivity_scan, main_theorem_check, star_consistency_check, CrossCheckReport, ExclusivityGrid, Grid,
    VerifyOptions,
};
use num_bigint::BigUint;
use num_traits::{One, Zero};

struct Outcome {
    pass: bool,
    detail: String,
}

fn within(limit: Duration, elapsed: Duration) -> bool {
    elapsed <= limit
}

/// r-part by repeated division, independent of the closed forms.
fn direct_r_part(mut n: BigUint, r: u64) -> BigUint {
    let mut part = BigUint::one();
    while (&n % r).is_zero() {
        n /= r;
        part *= r;
    }
    part
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut checked = 0u64;
    let mut mismatches = Vec::new();
    let odd: Vec<u64> = primes_up_to(23).into_iter().filter(|&r| r > 2).collect();
    for k in 2u64..=30 {
        for &r in &odd {
            if k % r == 0 {
                continue;
            }
            let kb = BigUint::from(k);
            for m in 1u64..=30 {
                let power = kb.pow(m as u32);
                let minus = direct_r_part(&power - 1u32, r);
                let signed = if m % 2 == 0 { &power - 1u32 } else { &power + 1u32 };
                let sign = direct_r_part(signed, r);
                checked += 2;
                if r_part_pow_minus_one(&kb, m, r).ok() != Some(minus) {
                    mismatches.push(format!("(k^m-1)_r k={k} m={m} r={r}"));
                }
                if r_part_pow_minus_sign(&kb, m, r).ok() != Some(sign) {
                    mismatches.push(format!("(k^m-(-1)^m)_r k={k} m={m} r={r}"));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    Outcome {
        pass: mismatches.is_empty() && within(Duration::from_secs(1), elapsed),
        detail: format!(
            "{checked} values, {} mismatches, {elapsed:.2?} (limit 1s) {}",
            mismatches.len(),
            mismatches.first().cloned().unwrap_or_default()
        ),
    }
}

fn criterion_2() -> Outcome {
    let g = parse_group_id("A:3:q=4").unwrap();
    let part = pi_part(&group_order(&g), &PrimeSet::new([3]).unwrap()).unwrap();
    Outcome { pass: part == BigUint::from(9u32), detail: format!("|PSL_3(4)|_3 = {part}") }
}

fn rows_ok(report: &CrossCheckReport, names: &[&str]) -> (usize, usize) {
    let mut total = 0;
    let mut bad = 0;
    for c in &report.cases {
        for r in c.rows.iter().filter(|r| names.contains(&r.name.as_str())) {
            total += 1;
            if !r.ok {
                bad += 1;
                eprintln!("  failing row: {} {} {} {:?}", c.group, c.pi, r.name, r);
            }
        }
    }
    (total, bad)
}

fn main() -> ExitCode {
    let mut results: Vec<(usize, &str, Outcome)> = Vec::new();
    results.push((1, "closed forms for (k^m-1)_r and (k^m-(-1)^m)_r", criterion_1()));
    results.push((2, "|PSL_3(4)|_3 = 9", criterion_2()));

    let grid = Grid::default_grid();
    let opts = VerifyOptions::default();

    let start = Instant::now();
    let cross = cross_check_simple(&grid, &opts);
    let elapsed = start.elapsed();
    let (total, bad) = rows_ok(&cross, &["dpi", "epi", "cpi"]);
    results.push((
        3,
        "oracle D/E/C agree with brute force on the desk grid",
        Outcome {
            pass: bad == 0 && total > 0 && cross.summary.skipped == 0 && within(Duration::from_secs(600), elapsed),
            detail: format!(
                "{} cases, {total} comparisons, {bad} disagreements, {elapsed:.2?} (limit 10min)",
                cross.summary.cases
            ),
        },
    ));

    let main_thm = main_theorem_check(&grid, &opts);
    let (total, bad) = rows_ok(&main_thm, &["dpi_implies_upi"]);
    let d_true = main_thm.cases.iter().filter(|c| c.rows[0].note.as_deref() == Some("brute D=yes")).count();
    results.push((
        4,
        "brute D implies brute U",
        Outcome { pass: bad == 0 && total > 0, detail: format!("{total} cases, {d_true} with D true, {bad} counterexamples") },
    ));

    let (total, bad) = rows_ok(&cross, &["epi_iff_cpi"]);
    results.push((
        5,
        "brute E iff brute C for odd pi",
        Outcome { pass: bad == 0 && total > 0, detail: format!("{total} cases, {bad} counterexamples") },
    ));

    let star = star_consistency_check(&grid, &opts);
    let (total, bad) = rows_ok(&star, &["dpi_implies_star"]);
    results.push((
        6,
        "brute D implies (*) when p is not in pi",
        Outcome {
            pass: bad == 0 && total > 0,
            detail: format!("{total} cases ({} skipped with p in pi), {bad} counterexamples", star.summary.skipped),
        },
    ));

    let start = Instant::now();
    let excl = exclusivity_scan(&ExclusivityGrid::default(), opts.exec);
    let elapsed = start.elapsed();
    results.push((
        7,
        "Conditions II and III never both hold; one tag per yes verdict",
        Outcome {
            pass: excl.passed() && within(Duration::from_secs(300), elapsed),
            detail: format!(
                "{} groups, {} inputs, {} yes verdicts, {} violations, {elapsed:.2?} (limit 5min)",
                excl.groups,
                excl.inputs,
                excl.yes_verdicts,
                excl.violations.len()
            ),
        },
    ));
    for v in excl.violations.iter().take(10) {
        eprintln!("  violation: {} {} {} {}", v.kind, v.group, v.pi, v.detail);
    }

    let g = parse_group_id("A:3:q=11").unwrap();
    let pi = PrimeSet::new([3, 5]).unwrap();
    let (tag, trace) = classify_epi_minus_dpi(&EpiSubject::Lie(g.clone()), &pi).unwrap();
    let preds = [
        "e(q,r) == r-1",
        "(q^(r-1)-1)_r == r",
        "floor(n/(r-1)) == floor(n/r)",
        "e(q,s) == 1 for every s in tau",
        "n < s for every s in tau",
    ];
    let all_five = preds.iter().all(|p| trace.find(p).map(|r| r.value).unwrap_or(false));
    let d = decide_dpi(&g, &pi);
    results.push((
        8,
        "PSL_3(11), pi = {3,5} lies in E_pi minus D_pi via case 2B(a)",
        Outcome {
            pass: tag == Some(ConditionTag::EpiCase2B('a')) && all_five && d.holds == Holds::No,
            detail: format!(
                "classified {:?}, five predicates true: {all_five}, decide_dpi = {}",
                tag.map(|t| t.to_string()),
                d.holds
            ),
        },
    ));

    let mut failed = 0;
    for (n, name, o) in &results {
        println!("criterion {n}: {} - {name} [{}]", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.pass);
    }
    if failed == 0 {
        println!("acceptance: all {} criteria passed", results.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of {} criteria failed", results.len());
        ExitCode::FAILURE
    }
}
