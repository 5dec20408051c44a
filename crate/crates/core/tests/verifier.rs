use hallpi::arith::PrimeSet;
use hallpi::oracle::Holds;
use hallpi::par::Execution;
use hallpi::verify::{
    cross_check_simple, exclusivity_scan, main_theorem_check, star_consistency_check, CrossCheckReport, ExclusivityGrid, Grid,
    VerifyOptions,
};

fn grid(json: &str) -> Grid {
    Grid::from_json(json).unwrap()
}

fn row<'a>(r: &'a CrossCheckReport, pi: &[u64], name: &str) -> &'a hallpi::verify::CheckRow {
    let pi = PrimeSet::new(pi.iter().copied()).unwrap();
    let case = r.cases.iter().find(|c| c.pi == pi).expect("case present");
    case.rows.iter().find(|x| x.name == name).expect("row present")
}

#[test]
fn cross_check_examples() {
    let opts = VerifyOptions::default();
    let r = cross_check_simple(&grid(r#"{"groups":["A:2:q=7"]}"#), &opts);
    let pis: Vec<String> = r.cases.iter().map(|c| c.pi.to_string()).collect();
    assert_eq!(pis, ["{3}", "{7}", "{3,7}"]);
    assert_eq!(r.summary.agree, 3);

    let r = cross_check_simple(&grid(r#"{"cases":[{"group":"A:2:q=11","pi":[3,5]},{"group":"A:2:q=7","pi":[2,3]}]}"#), &opts);
    let d = row(&r, &[3, 5], "dpi");
    assert_eq!((d.oracle, d.brute, d.ok), (Some(Holds::No), Some(false), true));
    assert_eq!(r.out_of_scope.len(), 1);
    assert_eq!(r.out_of_scope[0].group, "A:2:q=7");
    assert_eq!(r.summary.agree, 1);
}

#[test]
fn main_theorem_examples() {
    let opts = VerifyOptions::default();
    let r = main_theorem_check(
        &grid(r#"{"cases":[{"group":"A:2:q=7","pi":[3,7]},{"group":"A:2:q=5","pi":[5]},{"group":"A:2:q=13","pi":[3,7]}]}"#),
        &opts,
    );
    assert!(r.passed(), "{}", r.to_text());
    assert_eq!(r.summary.cases, 3);
    for pi in [&[3, 7][..], &[5]] {
        assert!(row(&r, pi, "dpi_implies_upi").ok);
    }
    let thirteen = r.cases.iter().find(|c| c.group == "A:2:q=13").unwrap();
    assert!(thirteen.rows.iter().all(|x| x.ok));
}

#[test]
fn star_examples() {
    let opts = VerifyOptions::default();
    let r = star_consistency_check(
        &grid(r#"{"cases":[{"group":"A:2:q=7","pi":[3,7]},{"group":"A:2:q=13","pi":[3,7]},{"group":"A:2:q=11","pi":[3,5]}]}"#),
        &opts,
    );
    assert_eq!(r.skipped.len(), 1);
    assert_eq!(r.skipped[0].group, "A:2:q=7");
    assert_eq!(r.summary.cases, 2);
    assert!(r.passed(), "{}", r.to_text());
    assert_eq!(row(&r, &[3, 5], "dpi_implies_star").note.as_deref(), Some("brute D=no"));
}

#[test]
fn unconstructible_groups_are_skipped_with_reason() {
    let r = cross_check_simple(
        &grid(r#"{"cases":[{"group":"A:3:q=2","pi":[3,7]},{"group":"A:2:q=17","pi":[3,17]}]}"#),
        &VerifyOptions::default(),
    );
    assert_eq!(r.summary.skipped, 2);
    assert!(r.skipped.iter().all(|c| !c.reason.is_empty()));
}

#[test]
fn default_grid_reports_are_byte_identical() {
    let g = Grid::default_grid();
    let seq = VerifyOptions { exec: Execution::Sequential, ..VerifyOptions::default() };
    let par = VerifyOptions { exec: Execution::Parallel, ..VerifyOptions::default() };
    let a = cross_check_simple(&g, &seq);
    assert!(a.passed());
    assert_eq!(a.to_json(), cross_check_simple(&g, &par).to_json());
    assert_eq!(a.to_json(), cross_check_simple(&g, &seq).to_json());
}

#[test]
fn exclusivity_examples() {
    let r = exclusivity_scan(&ExclusivityGrid::default(), Execution::default());
    assert!(r.passed(), "{}", r.to_text());
    assert!(r.by_tag.contains_key("trivial_small_pi") || r.yes_verdicts > 0);
    let small = ExclusivityGrid { max_dimension: 0, max_rank: 0, max_q: 4, max_prime: 5, subset_sizes: vec![2] };
    let s = exclusivity_scan(&small, Execution::Sequential);
    assert!(s.passed());
    assert_eq!(s.to_json(), exclusivity_scan(&small, Execution::Parallel).to_json());
}
