use std::process::{Command, Output};

fn hallpi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hallpi")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_str(stdout(o).lines().last().unwrap()).unwrap()
}

#[test]
fn decide_exit_codes() {
    let yes = hallpi(&["decide", "--group", "A:2:q=7", "--pi", "3,7", "--prop", "dpi"]);
    assert_eq!(yes.status.code(), Some(0));
    assert_eq!(json(&yes)["holds"], "yes");
    assert_eq!(json(&yes)["condition"], "I");

    let no = hallpi(&["decide", "--group", "A:3:q=11", "--pi", "3,5", "--prop", "dpi"]);
    assert_eq!(no.status.code(), Some(1));
    assert_eq!(json(&no)["holds"], "no");

    let oos = hallpi(&["decide", "--group", "A:2:q=7", "--pi", "2,3", "--prop", "dpi"]);
    assert_eq!(oos.status.code(), Some(2));
    assert_eq!(json(&oos)["holds"], "out_of_scope");

    let bad = hallpi(&["decide", "--group", "A:2:q=6", "--pi", "3", "--prop", "dpi"]);
    assert_eq!(bad.status.code(), Some(3));
    assert!(!bad.stderr.is_empty());
    assert_eq!(hallpi(&["decide", "--group", "A:2:q=7", "--pi", "4", "--prop", "dpi"]).status.code(), Some(3));
    assert_eq!(hallpi(&["decide", "--group", "A:2:q=7"]).status.code(), Some(3));
}

#[test]
fn group_specs_round_trip() {
    for spec in ["A:2:q=7", "2A:3:q=4", "B:3:q=5", "3D4:q=2", "2F4:q=8", "G2:q=4", "E8:q=2"] {
        let o = hallpi(&["decide", "--group", spec, "--pi", "3,5", "--prop", "upi"]);
        assert!(o.status.code().unwrap() <= 2, "{spec}");
        let group = json(&o)["group"].as_str().unwrap().to_string();
        let again = hallpi(&["decide", "--group", &group, "--pi", "3,5", "--prop", "upi"]);
        assert_eq!(json(&again)["group"], group.as_str());
        assert_eq!(json(&again), json(&o));
    }
}

#[test]
fn classify_psl3_11() {
    let o = hallpi(&["classify", "--group", "A:3:q=11", "--pi", "3,5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["case"], "epi_case_2B(a)");
    let on = hallpi(&["classify", "--group", "ONan", "--pi", "3,5"]);
    assert_eq!(json(&on)["case"], "epi_case_1");
    let two = hallpi(&["classify", "--group", "A:2:q=7", "--pi", "2,3"]);
    assert_eq!(two.status.code(), Some(2));
}

#[test]
fn brute_and_cap() {
    let o = hallpi(&["brute", "--group", "psl2:7", "--pi", "3,7", "--prop", "dpi"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["holds"], true);
    let no = hallpi(&["brute", "--group", "alt:5", "--pi", "3,5", "--prop", "epi", "--format", "text"]);
    assert_eq!(no.status.code(), Some(1));
    let dump = hallpi(&["brute", "--group", "alt:5", "--pi", "3", "--prop", "star", "--dump-lattice", "--format", "text"]);
    assert_eq!(stdout(&dump).lines().filter(|l| l.starts_with("order=")).count(), 9);
    let capped = hallpi(&["brute", "--group", "alt:6", "--pi", "3", "--prop", "dpi", "--max-order", "100"]);
    assert_eq!(capped.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&capped.stderr).contains("100"));
}

#[test]
fn scan_to_file_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let args = ["scan", "--family", "A", "--n", "2..4", "--q", "4..13", "--pi-size", "2"];
    let run = |p: &std::path::Path, exec: &str| {
        let mut v: Vec<&str> = args.to_vec();
        v.extend(["--parallelism", exec, "--out", p.to_str().unwrap()]);
        assert_eq!(hallpi(&v).status.code(), Some(0));
    };
    run(&a, "parallel");
    run(&b, "sequential");
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("group,pi,epi,cpi,dpi,upi,condition"));
    let rows: Vec<&str> = lines.collect();
    assert!(rows.len() > 10);
    assert!(rows.iter().all(|r| !r.split(',').nth(1).unwrap().split(';').any(|p| p == "2")));
    assert!(rows.contains(&"A:3:q=5,3;31,yes,yes,yes,yes,II(a)"));
}

#[test]
fn config_file_sets_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("hallpi.toml");
    std::fs::write(&cfg, "format = \"text\"\nmax_group_order = 50\n").unwrap();
    let c = cfg.to_str().unwrap();
    let o = hallpi(&["--config", c, "decide", "--group", "A:2:q=7", "--pi", "3,7", "--prop", "dpi"]);
    assert!(stdout(&o).starts_with("D A:2:q=7"));
    let capped = hallpi(&["--config", c, "brute", "--group", "alt:5", "--pi", "3", "--prop", "dpi"]);
    assert_eq!(capped.status.code(), Some(3));
    std::fs::write(&cfg, "colour = \"red\"\n").unwrap();
    assert_eq!(hallpi(&["--config", c, "decide", "--group", "A:2:q=7", "--pi", "3", "--prop", "dpi"]).status.code(), Some(3));
}

#[test]
fn verify_with_grid_file() {
    let dir = tempfile::tempdir().unwrap();
    let grid = dir.path().join("grid.json");
    std::fs::write(&grid, r#"{"groups":["A:2:q=5","A:2:q=7"]}"#).unwrap();
    let o = hallpi(&["verify", "cross", "--grid", grid.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let report = json(&o);
    assert_eq!(report["suite"], "cross");
    assert_eq!(report["summary"]["disagree"], 0);
    std::fs::write(&grid, r#"{"groups":["A:2:q=6"]}"#).unwrap();
    assert_eq!(hallpi(&["verify", "cross", "--grid", grid.to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn documented_examples() {
    let e = hallpi(&["decide", "--group", "A:3:q=11", "--pi", "3,5", "--prop", "epi"]);
    assert_eq!(e.status.code(), Some(0));
    assert_eq!(json(&e)["condition"], "epi_case_2B(a)");

    let a5 = hallpi(&["brute", "--group", "alt:5", "--pi", "2,3", "--prop", "dpi"]);
    assert_eq!(a5.status.code(), Some(1));
    let mut orders: Vec<u64> = json(&a5)["witnesses"].as_array().unwrap().iter().map(|w| w["order"].as_u64().unwrap()).collect();
    orders.sort();
    assert_eq!(orders, [6, 12]);

    let p16 = hallpi(&["brute", "--group", "psl2:16", "--pi", "3,5", "--prop", "epi"]);
    assert_eq!(p16.status.code(), Some(0));

    let scan = hallpi(&["scan", "--family", "A", "--n", "2..4", "--q", "4..13", "--pi-size", "2"]);
    assert!(stdout(&scan).lines().any(|l| l == "A:2:q=7,3;7,yes,yes,yes,yes,I"));

    assert_eq!(hallpi(&["verify", "exclusivity", "--format", "text"]).status.code(), Some(0));
    assert_eq!(hallpi(&["verify", "all"]).status.code(), Some(0));
}
