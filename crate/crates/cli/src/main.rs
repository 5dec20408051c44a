mod config;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use hallpi::arith::{dividing_primes, primes_up_to, PrimeSet};
use hallpi::lie::{group_order, parse_group_id, Family, GroupId};
use hallpi::oracle::{classify_epi_minus_dpi, decide, ConditionTag, EpiSubject, Holds, Property, TraceRecord, Verdict};
use hallpi::par::{self, Execution};
use hallpi::perm::{construct_named, enumerate_subgroups, Brute, BruteProperty};
use hallpi::verify::{
    cross_check_simple, exclusivity_scan, main_theorem_check, star_consistency_check, ExclusivityGrid, Grid, VerifyOptions,
};
use serde::Serialize;

use config::{Config, Format};

const EXIT_YES: u8 = 0;
const EXIT_NO: u8 = 1;
const EXIT_OUT_OF_SCOPE: u8 = 2;
const EXIT_INPUT: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "hallpi", version, about = "Hall properties E_pi, C_pi, D_pi, U_pi of finite simple groups")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Refuse permutation groups above this order.
    #[arg(long, global = true)]
    max_order: Option<u64>,
    /// TOML configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// sequential or parallel.
    #[arg(long, global = true)]
    parallelism: Option<Execution>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide a property for a simple group of Lie type.
    Decide {
        /// Group descriptor such as A:2:q=7 or 2F4:q=8.
        #[arg(long)]
        group: String,
        /// Comma-separated primes, e.g. 3,7.
        #[arg(long)]
        pi: String,
        /// epi, cpi, dpi or upi.
        #[arg(long)]
        prop: Property,
    },
    /// Locate a group in the E_pi \ D_pi classification (2 ∉ pi).
    Classify {
        /// Lie descriptor, or ONan.
        #[arg(long)]
        group: String,
        #[arg(long)]
        pi: String,
    },
    /// Brute-force a property on a concrete permutation group.
    Brute {
        /// alt:n, sym:n, psl2:q, cyclic:n, dihedral:n, product:AxB or raw:<deg>:<cycles;…>.
        #[arg(long)]
        group: String,
        #[arg(long)]
        pi: String,
        /// epi, cpi, dpi, upi or star.
        #[arg(long)]
        prop: BruteProperty,
        /// Also print the subgroup lattice, one class per line.
        #[arg(long)]
        dump_lattice: bool,
    },
    /// Tabulate verdicts over a family, a rank range and a q range.
    Scan {
        /// Family symbol: A, 2A, B, C, D, 2D, 3D4, E6, 2E6, E7, E8, F4, G2, 2B2, 2F4, 2G2.
        #[arg(long)]
        family: String,
        /// Inclusive dimension or rank range, e.g. 2..4 (ignored for exceptional families).
        #[arg(long, default_value = "2")]
        n: String,
        /// Inclusive range of q, e.g. 4..13; non prime powers are skipped.
        #[arg(long)]
        q: String,
        /// Size of each pi.
        #[arg(long)]
        pi_size: Option<usize>,
        /// Only odd primes up to this bound are candidates.
        #[arg(long)]
        max_prime: Option<u64>,
        /// Write to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run verifier suites.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Grid JSON; defaults to the pinned desk grid.
        #[arg(long)]
        grid: Option<PathBuf>,
        /// Include per-case runtimes.
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Cross,
    MainTheorem,
    Star,
    Exclusivity,
    All,
}

type SuiteFn = fn(&Grid, &VerifyOptions) -> hallpi::verify::CrossCheckReport;

struct Ctx {
    format: Format,
    max_order: u64,
    exec: Execution,
    cfg: Config,
}

fn parse_pi(s: &str) -> Result<PrimeSet> {
    let primes = s
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<u64>().with_context(|| format!("'{t}' in --pi is not an integer")))
        .collect::<Result<Vec<_>>>()?;
    PrimeSet::new(primes).context("--pi must list primes")
}

fn parse_range(s: &str, what: &str) -> Result<(u64, u64)> {
    let parse = |t: &str| t.trim().parse::<u64>().with_context(|| format!("bad {what} bound '{t}'"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
        None => {
            let v = parse(s)?;
            (v, v)
        }
    };
    if lo > hi {
        bail!("empty {what} range {s}");
    }
    Ok((lo, hi))
}

fn holds_code(h: Holds) -> u8 {
    match h {
        Holds::Yes => EXIT_YES,
        Holds::No => EXIT_NO,
        Holds::OutOfScope => EXIT_OUT_OF_SCOPE,
    }
}

fn emit(out: &mut impl Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes())?;
    if !text.ends_with('\n') {
        out.write_all(b"\n")?;
    }
    Ok(())
}

fn json_line<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

fn cmd_decide(ctx: &Ctx, group: &str, pi: &str, prop: Property) -> Result<u8> {
    let g = parse_group_id(group)?;
    let pi = parse_pi(pi)?;
    let v = decide(&g, &pi, prop);
    let mut out = std::io::stdout().lock();
    match ctx.format {
        Format::Json => emit(&mut out, &v.to_json())?,
        Format::Text => emit(&mut out, &v.to_text())?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(vec![]);
            w.write_record(["group", "pi", "property", "holds", "condition"])?;
            w.write_record([
                v.group.clone(),
                pi_cell(&v.pi),
                v.property.to_string(),
                v.holds.to_string(),
                tag_cell(v.condition),
            ])?;
            emit(&mut out, &String::from_utf8(w.into_inner()?)?)?;
        }
    }
    Ok(holds_code(v.holds))
}

#[derive(Serialize)]
struct ClassifyOutput {
    group: String,
    pi: PrimeSet,
    case: Option<ConditionTag>,
    out_of_scope: bool,
    trace: Vec<TraceRecord>,
}

fn cmd_classify(ctx: &Ctx, group: &str, pi: &str) -> Result<u8> {
    let pi = parse_pi(pi)?;
    let subject = match group.trim() {
        "ONan" | "O'N" | "ON" => EpiSubject::ONan,
        s => EpiSubject::Lie(parse_group_id(s)?),
    };
    let label = match &subject {
        EpiSubject::ONan => "ONan".to_string(),
        EpiSubject::Lie(g) => g.to_string(),
    };
    let (output, code) = if pi.contains(2) {
        (ClassifyOutput { group: label, pi, case: None, out_of_scope: true, trace: Vec::new() }, EXIT_OUT_OF_SCOPE)
    } else {
        let (case, trace) = classify_epi_minus_dpi(&subject, &pi)?;
        let code = if case.is_some() { EXIT_YES } else { EXIT_NO };
        (ClassifyOutput { group: label, pi, case, out_of_scope: false, trace: trace.into_records() }, code)
    };
    let mut out = std::io::stdout().lock();
    match ctx.format {
        Format::Json => emit(&mut out, &json_line(&output))?,
        _ => {
            let head = match (&output.case, output.out_of_scope) {
                (_, true) => "out_of_scope (2 ∈ pi)".to_string(),
                (Some(c), _) => format!("E_pi \\ D_pi case {c}"),
                (None, _) => "no case of the E_pi \\ D_pi classification applies".to_string(),
            };
            let mut s = format!("{} {}: {head}\n", output.group, output.pi);
            for r in &output.trace {
                s.push_str(&format!("  {} {} {}\n", if r.value { "+" } else { "-" }, r.pred, r.args));
            }
            emit(&mut out, &s)?;
        }
    }
    Ok(code)
}

#[derive(Serialize)]
struct LatticeLine {
    order: u64,
    class_size: u64,
    gens: String,
}

fn cmd_brute(ctx: &Ctx, group: &str, pi: &str, prop: BruteProperty, dump: bool) -> Result<u8> {
    let pi = parse_pi(pi)?;
    let g = construct_named(group)?;
    let lattice = enumerate_subgroups(&g, ctx.max_order)?;
    let brute = Brute::new(&lattice, group.trim());
    let outcome = brute.evaluate(&pi, prop);
    let mut out = std::io::stdout().lock();
    match ctx.format {
        Format::Json => {
            if dump {
                let lines: Vec<LatticeLine> = lattice
                    .classes
                    .iter()
                    .map(|c| LatticeLine { order: c.order, class_size: c.class_size, gens: lattice.gens_string(&c.gens) })
                    .collect();
                emit(&mut out, &json_line(&serde_json::json!({ "lattice": lines })))?;
            }
            emit(&mut out, &json_line(&outcome))?;
        }
        _ => {
            if dump {
                emit(&mut out, &lattice.dump())?;
            }
            emit(&mut out, &outcome.to_text())?;
        }
    }
    Ok(if outcome.holds { EXIT_YES } else { EXIT_NO })
}

fn pi_cell(pi: &PrimeSet) -> String {
    pi.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(";")
}

fn tag_cell(t: Option<ConditionTag>) -> String {
    t.map(|t| t.to_string()).unwrap_or_default()
}

#[derive(Serialize)]
struct ScanRow {
    group: String,
    pi: String,
    epi: Holds,
    cpi: Holds,
    dpi: Holds,
    upi: Holds,
    condition: String,
}

fn scan_rows(g: &GroupId, pi_size: usize, max_prime: u64) -> Vec<ScanRow> {
    let candidates = PrimeSet::new(primes_up_to(max_prime).into_iter().filter(|&t| t > 2)).expect("primes");
    let odd = dividing_primes(&group_order(g), &candidates);
    odd.subsets_of_size(pi_size)
        .into_iter()
        .map(|pi| {
            let v = |p| decide(g, &pi, p);
            let (e, c, d, u): (Verdict, Verdict, Verdict, Verdict) =
                (v(Property::E), v(Property::C), v(Property::D), v(Property::U));
            let condition = if d.holds == Holds::Yes {
                d.condition
            } else if e.holds == Holds::Yes {
                e.condition
            } else {
                None
            };
            ScanRow {
                group: g.to_string(),
                pi: pi_cell(&pi),
                epi: e.holds,
                cpi: c.holds,
                dpi: d.holds,
                upi: u.holds,
                condition: tag_cell(condition),
            }
        })
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn cmd_scan(
    ctx: &Ctx,
    family: &str,
    n: &str,
    q: &str,
    pi_size: Option<usize>,
    max_prime: Option<u64>,
    out_path: Option<&PathBuf>,
) -> Result<u8> {
    let fam = Family::from_symbol(family.trim()).ok_or_else(|| anyhow!("unknown family '{family}'"))?;
    let (n_lo, n_hi) = parse_range(n, "n")?;
    let (q_lo, q_hi) = parse_range(q, "q")?;
    let pi_size = pi_size.unwrap_or(ctx.cfg.scan.pi_size);
    if pi_size == 0 {
        bail!("--pi-size must be positive");
    }
    let max_prime = max_prime.or((ctx.cfg.scan.max_prime > 0).then_some(ctx.cfg.scan.max_prime)).unwrap_or(101);
    let ns: Vec<u64> = if fam.is_parametric() { (n_lo..=n_hi).collect() } else { vec![0] };
    let mut groups = Vec::new();
    for &nn in &ns {
        for qq in q_lo.max(2)..=q_hi {
            if let Ok(g) = GroupId::with_q(fam, nn as u32, qq) {
                groups.push(g);
            }
        }
    }
    let rows: Vec<ScanRow> = par::map(&groups, ctx.exec, |g| scan_rows(g, pi_size, max_prime)).into_iter().flatten().collect();
    let format = if ctx.format == Format::Text && out_path.is_some() { Format::Csv } else { ctx.format };
    let text = match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(vec![]);
            w.write_record(["group", "pi", "epi", "cpi", "dpi", "upi", "condition"])?;
            for r in &rows {
                w.write_record([
                    &r.group,
                    &r.pi,
                    &r.epi.to_string(),
                    &r.cpi.to_string(),
                    &r.dpi.to_string(),
                    &r.upi.to_string(),
                    &r.condition,
                ])?;
            }
            String::from_utf8(w.into_inner()?)?
        }
        Format::Json => rows.iter().map(|r| json_line(r) + "\n").collect(),
        Format::Text => {
            let mut s =
                format!("{:<14} {:<12} {:<12} {:<12} {:<12} {:<12} {}\n", "group", "pi", "epi", "cpi", "dpi", "upi", "condition");
            for r in &rows {
                s.push_str(&format!(
                    "{:<14} {:<12} {:<12} {:<12} {:<12} {:<12} {}\n",
                    r.group,
                    r.pi,
                    r.epi.to_string(),
                    r.cpi.to_string(),
                    r.dpi.to_string(),
                    r.upi.to_string(),
                    r.condition
                ));
            }
            s
        }
    };
    match out_path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => emit(&mut std::io::stdout().lock(), &text)?,
    }
    Ok(EXIT_YES)
}

fn cmd_verify(ctx: &Ctx, suite: Suite, grid: Option<&PathBuf>, timings: bool) -> Result<u8> {
    let grid = match grid {
        Some(p) => Grid::load(p)?,
        None => Grid::default_grid(),
    };
    let opts = VerifyOptions { exec: ctx.exec, timings, max_order: Some(ctx.max_order) };
    let mut out = std::io::stdout().lock();
    let mut passed = true;
    let wanted = |s: Suite| suite == s || suite == Suite::All;
    let json = ctx.format == Format::Json;
    let runs: [(Suite, SuiteFn); 3] =
        [(Suite::Cross, cross_check_simple), (Suite::MainTheorem, main_theorem_check), (Suite::Star, star_consistency_check)];
    for (s, run) in runs {
        if wanted(s) {
            let r = run(&grid, &opts);
            passed &= r.passed();
            emit(&mut out, &if json { json_line(&r) } else { r.to_text() })?;
        }
    }
    if wanted(Suite::Exclusivity) {
        let r = exclusivity_scan(&ExclusivityGrid::default(), ctx.exec);
        passed &= r.passed();
        emit(&mut out, &if json { json_line(&r) } else { r.to_text() })?;
    }
    Ok(if passed { 0 } else { 1 })
}

fn run(cli: Cli) -> Result<u8> {
    let cfg = Config::load(cli.config.as_deref())?;
    let max_order = cli.max_order.unwrap_or(cfg.max_group_order);
    if max_order == 0 {
        bail!("--max-order must be positive");
    }
    let default_format = match cli.command {
        Command::Scan { .. } => Format::Csv,
        _ => Format::Json,
    };
    let ctx = Ctx {
        format: cli.format.or(cfg.format).unwrap_or(default_format),
        max_order,
        exec: cli.parallelism.unwrap_or(cfg.parallelism),
        cfg,
    };
    match &cli.command {
        Command::Decide { group, pi, prop } => cmd_decide(&ctx, group, pi, *prop),
        Command::Classify { group, pi } => cmd_classify(&ctx, group, pi),
        Command::Brute { group, pi, prop, dump_lattice } => cmd_brute(&ctx, group, pi, *prop, *dump_lattice),
        Command::Scan { family, n, q, pi_size, max_prime, out } => {
            cmd_scan(&ctx, family, n, q, *pi_size, *max_prime, out.as_ref())
        }
        Command::Verify { suite, grid, timings } => cmd_verify(&ctx, *suite, grid.as_ref(), *timings),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
