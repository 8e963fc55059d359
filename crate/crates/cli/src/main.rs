use std::collections::BTreeMap;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use serde::Serialize;

use sigma1_core::classify::StructuralProfile;
use sigma1_core::config::Limits;
use sigma1_core::constructions::build;
use sigma1_core::verify::{
    family_report, run_suites, scan_reports, search_open_report, FamilyRow, Report, Status,
    DEFAULT_VERIFY_MAX_ORDER, SUITE_NAMES,
};
use sigma1_core::{all_subgroups, Group, Rational, Sigma1Breakdown, SubgroupLattice};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "sigma1", version, about = "Subgroup-order sums σ₁(G) of small finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// σ₁, subgroup counts and structural profile of one group
    Group {
        /// Group expression, e.g. C2xC4, A4, C7:C3, E25:C3
        expr: String,
        #[arg(long)]
        json: bool,
    },
    /// Every subgroup with its conjugacy class
    Lattice {
        expr: String,
        #[arg(long)]
        json: bool,
    },
    /// Bound checks over the catalog of groups of order ≤ N (N ≤ 15)
    Scan {
        #[arg(long)]
        max_order: usize,
        #[arg(long)]
        json: bool,
    },
    /// The (Cp×Cp)⋊Cq family with σ₁ decreasing to 2
    Family {
        #[arg(long)]
        count: usize,
        #[arg(long)]
        json: bool,
    },
    /// Search for n ≤ L with σ(n) = 2n + 11
    SearchOpen {
        #[arg(long)]
        limit: u64,
        /// Sieve every n instead of only those with odd σ(n)
        #[arg(long)]
        no_prefilter: bool,
        #[arg(long)]
        json: bool,
    },
    /// Run one verification suite, or all of them
    Verify {
        #[arg(default_value = "all")]
        suite: String,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = DEFAULT_VERIFY_MAX_ORDER)]
        max_order: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = Limits::from_env() {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_USAGE);
    }
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAIL),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

/// Returns whether every report passed.
fn run(command: Command) -> Result<bool> {
    match command {
        Command::Group { expr, json } => cmd_group(&expr, json),
        Command::Lattice { expr, json } => cmd_lattice(&expr, json),
        Command::Scan { max_order, json } => {
            let reports = scan_reports(max_order)?;
            emit_reports(&reports, json, &[("max_order", max_order.to_string())])
        }
        Command::Family { count, json } => cmd_family(count, json),
        Command::SearchOpen {
            limit,
            no_prefilter,
            json,
        } => cmd_search_open(limit, !no_prefilter, json),
        Command::Verify {
            suite,
            json,
            max_order,
        } => {
            if suite != "all" && !SUITE_NAMES.contains(&suite.as_str()) {
                anyhow::bail!(
                    "unknown suite {suite:?}; expected all or one of: {}",
                    SUITE_NAMES.join(", ")
                );
            }
            let reports = run_suites(&suite, max_order)?;
            emit_reports(&reports, json, &[("max_order", max_order.to_string())])
        }
    }
}

fn analyze(expr: &str) -> Result<SubgroupLattice> {
    let group = build(expr).with_context(|| format!("cannot build {expr:?}"))?;
    Ok(all_subgroups(&Arc::new(group))?)
}

#[derive(Serialize)]
struct GroupRecord<'a> {
    expr: &'a str,
    order: usize,
    sigma1: Rational,
    sigma1_decimal: f64,
    breakdown: BTreeMap<String, u64>,
    total_sum: u64,
    profile: StructuralProfile,
}

fn cmd_group(expr: &str, json: bool) -> Result<bool> {
    let lattice = analyze(expr)?;
    let breakdown = Sigma1Breakdown::from_lattice(&lattice)?;
    let profile = StructuralProfile::of(&lattice)?;
    let record = GroupRecord {
        expr,
        order: lattice.group().order(),
        sigma1: breakdown.sigma1,
        sigma1_decimal: breakdown.sigma1.to_f64(),
        breakdown: breakdown
            .counts
            .iter()
            .map(|(o, c)| (o.to_string(), *c))
            .collect(),
        total_sum: breakdown.total_sum,
        profile,
    };
    if json {
        print_json(&record)?;
        return Ok(true);
    }
    let p = &record.profile;
    println!("group     {expr}");
    println!("order     {}", record.order);
    println!(
        "sigma1    {} ≈ {:.6}",
        record.sigma1.to_fraction_string(),
        record.sigma1_decimal
    );
    let counts: Vec<String> = breakdown
        .counts
        .iter()
        .map(|(o, c)| format!("{o}:{c}"))
        .collect();
    println!("subgroups {} (total order {})", counts.join(" "), record.total_sum);
    for (label, value) in [
        ("cyclic", p.is_cyclic),
        ("abelian", p.is_abelian),
        ("p-group", p.is_p_group),
        ("nilpotent", p.is_nilpotent),
        ("supersolvable", p.is_supersolvable),
        ("solvable", p.is_solvable),
        ("cyclic maximal", p.has_cyclic_maximal),
    ] {
        println!("{label:<15} {value}");
    }
    println!("non-normal maximal classes {}", p.nonnormal_maximal_class_count);
    for (bound, verdict) in &p.bound_verdicts {
        println!("vs {bound:<19} {verdict:?}");
    }
    Ok(true)
}

#[derive(Serialize)]
struct SubgroupRecord {
    index: usize,
    order: usize,
    normal: bool,
    maximal: bool,
    class: usize,
    generators: Vec<String>,
}

#[derive(Serialize)]
struct ClassRecord {
    index: usize,
    order: usize,
    size: usize,
    normal: bool,
    members: Vec<usize>,
}

#[derive(Serialize)]
struct LatticeRecord<'a> {
    expr: &'a str,
    order: usize,
    subgroup_count: usize,
    subgroups: Vec<SubgroupRecord>,
    classes: Vec<ClassRecord>,
}

fn cmd_lattice(expr: &str, json: bool) -> Result<bool> {
    let lattice = analyze(expr)?;
    let g: &Group = lattice.group();
    let subgroups = lattice
        .subgroups()
        .iter()
        .enumerate()
        .map(|(i, h)| SubgroupRecord {
            index: i,
            order: h.order(),
            normal: h.is_normal(),
            maximal: lattice.is_maximal(i),
            class: lattice.class_of(i),
            generators: h.generators().iter().map(|&x| g.element(x).to_string()).collect(),
        })
        .collect();
    let classes = lattice
        .classes()
        .iter()
        .enumerate()
        .map(|(i, c)| ClassRecord {
            index: i,
            order: c.order,
            size: c.size(),
            normal: c.is_normal,
            members: c.members.clone(),
        })
        .collect();
    let record = LatticeRecord {
        expr,
        order: g.order(),
        subgroup_count: lattice.len(),
        subgroups,
        classes,
    };
    if json {
        print_json(&record)?;
        return Ok(true);
    }
    println!("{expr}: order {}, {} subgroups", record.order, record.subgroup_count);
    for s in &record.subgroups {
        let mut flags = Vec::new();
        if s.normal {
            flags.push("normal");
        }
        if s.maximal {
            flags.push("maximal");
        }
        println!(
            "  H{:<4} order {:<5} class {:<4} {:<16} <{}>",
            s.index,
            s.order,
            s.class,
            flags.join(","),
            s.generators.join(", ")
        );
    }
    Ok(true)
}

#[derive(Serialize)]
struct FamilyRecord {
    report: Report,
    rows: Vec<FamilyRow>,
}

fn cmd_family(count: usize, json: bool) -> Result<bool> {
    let (report, rows) = family_report(count)?;
    let passed = report.passed();
    if json {
        print_json(&FamilyRecord { report, rows })?;
        return Ok(passed);
    }
    println!(
        "{:>4} {:>5} {:>10} {:>24} {:>12} {:>14} {:>10}",
        "q", "p", "|G|", "sigma1", "decimal", "supersolvable", "source"
    );
    for r in &rows {
        println!(
            "{:>4} {:>5} {:>10} {:>24} {:>12.8} {:>14} {:>10}",
            r.q,
            r.p,
            r.order,
            r.sigma1.to_fraction_string(),
            r.sigma1_decimal,
            r.supersolvable,
            if r.enumerated { "lattice" } else { "formula" }
        );
    }
    print_report_text(&report);
    Ok(passed)
}

#[derive(Serialize)]
struct Solution {
    n: u64,
    sigma: u64,
}

#[derive(Serialize)]
struct SearchRecord {
    limit: u64,
    prefilter: bool,
    solutions: Vec<Solution>,
    report: Report,
}

fn cmd_search_open(limit: u64, prefilter: bool, json: bool) -> Result<bool> {
    let (report, hits) = search_open_report(limit, prefilter)?;
    let solutions = hits
        .into_iter()
        .map(|n| Ok(Solution { n, sigma: sigma1_core::arith::divisor_sigma(n)? }))
        .collect::<Result<Vec<_>>>()?;
    let passed = report.passed();
    if json {
        print_json(&SearchRecord {
            limit,
            prefilter,
            solutions,
            report,
        })?;
        return Ok(passed);
    }
    if solutions.is_empty() {
        println!("no n ≤ {limit} with σ(n) = 2n + 11");
    }
    for s in &solutions {
        println!("n = {}  σ(n) = {} = 2n + 11", s.n, s.sigma);
    }
    print_report_text(&report);
    Ok(passed)
}

#[derive(Serialize)]
struct ReportSet<'a> {
    parameters: BTreeMap<&'a str, String>,
    overall: Status,
    reports: &'a [Report],
}

fn emit_reports(reports: &[Report], json: bool, parameters: &[(&str, String)]) -> Result<bool> {
    let passed = reports.iter().all(Report::passed);
    if json {
        print_json(&ReportSet {
            parameters: parameters.iter().cloned().collect(),
            overall: if passed { Status::Pass } else { Status::Fail },
            reports,
        })?;
    } else {
        for r in reports {
            print_report_text(r);
        }
        println!("overall: {}", if passed { "PASS" } else { "FAIL" });
    }
    Ok(passed)
}

fn print_report_text(r: &Report) {
    println!(
        "[{:?}] {} ({} instances, {} failures, {} ms)",
        r.status, r.suite, r.instances, r.failures, r.wall_time_ms
    );
    println!("    claim: {}", r.claim);
    println!("    population: {}", r.population);
    for w in &r.witnesses {
        println!("    witness {}: {}", w.group, w.detail);
    }
    for n in &r.notes {
        println!("    note: {n}");
    }
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}
