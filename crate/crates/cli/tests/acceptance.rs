//! Acceptance criteria, one line per criterion. Runs without the libtest
//! harness so the summary is always printed.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::sync::Arc;
use std::time::{Duration, Instant};

use serde_json::Value;
use sigma1_core::arith::{abundance_class, divisor_sigma, Abundance};
use sigma1_core::classify::{
    is_nilpotent, is_nilpotent_by_series, is_supersolvable, is_supersolvable_by_chain,
};
use sigma1_core::constructions::{build, family_gn_bounded, zp_rtimes_zn};
use sigma1_core::invariants::{
    cyclic_subgroup_sum, nonnormal_maximal_class_sum, nonnormal_maximal_classes, sigma1_of_lattice,
};
use sigma1_core::iso::are_isomorphic;
use sigma1_core::lattice::all_subgroups_bounded;
use sigma1_core::products::{direct_product, quotient_group};
use sigma1_core::verify::{Population, Status, DEFAULT_VERIFY_MAX_ORDER};
use sigma1_core::{rat, sigma1, Group, Rational};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn arc(expr: &str) -> Result<Arc<Group>, String> {
    Ok(Arc::new(build(expr).map_err(e)?))
}

fn two_plus(num: i64, den: i64) -> Rational {
    rat!(2).checked_add(rat!(num, den)).unwrap()
}

fn population() -> Result<Population, String> {
    Population::standard(DEFAULT_VERIFY_MAX_ORDER).map_err(e)
}

fn sigma1_cli(args: &[&str]) -> Result<(Vec<u8>, Duration), String> {
    let started = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_sigma1"))
        .args(args)
        .env_remove("SIGMA1_MAX_GROUP_ORDER")
        .env_remove("SIGMA1_MAX_LATTICE_ORDER")
        .output()
        .map_err(e)?;
    let elapsed = started.elapsed();
    ensure(out.status.success(), || {
        format!("{args:?} exited {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr))
    })?;
    Ok((out.stdout, elapsed))
}

fn exact_values() -> Outcome {
    let mut cases: Vec<(String, Rational)> = vec![
        ("Q8".into(), rat!(23, 8)),
        ("C2xC4".into(), rat!(27, 8)),
        ("A4".into(), rat!(35, 12)),
        ("F8".into(), rat!(163, 56)),
    ];
    for p in [2i64, 3, 5, 7] {
        cases.push((format!("C{p}xC{p}"), two_plus(p + 1, p * p)));
    }
    let mut slowest = Duration::ZERO;
    for (expr, expected) in &cases {
        let started = Instant::now();
        let s = sigma1(&arc(expr)?).map_err(e)?;
        let elapsed = started.elapsed();
        slowest = slowest.max(elapsed);
        ensure(s == *expected, || format!("σ₁({expr}) = {s}, expected {expected}"))?;
        ensure(elapsed < Duration::from_secs(1), || format!("{expr} took {elapsed:?}"))?;
    }
    Ok(format!("{} exact values, slowest {slowest:?}", cases.len()))
}

fn theorem22_scan() -> Outcome {
    let started = Instant::now();
    let pop = population()?;
    ensure(pop.members.len() == 34, || format!("population has {} groups", pop.members.len()))?;
    let mut below = 0;
    for m in &pop.members {
        let bound = two_plus(11, m.order() as i64);
        if m.profile.sigma1 < bound {
            below += 1;
            ensure(is_supersolvable_by_chain(&m.lattice).map_err(e)?, || {
                format!("{} has σ₁ < 2 + 11/|G| but no cyclic normal series", m.name)
            })?;
            ensure(m.profile.is_supersolvable, || format!("{} not supersolvable", m.name))?;
        }
    }
    let elapsed = started.elapsed();
    ensure(elapsed < Duration::from_secs(10), || format!("took {elapsed:?}"))?;
    Ok(format!("{below} of 34 groups below the bound, all supersolvable, {elapsed:?}"))
}

fn theorem24_scan() -> Outcome {
    let pop = population()?;
    let equal: BTreeSet<&str> = pop
        .members
        .iter()
        .filter(|m| !m.profile.is_cyclic && m.profile.sigma1 == two_plus(11, m.order() as i64))
        .map(|m| m.name.as_str())
        .collect();
    ensure(equal == BTreeSet::from(["A4", "C2xC4"]), || format!("EQUAL set {equal:?}"))?;
    for (p, n) in [(3, 2), (5, 2), (5, 4), (7, 2), (7, 3), (7, 6)] {
        let g = Arc::new(zp_rtimes_zn(p, n).map_err(e)?);
        let s = sigma1(&g).map_err(e)?;
        ensure(s != two_plus(11, g.order() as i64), || format!("C{p}:C{n} has σ₁ = 2 + 11/|G|"))?;
    }
    Ok("EQUAL set {A4, C2xC4}; six semidirect cases all differ".into())
}

fn lemma13_and_14() -> Outcome {
    let pop = population()?;
    let mut classes = 0;
    for m in &pop.members {
        let order = m.order() as u64;
        for c in nonnormal_maximal_classes(&m.lattice) {
            classes += 1;
            let sum = nonnormal_maximal_class_sum(&m.lattice, c).map_err(e)?;
            ensure(sum == order, || format!("{}: class sum {sum} ≠ {order}", m.name))?;
        }
        let cyclic = cyclic_subgroup_sum(&m.lattice).map_err(e)?;
        ensure(cyclic >= order, || format!("{}: cyclic sum {cyclic} < {order}", m.name))?;
    }
    Ok(format!("{classes} non-normal maximal classes, {} cyclic sums", pop.members.len()))
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn section_one_properties() -> Outcome {
    let pop = population()?;
    let catalog: Vec<_> = pop.members.iter().filter(|m| m.order() <= 15).collect();
    let mut products = 0;
    for (i, a) in catalog.iter().enumerate() {
        for b in &catalog[i + 1..] {
            if a.order() > 1 && b.order() > 1 && gcd(a.order(), b.order()) == 1 && a.order() * b.order() <= 200 {
                let g = Arc::new(direct_product(a.group(), b.group()).map_err(e)?);
                let lhs = sigma1(&g).map_err(e)?;
                let rhs = a.profile.sigma1.checked_mul(b.profile.sigma1).map_err(e)?;
                ensure(lhs == rhs, || format!("{}x{}: {lhs} ≠ {rhs}", a.name, b.name))?;
                products += 1;
            }
        }
    }
    let mut quotients = 0;
    for m in &pop.members {
        for n in m.lattice.normal_subgroups() {
            let sub = m.lattice.subgroup(n);
            let q = Arc::new(quotient_group(m.group(), sub.members()).map_err(e)?);
            let sq = sigma1(&q).map_err(e)?;
            let sn = Rational::from_counts(
                m.lattice
                    .subgroups()
                    .iter()
                    .filter(|k| k.is_subgroup_of(sub))
                    .map(|k| k.order() as u64)
                    .sum(),
                sub.order() as u64,
            )
            .map_err(e)?;
            let index = Rational::from_counts(q.order() as u64, 1).map_err(e)?;
            let middle = sq
                .checked_add(sn.checked_sub(Rational::ONE).map_err(e)?.checked_div(index).map_err(e)?)
                .map_err(e)?;
            ensure(m.profile.sigma1 >= middle && middle >= sq, || {
                format!("{}: quotient inequality fails for |N| = {}", m.name, sub.order())
            })?;
            quotients += 1;
        }
    }
    for n in 1..=500u64 {
        let g = arc(&format!("C{n}"))?;
        let l = all_subgroups_bounded(&g, 500).map_err(e)?;
        let naive: u64 = (1..=n).filter(|d| n % d == 0).sum();
        let s = sigma1_of_lattice(&l).map_err(e)?;
        ensure(s == Rational::from_counts(naive, n).map_err(e)?, || format!("σ₁(C{n}) = {s}"))?;
        ensure(divisor_sigma(n).map_err(e)? == naive, || format!("σ({n})"))?;
    }
    for m in &pop.members {
        let n = m.order() as u64;
        if m.profile.sigma1 <= rat!(2) {
            let class = abundance_class(n).map_err(e)?;
            ensure(m.profile.is_cyclic && class != Abundance::Abundant, || {
                format!("{}: σ₁ ≤ 2 but cyclic = {}, {class:?}", m.name, m.profile.is_cyclic)
            })?;
        }
        if m.profile.sigma1 < two_plus(4, n as i64) {
            ensure(m.profile.is_nilpotent, || format!("{}: below 2 + 4/|G| but not nilpotent", m.name))?;
        }
    }
    Ok(format!(
        "{products} coprime products, {quotients} quotients, C1..C500, σ₁ ≤ 2 and 2 + 4/|G| bounds"
    ))
}

fn family() -> Outcome {
    let members = family_gn_bounded(5, 2048).map_err(e)?;
    let a4 = build("A4").map_err(e)?;
    let mut materialized = 0;
    for (i, m) in members.iter().enumerate() {
        ensure(m.closed_form > rat!(2), || format!("q = {}: σ₁ ≤ 2", m.q))?;
        if i > 0 {
            ensure(m.closed_form < members[i - 1].closed_form, || format!("q = {}: not decreasing", m.q))?;
        }
        if let Some(g) = &m.group {
            let l = all_subgroups_bounded(g, 2048).map_err(e)?;
            ensure(!is_supersolvable(&l), || format!("q = {}: supersolvable", m.q))?;
            // independent of the closed form: the subgroup census over p²q
            let (p, q) = (m.p, m.q);
            let census = Rational::from_counts(1 + (p + 1) * p + p * p + 2 * p * p * q, p * p * q).map_err(e)?;
            let s = sigma1_of_lattice(&l).map_err(e)?;
            ensure(s == m.closed_form && s == census, || {
                format!("q = {q}: enumerated {s}, closed form {}, census {census}", m.closed_form)
            })?;
            if m.q == 3 {
                ensure(are_isomorphic(g, &a4).map_err(e)?, || "q = 3 member is not A4".into())?;
            }
            materialized += 1;
        }
    }
    ensure(materialized >= 2, || format!("only {materialized} members materialized"))?;
    Ok(format!("5 terms decreasing and > 2, {materialized} enumerated and equal to the closed form"))
}

fn classifier_agreement() -> Outcome {
    let pop = population()?;
    let mut checked = 0;
    for m in pop.members.iter().filter(|m| m.order() <= 100) {
        let chain = is_supersolvable_by_chain(&m.lattice).map_err(e)?;
        ensure(chain == is_supersolvable(&m.lattice), || format!("{}: supersolvable disagreement", m.name))?;
        let series = is_nilpotent_by_series(m.group());
        ensure(series == is_nilpotent(&m.lattice), || format!("{}: nilpotent disagreement", m.name))?;
        checked += 1;
    }
    Ok(format!("{checked} groups, zero disagreements"))
}

fn open_problem_search() -> Outcome {
    let (with, t1) = sigma1_cli(&["search-open", "--limit", "1000000", "--json"])?;
    let (without, t2) = sigma1_cli(&["search-open", "--limit", "1000000", "--no-prefilter", "--json"])?;
    for t in [t1, t2] {
        ensure(t < Duration::from_secs(30), || format!("search took {t:?}"))?;
    }
    let with: Value = serde_json::from_slice(&with).map_err(e)?;
    let without: Value = serde_json::from_slice(&without).map_err(e)?;
    ensure(with["solutions"] == without["solutions"], || "prefilter changes the result".into())?;

    // independent oracle: additive divisor-sum sieve
    let limit = 1_000_000usize;
    let mut s = vec![0u64; limit + 1];
    for d in 1..=limit {
        for m in (d..=limit).step_by(d) {
            s[m] += d as u64;
        }
    }
    let oracle: Vec<Value> = (1..=limit)
        .filter(|&n| s[n] == 2 * n as u64 + 11)
        .map(|n| serde_json::json!({ "n": n, "sigma": s[n] }))
        .collect();
    ensure(with["solutions"] == Value::Array(oracle.clone()), || "CLI disagrees with the oracle".into())?;
    Ok(format!("{} solutions ≤ 10^6, {t1:?} / {t2:?}", oracle.len()))
}

fn strip_timing(raw: &[u8]) -> String {
    String::from_utf8_lossy(raw)
        .lines()
        .filter(|l| !l.trim_start().starts_with("\"wall_time_ms\""))
        .collect::<Vec<_>>()
        .join("\n")
}

fn determinism() -> Outcome {
    let (a, _) = sigma1_cli(&["verify", "all", "--json"])?;
    let (b, _) = sigma1_cli(&["verify", "all", "--json"])?;
    let v: Value = serde_json::from_slice(&a).map_err(e)?;
    ensure(v["overall"] == serde_json::to_value(Status::Pass).map_err(e)?, || "verify all did not pass".into())?;
    ensure(strip_timing(&a) == strip_timing(&b), || "outputs differ".into())?;
    Ok(format!("{} bytes identical modulo wall_time_ms", a.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("exact σ₁ values", exact_values),
        ("supersolvability below 2 + 11/|G|", theorem22_scan),
        ("equality set for 2 + 11/|G|", theorem24_scan),
        ("maximal-class and cyclic sums", lemma13_and_14),
        ("multiplicativity, quotients, cyclic formula, small-σ₁ bounds", section_one_properties),
        ("non-supersolvable family decreasing to 2", family),
        ("classifier redundancy", classifier_agreement),
        ("σ(n) = 2n + 11 search", open_problem_search),
        ("deterministic verify output", determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
