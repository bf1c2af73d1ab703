//! Acceptance run: one line per criterion, nonzero exit on any failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use gammacat_core::gammaskel::enumerate_based_maps;
use gammacat_core::harness::{run_suite, Report, Status, SuiteConfig};

struct Outcome {
    ok: bool,
    detail: String,
}

fn config(suites: &[&str], n_max: usize, len_max: usize, entry_max: usize) -> SuiteConfig {
    SuiteConfig {
        suites: suites.iter().map(|s| s.to_string()).collect(),
        n_max,
        len_max,
        entry_max,
        ..SuiteConfig::default()
    }
}

/// All selected records passed, and there was at least one.
fn all_pass(report: &Report) -> Result<(), String> {
    if report.records.is_empty() {
        return Err("no records".into());
    }
    match report.records.iter().find(|r| r.status != Status::Pass) {
        Some(r) => Err(format!("{} is {:?}: {}", r.id, r.status, r.witness.as_deref().unwrap_or(""))),
        None => Ok(()),
    }
}

fn stat(report: &Report, id: &str, key: &str) -> serde_json::Value {
    report.record(id).map(|r| r.stats[key].clone()).unwrap_or(serde_json::Value::Null)
}

fn run(cfg: &SuiteConfig) -> Result<Report, String> {
    run_suite(cfg).map_err(|e| e.to_string())
}

fn within(limit: Duration, elapsed: Duration) -> Result<(), String> {
    if elapsed < limit {
        Ok(())
    } else {
        Err(format!("took {elapsed:?}, limit {limit:?}"))
    }
}

fn c1() -> Result<String, String> {
    let start = Instant::now();
    let report = run(&config(&["factorization/inert-active"], 4, 2, 2))?;
    let elapsed = start.elapsed();
    all_pass(&report)?;
    let expected: u64 = (0..=4u32).flat_map(|n| (0..=4u64).map(move |m| (m + 1).pow(n))).sum();
    let maps = stat(&report, "factorization/inert-active", "maps");
    if maps != expected || enumerate_based_maps(4, 4).len() != 625 {
        return Err(format!("{maps} maps, expected {expected}"));
    }
    within(Duration::from_secs(1), elapsed)?;
    Ok(format!("{maps} maps, unique factorizations, {elapsed:.2?}"))
}

fn c2() -> Result<String, String> {
    let start = Instant::now();
    let report = run(&config(&["lifting-oracles/isofibration", "lifting-oracles/acyclic"], 2, 2, 2))?;
    let elapsed = start.elapsed();
    all_pass(&report)?;
    let random = stat(&report, "lifting-oracles/isofibration/random", "functors");
    if random != 200 {
        return Err(format!("{random} random functors"));
    }
    within(Duration::from_secs(30), elapsed)?;
    let exhaustive = stat(&report, "lifting-oracles/isofibration/exhaustive", "functors");
    Ok(format!("{exhaustive} exhaustive + {random} random functors, 0 disagreements, {elapsed:.2?}"))
}

fn c3() -> Result<String, String> {
    let report = run(&config(&["perm-axioms/grothendieck"], 2, 2, 2))?;
    all_pass(&report)?;
    if report.records.len() != 3 {
        return Err(format!("{} fragments", report.records.len()));
    }
    let sizes: Vec<u64> = report.records.iter().filter_map(|r| r.stats["objects"].as_u64()).collect();
    Ok(format!("cells {sizes:?}, zero violations"))
}

fn c4() -> Result<String, String> {
    let start = Instant::now();
    let report = run(&config(&["day/representables"], 2, 2, 2))?;
    let elapsed = start.elapsed();
    all_pass(&report)?;
    let degree_one = stat(&report, "day/representables/2x2", "objects")[1].clone();
    if degree_one != 16 {
        return Err(format!("degree one of Γ²∗Γ² has {degree_one} objects"));
    }
    within(Duration::from_secs(10), elapsed)?;
    Ok(format!("co-Yoneda comparisons are isomorphisms, 16 objects at degree one, {elapsed:.2?}"))
}

fn c5() -> Result<String, String> {
    let start = Instant::now();
    let report = run(&config(&["segal/nerve/z2", "segal/nerve/chaotic_z2", "nerve/z2-counts"], 3, 2, 2))?;
    let elapsed = start.elapsed();
    all_pass(&report)?;
    let counts = stat(&report, "segal/nerve/z2", "objects");
    if counts != serde_json::json!([1, 2, 4, 8]) {
        return Err(format!("object counts {counts}"));
    }
    if stat(&report, "segal/nerve/z2", "all_isomorphisms") != true {
        return Err("a Segal map of the discrete nerve is not an isomorphism".into());
    }
    if stat(&report, "segal/nerve/chaotic_z2", "all_isomorphisms") != false {
        return Err("chaotic nerve Segal maps are isomorphisms".into());
    }
    within(Duration::from_secs(10), elapsed)?;
    Ok(format!("objects {counts}, discrete and iso; chaotic: equivalence not iso, {elapsed:.2?}"))
}

fn c6() -> Result<String, String> {
    let report = run(&config(&["adjunctions"], 2, 3, 1))?;
    all_pass(&report)?;
    let mut objects = 0;
    for r in &report.records {
        if r.stats.get("objects").is_some() {
            if r.stats["objects"] != r.stats["triangle_passes"] {
                return Err(format!("{}: triangle identities fail somewhere", r.id));
            }
            objects += r.stats["objects"].as_u64().unwrap_or(0);
        }
    }
    Ok(format!("{objects} fragment objects, 100% triangle passes"))
}

fn c7() -> Result<String, String> {
    let report = run(&config(&["iso-J"], 2, 2, 2))?;
    all_pass(&report)?;
    let pairs: u64 = report.records.iter().map(|r| r.stats["composable_pairs"].as_u64().unwrap_or(0)).sum();
    Ok(format!("{pairs} composable pairs preserved, zero mismatches"))
}

fn c8() -> Result<String, String> {
    let report = run(&config(&["wedge"], 3, 2, 2))?;
    all_pass(&report)?;
    if report.records.len() != 4 {
        return Err(format!("{} records", report.records.len()));
    }
    Ok("monic on objects, fully faithful, essentially surjective for n ≤ 3".into())
}

fn c9() -> Result<String, String> {
    let report = run(&config(&["lifting-oracles/mapping-path"], 2, 2, 2))?;
    all_pass(&report)?;
    let n = stat(&report, "lifting-oracles/mapping-path", "functors");
    if n != 50 {
        return Err(format!("{n} functors"));
    }
    Ok("50 functors, zero failures".into())
}

fn c10() -> Result<String, String> {
    let report = run(&config(&["freeperm/universal", "completion/lax-extension"], 2, 3, 2))?;
    all_pass(&report)?;
    let lax: u64 = report
        .records
        .iter()
        .filter_map(|r| r.stats.get("lax_functors").and_then(|v| v.as_u64()))
        .sum();
    Ok(format!("restriction bijective at length 3; {lax} lax functors extend uniquely"))
}

fn c11() -> Result<String, String> {
    let start = Instant::now();
    let report = run(&config(&["localization/nerve"], 3, 2, 3))?;
    let elapsed = start.elapsed();
    all_pass(&report)?;
    within(Duration::from_secs(10), elapsed)?;
    let cells = stat(&report, "localization/nerve/z2", "cells");
    let horizontal = stat(&report, "localization/nerve/z2", "horizontal");
    Ok(format!("{cells} cells, {horizontal} horizontal morphisms inverted, {elapsed:.2?}"))
}

fn c12() -> Result<String, String> {
    let report = run(&config(&["roundtrip"], 2, 2, 2))?;
    all_pass(&report)?;
    Ok(format!("{} (C, n) instances mutually inverse", report.records.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Result<String, String>); 12] = [
        ("inert-active factorization", c1),
        ("lifting oracles", c2),
        ("Grothendieck permutativity", c3),
        ("Day convolution", c4),
        ("Segal nerve", c5),
        ("adjunctions", c6),
        ("iso J(n)", c7),
        ("wedge inclusion", c8),
        ("mapping path object", c9),
        ("free/lax universality", c10),
        ("localization", c11),
        ("bicycle round trip", c12),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = match check() {
            Ok(detail) => Outcome { ok: true, detail },
            Err(detail) => Outcome { ok: false, detail },
        };
        failures += !outcome.ok as usize;
        println!("{} criterion {:>2} {name}: {}", if outcome.ok { "PASS" } else { "FAIL" }, i + 1, outcome.detail);
    }
    println!("acceptance: {} of 12 criteria pass", 12 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
