//! Runs the eight acceptance criteria and prints one PASS/FAIL line for each.

mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use common::Check;
use wl_lab::catalog::{builtin_catalog, CatalogEntry};
use wl_lab::corpus::pair_corpus;
use wl_lab::furer::make_pair;
use wl_lab::hierarchy::{broken_in_row, check_hierarchy, HierarchyReport, RelationKind};
use wl_lab::pebble::{check_equivalence, oracle_pairs};
use wl_lab::{AlgorithmSpec, Graph};

/// Observed verdicts and timings for every claim of one catalog entry.
struct EntryRun {
    entry: CatalogEntry,
    observed: BTreeMap<String, bool>,
    time: BTreeMap<String, Duration>,
}

fn run_catalog() -> Check<Vec<EntryRun>> {
    let mut out = Vec::new();
    for entry in builtin_catalog() {
        let base = entry.base().map_err(|e| e.to_string())?;
        let (g, h) = make_pair(&base).map_err(|e| e.to_string())?;
        let mut observed = BTreeMap::new();
        let mut time = BTreeMap::new();
        for c in &entry.claims {
            let alg: AlgorithmSpec = c.alg.parse().map_err(|e: wl_lab::Error| e.to_string())?;
            let t = Instant::now();
            let v = alg.distinguish(&g, &h).map_err(|e| e.to_string())?;
            time.insert(c.alg.clone(), t.elapsed());
            observed.insert(c.alg.clone(), v.distinguishes);
        }
        out.push(EntryRun { entry, observed, time });
    }
    Ok(out)
}

fn find<'a>(runs: &'a [EntryRun], id: &str) -> Check<&'a EntryRun> {
    runs.iter().find(|r| r.entry.id == id).ok_or_else(|| format!("no catalog entry {id}"))
}

/// Checks `(alg, expected)` requirements against an entry and returns the time
/// they took together.
fn require(run: &EntryRun, wants: &[(&str, bool)]) -> Check<Duration> {
    let mut total = Duration::ZERO;
    for &(alg, want) in wants {
        let got = *run.observed.get(alg).ok_or_else(|| format!("{}: no claim for {alg}", run.entry.name))?;
        if got != want {
            return Err(format!("{}: {alg} distinguishes = {got}, expected {want}", run.entry.name));
        }
        total += run.time[alg];
    }
    Ok(total)
}

/// Item letter, catalog id and the verdicts required on that entry.
type Requirement = (&'static str, &'static str, &'static [(&'static str, bool)]);

fn separation_suite(runs: &[EntryRun]) -> Check<String> {
    let suite: [Requirement; 8] = [
        ("a", "sv-over-vs", &[("swl-sv", true), ("swl-vs", false), ("pswl-vs", false)]),
        ("b", "pswl-vs-over-swl", &[("pswl-vs", true), ("swl-vs", false), ("swl-sv", false)]),
        ("c", "gswl-over-pswl-sv", &[("gswl", true), ("pswl-sv", false)]),
        ("d", "local-over-gswl", &[("sswl", true), ("lfwl2", true), ("gswl", false)]),
        ("e", "lfwl-over-sswl", &[("lfwl2", true), ("slfwl2", true), ("sswl", false)]),
        ("f", "sswl-over-lfwl", &[("sswl", true), ("slfwl2", true), ("lfwl2", false), ("gswl", false)]),
        ("g", "fwl-over-slfwl", &[("fwl2", true), ("slfwl2", false)]),
        ("h", "sv-over-lfwl", &[("swl-sv", true), ("lfwl2", false)]),
    ];
    let mut slowest = Duration::ZERO;
    for (item, id, wants) in suite {
        let t = require(find(runs, id)?, wants).map_err(|e| format!("({item}) {e}"))?;
        if t >= Duration::from_secs(60) {
            return Err(format!("({item}) took {t:.1?}"));
        }
        slowest = slowest.max(t);
    }
    let mut claims = 0;
    for r in runs {
        for c in &r.entry.claims {
            if r.observed[&c.alg] != c.distinguishes {
                return Err(format!("catalog claim {} / {} does not hold", r.entry.name, c.alg));
            }
            claims += 1;
        }
    }
    Ok(format!("8/8 separations, slowest pair {slowest:.1?}; all {claims} catalog claims hold"))
}

fn violations(report: &HierarchyReport, kind: RelationKind) -> Vec<String> {
    report
        .violations
        .iter()
        .filter(|v| v.kind == kind)
        .map(|v| format!("pair {}: {} vs {}", v.pair, v.left, v.right))
        .collect()
}

fn hierarchy_consistency(report: &HierarchyReport, elapsed: Duration, runs: &[EntryRun]) -> Check<String> {
    let bad = violations(report, RelationKind::Arrow);
    if !bad.is_empty() {
        return Err(bad.join("; "));
    }
    for r in runs {
        if let Some((_, a, b)) = broken_in_row(&r.observed).first() {
            return Err(format!("{}: {a} / {b} broken", r.entry.name));
        }
    }
    if elapsed >= Duration::from_secs(600) {
        return Err(format!("corpus sweep took {elapsed:.1?}"));
    }
    Ok(format!("{} corpus pairs and {} catalog rows, zero arrow violations ({elapsed:.1?})", report.pairs, runs.len()))
}

fn equivalence_suite(report: &HierarchyReport) -> Check<String> {
    let bad = violations(report, RelationKind::Equivalence);
    if bad.is_empty() {
        Ok(format!("{} corpus pairs, zero disagreements", report.pairs))
    } else {
        Err(bad.join("; "))
    }
}

fn pebble_oracle() -> Check<String> {
    let t = Instant::now();
    let pairs = oracle_pairs(5, 50, 6).map_err(|e| e.to_string())?;
    let algs: Vec<AlgorithmSpec> =
        ["swl-vs", "swl-sv", "sswl", "lfwl2", "slfwl2", "fwl2"].iter().map(|a| a.parse().unwrap()).collect();
    let bad = check_equivalence(&pairs, &algs).map_err(|e| e.to_string())?;
    if !bad.is_empty() {
        return Err(format!("{} mismatches, first {:?}", bad.len(), bad[0]));
    }
    let elapsed = t.elapsed();
    if elapsed >= Duration::from_secs(1800) {
        return Err(format!("took {elapsed:.1?}"));
    }
    Ok(format!("{} pairs x {} games, zero mismatches ({elapsed:.1?})", pairs.len(), algs.len()))
}

fn distance_exactness() -> Check<String> {
    common::exact_distance_values()?;
    let graphs = common::sample_graphs(5, 20, 0.5);
    let walk = common::monte_carlo_hitting_times(&graphs, 1_000_000, 0.05)?;
    let lap = common::laplacian_resistance(&graphs, 1e-9)?;
    Ok(format!("exact values hold; walk deviation <= {walk:.4}; pseudoinverse error <= {lap:.1e}"))
}

fn gdwl_against_pswl(report: &HierarchyReport, runs: &[EntryRun]) -> Check<String> {
    if let Some(v) = report
        .violations
        .iter()
        .find(|v| v.left == "gdwl:spd+htd" && v.right == "pswl-vs" && v.kind == RelationKind::Arrow)
    {
        return Err(format!("pair {} separated by gdwl:spd+htd but not pswl-vs", v.pair));
    }
    let gd = |want: bool| [("gdwl:spd", want), ("gdwl:htd", want), ("gdwl:rd", want)];
    let mut wants = vec![("swl-vs", true)];
    wants.extend(gd(false));
    require(find(runs, "swl-over-gdwl")?, &wants)?;
    let mut wants = vec![("swl-sv", false)];
    wants.extend(gd(true));
    require(find(runs, "gdwl-over-swl")?, &wants)?;
    let open =
        report.open.iter().map(|o| format!("{} only vs {}: {}", o.left, o.right, o.left_only)).collect::<Vec<_>>();
    Ok(format!("no corpus violation; both incomparability witnesses hold; open: {}", open.join(", ")))
}

fn furer_algebra() -> Check<String> {
    common::double_twists(50)?;
    let checked = common::single_twists_not_isomorphic()?;
    Ok(format!("50 double twists verified; {checked} single-twist pairs non-isomorphic"))
}

fn determinism(corpus: &[(Graph, Graph)]) -> Check<String> {
    let graphs: Vec<Graph> = corpus.iter().flat_map(|(g, h)| [g.clone(), h.clone()]).collect();
    let compared = common::relabelled_certificates(&graphs, 100)?;
    common::thread_invariance(&graphs)?;
    Ok(format!("{compared} relabelled certificates identical; 1 vs 4 threads identical on {} graphs", graphs.len()))
}

fn report(n: usize, title: &str, result: Check<String>) -> bool {
    match result {
        Ok(detail) => {
            println!("criterion {n} PASS  {title}: {detail}");
            true
        }
        Err(why) => {
            println!("criterion {n} FAIL  {title}: {why}");
            false
        }
    }
}

fn main() {
    let corpus: Vec<(Graph, Graph)> =
        pair_corpus(2024, 200, 10).expect("corpus").into_iter().map(|p| (p.g, p.h)).collect();
    let runs = run_catalog();
    let t = Instant::now();
    let sweep = check_hierarchy(&corpus).map_err(|e| e.to_string());
    let sweep_time = t.elapsed();
    let with_runs = |f: &dyn Fn(&[EntryRun]) -> Check<String>| runs.as_ref().map_err(Clone::clone).and_then(|r| f(r));
    let with_sweep = |f: &dyn Fn(&HierarchyReport) -> Check<String>| sweep.as_ref().map_err(Clone::clone).and_then(f);
    let results = [
        report(1, "separation suite", with_runs(&separation_suite)),
        report(2, "hierarchy consistency", with_sweep(&|s| with_runs(&|r| hierarchy_consistency(s, sweep_time, r)))),
        report(3, "equivalence suite", with_sweep(&equivalence_suite)),
        report(4, "pebbling-game oracle", pebble_oracle()),
        report(5, "distance exactness", distance_exactness()),
        report(6, "gd-wl versus pswl", with_sweep(&|s| with_runs(&|r| gdwl_against_pswl(s, r)))),
        report(7, "furer algebra", furer_algebra()),
        report(8, "determinism and invariance", determinism(&corpus)),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("acceptance: {passed}/8 criteria pass");
    if passed < 8 {
        std::process::exit(1);
    }
}
