//! One function per subcommand; each returns a report or a failure.

use std::time::Instant;

use rayon::prelude::*;

use wl_lab::catalog::{builtin_catalog, load_catalog, search_separating_base, verify_catalog};
use wl_lab::corpus::pair_corpus;
use wl_lab::furer::FurerGraph;
use wl_lab::gdwl::distances as distance_matrix;
use wl_lab::hierarchy::check_hierarchy;
use wl_lab::pebble::{check_equivalence, oracle_pairs, solve, GameSpec, Winner};
use wl_lab::AlgorithmSpec;

use crate::report::{Body, GraphOut, Job, Report, Sweep};
use crate::{
    read_graph, CompareArgs, DistancesArgs, Failure, FurerBuildArgs, MatrixArgs, PebbleSolveArgs, PebbleVerifyArgs,
    SearchArgs,
};

/// Games checked by `pebble verify` when no `--alg` is given.
const GAMES: [&str; 6] = ["swl-vs", "swl-sv", "sswl", "lfwl2", "slfwl2", "fwl2"];

fn shown(p: &std::path::Path) -> String {
    p.display().to_string()
}

fn compare_algorithms(a: &CompareArgs) -> Result<Vec<AlgorithmSpec>, Failure> {
    let mut algs = a.algs.clone();
    if let Some(agg) = &a.agg {
        let pool = a.pool.as_deref().unwrap_or("vs");
        let policy = a.policy.as_deref().unwrap_or("nm");
        algs.push(format!("custom:{agg}:{pool}:{policy}").parse()?);
    }
    if algs.is_empty() {
        return Err(Failure::Input("give at least one --alg or an --agg scheme".into()));
    }
    if let Some(cap) = a.max_rounds {
        algs = algs.into_iter().map(|s| s.with_max_rounds(cap)).collect();
    }
    Ok(algs)
}

pub fn compare(a: &CompareArgs, timings: bool) -> Result<Report, Failure> {
    let algs = compare_algorithms(a)?;
    let (g, h) = (read_graph(&a.a)?, read_graph(&a.b)?);
    let inputs = [shown(&a.a), shown(&a.b)];
    let jobs = algs
        .par_iter()
        .map(|alg| {
            let t = Instant::now();
            let v = alg.distinguish(&g, &h)?;
            Ok(Job {
                inputs: inputs.clone(),
                algorithm: alg.to_string(),
                distinguishes: v.distinguishes,
                rounds: v.rounds,
                stable: v.stable,
                class_counts: v.class_counts,
                wall_ms: timings.then(|| t.elapsed().as_secs_f64() * 1e3),
            })
        })
        .collect::<Result<Vec<Job>, wl_lab::Error>>()?;
    Ok(Body::Compare { jobs }.into())
}

pub fn matrix(a: &MatrixArgs, seed: u64) -> Result<Report, Failure> {
    let (catalog, entries) = match &a.catalog {
        Some(p) => (shown(p), load_catalog(p)?),
        None => ("builtin".to_string(), builtin_catalog()),
    };
    let rows = verify_catalog(&entries)?;
    let passed = rows.iter().filter(|r| r.pass).count();
    let hierarchy = if a.also_random > 0 {
        let pairs: Vec<_> = pair_corpus(seed, a.also_random, 10)?.into_iter().map(|p| (p.g, p.h)).collect();
        Some(Sweep { seed, report: check_hierarchy(&pairs)? })
    } else {
        None
    };
    Ok(Body::Matrix { catalog, failed: rows.len() - passed, passed, rows, hierarchy }.into())
}

pub fn furer_build(a: &FurerBuildArgs) -> Result<Report, Failure> {
    let base = read_graph(&a.base)?;
    let mut twisted = Vec::new();
    for &i in &a.twists {
        let e = *base
            .edges()
            .get(i.wrapping_sub(1))
            .ok_or_else(|| Failure::Input(format!("--twist {i}: the base has edges 1..{}", base.m())))?;
        twisted.push(e);
    }
    let fg = FurerGraph::with_twists(&base, &twisted)?;
    let g = if a.augment { fg.augment() } else { fg.graph().clone() };
    let mut listed: Vec<[usize; 2]> = fg.twisted_edges().map(|(u, v)| [u + 1, v + 1]).collect();
    listed.sort_unstable();
    Ok(Body::FurerBuild { base_n: base.n(), twisted: listed, augmented: a.augment, graph: GraphOut::new(&g) }.into())
}

pub fn search(a: &SearchArgs, seed: u64) -> Result<Report, Failure> {
    let found = search_separating_base(&a.weak, &a.strong, a.max_n, a.budget, seed)?;
    Ok(Body::Search {
        weak: a.weak.to_string(),
        strong: a.strong.to_string(),
        max_n: a.max_n,
        budget: a.budget,
        seed,
        base: found.as_ref().map(GraphOut::new),
    }
    .into())
}

pub fn distances(a: &DistancesArgs) -> Result<Report, Failure> {
    let g = read_graph(&a.graph)?;
    let n = g.n();
    let d = distance_matrix(&g, a.kind)?;
    let matrix = d.chunks(n.max(1)).map(|row| row.iter().map(ToString::to_string).collect()).collect();
    Ok(Body::Distances { kind: a.kind.name().to_string(), n, matrix }.into())
}

pub fn pebble_solve(a: &PebbleSolveArgs) -> Result<Report, Failure> {
    let (g, h) = (read_graph(&a.g)?, read_graph(&a.h)?);
    let spec = GameSpec::from_algorithm(&a.alg)?;
    let sol = solve(&g, &h, &spec)?;
    let distinguishes = a.alg.distinguish(&g, &h)?.distinguishes;
    if distinguishes != (sol.winner == Winner::Spoiler) {
        return Err(Failure::Internal(format!("{}: game winner disagrees with refinement", a.alg)));
    }
    Ok(Body::PebbleSolve {
        algorithm: a.alg.to_string(),
        inputs: [shown(&a.g), shown(&a.h)],
        winner: sol.winner,
        iterations: sol.iterations,
        duplicator_positions: sol.duplicator_positions(),
        distinguishes,
    }
    .into())
}

pub fn pebble_verify(a: &PebbleVerifyArgs, seed: u64) -> Result<Report, Failure> {
    let algs: Vec<AlgorithmSpec> =
        if a.algs.is_empty() { GAMES.iter().map(|n| n.parse()).collect::<Result<_, _>>()? } else { a.algs.clone() };
    let pairs = oracle_pairs(a.max_n, a.extra, seed)?;
    let mismatches = check_equivalence(&pairs, &algs)?;
    Ok(Body::PebbleVerify {
        max_n: a.max_n,
        extra: a.extra,
        seed,
        pairs: pairs.len(),
        algorithms: algs.iter().map(ToString::to_string).collect(),
        mismatches,
    }
    .into())
}
