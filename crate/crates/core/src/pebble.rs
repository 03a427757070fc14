//! Exact solver for the two-pebble games matching SWL and the FWL family.
//!
//! A main-phase position places pebbles u and v in both graphs. Duplicator's
//! winning positions are the greatest fixpoint of "same isomorphism type and
//! every Spoiler move can be answered inside the set". A vertex-selection
//! round over candidate sets `S_G`, `S_H` is survivable exactly when the sets
//! have equal size and the bipartite graph of answers landing in the set has a
//! perfect matching (Hall's condition on both sides).

use rayon::prelude::*;
use serde::Serialize;

use crate::algorithm::{AlgorithmKind, AlgorithmSpec};
use crate::corpus::connected_graphs;
use crate::error::{Error, Result};
use crate::fwl::{iso_type, Localization};
use crate::graph::Graph;
use crate::policy::Policy;
use crate::rng::SplitMix64;
use crate::swl::{AggScheme, AtomicAgg, Pooling};

/// Largest graph the solver accepts.
pub const MAX_VERTICES: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GameSpec {
    Swl { scheme: AggScheme, pooling: Pooling },
    Fwl(Localization),
}

impl GameSpec {
    /// Game rules for `alg`. SWL needs node marking, a local aggregation and
    /// no cross-subgraph term.
    pub fn from_algorithm(alg: &AlgorithmSpec) -> Result<GameSpec> {
        match &alg.kind {
            AlgorithmKind::Swl(s) => {
                if s.policy != Policy::NodeMarking {
                    return Err(Error::Unsupported("pebble games need the node-marking policy".into()));
                }
                if !s.scheme.contains(AtomicAgg::Lu) && !s.scheme.contains(AtomicAgg::Lv) {
                    return Err(Error::Unsupported("pebble games need a local aggregation".into()));
                }
                if s.scheme.contains(AtomicAgg::ExtDss) {
                    return Err(Error::Unsupported("no pebble game for the dss aggregation".into()));
                }
                Ok(GameSpec::Swl { scheme: s.scheme.clone(), pooling: s.pooling })
            }
            AlgorithmKind::Fwl(l) => Ok(GameSpec::Fwl(*l)),
            _ => Err(Error::Unsupported(format!("no pebble game for {alg}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Winner {
    Spoiler,
    Duplicator,
}

#[derive(Debug, Clone)]
pub struct Solution {
    pub winner: Winner,
    /// Fixpoint iterations until the winning set stopped shrinking.
    pub iterations: usize,
    ng: usize,
    nh: usize,
    duplicator: Vec<bool>,
}

impl Solution {
    /// Whether Duplicator wins the main phase from this placement.
    pub fn duplicator_wins(&self, ug: usize, vg: usize, uh: usize, vh: usize) -> bool {
        self.duplicator[((ug * self.ng + vg) * self.nh + uh) * self.nh + vh]
    }

    pub fn duplicator_positions(&self) -> usize {
        self.duplicator.iter().filter(|&&b| b).count()
    }

    /// Whether every Duplicator position still satisfies the closure
    /// condition against the returned set.
    pub fn is_closed(&self, g: &Graph, h: &Graph, spec: &GameSpec) -> bool {
        step(g, h, spec, &self.duplicator) == self.duplicator
    }
}

/// Kuhn's augmenting-path perfect matching test on a square bipartite graph.
pub fn has_perfect_matching(k: usize, adj: &[Vec<usize>]) -> bool {
    fn augment(x: usize, adj: &[Vec<usize>], seen: &mut [bool], mate: &mut [usize]) -> bool {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                if mate[y] == usize::MAX || augment(mate[y], adj, seen, mate) {
                    mate[y] = x;
                    return true;
                }
            }
        }
        false
    }
    let mut mate = vec![usize::MAX; k];
    (0..k).all(|x| {
        let mut seen = vec![false; k];
        augment(x, adj, &mut seen, &mut mate)
    })
}

/// Duplicator survives selection over `sg` x `sh` when `ok(x, y)` marks good answers.
fn survives<F: Fn(usize, usize) -> bool>(sg: &[usize], sh: &[usize], ok: F) -> bool {
    if sg.len() != sh.len() {
        return false;
    }
    let adj: Vec<Vec<usize>> = sg.iter().map(|&x| (0..sh.len()).filter(|&j| ok(x, sh[j])).collect()).collect();
    has_perfect_matching(sg.len(), &adj)
}

fn closed(g: &Graph, v: usize) -> Vec<usize> {
    let mut s: Vec<usize> = std::iter::once(v).chain(g.neighbors(v).iter().copied()).collect();
    s.sort_unstable();
    s
}

fn closed2(g: &Graph, u: usize, v: usize) -> Vec<usize> {
    let mut s = closed(g, u);
    s.extend(closed(g, v));
    s.sort_unstable();
    s.dedup();
    s
}

/// One application of the closure condition: keeps the positions of `win`
/// from which Duplicator can answer every Spoiler move inside `win`.
fn step(g: &Graph, h: &Graph, spec: &GameSpec, win: &[bool]) -> Vec<bool> {
    let (ng, nh) = (g.n(), h.n());
    let idx = |ug: usize, vg: usize, uh: usize, vh: usize| ((ug * ng + vg) * nh + uh) * nh + vh;
    let at = |ug, vg, uh, vh| win[idx(ug, vg, uh, vh)];
    let all_g: Vec<usize> = (0..ng).collect();
    let all_h: Vec<usize> = (0..nh).collect();
    (0..win.len())
        .into_par_iter()
        .map(|p| {
            if !win[p] {
                return false;
            }
            let vh = p % nh;
            let uh = p / nh % nh;
            let vg = p / (nh * nh) % ng;
            let ug = p / (nh * nh * ng);
            match spec {
                GameSpec::Swl { scheme, .. } => scheme.iter().all(|a| match a {
                    AtomicAgg::Puv | AtomicAgg::ExtDss => true,
                    AtomicAgg::Pvu => at(vg, ug, vh, uh),
                    AtomicAgg::Puu => at(ug, ug, uh, uh),
                    AtomicAgg::Pvv => at(vg, vg, vh, vh),
                    AtomicAgg::Gu => survives(&all_g, &all_h, |x, y| at(ug, x, uh, y)),
                    AtomicAgg::Gv => survives(&all_g, &all_h, |x, y| at(x, vg, y, vh)),
                    AtomicAgg::Lu => survives(g.neighbors(vg), h.neighbors(vh), |x, y| at(ug, x, uh, y)),
                    AtomicAgg::Lv => survives(g.neighbors(ug), h.neighbors(uh), |x, y| at(x, vg, y, vh)),
                }),
                GameSpec::Fwl(loc) => {
                    let (sg, sh) = match loc {
                        Localization::Full => (all_g.clone(), all_h.clone()),
                        Localization::Local => (closed(g, vg), closed(h, vh)),
                        Localization::SymLocal => (closed2(g, ug, vg), closed2(h, uh, vh)),
                    };
                    survives(&sg, &sh, |x, y| at(x, vg, y, vh) && at(ug, x, uh, y))
                }
            }
        })
        .collect()
}

pub fn solve(g: &Graph, h: &Graph, spec: &GameSpec) -> Result<Solution> {
    let (ng, nh) = (g.n(), h.n());
    if ng > MAX_VERTICES || nh > MAX_VERTICES {
        return Err(Error::TooLarge(format!("pebble solver supports at most {MAX_VERTICES} vertices")));
    }
    if ng == 0 || nh == 0 {
        return Err(Error::Empty);
    }
    let idx = |ug: usize, vg: usize, uh: usize, vh: usize| ((ug * ng + vg) * nh + uh) * nh + vh;
    let all_g: Vec<usize> = (0..ng).collect();
    let all_h: Vec<usize> = (0..nh).collect();
    let mut win: Vec<bool> = (0..ng * ng * nh * nh)
        .into_par_iter()
        .map(|p| {
            let vh = p % nh;
            let uh = p / nh % nh;
            let vg = p / (nh * nh) % ng;
            let ug = p / (nh * nh * ng);
            iso_type(g, ug, vg) == iso_type(h, uh, vh)
        })
        .collect();
    let mut iterations = 0;
    loop {
        iterations += 1;
        let next = step(g, h, spec, &win);
        if next == win {
            break;
        }
        win = next;
    }
    let at = |ug, vg, uh, vh| win[idx(ug, vg, uh, vh)];
    let duplicator_starts = match spec {
        GameSpec::Swl { pooling: Pooling::Vs, .. } => {
            survives(&all_g, &all_h, |x, y| survives(&all_g, &all_h, |a, b| at(x, a, y, b)))
        }
        GameSpec::Swl { pooling: Pooling::Sv, .. } => {
            survives(&all_g, &all_h, |x, y| survives(&all_g, &all_h, |a, b| at(a, x, b, y)))
        }
        GameSpec::Fwl(_) => {
            let pg: Vec<usize> = (0..ng * ng).collect();
            let ph: Vec<usize> = (0..nh * nh).collect();
            survives(&pg, &ph, |a, b| at(a / ng, a % ng, b / nh, b % nh))
        }
    };
    Ok(Solution {
        winner: if duplicator_starts { Winner::Duplicator } else { Winner::Spoiler },
        iterations,
        ng,
        nh,
        duplicator: win,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub pair: usize,
    pub alg: String,
    pub game: Winner,
    pub distinguishes: bool,
}

/// Compares game winners with refinement verdicts; every reported mismatch is a bug.
pub fn check_equivalence(pairs: &[(Graph, Graph)], algs: &[AlgorithmSpec]) -> Result<Vec<Mismatch>> {
    let mut out = Vec::new();
    for alg in algs {
        let spec = GameSpec::from_algorithm(alg)?;
        let found: Vec<Option<Mismatch>> = pairs
            .par_iter()
            .enumerate()
            .map(|(i, (g, h))| {
                let game = solve(g, h, &spec)?.winner;
                let distinguishes = alg.distinguish(g, h)?.distinguishes;
                Ok(((game == Winner::Spoiler) != distinguishes).then(|| Mismatch {
                    pair: i,
                    alg: alg.to_string(),
                    game,
                    distinguishes,
                }))
            })
            .collect::<Result<_>>()?;
        out.extend(found.into_iter().flatten());
    }
    Ok(out)
}

/// Every unordered pair of distinct connected graphs up to `small_n` vertices
/// (one per isomorphism class) plus `extra` seeded pairs at `small_n + 1`
/// vertices with equal edge counts.
pub fn oracle_pairs(small_n: usize, extra: usize, seed: u64) -> Result<Vec<(Graph, Graph)>> {
    let mut graphs = Vec::new();
    for n in 1..=small_n {
        graphs.extend(connected_graphs(n)?);
    }
    let mut pairs = Vec::new();
    for i in 0..graphs.len() {
        for j in i + 1..graphs.len() {
            pairs.push((graphs[i].clone(), graphs[j].clone()));
        }
    }
    if extra > 0 {
        let big = connected_graphs(small_n + 1)?;
        let mut candidates: Vec<(usize, usize)> = (0..big.len())
            .flat_map(|i| (i + 1..big.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| big[i].m() == big[j].m())
            .collect();
        SplitMix64::new(seed).shuffle(&mut candidates);
        pairs.extend(candidates.into_iter().take(extra).map(|(i, j)| (big[i].clone(), big[j].clone())));
    }
    Ok(pairs)
}
