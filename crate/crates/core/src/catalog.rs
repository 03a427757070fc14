//! Counterexample catalog: base graphs whose augmented Furer pairs separate
//! pairs of algorithms, and a randomized search for new ones.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algorithm::AlgorithmSpec;
use crate::error::{Error, Result};
use crate::furer::{is_proper_base, make_pair};
use crate::graph::Graph;
use crate::rng::SplitMix64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub alg: String,
    pub distinguishes: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    /// Short tag of the separation this entry witnesses.
    pub id: String,
    /// `hand-built` or `search seed=<s> ...` describing how the base was obtained.
    pub source: String,
    /// Base edges with 1-based labels.
    pub edges: Vec<[usize; 2]>,
    pub claims: Vec<Claim>,
}

impl CatalogEntry {
    pub fn base(&self) -> Result<Graph> {
        let n = self.edges.iter().flat_map(|e| e.iter().copied()).max().unwrap_or(0);
        let mut edges = Vec::with_capacity(self.edges.len());
        for &[u, v] in &self.edges {
            if u == 0 || v == 0 {
                return Err(Error::Catalog(format!("{}: vertex labels start at 1", self.name)));
            }
            edges.push((u - 1, v - 1));
        }
        let g = Graph::new(n, &edges).map_err(|e| Error::Catalog(format!("{}: {e}", self.name)))?;
        if !is_proper_base(&g) {
            return Err(Error::Catalog(format!("{}: base is not proper", self.name)));
        }
        Ok(g)
    }
}

pub fn edges_of(g: &Graph) -> Vec<[usize; 2]> {
    g.edges().iter().map(|&(u, v)| [u + 1, v + 1]).collect()
}

pub fn parse_catalog(text: &str) -> Result<Vec<CatalogEntry>> {
    let entries: Vec<CatalogEntry> = serde_json::from_str(text).map_err(|e| Error::Catalog(e.to_string()))?;
    for e in &entries {
        e.base()?;
        for c in &e.claims {
            c.alg.parse::<AlgorithmSpec>()?;
        }
    }
    Ok(entries)
}

pub fn load_catalog(path: &std::path::Path) -> Result<Vec<CatalogEntry>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Catalog(format!("{}: {e}", path.display())))?;
    parse_catalog(&text)
}

/// The catalog shipped with the crate.
pub fn builtin_catalog() -> Vec<CatalogEntry> {
    parse_catalog(include_str!("../data/catalog.json")).expect("shipped catalog is valid")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimResult {
    pub entry: String,
    pub alg: String,
    pub expected: bool,
    pub observed: bool,
    pub rounds: usize,
    pub pass: bool,
}

/// Builds each entry's augmented pair and checks every claim. Independent
/// (entry, claim) jobs run in parallel; output order follows the input.
pub fn verify_catalog(entries: &[CatalogEntry]) -> Result<Vec<ClaimResult>> {
    let pairs: Vec<(Graph, Graph)> = entries.iter().map(|e| make_pair(&e.base()?)).collect::<Result<_>>()?;
    let jobs: Vec<(usize, &Claim)> =
        entries.iter().enumerate().flat_map(|(i, e)| e.claims.iter().map(move |c| (i, c))).collect();
    jobs.par_iter()
        .map(|&(i, c)| {
            let spec: AlgorithmSpec = c.alg.parse()?;
            let (g, h) = &pairs[i];
            let v = spec.distinguish(g, h)?;
            Ok(ClaimResult {
                entry: entries[i].name.clone(),
                alg: c.alg.clone(),
                expected: c.distinguishes,
                observed: v.distinguishes,
                rounds: v.rounds,
                pass: v.distinguishes == c.distinguishes,
            })
        })
        .collect()
}

/// Random proper base on `4..=max_n` vertices, drawn from three families:
/// sparse G(n, p) graphs, subdivisions of a random multigraph on a few branch
/// vertices (long degree-2 paths), and short chains of small blocks such as
/// triangles, squares and diamonds.
pub fn random_proper_base(max_n: usize, rng: &mut SplitMix64) -> Graph {
    let max_n = max_n.max(4);
    loop {
        let g = match rng.below(3) {
            0 => {
                let n = 4 + rng.below((max_n - 3) as u64) as usize;
                let p = 0.25 + 0.35 * rng.next_f64();
                Some(crate::corpus::random_graph(n, p, rng))
            }
            1 => subdivided_skeleton(max_n, rng),
            _ => block_chain(max_n, rng),
        };
        let Some(g) = g else { continue };
        if is_proper_base(&g) && (0..g.n()).all(|v| g.degree(v) <= 4) {
            return g;
        }
    }
}

/// Two-terminal blocks: number of inner vertices and edges, with 0 and 1 the
/// terminals and inner vertices numbered from 2.
const BLOCKS: [(usize, &[(usize, usize)]); 6] = [
    (0, &[(0, 1)]),
    (1, &[(0, 1), (0, 2), (2, 1)]),
    (2, &[(0, 2), (0, 3), (2, 3), (2, 1), (3, 1)]),
    (2, &[(0, 1), (0, 2), (0, 3), (2, 1), (3, 1)]),
    (2, &[(0, 2), (2, 1), (0, 3), (3, 1)]),
    (1, &[(0, 2), (2, 1)]),
];

/// Glues 2 to 4 random blocks terminal to terminal, optionally closing the
/// chain into a ring.
fn block_chain(max_n: usize, rng: &mut SplitMix64) -> Option<Graph> {
    let len = 2 + rng.below(3) as usize;
    let ring = rng.below(2) == 1;
    let mut edges = Vec::new();
    let (mut n, mut s) = (1, 0);
    for i in 0..len {
        let (inner, block) = BLOCKS[rng.below(BLOCKS.len() as u64) as usize];
        let close = ring && i + 1 == len;
        let t = if close { 0 } else { n + inner };
        let map = |x: usize| match x {
            0 => s,
            1 => t,
            k => n + k - 2,
        };
        edges.extend(block.iter().map(|&(a, b)| (map(a), map(b))));
        n += inner + usize::from(!close);
        s = t;
    }
    if n > max_n {
        return None;
    }
    let mut labels: Vec<usize> = (0..n).collect();
    rng.shuffle(&mut labels);
    let relabeled: Vec<_> = edges.iter().map(|&(a, b)| (labels[a], labels[b])).collect();
    Graph::new(n, &relabeled).ok()
}

fn subdivided_skeleton(max_n: usize, rng: &mut SplitMix64) -> Option<Graph> {
    let k = 2 + rng.below(4) as usize;
    let extra = rng.below(k as u64 + 2) as usize;
    let mut edges = Vec::new();
    let mut n = k;
    let mut seen_direct = std::collections::HashSet::new();
    for i in 0..k - 1 + 1 + extra {
        // The first k - 1 skeleton edges form a random tree.
        let (a, b) = if i + 1 < k {
            (i + 1, rng.below(i as u64 + 1) as usize)
        } else {
            let a = rng.below(k as u64) as usize;
            let b = rng.below(k as u64) as usize;
            if a == b {
                continue;
            }
            (a, b)
        };
        let mut inner = rng.below(3) as usize;
        if inner == 0 && !seen_direct.insert((a.min(b), a.max(b))) {
            inner = 1;
        }
        let mut prev = a;
        for _ in 0..inner {
            edges.push((prev, n));
            prev = n;
            n += 1;
        }
        edges.push((prev, b));
    }
    if n > max_n {
        return None;
    }
    let mut labels: Vec<usize> = (0..n).collect();
    rng.shuffle(&mut labels);
    let relabeled: Vec<_> = edges.iter().map(|&(a, b)| (labels[a], labels[b])).collect();
    Graph::new(n, &relabeled).ok()
}

/// Tries up to `budget` random proper bases and returns the first whose
/// augmented pair satisfies every `(algorithm, distinguishes)` claim. Claims
/// are checked in order, so cheap or selective ones should come first.
pub fn search_base(claims: &[(AlgorithmSpec, bool)], max_n: usize, budget: usize, seed: u64) -> Result<Option<Graph>> {
    let mut rng = SplitMix64::new(seed);
    let mut seen = std::collections::HashSet::new();
    'outer: for _ in 0..budget {
        let base = random_proper_base(max_n, &mut rng);
        if !seen.insert(base.edges().to_vec()) {
            continue;
        }
        let (g, h) = make_pair(&base)?;
        for (alg, expected) in claims {
            if alg.distinguish(&g, &h)?.distinguishes != *expected {
                continue 'outer;
            }
        }
        return Ok(Some(base));
    }
    Ok(None)
}

/// First base (within `budget` samples) whose augmented pair `strong`
/// distinguishes and `weak` does not.
pub fn search_separating_base(
    weak: &AlgorithmSpec,
    strong: &AlgorithmSpec,
    max_n: usize,
    budget: usize,
    seed: u64,
) -> Result<Option<Graph>> {
    search_base(&[(weak.clone(), false), (strong.clone(), true)], max_n, budget, seed)
}
