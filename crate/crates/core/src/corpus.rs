//! Seeded random graphs, exhaustive small-graph enumeration and the standard
//! pair corpus used by the hierarchy checks.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::SplitMix64;

const RETRY_CAP: usize = 10_000;

/// G(n, p): the candidate edges are visited in lexicographic order and each is
/// kept when the next uniform float is below `p`.
pub fn random_graph(n: usize, p: f64, rng: &mut SplitMix64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.next_f64() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges).expect("generated edges are valid")
}

/// G(n, p) conditioned on connectivity, by rejection.
pub fn random_connected_graph(n: usize, p: f64, rng: &mut SplitMix64) -> Result<Graph> {
    for _ in 0..RETRY_CAP {
        let g = random_graph(n, p, rng);
        if g.is_connected()? {
            return Ok(g);
        }
    }
    Err(Error::TooLarge(format!("no connected G({n}, {p}) sample in {RETRY_CAP} tries")))
}

/// Uniformly random connected graph with exactly `m` edges.
pub fn random_connected_with_edges(n: usize, m: usize, rng: &mut SplitMix64) -> Result<Graph> {
    let mut all: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    if m > all.len() {
        return Err(Error::InvalidGraph(format!("{m} edges do not fit on {n} vertices")));
    }
    for _ in 0..RETRY_CAP {
        rng.shuffle(&mut all);
        let g = Graph::new(n, &all[..m])?;
        if g.is_connected()? {
            return Ok(g);
        }
    }
    Err(Error::TooLarge(format!("no connected graph with n = {n}, m = {m} in {RETRY_CAP} tries")))
}

/// Random connected d-regular graph from the configuration model.
pub fn random_regular(n: usize, d: usize, rng: &mut SplitMix64) -> Result<Graph> {
    if !(n * d).is_multiple_of(2) || d >= n {
        return Err(Error::InvalidGraph(format!("no {d}-regular graph on {n} vertices")));
    }
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    'retry: for _ in 0..RETRY_CAP {
        rng.shuffle(&mut stubs);
        let mut edges = Vec::with_capacity(n * d / 2);
        for pair in stubs.chunks(2) {
            let (u, v) = (pair[0], pair[1]);
            if u == v || edges.contains(&(u.min(v), u.max(v))) {
                continue 'retry;
            }
            edges.push((u.min(v), u.max(v)));
        }
        let g = Graph::new(n, &edges)?;
        if g.is_connected()? {
            return Ok(g);
        }
    }
    Err(Error::TooLarge(format!("no connected {d}-regular sample on {n} vertices")))
}

/// Applies `swaps` random double-edge swaps `{a,b},{c,d} -> {a,d},{c,b}`,
/// keeping the degree sequence and connectivity.
pub fn rewire(g: &Graph, swaps: usize, rng: &mut SplitMix64) -> Result<Graph> {
    let mut cur = g.clone();
    let mut done = 0;
    let mut tries = 0;
    while done < swaps && tries < RETRY_CAP {
        tries += 1;
        let e = cur.edges();
        if e.len() < 2 {
            break;
        }
        let (a, b) = e[rng.below(e.len() as u64) as usize];
        let (mut c, mut d) = e[rng.below(e.len() as u64) as usize];
        if rng.below(2) == 1 {
            std::mem::swap(&mut c, &mut d);
        }
        let distinct = a != c && a != d && b != c && b != d;
        if !distinct || cur.has_edge(a, d) || cur.has_edge(c, b) {
            continue;
        }
        let mut edges: Vec<_> = e.iter().copied().filter(|&x| x != (a, b) && x != (c.min(d), c.max(d))).collect();
        edges.push((a, d));
        edges.push((c, b));
        let next = Graph::new(cur.n(), &edges)?;
        if next.is_connected()? {
            cur = next;
            done += 1;
        }
    }
    Ok(cur)
}

/// Smallest adjacency bit string over all vertex orders; exact but only
/// practical for tiny graphs.
fn brute_canonical(g: &Graph) -> u64 {
    let n = g.n();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = u64::MAX;
    loop {
        let mut code = 0u64;
        let mut bit = 0;
        for u in 0..n {
            for v in u + 1..n {
                if g.has_edge(perm[u], perm[v]) {
                    code |= 1 << bit;
                }
                bit += 1;
            }
        }
        best = best.min(code);
        if !next_permutation(&mut perm) {
            return best;
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// All connected graphs on `n` vertices up to isomorphism, `1 <= n <= 6`.
pub fn connected_graphs(n: usize) -> Result<Vec<Graph>> {
    if n == 0 || n > 6 {
        return Err(Error::TooLarge("enumeration supports 1 <= n <= 6".into()));
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut seen = std::collections::BTreeMap::new();
    for mask in 0u64..(1 << pairs.len()) {
        let edges: Vec<_> = (0..pairs.len()).filter(|&i| mask >> i & 1 == 1).map(|i| pairs[i]).collect();
        if n > 1 && edges.len() < n - 1 {
            continue;
        }
        let g = Graph::new(n, &edges)?;
        if !g.is_connected()? {
            continue;
        }
        let key = (g.m(), g.degree_sequence());
        let bucket: &mut Vec<(u64, Graph)> = seen.entry(key).or_default();
        let c = brute_canonical(&g);
        if !bucket.iter().any(|(k, _)| *k == c) {
            bucket.push((c, g));
        }
    }
    let mut out: Vec<(u64, Graph)> = seen.into_values().flatten().collect();
    out.sort_by_key(|(c, g)| (g.m(), *c));
    Ok(out.into_iter().map(|(_, g)| g).collect())
}

/// How a corpus pair was generated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairKind {
    Relabeled,
    Rewired,
    SameSize,
    Regular,
}

#[derive(Debug, Clone)]
pub struct CorpusPair {
    pub kind: PairKind,
    pub g: Graph,
    pub h: Graph,
}

/// Deterministic mix of pairs on at most `max_n` vertices: relabelings,
/// degree-preserving rewirings, independent graphs with equal size and pairs
/// of random regular graphs. Hard pairs dominate so the checks are not vacuous.
pub fn pair_corpus(seed: u64, count: usize, max_n: usize) -> Result<Vec<CorpusPair>> {
    let mut rng = SplitMix64::new(seed);
    let max_n = max_n.max(6);
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let n = 4 + rng.below((max_n - 3) as u64) as usize;
        let kind = match i % 4 {
            0 => PairKind::Relabeled,
            1 => PairKind::Rewired,
            2 => PairKind::SameSize,
            _ => PairKind::Regular,
        };
        let pair = match kind {
            PairKind::Relabeled => {
                let g = random_connected_graph(n, 0.4, &mut rng)?;
                let mut p: Vec<usize> = (0..n).collect();
                rng.shuffle(&mut p);
                let h = g.permute(&crate::graph::VertexPermutation::new(p)?)?;
                CorpusPair { kind, g, h }
            }
            PairKind::Rewired => {
                let g = random_connected_graph(n, 0.4, &mut rng)?;
                let h = rewire(&g, 1 + rng.below(3) as usize, &mut rng)?;
                CorpusPair { kind, g, h }
            }
            PairKind::SameSize => {
                let g = random_connected_graph(n, 0.35, &mut rng)?;
                let h = random_connected_with_edges(n, g.m(), &mut rng)?;
                CorpusPair { kind, g, h }
            }
            PairKind::Regular => {
                let n = [6, 8, 10].into_iter().filter(|&k| k <= max_n).collect::<Vec<_>>();
                let n = n[rng.below(n.len() as u64) as usize];
                let d = if n >= 8 && rng.below(2) == 1 { 4 } else { 3 };
                let g = random_regular(n, d, &mut rng)?;
                let h = random_regular(n, d, &mut rng)?;
                CorpusPair { kind, g, h }
            }
        };
        out.push(pair);
    }
    Ok(out)
}
