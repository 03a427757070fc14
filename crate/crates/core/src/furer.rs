//! Furer (CFI-style) graphs over a base graph, twisting and augmentation.
//!
//! A meta vertex `(x, X)` pairs a base vertex x with an even-size subset X of
//! its neighbours. `(x, X)` and `(y, Y)` are adjacent iff `{x, y}` is a base
//! edge and `x in Y` agrees with `y in X`; on twisted edges the rule is
//! negated.

use std::collections::BTreeSet;
use std::ops::Range;

use crate::error::{Error, Result};
use crate::graph::{bfs_with, Graph, VertexPermutation, UNREACHABLE};

const MAX_BASE_DEGREE: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FurerGraph {
    base: Graph,
    twisted: BTreeSet<(usize, usize)>,
    /// `(x, X)` per meta vertex, X sorted.
    meta: Vec<(usize, Vec<usize>)>,
    starts: Vec<usize>,
    graph: Graph,
}

fn norm((a, b): (usize, usize)) -> (usize, usize) {
    (a.min(b), a.max(b))
}

fn even_subsets(items: &[usize]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0u32..1 << items.len())
        .filter(|m| m.count_ones() % 2 == 0)
        .map(|m| (0..items.len()).filter(|&i| m >> i & 1 == 1).map(|i| items[i]).collect())
        .collect();
    out.sort();
    out
}

impl FurerGraph {
    pub fn new(base: &Graph) -> Result<FurerGraph> {
        FurerGraph::with_twists(base, &[])
    }

    pub fn with_twists(base: &Graph, twisted: &[(usize, usize)]) -> Result<FurerGraph> {
        if let Some(v) = (0..base.n()).find(|&v| base.degree(v) > MAX_BASE_DEGREE) {
            return Err(Error::InvalidBase(format!("vertex {} has degree above {MAX_BASE_DEGREE}", v + 1)));
        }
        let mut set = BTreeSet::new();
        for &e in twisted {
            let e = norm(e);
            if e.1 >= base.n() || !base.has_edge(e.0, e.1) {
                return Err(Error::InvalidBase(format!("({}, {}) is not a base edge", e.0 + 1, e.1 + 1)));
            }
            // Twisting an edge twice cancels.
            if !set.insert(e) {
                set.remove(&e);
            }
        }
        let mut meta = Vec::new();
        let mut starts = Vec::with_capacity(base.n() + 1);
        for x in 0..base.n() {
            starts.push(meta.len());
            for s in even_subsets(base.neighbors(x)) {
                meta.push((x, s));
            }
        }
        starts.push(meta.len());
        let mut edges = Vec::new();
        for &(x, y) in base.edges() {
            let flip = set.contains(&(x, y));
            for a in starts[x]..starts[x + 1] {
                let y_in_x = meta[a].1.binary_search(&y).is_ok();
                for (b, (_, sub)) in meta.iter().enumerate().take(starts[y + 1]).skip(starts[y]) {
                    let x_in_y = sub.binary_search(&x).is_ok();
                    if (x_in_y == y_in_x) != flip {
                        edges.push((a, b));
                    }
                }
            }
        }
        let graph = Graph::new(meta.len(), &edges)?;
        Ok(FurerGraph { base: base.clone(), twisted: set, meta, starts, graph })
    }

    /// Same base with the twist set replaced by its symmetric difference with `edges`.
    pub fn twist(&self, edges: &[(usize, usize)]) -> Result<FurerGraph> {
        let mut all: Vec<_> = self.twisted.iter().copied().collect();
        all.extend(edges.iter().copied().map(norm));
        FurerGraph::with_twists(&self.base, &all)
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn twisted_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.twisted.iter().copied()
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn meta_vertex(&self, i: usize) -> (usize, &[usize]) {
        (self.meta[i].0, &self.meta[i].1)
    }

    /// Indices of `Meta(x)`.
    pub fn meta_range(&self, x: usize) -> Range<usize> {
        self.starts[x]..self.starts[x + 1]
    }

    pub fn index_of(&self, x: usize, subset: &[usize]) -> Option<usize> {
        let mut s = subset.to_vec();
        s.sort_unstable();
        self.meta_range(x).find(|&i| self.meta[i].1 == s)
    }

    /// Attaches to every base vertex x (printed label `x + 1`) a path of
    /// `x + 2` new vertices whose first vertex is adjacent to all of `Meta(x)`.
    /// New vertices follow the meta vertices, chain by chain.
    pub fn augment(&self) -> Graph {
        let mut edges: Vec<(usize, usize)> = self.graph.edges().to_vec();
        let mut next = self.meta.len();
        for x in 0..self.base.n() {
            let len = x + 2;
            for a in self.meta_range(x) {
                edges.push((a, next));
            }
            for j in 0..len - 1 {
                edges.push((next + j, next + j + 1));
            }
            next += len;
        }
        Graph::new(next, &edges).expect("augmentation is simple")
    }
}

/// Connected, minimum degree at least 2 and some vertex of degree at least 3.
pub fn is_proper_base(g: &Graph) -> bool {
    g.n() > 0
        && g.is_connected().unwrap_or(false)
        && (0..g.n()).all(|v| g.degree(v) >= 2)
        && (0..g.n()).any(|v| g.degree(v) >= 3)
}

/// Augmented Furer graph of `base` and of its twist along the
/// lexicographically smallest edge.
pub fn make_pair(base: &Graph) -> Result<(Graph, Graph)> {
    if base.m() == 0 || !base.is_connected()? {
        return Err(Error::InvalidBase("base must be connected with at least one edge".into()));
    }
    let plain = FurerGraph::new(base)?;
    let twisted = plain.twist(&[base.edges()[0]])?;
    Ok((plain.augment(), twisted.augment()))
}

/// Isomorphism from `fg` to `fg` twisted additionally on `e1` and `e2`.
///
/// Along a simple base path `w0 w1 ... wk` that starts with `e1` and ends
/// with `e2`, every interior `(w_i, Z)` goes to `(w_i, Z xor {w_{i-1}, w_{i+1}})`.
pub fn double_twist_isomorphism(fg: &FurerGraph, e1: (usize, usize), e2: (usize, usize)) -> Result<VertexPermutation> {
    let base = fg.base();
    let (e1, e2) = (norm(e1), norm(e2));
    for e in [e1, e2] {
        if e.1 >= base.n() || !base.has_edge(e.0, e.1) {
            return Err(Error::InvalidBase(format!("({}, {}) is not a base edge", e.0 + 1, e.1 + 1)));
        }
    }
    let n = fg.graph().n();
    if e1 == e2 {
        return Ok(VertexPermutation::identity(n));
    }
    let path =
        twist_path(base, e1, e2).ok_or_else(|| Error::InvalidBase("edges lie in different components".into()))?;
    let mut map: Vec<usize> = (0..n).collect();
    for i in 1..path.len() - 1 {
        let (prev, w, nxt) = (path[i - 1], path[i], path[i + 1]);
        for a in fg.meta_range(w) {
            let mut z: BTreeSet<usize> = fg.meta_vertex(a).1.iter().copied().collect();
            for t in [prev, nxt] {
                if !z.remove(&t) {
                    z.insert(t);
                }
            }
            let z: Vec<usize> = z.into_iter().collect();
            map[a] = fg.index_of(w, &z).expect("even subset stays even");
        }
    }
    let perm = VertexPermutation::new(map)?;
    let target = fg.twist(&[e1, e2])?;
    if !perm.is_isomorphism(fg.graph(), target.graph()) {
        return Err(Error::Internal("double-twist map does not preserve edges".into()));
    }
    Ok(perm)
}

/// Simple path `a, b, ..., c, d` with `{a, b} = e1` and `{c, d} = e2`.
fn twist_path(base: &Graph, e1: (usize, usize), e2: (usize, usize)) -> Option<Vec<usize>> {
    let n = base.n();
    let mut best: Option<Vec<usize>> = None;
    for (a, b) in [(e1.0, e1.1), (e1.1, e1.0)] {
        for (c, d) in [(e2.0, e2.1), (e2.1, e2.0)] {
            if a == c || a == d || b == d {
                continue;
            }
            let adj: Vec<Vec<usize>> = (0..n)
                .map(|v| {
                    if v == a || v == d {
                        Vec::new()
                    } else {
                        base.neighbors(v).iter().copied().filter(|&w| w != a && w != d).collect()
                    }
                })
                .collect();
            let dist = bfs_with(n, c, |v| adj[v].as_slice());
            if dist[b] == UNREACHABLE {
                continue;
            }
            let mut path = vec![a, b];
            let mut cur = b;
            while cur != c {
                cur = *adj[cur].iter().find(|&&w| dist[w] + 1 == dist[cur]).expect("bfs predecessor");
                path.push(cur);
            }
            path.push(d);
            if best.as_ref().is_none_or(|p| path.len() < p.len()) {
                best = Some(path);
            }
        }
    }
    best
}
