//! Simple undirected graphs.
//!
//! In memory a vertex is an index `0..n`. Every external format (edge lists,
//! JSON, CLI output) uses the labels `1..n`, so index `i` is printed as `i + 1`.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Distance marker for vertex pairs in different components.
pub const UNREACHABLE: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    matrix: Vec<bool>,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a graph from 0-based edges. Rejects self-loops, duplicates and
    /// out-of-range endpoints.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut matrix = vec![false; n * n];
        let mut adj = vec![Vec::new(); n];
        let mut list = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!("edge ({}, {}) out of range for n = {n}", u + 1, v + 1)));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at {}", u + 1)));
            }
            if matrix[u * n + v] {
                return Err(Error::InvalidGraph(format!("duplicate edge ({}, {})", u + 1, v + 1)));
            }
            matrix[u * n + v] = true;
            matrix[v * n + u] = true;
            adj[u].push(v);
            adj[v].push(u);
            list.push((u.min(v), u.max(v)));
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        list.sort_unstable();
        Ok(Graph { n, adj, matrix, edges: list })
    }

    pub fn empty(n: usize) -> Graph {
        Graph::new(n, &[]).expect("edgeless graph is valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.matrix[u * self.n + v]
    }

    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        d.sort_unstable();
        d
    }

    /// Parses the `n m` header plus `m` lines of `u v` (1-based). `#` starts a
    /// comment and blank lines are ignored.
    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges = Vec::new();
        let mut seen = std::collections::HashSet::new();
        let mut last_line = 0;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            last_line = line_no;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let nums: Option<Vec<usize>> = fields.iter().map(|f| f.parse().ok()).collect();
            let nums = match nums {
                Some(v) if v.len() == 2 => v,
                _ => {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: format!("expected two non-negative integers, got `{line}`"),
                    })
                }
            };
            let Some((n, m)) = header else {
                header = Some((nums[0], nums[1]));
                continue;
            };
            if edges.len() == m {
                return Err(Error::Parse { line: line_no, msg: format!("more than the declared {m} edges") });
            }
            let (u, v) = (nums[0], nums[1]);
            if u == 0 || v == 0 || u > n || v > n {
                return Err(Error::Parse { line: line_no, msg: format!("vertex id out of range 1..{n} in `{line}`") });
            }
            if u == v {
                return Err(Error::Parse { line: line_no, msg: format!("self-loop at vertex {u}") });
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::Parse { line: line_no, msg: format!("duplicate edge {} {}", u.min(v), u.max(v)) });
            }
            edges.push((u - 1, v - 1));
        }
        let Some((n, m)) = header else {
            return Err(Error::Parse { line: last_line.max(1), msg: "missing `n m` header".into() });
        };
        if edges.len() != m {
            return Err(Error::Parse {
                line: last_line + 1,
                msg: format!("expected {m} edges, found {}", edges.len()),
            });
        }
        Graph::new(n, &edges)
    }

    /// Serializes with edges in lexicographic order, 1-based.
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.m());
        for &(u, v) in &self.edges {
            let _ = writeln!(s, "{} {}", u + 1, v + 1);
        }
        s
    }

    pub fn bfs_distances(&self, src: usize) -> Vec<u32> {
        bfs_with(self.n, src, |v| self.adj[v].as_slice())
    }

    /// All-pairs shortest-path distances, row-major.
    pub fn distance_matrix(&self) -> Vec<u32> {
        let mut d = Vec::with_capacity(self.n * self.n);
        for s in 0..self.n {
            d.extend(self.bfs_distances(s));
        }
        d
    }

    pub fn is_connected(&self) -> Result<bool> {
        if self.n == 0 {
            return Err(Error::Empty);
        }
        Ok(self.bfs_distances(0).iter().all(|&d| d != UNREACHABLE))
    }

    /// Articulation points of a connected graph, sorted.
    pub fn cut_vertices(&self) -> Result<Vec<usize>> {
        if !self.is_connected()? {
            return Err(Error::Disconnected);
        }
        let n = self.n;
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut is_cut = vec![false; n];
        let mut timer = 0;
        // Iterative DFS: (vertex, parent, next neighbour index).
        let mut stack: Vec<(usize, usize, usize)> = vec![(0, usize::MAX, 0)];
        disc[0] = 0;
        low[0] = 0;
        timer += 1;
        let mut root_children = 0;
        while let Some(&mut (v, parent, ref mut next)) = stack.last_mut() {
            if *next < self.adj[v].len() {
                let w = self.adj[v][*next];
                *next += 1;
                if disc[w] == usize::MAX {
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    if v == 0 {
                        root_children += 1;
                    }
                    stack.push((w, v, 0));
                } else if w != parent {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if parent != usize::MAX {
                    low[parent] = low[parent].min(low[v]);
                    if parent != 0 && low[v] >= disc[parent] {
                        is_cut[parent] = true;
                    }
                }
            }
        }
        if root_children > 1 {
            is_cut[0] = true;
        }
        Ok((0..n).filter(|&v| is_cut[v]).collect())
    }

    /// Relabels vertex `i` as `perm.image(i)`.
    pub fn permute(&self, perm: &VertexPermutation) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::SizeMismatch(perm.len(), self.n));
        }
        let edges: Vec<_> = self.edges.iter().map(|&(u, v)| (perm.image(u), perm.image(v))).collect();
        Graph::new(self.n, &edges)
    }

    /// Graph with the given vertex set removed from every edge, keeping all n vertices.
    pub fn without_edges_at(&self, v: usize) -> Graph {
        let edges: Vec<_> = self.edges.iter().copied().filter(|&(a, b)| a != v && b != v).collect();
        Graph::new(self.n, &edges).expect("subset of valid edges")
    }
}

pub(crate) fn bfs_with<'a, F>(n: usize, src: usize, nbrs: F) -> Vec<u32>
where
    F: Fn(usize) -> &'a [usize],
{
    let mut dist = vec![UNREACHABLE; n];
    let mut queue = VecDeque::new();
    dist[src] = 0;
    queue.push_back(src);
    while let Some(v) = queue.pop_front() {
        for &w in nbrs(v) {
            if dist[w] == UNREACHABLE {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// A bijection on `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexPermutation {
    map: Vec<usize>,
}

impl VertexPermutation {
    pub fn new(map: Vec<usize>) -> Result<VertexPermutation> {
        let mut seen = vec![false; map.len()];
        for &x in &map {
            if x >= map.len() || seen[x] {
                return Err(Error::InvalidGraph("mapping is not a permutation".into()));
            }
            seen[x] = true;
        }
        Ok(VertexPermutation { map })
    }

    pub fn identity(n: usize) -> VertexPermutation {
        VertexPermutation { map: (0..n).collect() }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn image(&self, v: usize) -> usize {
        self.map[v]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    pub fn inverse(&self) -> VertexPermutation {
        let mut inv = vec![0; self.map.len()];
        for (i, &x) in self.map.iter().enumerate() {
            inv[x] = i;
        }
        VertexPermutation { map: inv }
    }

    /// True when `perm` maps every edge of `g` onto an edge of `h` and vice versa.
    pub fn is_isomorphism(&self, g: &Graph, h: &Graph) -> bool {
        g.n() == h.n()
            && g.m() == h.m()
            && self.len() == g.n()
            && g.edges().iter().all(|&(u, v)| h.has_edge(self.image(u), self.image(v)))
    }
}
