//! Subgraph generation policies: which edges each rooted copy `G^u` keeps and
//! how the pair `(u, v)` is initially labelled.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{bfs_with, Graph, UNREACHABLE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Policy {
    /// Full graph, root marked.
    NodeMarking,
    /// Full graph, pairs labelled by shortest-path distance.
    DistanceEncoding,
    /// Full graph, no labels.
    Constant,
    /// k-hop ego network of the root, no labels.
    Ego(u32),
    /// k-hop ego network with the root marked.
    EgoMarking(u32),
    /// k-hop ego network with distance labels.
    EgoDistance(u32),
    /// Root's incident edges removed, no labels.
    NodeDeletion,
    /// Root's incident edges removed, root marked.
    NodeDeletionMarking,
}

/// Initial label of a pair. The derived order is the canonical key order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum InitialKey {
    Constant,
    Marked(bool),
    /// Distance from the root inside `G^u`; `UNREACHABLE` when cut off.
    Distance(u32),
}

impl InitialKey {
    pub(crate) fn encode(self) -> [u32; 2] {
        match self {
            InitialKey::Constant => [0, 0],
            InitialKey::Marked(b) => [1, b as u32],
            InitialKey::Distance(d) => [2, d],
        }
    }
}

enum Edges {
    Whole,
    PerRoot(Vec<Vec<Vec<usize>>>),
}

/// The bag of rooted subgraphs `{G^u : u in V}`.
pub struct SubgraphBag<'g> {
    graph: &'g Graph,
    policy: Policy,
    edges: Edges,
}

impl<'g> SubgraphBag<'g> {
    pub fn new(graph: &'g Graph, policy: Policy) -> SubgraphBag<'g> {
        let n = graph.n();
        let edges = match policy {
            Policy::NodeMarking | Policy::DistanceEncoding | Policy::Constant => Edges::Whole,
            Policy::Ego(k) | Policy::EgoMarking(k) | Policy::EgoDistance(k) => Edges::PerRoot(
                (0..n)
                    .map(|u| {
                        let d = graph.bfs_distances(u);
                        let inside = |x: usize| d[x] != UNREACHABLE && d[x] <= k;
                        (0..n)
                            .map(|v| {
                                if inside(v) {
                                    graph.neighbors(v).iter().copied().filter(|&w| inside(w)).collect()
                                } else {
                                    Vec::new()
                                }
                            })
                            .collect()
                    })
                    .collect(),
            ),
            Policy::NodeDeletion | Policy::NodeDeletionMarking => Edges::PerRoot(
                (0..n)
                    .map(|u| {
                        (0..n)
                            .map(|v| {
                                if v == u {
                                    Vec::new()
                                } else {
                                    graph.neighbors(v).iter().copied().filter(|&w| w != u).collect()
                                }
                            })
                            .collect()
                    })
                    .collect(),
            ),
        };
        SubgraphBag { graph, policy, edges }
    }

    pub fn graph(&self) -> &Graph {
        self.graph
    }

    pub fn policy(&self) -> Policy {
        self.policy
    }

    /// `N_{G^u}(v)`.
    pub fn neighbors(&self, u: usize, v: usize) -> &[usize] {
        match &self.edges {
            Edges::Whole => self.graph.neighbors(v),
            Edges::PerRoot(e) => &e[u][v],
        }
    }

    /// Initial keys of all pairs, row-major over `(u, v)`.
    pub fn initial_keys(&self) -> Vec<InitialKey> {
        let n = self.graph.n();
        let mut keys = Vec::with_capacity(n * n);
        for u in 0..n {
            match self.policy {
                Policy::Constant | Policy::Ego(_) | Policy::NodeDeletion => {
                    keys.extend(std::iter::repeat_n(InitialKey::Constant, n))
                }
                Policy::NodeMarking | Policy::EgoMarking(_) | Policy::NodeDeletionMarking => {
                    keys.extend((0..n).map(|v| InitialKey::Marked(u == v)))
                }
                Policy::DistanceEncoding | Policy::EgoDistance(_) => {
                    let d = bfs_with(n, u, |v| self.neighbors(u, v));
                    keys.extend(d.into_iter().map(InitialKey::Distance));
                }
            }
        }
        keys
    }
}

impl fmt::Display for Policy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Policy::NodeMarking => write!(f, "nm"),
            Policy::DistanceEncoding => write!(f, "de"),
            Policy::Constant => write!(f, "const"),
            Policy::Ego(k) => write!(f, "ego:{k}"),
            Policy::EgoMarking(k) => write!(f, "egonm:{k}"),
            Policy::EgoDistance(k) => write!(f, "egode:{k}"),
            Policy::NodeDeletion => write!(f, "nd"),
            Policy::NodeDeletionMarking => write!(f, "ndm"),
        }
    }
}

impl FromStr for Policy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Policy> {
        let bad = || Error::InvalidSpec(format!("unknown policy `{s}`"));
        let (head, arg) = match s.split_once(':') {
            Some((h, a)) => (h, Some(a.parse::<u32>().map_err(|_| bad())?)),
            None => (s, None),
        };
        Ok(match (head, arg) {
            ("nm", None) => Policy::NodeMarking,
            ("de", None) => Policy::DistanceEncoding,
            ("const", None) => Policy::Constant,
            ("nd", None) => Policy::NodeDeletion,
            ("ndm", None) => Policy::NodeDeletionMarking,
            ("ego", Some(k)) => Policy::Ego(k),
            ("egonm", Some(k)) => Policy::EgoMarking(k),
            ("egode", Some(k)) => Policy::EgoDistance(k),
            _ => return Err(bad()),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::new(n, &e).unwrap()
    }

    #[test]
    fn names_roundtrip() {
        for s in ["nm", "de", "const", "ego:2", "egonm:1", "egode:3", "nd", "ndm"] {
            assert_eq!(s.parse::<Policy>().unwrap().to_string(), s);
        }
        assert!("ego".parse::<Policy>().is_err());
        assert!("nm:1".parse::<Policy>().is_err());
    }

    #[test]
    fn ego_network_edges() {
        let g = path(5);
        let bag = SubgraphBag::new(&g, Policy::Ego(1));
        assert_eq!(bag.neighbors(0, 0), &[1]);
        assert_eq!(bag.neighbors(0, 1), &[0]);
        assert!(bag.neighbors(0, 2).is_empty());
        assert!(bag.neighbors(0, 4).is_empty());
    }

    #[test]
    fn deletion_isolates_root() {
        let g = path(3);
        let bag = SubgraphBag::new(&g, Policy::NodeDeletionMarking);
        assert!(bag.neighbors(1, 1).is_empty());
        assert!(bag.neighbors(1, 0).is_empty());
        assert_eq!(bag.neighbors(0, 1), &[2]);
        let keys = bag.initial_keys();
        assert_eq!(keys[4], InitialKey::Marked(true));
        assert_eq!(keys[1], InitialKey::Marked(false));
    }

    #[test]
    fn distance_keys_use_the_subgraph() {
        let g = path(4);
        let de = SubgraphBag::new(&g, Policy::DistanceEncoding).initial_keys();
        assert_eq!(de[3], InitialKey::Distance(3));
        let ego = SubgraphBag::new(&g, Policy::EgoDistance(1)).initial_keys();
        assert_eq!(ego[1], InitialKey::Distance(1));
        assert_eq!(ego[3], InitialKey::Distance(UNREACHABLE));
    }
}
