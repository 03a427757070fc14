//! Subgraph WL over ordered vertex pairs `(u, v)`, read as "vertex v in the
//! subgraph rooted at u".

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::policy::{Policy, SubgraphBag};
use crate::refine::{push_multiset, refine, Outcome};

/// Atomic aggregations. `Puv` (the pair's own color) is always included.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AtomicAgg {
    Puv,
    Pvu,
    Puu,
    Pvv,
    /// All pairs sharing the root: `{{chi(u, w) : w}}`.
    Gu,
    /// All pairs sharing the vertex: `{{chi(w, v) : w}}`.
    Gv,
    /// Neighbours of v inside `G^u`.
    Lu,
    /// Roots adjacent to u inside `G^v`.
    Lv,
    /// `{{chi(w, x) : w in V, x in N(v)}}`, the cross-subgraph term of DSS-WL.
    ExtDss,
}

impl AtomicAgg {
    pub const ALL: [AtomicAgg; 9] = [
        AtomicAgg::Puv,
        AtomicAgg::Pvu,
        AtomicAgg::Puu,
        AtomicAgg::Pvv,
        AtomicAgg::Gu,
        AtomicAgg::Gv,
        AtomicAgg::Lu,
        AtomicAgg::Lv,
        AtomicAgg::ExtDss,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AtomicAgg::Puv => "puv",
            AtomicAgg::Pvu => "pvu",
            AtomicAgg::Puu => "puu",
            AtomicAgg::Pvv => "pvv",
            AtomicAgg::Gu => "gu",
            AtomicAgg::Gv => "gv",
            AtomicAgg::Lu => "lu",
            AtomicAgg::Lv => "lv",
            AtomicAgg::ExtDss => "dss",
        }
    }

    /// The aggregation obtained by swapping the roles of u and v.
    pub fn transposed(self) -> Option<AtomicAgg> {
        Some(match self {
            AtomicAgg::Puv => AtomicAgg::Puv,
            AtomicAgg::Pvu => AtomicAgg::Pvu,
            AtomicAgg::Puu => AtomicAgg::Pvv,
            AtomicAgg::Pvv => AtomicAgg::Puu,
            AtomicAgg::Gu => AtomicAgg::Gv,
            AtomicAgg::Gv => AtomicAgg::Gu,
            AtomicAgg::Lu => AtomicAgg::Lv,
            AtomicAgg::Lv => AtomicAgg::Lu,
            AtomicAgg::ExtDss => return None,
        })
    }
}

impl FromStr for AtomicAgg {
    type Err = Error;

    fn from_str(s: &str) -> Result<AtomicAgg> {
        AtomicAgg::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::InvalidSpec(format!("unknown aggregation `{s}`")))
    }
}

/// A set of atomic aggregations; `Puv` is implicit and never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct AggScheme(BTreeSet<AtomicAgg>);

impl AggScheme {
    pub fn new<I: IntoIterator<Item = AtomicAgg>>(aggs: I) -> AggScheme {
        AggScheme(aggs.into_iter().filter(|&a| a != AtomicAgg::Puv).collect())
    }

    pub fn contains(&self, a: AtomicAgg) -> bool {
        a == AtomicAgg::Puv || self.0.contains(&a)
    }

    pub fn iter(&self) -> impl Iterator<Item = AtomicAgg> + '_ {
        self.0.iter().copied()
    }

    pub fn transposed(&self) -> Option<AggScheme> {
        self.0.iter().map(|a| a.transposed()).collect::<Option<Vec<_>>>().map(AggScheme::new)
    }
}

impl fmt::Display for AggScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<_> = self.0.iter().map(|a| a.name()).collect();
        if names.is_empty() {
            write!(f, "puv")
        } else {
            write!(f, "{}", names.join(","))
        }
    }
}

impl FromStr for AggScheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<AggScheme> {
        let aggs = s.split(',').map(|t| t.trim().parse()).collect::<Result<Vec<AtomicAgg>>>()?;
        Ok(AggScheme::new(aggs))
    }
}

/// How the stable pair coloring becomes a graph invariant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pooling {
    /// Pool over v inside each subgraph, then over subgraphs.
    Vs,
    /// Pool over subgraphs u for each vertex, then over vertices.
    Sv,
}

impl fmt::Display for Pooling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Pooling::Vs => "vs",
            Pooling::Sv => "sv",
        })
    }
}

impl FromStr for Pooling {
    type Err = Error;

    fn from_str(s: &str) -> Result<Pooling> {
        match s {
            "vs" => Ok(Pooling::Vs),
            "sv" => Ok(Pooling::Sv),
            _ => Err(Error::InvalidSpec(format!("unknown pooling `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SwlSpec {
    pub policy: Policy,
    pub scheme: AggScheme,
    pub pooling: Pooling,
}

impl SwlSpec {
    pub fn new(policy: Policy, aggs: &[AtomicAgg], pooling: Pooling) -> SwlSpec {
        SwlSpec { policy, scheme: AggScheme::new(aggs.iter().copied()), pooling }
    }
}

/// Stable color of every ordered pair, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairColoring {
    n: usize,
    colors: Vec<u32>,
}

impl PairColoring {
    pub(crate) fn new(n: usize, colors: Vec<u32>) -> PairColoring {
        debug_assert_eq!(colors.len(), n * n);
        PairColoring { n, colors }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, u: usize, v: usize) -> u32 {
        self.colors[u * self.n + v]
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.colors
    }
}

/// Nested pooling of a pair coloring: rows (VS) or columns (SV) become sorted
/// multisets, and the multiset of those is sorted again.
pub fn pool_nested(n: usize, colors: &[u32], pooling: Pooling) -> Vec<u32> {
    let mut groups: Vec<Vec<u32>> = (0..n)
        .map(|a| {
            let mut g: Vec<u32> = (0..n)
                .map(|b| match pooling {
                    Pooling::Vs => colors[a * n + b],
                    Pooling::Sv => colors[b * n + a],
                })
                .collect();
            g.sort_unstable();
            g
        })
        .collect();
    groups.sort_unstable();
    let mut out = vec![n as u32];
    for g in groups {
        out.extend(g);
    }
    out
}

pub(crate) fn run(spec: &SwlSpec, graphs: &[&Graph], cap: usize, record: bool) -> (Outcome, Vec<Vec<u32>>) {
    let bags: Vec<SubgraphBag> = graphs.iter().map(|g| SubgraphBag::new(g, spec.policy)).collect();
    let initial = bags.iter().map(|b| b.initial_keys().into_iter().map(|k| k.encode().to_vec()).collect()).collect();
    let aggs: Vec<AtomicAgg> = spec.scheme.iter().collect();
    let out = refine(initial, cap, record, |gi, item, c, buf| {
        let bag = &bags[gi];
        let g = bag.graph();
        let n = g.n();
        let (u, v) = (item / n, item % n);
        buf.push(c[item]);
        for &a in &aggs {
            match a {
                AtomicAgg::Puv => {}
                AtomicAgg::Pvu => buf.push(c[v * n + u]),
                AtomicAgg::Puu => buf.push(c[u * n + u]),
                AtomicAgg::Pvv => buf.push(c[v * n + v]),
                AtomicAgg::Gu => push_multiset(buf, c[u * n..(u + 1) * n].to_vec()),
                AtomicAgg::Gv => push_multiset(buf, (0..n).map(|w| c[w * n + v]).collect()),
                AtomicAgg::Lu => push_multiset(buf, bag.neighbors(u, v).iter().map(|&w| c[u * n + w]).collect()),
                AtomicAgg::Lv => push_multiset(buf, bag.neighbors(v, u).iter().map(|&w| c[w * n + v]).collect()),
                AtomicAgg::ExtDss => {
                    push_multiset(buf, g.neighbors(v).iter().flat_map(|&x| (0..n).map(move |w| c[w * n + x])).collect())
                }
            }
        }
    });
    let pooled = graphs.iter().zip(&out.colors).map(|(g, c)| pool_nested(g.n(), c, spec.pooling)).collect();
    (out, pooled)
}

/// Joint stable pair colorings of several graphs under one dictionary.
pub fn joint_stable_coloring(spec: &SwlSpec, graphs: &[&Graph], cap: Option<usize>) -> Vec<PairColoring> {
    let cap = cap.unwrap_or_else(|| graphs.iter().map(|g| g.n() * g.n()).sum());
    let (out, _) = run(spec, graphs, cap, false);
    graphs.iter().zip(out.colors).map(|(g, c)| PairColoring::new(g.n(), c)).collect()
}
