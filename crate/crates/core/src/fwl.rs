//! Folklore 2-WL with full, local and symmetric-local aggregation, plus the
//! local 2-WL variant (delta-2-LWL).

use std::fmt;

use crate::graph::Graph;
use crate::refine::{push_multiset, refine, Outcome};

/// Which intermediate vertices w enter the update of `(u, v)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Localization {
    /// Every vertex.
    Full,
    /// The closed neighbourhood of v.
    Local,
    /// The union of the closed neighbourhoods of u and v.
    SymLocal,
}

impl fmt::Display for Localization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Localization::Full => "fwl2",
            Localization::Local => "lfwl2",
            Localization::SymLocal => "slfwl2",
        })
    }
}

/// Isomorphism type of an ordered pair: 0 diagonal, 1 edge, 2 non-edge.
pub fn iso_type(g: &Graph, u: usize, v: usize) -> u32 {
    if u == v {
        0
    } else if g.has_edge(u, v) {
        1
    } else {
        2
    }
}

fn initial(graphs: &[&Graph]) -> Vec<Vec<Vec<u32>>> {
    graphs
        .iter()
        .map(|g| {
            let n = g.n();
            (0..n * n).map(|p| vec![iso_type(g, p / n, p % n)]).collect()
        })
        .collect()
}

/// Sorted multiset of all pair colors.
pub fn pool_flat(colors: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(colors.len() + 1);
    push_multiset(&mut out, colors.to_vec());
    out
}

fn pooled(out: &Outcome) -> Vec<Vec<u32>> {
    out.colors.iter().map(|c| pool_flat(c)).collect()
}

pub(crate) fn run(loc: Localization, graphs: &[&Graph], cap: usize, record: bool) -> (Outcome, Vec<Vec<u32>>) {
    let out = refine(initial(graphs), cap, record, |gi, item, c, buf| {
        let g = graphs[gi];
        let n = g.n();
        let (u, v) = (item / n, item % n);
        let pair = |w: usize| (u64::from(c[u * n + w]) << 32) | u64::from(c[w * n + v]);
        let mut pairs: Vec<u64> = match loc {
            Localization::Full => (0..n).map(pair).collect(),
            Localization::Local => std::iter::once(v).chain(g.neighbors(v).iter().copied()).map(pair).collect(),
            Localization::SymLocal => {
                let mut ws: Vec<usize> = [u, v]
                    .into_iter()
                    .chain(g.neighbors(u).iter().copied())
                    .chain(g.neighbors(v).iter().copied())
                    .collect();
                ws.sort_unstable();
                ws.dedup();
                ws.into_iter().map(pair).collect()
            }
        };
        pairs.sort_unstable();
        buf.push(c[item]);
        buf.push(pairs.len() as u32);
        for p in pairs {
            buf.push((p >> 32) as u32);
            buf.push(p as u32);
        }
    });
    let p = pooled(&out);
    (out, p)
}

pub(crate) fn run_delta2(graphs: &[&Graph], cap: usize, record: bool) -> (Outcome, Vec<Vec<u32>>) {
    let out = refine(initial(graphs), cap, record, |gi, item, c, buf| {
        let g = graphs[gi];
        let n = g.n();
        let (u, v) = (item / n, item % n);
        buf.push(c[item]);
        push_multiset(buf, g.neighbors(v).iter().map(|&w| c[u * n + w]).collect());
        push_multiset(buf, g.neighbors(u).iter().map(|&w| c[w * n + v]).collect());
    });
    let p = pooled(&out);
    (out, p)
}
