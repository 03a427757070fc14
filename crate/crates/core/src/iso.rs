//! Exact isomorphism test by backtracking, pruned with color refinement.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexPermutation};
use crate::refine::{push_multiset, refine};

/// Largest vertex count `find_isomorphism` accepts.
pub const MAX_VERTICES: usize = 64;
const NODE_BUDGET: u64 = 200_000_000;

/// Joint 1-WL vertex colors of several graphs.
pub fn color_refinement(graphs: &[&Graph]) -> Vec<Vec<u32>> {
    let initial = graphs.iter().map(|g| (0..g.n()).map(|v| vec![g.degree(v) as u32]).collect()).collect();
    let cap = graphs.iter().map(|g| g.n()).sum();
    refine(initial, cap, false, |gi, v, c, buf| {
        buf.push(c[v]);
        push_multiset(buf, graphs[gi].neighbors(v).iter().map(|&w| c[w]).collect());
    })
    .colors
}

/// Returns `Some(p)` with `p` mapping `g` onto `h`, `None` when the graphs are
/// not isomorphic, or an error when the input exceeds the supported size or
/// search budget. A returned mapping has been checked edge by edge.
pub fn find_isomorphism(g: &Graph, h: &Graph) -> Result<Option<VertexPermutation>> {
    let n = g.n();
    if n != h.n() || g.m() != h.m() || g.degree_sequence() != h.degree_sequence() {
        return Ok(None);
    }
    if n > MAX_VERTICES {
        return Err(Error::TooLarge(format!("isomorphism test supports at most {MAX_VERTICES} vertices")));
    }
    let colors = color_refinement(&[g, h]);
    let (cg, ch) = (&colors[0], &colors[1]);
    let mut hist_g = cg.clone();
    let mut hist_h = ch.clone();
    hist_g.sort_unstable();
    hist_h.sort_unstable();
    if hist_g != hist_h {
        return Ok(None);
    }
    let class_size = |c: u32| cg.iter().filter(|&&x| x == c).count();

    // Visit vertices so that each one (after the first of its component) has
    // an already mapped neighbour, preferring small color classes.
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let linked = g.neighbors(v).iter().filter(|&&w| placed[w]).count();
                (linked, std::cmp::Reverse(class_size(cg[v])), std::cmp::Reverse(v))
            })
            .expect("unplaced vertex");
        placed[next] = true;
        order.push(next);
    }

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut nodes = 0u64;
    let found = extend(g, h, cg, ch, &order, 0, &mut map, &mut used, &mut nodes)?;
    if !found {
        return Ok(None);
    }
    let perm = VertexPermutation::new(map)?;
    if !perm.is_isomorphism(g, h) {
        return Err(Error::Internal("isomorphism search produced an invalid mapping".into()));
    }
    Ok(Some(perm))
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g: &Graph,
    h: &Graph,
    cg: &[u32],
    ch: &[u32],
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
    nodes: &mut u64,
) -> Result<bool> {
    if depth == order.len() {
        return Ok(true);
    }
    *nodes += 1;
    if *nodes > NODE_BUDGET {
        return Err(Error::TooLarge("isomorphism search budget exhausted".into()));
    }
    let v = order[depth];
    'cand: for x in 0..h.n() {
        if used[x] || ch[x] != cg[v] {
            continue;
        }
        for &w in &order[..depth] {
            if g.has_edge(v, w) != h.has_edge(x, map[w]) {
                continue 'cand;
            }
        }
        map[v] = x;
        used[x] = true;
        if extend(g, h, cg, ch, order, depth + 1, map, used, nodes)? {
            return Ok(true);
        }
        used[x] = false;
        map[v] = usize::MAX;
    }
    Ok(false)
}
