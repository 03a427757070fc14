//! Generic color refinement over a family of graphs sharing one dictionary.
//!
//! Every round each item (a vertex or an ordered pair, depending on the
//! algorithm) gets a signature encoded as a flat `Vec<u32>`. All signatures of
//! all graphs are sorted and deduplicated and an item's new color is the rank
//! of its signature. Ranks do not depend on evaluation order, so serial and
//! parallel runs produce identical ids.

use rayon::prelude::*;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone)]
pub(crate) struct Outcome {
    pub colors: Vec<Vec<u32>>,
    /// Refinement rounds executed after the initial coloring.
    pub rounds: usize,
    /// Number of distinct colors after round 0, 1, ...
    pub class_counts: Vec<usize>,
    pub stable: bool,
    /// Sorted signature table of every round, only kept when requested.
    pub tables: Vec<Vec<Vec<u32>>>,
}

fn assign(sigs: &[Vec<Vec<u32>>]) -> (Vec<Vec<u32>>, Vec<Vec<u32>>) {
    let mut table: Vec<&[u32]> = sigs.iter().flatten().map(Vec::as_slice).collect();
    table.par_sort_unstable();
    table.dedup();
    let colors = sigs
        .iter()
        .map(|g| g.par_iter().map(|s| table.binary_search(&s.as_slice()).expect("signature present") as u32).collect())
        .collect();
    let owned = table.into_iter().map(<[u32]>::to_vec).collect();
    (colors, owned)
}

/// Runs refinement until the joint number of colors stops growing or `cap`
/// rounds have run. `sig(graph, item, colors_of_graph, out)` appends the
/// signature of `item`; it should start with the item's old color so that the
/// partition only ever refines.
pub(crate) fn refine<F>(initial: Vec<Vec<Vec<u32>>>, cap: usize, record: bool, sig: F) -> Outcome
where
    F: Fn(usize, usize, &[u32], &mut Vec<u32>) + Sync,
{
    let (mut colors, table) = assign(&initial);
    drop(initial);
    let mut class_counts = vec![table.len()];
    let mut tables = Vec::new();
    if record {
        tables.push(table);
    }
    let mut rounds = 0;
    let mut stable = false;
    while rounds < cap {
        let sigs: Vec<Vec<Vec<u32>>> = colors
            .iter()
            .enumerate()
            .map(|(gi, cg)| {
                (0..cg.len())
                    .into_par_iter()
                    .map_init(Vec::new, |buf, item| {
                        buf.clear();
                        sig(gi, item, cg, buf);
                        buf.clone()
                    })
                    .collect()
            })
            .collect();
        let (next, table) = assign(&sigs);
        rounds += 1;
        let count = table.len();
        let prev = *class_counts.last().unwrap();
        class_counts.push(count);
        if record {
            tables.push(table);
        }
        colors = next;
        if count == prev {
            stable = true;
            break;
        }
    }
    if cap == 0 {
        stable = false;
    }
    Outcome { colors, rounds, class_counts, stable, tables }
}

/// Appends `items` as a length-prefixed sorted multiset.
pub(crate) fn push_multiset(out: &mut Vec<u32>, mut items: Vec<u32>) {
    items.sort_unstable();
    out.push(items.len() as u32);
    out.extend(items);
}

/// Canonical invariant of one graph under one algorithm.
///
/// The bytes hold the algorithm name, an optional algorithm-specific prelude,
/// every round's sorted signature table and the final pooled structure. Two
/// graphs get equal certificates exactly when a joint run cannot tell them
/// apart, because ranks are isomorphism invariant and the stable coloring
/// determines all earlier rounds.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Certificate {
    bytes: Vec<u8>,
}

impl Certificate {
    pub(crate) fn build(name: &str, prelude: &[u8], tables: &[Vec<Vec<u32>>], pooled: &[u32]) -> Certificate {
        let mut bytes = Vec::new();
        let put = |b: &mut Vec<u8>, x: u32| b.extend_from_slice(&x.to_le_bytes());
        put(&mut bytes, name.len() as u32);
        bytes.extend_from_slice(name.as_bytes());
        put(&mut bytes, prelude.len() as u32);
        bytes.extend_from_slice(prelude);
        put(&mut bytes, tables.len() as u32);
        for t in tables {
            put(&mut bytes, t.len() as u32);
            for entry in t {
                put(&mut bytes, entry.len() as u32);
                for &x in entry {
                    put(&mut bytes, x);
                }
            }
        }
        put(&mut bytes, pooled.len() as u32);
        for &x in pooled {
            put(&mut bytes, x);
        }
        Certificate { bytes }
    }

    pub fn bytes(&self) -> &[u8] {
        &self.bytes
    }

    /// First 128 bits of SHA-256 over the bytes, as lowercase hex.
    pub fn digest(&self) -> String {
        let d = Sha256::digest(&self.bytes);
        d[..16].iter().map(|b| format!("{b:02x}")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks_are_order_independent() {
        let a = vec![vec![vec![5], vec![1], vec![5]], vec![vec![3]]];
        let b = vec![vec![vec![3]], vec![vec![5], vec![1], vec![5]]];
        let (ca, ta) = assign(&a);
        let (cb, tb) = assign(&b);
        assert_eq!(ta, tb);
        assert_eq!(ca[0], cb[1]);
        assert_eq!(ca[0], vec![2, 0, 2]);
    }

    #[test]
    fn stops_when_partition_is_stable() {
        // Path on 3 vertices refined by neighbour multisets.
        let adj = [vec![1usize], vec![0, 2], vec![1]];
        let out = refine(vec![vec![vec![0]; 3]], 10, true, |_, v, c, buf| {
            buf.push(c[v]);
            push_multiset(buf, adj[v].iter().map(|&w| c[w]).collect());
        });
        assert!(out.stable);
        assert_eq!(out.class_counts, vec![1, 2, 2]);
        assert_eq!(out.colors[0][0], out.colors[0][2]);
        assert_ne!(out.colors[0][0], out.colors[0][1]);
        assert_eq!(out.tables.len(), 3);
    }

    #[test]
    fn cap_zero_is_not_stable() {
        let out = refine(vec![vec![vec![0]]], 0, false, |_, v, c, buf| buf.push(c[v]));
        assert!(!out.stable);
        assert_eq!(out.rounds, 0);
    }

    #[test]
    fn digest_is_128_bits_hex() {
        let c = Certificate::build("x", &[], &[], &[1, 2]);
        assert_eq!(c.digest().len(), 32);
        assert_ne!(c, Certificate::build("x", &[], &[], &[2, 1]));
    }
}
