//! Generalized distance WL: vertex refinement where every vertex sees the
//! multiset of (distance to it, color) over all vertices.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Graph, UNREACHABLE};
use crate::refine::{refine, Outcome};

/// Largest numerator or denominator, in bits, tolerated in exact arithmetic.
pub const MAX_BITS: u64 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DistanceKind {
    /// Shortest-path distance.
    Spd,
    /// Hitting time of a simple random walk.
    Htd,
    /// Resistance distance.
    Rd,
}

impl DistanceKind {
    pub fn name(self) -> &'static str {
        match self {
            DistanceKind::Spd => "spd",
            DistanceKind::Htd => "htd",
            DistanceKind::Rd => "rd",
        }
    }
}

impl FromStr for DistanceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<DistanceKind> {
        match s {
            "spd" => Ok(DistanceKind::Spd),
            "htd" => Ok(DistanceKind::Htd),
            "rd" => Ok(DistanceKind::Rd),
            _ => Err(Error::InvalidSpec(format!("unknown distance `{s}`"))),
        }
    }
}

/// A distance value; pairs in different components are `Infinite`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DistValue {
    Finite(BigRational),
    Infinite,
}

impl DistValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            DistValue::Finite(r) => r.to_f64().unwrap_or(f64::NAN),
            DistValue::Infinite => f64::INFINITY,
        }
    }
}

impl fmt::Display for DistValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistValue::Finite(r) => write!(f, "{r}"),
            DistValue::Infinite => write!(f, "inf"),
        }
    }
}

/// The distance kinds combined in one GD-WL instance, e.g. `spd+htd`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GdSpec {
    kinds: Vec<DistanceKind>,
}

impl GdSpec {
    pub fn new(kinds: &[DistanceKind]) -> Result<GdSpec> {
        let mut k = kinds.to_vec();
        k.sort();
        k.dedup();
        if k.is_empty() {
            return Err(Error::InvalidSpec("at least one distance is required".into()));
        }
        Ok(GdSpec { kinds: k })
    }

    pub fn kinds(&self) -> &[DistanceKind] {
        &self.kinds
    }
}

impl fmt::Display for GdSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<_> = self.kinds.iter().map(|k| k.name()).collect();
        write!(f, "gdwl:{}", names.join("+"))
    }
}

fn guard(r: &BigRational) -> Result<()> {
    if r.numer().bits() > MAX_BITS || r.denom().bits() > MAX_BITS {
        return Err(Error::Overflow(MAX_BITS));
    }
    Ok(())
}

fn guard_int(x: &BigInt) -> Result<()> {
    if x.bits() > MAX_BITS {
        return Err(Error::Overflow(MAX_BITS));
    }
    Ok(())
}

/// Solves the square system `a x = b` exactly with fraction-free elimination.
fn solve_exact(mut m: Vec<Vec<BigInt>>) -> Result<Vec<BigRational>> {
    let k = m.len();
    let mut prev = BigInt::one();
    for p in 0..k {
        if m[p][p].is_zero() {
            let r = (p + 1..k)
                .find(|&r| !m[r][p].is_zero())
                .ok_or_else(|| Error::Internal("singular hitting-time system".into()))?;
            m.swap(p, r);
        }
        for i in p + 1..k {
            for j in p + 1..=k {
                let v = (&m[i][j] * &m[p][p] - &m[i][p] * &m[p][j]) / &prev;
                guard_int(&v)?;
                m[i][j] = v;
            }
            m[i][p] = BigInt::zero();
        }
        prev = m[p][p].clone();
    }
    let mut x = vec![BigRational::zero(); k];
    for i in (0..k).rev() {
        let mut acc = BigRational::from_integer(m[i][k].clone());
        for j in i + 1..k {
            acc -= BigRational::from_integer(m[i][j].clone()) * &x[j];
        }
        let xi = acc / BigRational::from_integer(m[i][i].clone());
        guard(&xi)?;
        x[i] = xi;
    }
    Ok(x)
}

/// Expected steps for a simple random walk from u to first reach `target`,
/// for every u (row of the result). Unreachable vertices get `Infinite`.
fn hitting_times_to(g: &Graph, target: usize) -> Result<Vec<DistValue>> {
    let n = g.n();
    let reach = g.bfs_distances(target);
    let idx: Vec<usize> = (0..n).filter(|&x| x != target && reach[x] != UNREACHABLE).collect();
    let mut pos = vec![usize::MAX; n];
    for (i, &x) in idx.iter().enumerate() {
        pos[x] = i;
    }
    let k = idx.len();
    let mut m = vec![vec![BigInt::zero(); k + 1]; k];
    for (i, &x) in idx.iter().enumerate() {
        let d = g.degree(x) as i64;
        m[i][i] = BigInt::from(d);
        m[i][k] = BigInt::from(d);
        for &y in g.neighbors(x) {
            if y != target {
                m[i][pos[y]] -= BigInt::one();
            }
        }
    }
    let sol = solve_exact(m)?;
    Ok((0..n)
        .map(|x| {
            if x == target {
                DistValue::Finite(BigRational::zero())
            } else if reach[x] == UNREACHABLE {
                DistValue::Infinite
            } else {
                DistValue::Finite(sol[pos[x]].clone())
            }
        })
        .collect())
}

/// Hitting-time matrix, row-major: entry `u * n + v` is the expected time
/// from u to v.
pub fn hitting_times(g: &Graph) -> Result<Vec<DistValue>> {
    let n = g.n();
    let cols: Vec<Vec<DistValue>> = (0..n).into_par_iter().map(|v| hitting_times_to(g, v)).collect::<Result<_>>()?;
    let mut out = vec![DistValue::Infinite; n * n];
    for (v, col) in cols.into_iter().enumerate() {
        for (u, h) in col.into_iter().enumerate() {
            out[u * n + v] = h;
        }
    }
    Ok(out)
}

/// Resistance distance via commute times: `(H(u,v) + H(v,u)) / 2|E_C|` where
/// `E_C` are the edges of the shared component.
pub fn resistance_distances(g: &Graph) -> Result<Vec<DistValue>> {
    let n = g.n();
    let h = hitting_times(g)?;
    let comp_edges: Vec<usize> = (0..n)
        .map(|u| {
            let d = g.bfs_distances(u);
            g.edges().iter().filter(|&&(a, _)| d[a] != UNREACHABLE).count()
        })
        .collect();
    let mut out = Vec::with_capacity(n * n);
    for u in 0..n {
        for v in 0..n {
            out.push(match (&h[u * n + v], &h[v * n + u]) {
                (DistValue::Finite(a), DistValue::Finite(b)) => {
                    if u == v {
                        DistValue::Finite(BigRational::zero())
                    } else {
                        let r = (a + b) / BigRational::from_integer(BigInt::from(2 * comp_edges[u]));
                        guard(&r)?;
                        DistValue::Finite(r)
                    }
                }
                _ => DistValue::Infinite,
            });
        }
    }
    Ok(out)
}

pub fn shortest_path_distances(g: &Graph) -> Vec<DistValue> {
    g.distance_matrix()
        .into_iter()
        .map(|d| {
            if d == UNREACHABLE {
                DistValue::Infinite
            } else {
                DistValue::Finite(BigRational::from_integer(BigInt::from(d)))
            }
        })
        .collect()
}

pub fn distances(g: &Graph, kind: DistanceKind) -> Result<Vec<DistValue>> {
    match kind {
        DistanceKind::Spd => Ok(shortest_path_distances(g)),
        DistanceKind::Htd => hitting_times(g),
        DistanceKind::Rd => resistance_distances(g),
    }
}

/// Tab-separated matrix with reduced fractions.
pub fn distances_tsv(g: &Graph, kind: DistanceKind) -> Result<String> {
    let n = g.n();
    let d = distances(g, kind)?;
    let mut s = String::new();
    for u in 0..n {
        let row: Vec<String> = (0..n).map(|v| d[u * n + v].to_string()).collect();
        s.push_str(&row.join("\t"));
        s.push('\n');
    }
    Ok(s)
}

type Vector = Vec<DistValue>;

fn encode_value(out: &mut Vec<u8>, v: &DistValue) {
    let text = v.to_string();
    out.extend_from_slice(&(text.len() as u32).to_le_bytes());
    out.extend_from_slice(text.as_bytes());
}

/// Returns the refinement outcome, the pooled color multisets and the sorted
/// table of distance vectors used to encode pairs.
pub(crate) fn run(
    spec: &GdSpec,
    graphs: &[&Graph],
    cap: usize,
    record: bool,
) -> Result<(Outcome, Vec<Vec<u32>>, Vec<u8>)> {
    let per_graph: Vec<Vec<Vector>> = graphs
        .iter()
        .map(|g| {
            let mats: Vec<Vec<DistValue>> = spec.kinds.iter().map(|&k| distances(g, k)).collect::<Result<_>>()?;
            Ok((0..g.n() * g.n()).map(|p| mats.iter().map(|m| m[p].clone()).collect()).collect())
        })
        .collect::<Result<_>>()?;
    let mut table: Vec<&Vector> = per_graph.iter().flatten().collect();
    table.sort();
    table.dedup();
    let codes: Vec<Vec<u32>> = per_graph
        .iter()
        .map(|vs| vs.iter().map(|v| table.binary_search(&v).expect("present") as u32).collect())
        .collect();
    let mut prelude = Vec::new();
    prelude.extend_from_slice(&(table.len() as u32).to_le_bytes());
    for v in &table {
        for x in v.iter() {
            encode_value(&mut prelude, x);
        }
    }
    let initial = graphs.iter().map(|g| vec![vec![0u32]; g.n()]).collect();
    let out = refine(initial, cap, record, |gi, v, c, buf| {
        let n = c.len();
        let code = &codes[gi];
        let mut pairs: Vec<u64> = (0..n).map(|u| (u64::from(code[u * n + v]) << 32) | u64::from(c[u])).collect();
        pairs.sort_unstable();
        buf.push(c[v]);
        buf.push(n as u32);
        for p in pairs {
            buf.push((p >> 32) as u32);
            buf.push(p as u32);
        }
    });
    let pooled = out
        .colors
        .iter()
        .map(|c| {
            let mut s = c.clone();
            s.sort_unstable();
            let mut p = vec![s.len() as u32];
            p.extend(s);
            p
        })
        .collect();
    Ok((out, pooled, prelude))
}
