#![allow(dead_code)]

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use wl_lab::algorithm::NAMES;
use wl_lab::catalog::{builtin_catalog, random_proper_base};
use wl_lab::corpus::{connected_graphs, random_connected_graph};
use wl_lab::furer::{double_twist_isomorphism, is_proper_base, make_pair, FurerGraph};
use wl_lab::gdwl::{hitting_times, resistance_distances, DistValue};
use wl_lab::iso::find_isomorphism;
use wl_lab::rng::SplitMix64;
use wl_lab::{AlgorithmSpec, Graph, VertexPermutation};

pub type Check<T> = Result<T, String>;

fn q(a: i64, b: i64) -> DistValue {
    DistValue::Finite(BigRational::new(BigInt::from(a), BigInt::from(b)))
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check<()> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Connected G(n, p) graphs with 4 to 8 vertices.
pub fn sample_graphs(seed: u64, count: usize, p: f64) -> Vec<Graph> {
    let mut rng = SplitMix64::new(seed);
    (0..count)
        .map(|_| {
            let n = 4 + rng.below(5) as usize;
            random_connected_graph(n, p, &mut rng).unwrap()
        })
        .collect()
}

pub fn exact_distance_values() -> Check<()> {
    let k3 = Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
    let p3 = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
    let h_k3 = hitting_times(&k3).map_err(|e| e.to_string())?;
    let r_k3 = resistance_distances(&k3).map_err(|e| e.to_string())?;
    let h_p3 = hitting_times(&p3).map_err(|e| e.to_string())?;
    ensure(h_k3[1] == q(2, 1), || format!("H(K3 adjacent) = {}", h_k3[1]))?;
    ensure(h_p3[2] == q(4, 1), || format!("H(P3 ends) = {}", h_p3[2]))?;
    ensure(r_k3[1] == q(2, 3), || format!("RD(K3 adjacent) = {}", r_k3[1]))
}

fn walk_mean(g: &Graph, u: usize, v: usize, walks: usize, rng: &mut SplitMix64) -> f64 {
    let mut total = 0u64;
    for _ in 0..walks {
        let mut x = u;
        while x != v {
            let nb = g.neighbors(x);
            x = nb[rng.below(nb.len() as u64) as usize];
            total += 1;
        }
    }
    total as f64 / walks as f64
}

/// One nontrivial pair per graph, `walks` random walks each; returns the
/// largest deviation from the exact hitting time.
pub fn monte_carlo_hitting_times(graphs: &[Graph], walks: usize, tolerance: f64) -> Check<f64> {
    let mut rng = SplitMix64::new(99);
    let mut worst = 0.0f64;
    for (i, g) in graphs.iter().enumerate() {
        let n = g.n();
        let h = hitting_times(g).map_err(|e| e.to_string())?;
        let (u, v, exact) = loop {
            let u = rng.below(n as u64) as usize;
            let v = (u + 1 + rng.below(n as u64 - 1) as usize) % n;
            let exact = h[u * n + v].to_f64();
            if exact > 1.0 {
                break (u, v, exact);
            }
        };
        let dev = (walk_mean(g, u, v, walks, &mut rng) - exact).abs();
        ensure(dev <= tolerance, || format!("graph {i}: H({u},{v}) = {exact}, walks off by {dev}"))?;
        worst = worst.max(dev);
    }
    Ok(worst)
}

/// Compares every resistance distance with the Laplacian pseudoinverse
/// formula; returns the largest error.
pub fn laplacian_resistance(graphs: &[Graph], tolerance: f64) -> Check<f64> {
    let mut worst = 0.0f64;
    for (i, g) in graphs.iter().enumerate() {
        let n = g.n();
        let mut lap = DMatrix::<f64>::zeros(n, n);
        for &(a, b) in g.edges() {
            lap[(a, a)] += 1.0;
            lap[(b, b)] += 1.0;
            lap[(a, b)] -= 1.0;
            lap[(b, a)] -= 1.0;
        }
        let pinv = lap.pseudo_inverse(1e-12)?;
        let rd = resistance_distances(g).map_err(|e| e.to_string())?;
        for u in 0..n {
            for v in 0..n {
                let want = pinv[(u, u)] + pinv[(v, v)] - 2.0 * pinv[(u, v)];
                let err = (rd[u * n + v].to_f64() - want).abs();
                ensure(err < tolerance, || format!("graph {i}: RD({u},{v}) off by {err}"))?;
                worst = worst.max(err);
            }
        }
    }
    Ok(worst)
}

fn meta_count(base: &Graph) -> usize {
    (0..base.n()).map(|v| 1usize << (base.degree(v) - 1)).sum()
}

fn chain_count(base: &Graph) -> usize {
    (0..base.n()).map(|x| x + 2).sum()
}

/// Double-twist witnesses on random proper bases with at most 8 vertices,
/// starting from assorted already-twisted graphs.
pub fn double_twists(count: usize) -> Check<()> {
    let mut rng = SplitMix64::new(7);
    for i in 0..count {
        let base = random_proper_base(8, &mut rng);
        let edges = base.edges();
        let e1 = edges[rng.below(edges.len() as u64) as usize];
        let e2 = edges[rng.below(edges.len() as u64) as usize];
        let start = rng.below(3) as usize;
        let earlier: Vec<_> = edges.iter().copied().skip(start).step_by(3).collect();
        let fg = FurerGraph::with_twists(&base, &earlier).map_err(|e| e.to_string())?;
        let target = fg.twist(&[e1, e2]).map_err(|e| e.to_string())?;
        let p = double_twist_isomorphism(&fg, e1, e2).map_err(|e| e.to_string())?;
        ensure(p.is_isomorphism(fg.graph(), target.graph()), || format!("base {i}: witness breaks an edge"))?;
        ensure(fg.graph().n() == meta_count(&base), || format!("base {i}: wrong vertex count"))?;
    }
    Ok(())
}

/// Single-twist pairs that the brute-force oracle must call non-isomorphic:
/// augmented pairs of every proper base on 4 or 5 vertices that fit in 40
/// vertices, and plain pairs of every catalog base that fit in 40 vertices.
/// Also checks the vertex-count formula on every construction touched.
/// Returns how many pairs went through the oracle.
pub fn single_twists_not_isomorphic() -> Check<usize> {
    let mut checked = 0;
    let mut bases: Vec<(String, Graph, bool)> = Vec::new();
    for n in 4..=5 {
        for g in connected_graphs(n).unwrap().into_iter().filter(is_proper_base) {
            bases.push((g.to_edge_list().replace('\n', " "), g, true));
        }
    }
    for e in builtin_catalog() {
        bases.push((e.name.clone(), e.base().map_err(|e| e.to_string())?, false));
    }
    for (name, base, augmented) in bases {
        let plain = FurerGraph::new(&base).map_err(|e| e.to_string())?;
        let (g, h) = make_pair(&base).map_err(|e| e.to_string())?;
        ensure(plain.graph().n() == meta_count(&base), || format!("{name}: meta vertex count"))?;
        ensure(g.n() == meta_count(&base) + chain_count(&base), || format!("{name}: augmented count"))?;
        let (g, h) = if augmented {
            (g, h)
        } else {
            let t = plain.twist(&[base.edges()[0]]).map_err(|e| e.to_string())?;
            (plain.graph().clone(), t.graph().clone())
        };
        if g.n() > 40 {
            continue;
        }
        let iso = find_isomorphism(&g, &h).map_err(|e| format!("{name}: {e}"))?;
        ensure(iso.is_none(), || format!("{name}: twisted pair reported isomorphic"))?;
        checked += 1;
    }
    Ok(checked)
}

fn relabel(g: &Graph, rng: &mut SplitMix64) -> Graph {
    let mut p: Vec<usize> = (0..g.n()).collect();
    rng.shuffle(&mut p);
    g.permute(&VertexPermutation::new(p).unwrap()).unwrap()
}

/// Certificates of every named algorithm must not change under `perms`
/// random relabelings of each graph. Returns the number of comparisons.
pub fn relabelled_certificates(graphs: &[Graph], perms: usize) -> Check<usize> {
    let mut rng = SplitMix64::new(3);
    let mut compared = 0;
    for (i, g) in graphs.iter().enumerate() {
        for name in NAMES {
            let alg: AlgorithmSpec = name.parse().unwrap();
            let cert = alg.certificate(g).map_err(|e| e.to_string())?;
            for _ in 0..perms {
                let other = alg.certificate(&relabel(g, &mut rng)).map_err(|e| e.to_string())?;
                ensure(other == cert, || format!("graph {i}: {name} certificate changed"))?;
                compared += 1;
            }
        }
    }
    Ok(compared)
}

/// Certificates computed on a one-thread pool and on a four-thread pool must
/// be byte-identical.
pub fn thread_invariance(graphs: &[Graph]) -> Check<()> {
    let serial = rayon::ThreadPoolBuilder::new().num_threads(1).build().map_err(|e| e.to_string())?;
    let wide = rayon::ThreadPoolBuilder::new().num_threads(4).build().map_err(|e| e.to_string())?;
    for (i, g) in graphs.iter().enumerate() {
        for name in NAMES {
            let alg: AlgorithmSpec = name.parse().unwrap();
            let a = serial.install(|| alg.certificate(g)).map_err(|e| e.to_string())?;
            let b = wide.install(|| alg.certificate(g)).map_err(|e| e.to_string())?;
            ensure(a.bytes() == b.bytes(), || format!("graph {i}: {name} bytes depend on thread count"))?;
        }
    }
    Ok(())
}
