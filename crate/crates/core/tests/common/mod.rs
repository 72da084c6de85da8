#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use zf_core::{Graph, VertexSet};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Erdős–Rényi graph on `n` vertices with edge probability `p`.
pub fn random_graph(rng: &mut StdRng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

pub fn random_set(rng: &mut StdRng, n: usize) -> VertexSet {
    let p = rng.random_range(0.05..0.6);
    VertexSet::from_indices(n, (0..n).filter(|_| rng.random_bool(p)))
}

/// Closure straight from the definition, on adjacency matrices and bool
/// vectors: repeat synchronous rounds until nothing changes.
pub fn reference_closure(g: &Graph, start: &[bool]) -> Vec<bool> {
    let n = g.order();
    let adj: Vec<Vec<bool>> = (0..n)
        .map(|u| (0..n).map(|v| g.has_edge(u, v)).collect())
        .collect();
    let mut filled = start.to_vec();
    loop {
        let mut next = filled.clone();
        for u in (0..n).filter(|&u| filled[u]) {
            let white: Vec<usize> = (0..n).filter(|&v| adj[u][v] && !filled[v]).collect();
            if white.len() == 1 {
                next[white[0]] = true;
            }
        }
        if next == filled {
            return filled;
        }
        filled = next;
    }
}

/// Smallest forcing set size by trying every subset, smallest first.
pub fn reference_z(g: &Graph) -> usize {
    let n = g.order();
    assert!(n <= 16, "reference search is exponential");
    (0..=n)
        .find(|&k| {
            (0u32..1 << n)
                .filter(|m| m.count_ones() as usize == k)
                .any(|mask| {
                    let start: Vec<bool> = (0..n).map(|v| mask & (1 << v) != 0).collect();
                    reference_closure(g, &start).iter().all(|&b| b)
                })
        })
        .unwrap()
}

pub fn to_bools(s: &VertexSet) -> Vec<bool> {
    (0..s.capacity()).map(|v| s.contains(v)).collect()
}
