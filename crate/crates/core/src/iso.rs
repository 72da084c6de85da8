//! Exact isomorphism for small graphs by permutation backtracking.
//!
//! Vertices are only matched to vertices with the same degree and the same
//! multiset of neighbor degrees, and each partial assignment must preserve
//! adjacency against everything already placed.

use std::time::Instant;

use serde::Serialize;

use crate::error::{AbortReason, Error, Result};
use crate::graph::{Graph, VertexId};
use crate::solver::SearchBudget;

/// A bijection `V(g1) -> V(g2)`: vertex `v` maps to `mapping[v]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoWitness {
    pub mapping: Vec<VertexId>,
}

impl IsoWitness {
    /// Checks bijectivity and that `uv` is an edge of `g1` exactly when
    /// `f(u)f(v)` is an edge of `g2`.
    pub fn verify(&self, g1: &Graph, g2: &Graph) -> bool {
        let n = g1.order();
        if g2.order() != n || self.mapping.len() != n {
            return false;
        }
        let mut hit = vec![false; n];
        for &VertexId(t) in &self.mapping {
            if t >= n || std::mem::replace(&mut hit[t], true) {
                return false;
            }
        }
        (0..n).all(|u| {
            (u + 1..n)
                .all(|v| g1.has_edge(u, v) == g2.has_edge(self.mapping[u].0, self.mapping[v].0))
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Refutation {
    OrderMismatch,
    EdgeCountMismatch,
    DegreeProfileMismatch,
    ExhaustiveSearch,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoOutcome {
    Isomorphic(IsoWitness),
    NotIsomorphic(Refutation),
}

impl IsoOutcome {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoOutcome::Isomorphic(_))
    }
}

pub fn are_isomorphic(g1: &Graph, g2: &Graph, budget: &SearchBudget) -> Result<IsoOutcome> {
    let n = g1.order();
    if n.max(g2.order()) > budget.max_order {
        return Err(Error::SearchAborted {
            reason: AbortReason::OrderLimit,
            lower: 0,
            upper: 0,
        });
    }
    if n != g2.order() {
        return Ok(IsoOutcome::NotIsomorphic(Refutation::OrderMismatch));
    }
    if g1.edge_count() != g2.edge_count() {
        return Ok(IsoOutcome::NotIsomorphic(Refutation::EdgeCountMismatch));
    }
    let sig1 = signatures(g1);
    let sig2 = signatures(g2);
    let (mut s1, mut s2) = (sig1.clone(), sig2.clone());
    s1.sort();
    s2.sort();
    if s1 != s2 {
        return Ok(IsoOutcome::NotIsomorphic(Refutation::DegreeProfileMismatch));
    }

    let candidates: Vec<Vec<usize>> = sig1
        .iter()
        .map(|s| (0..n).filter(|&c| &sig2[c] == s).collect())
        .collect();
    let order = placement_order(g1, &candidates);
    let mut state = Backtrack {
        g1,
        g2,
        order: &order,
        candidates: &candidates,
        map: vec![usize::MAX; n],
        used: vec![false; n],
        deadline: budget.time_limit.map(|t| Instant::now() + t),
        ticks: 0,
    };
    match state.extend(0) {
        Step::Found => Ok(IsoOutcome::Isomorphic(IsoWitness {
            mapping: state.map.into_iter().map(VertexId).collect(),
        })),
        Step::Exhausted => Ok(IsoOutcome::NotIsomorphic(Refutation::ExhaustiveSearch)),
        Step::TimedOut => Err(Error::SearchAborted {
            reason: AbortReason::TimeLimit,
            lower: 0,
            upper: 0,
        }),
    }
}

/// Degree followed by the sorted neighbor degrees.
fn signatures(g: &Graph) -> Vec<Vec<usize>> {
    let deg = g.degree_sequence();
    (0..g.order())
        .map(|v| {
            let mut s: Vec<usize> = g.neighbors(v).iter().map(|u| deg[u]).collect();
            s.sort_unstable();
            s.insert(0, deg[v]);
            s
        })
        .collect()
}

/// Places the most constrained vertex first, then repeatedly the vertex with
/// the most already-placed neighbors (ties: fewer candidates, lower id).
fn placement_order(g: &Graph, candidates: &[Vec<usize>]) -> Vec<usize> {
    let n = g.order();
    let mut placed = vec![false; n];
    let mut links = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .min_by_key(|&v| (std::cmp::Reverse(links[v]), candidates[v].len(), v))
            .expect("unplaced vertex remains");
        placed[next] = true;
        order.push(next);
        for u in g.neighbors(next) {
            links[u] += 1;
        }
    }
    order
}

enum Step {
    Found,
    Exhausted,
    TimedOut,
}

struct Backtrack<'a> {
    g1: &'a Graph,
    g2: &'a Graph,
    order: &'a [usize],
    candidates: &'a [Vec<usize>],
    map: Vec<usize>,
    used: Vec<bool>,
    deadline: Option<Instant>,
    ticks: u32,
}

impl Backtrack<'_> {
    fn extend(&mut self, depth: usize) -> Step {
        if depth == self.order.len() {
            return Step::Found;
        }
        self.ticks = self.ticks.wrapping_add(1);
        if self.ticks.is_multiple_of(1024) && self.deadline.is_some_and(|d| Instant::now() >= d) {
            return Step::TimedOut;
        }
        let v = self.order[depth];
        for &c in &self.candidates[v] {
            if self.used[c] || !self.consistent(depth, v, c) {
                continue;
            }
            self.map[v] = c;
            self.used[c] = true;
            match self.extend(depth + 1) {
                Step::Exhausted => {}
                done => return done,
            }
            self.used[c] = false;
            self.map[v] = usize::MAX;
        }
        Step::Exhausted
    }

    fn consistent(&self, depth: usize, v: usize, c: usize) -> bool {
        self.order[..depth]
            .iter()
            .all(|&u| self.g1.has_edge(u, v) == self.g2.has_edge(self.map[u], c))
    }
}
