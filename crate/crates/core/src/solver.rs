//! Exact zero forcing number by exhaustive search.
//!
//! Candidate sets are enumerated by ascending size, and within a size in
//! lexicographic order, as a depth-first walk over sorted prefixes. The
//! closure of each prefix is carried along. A candidate that extends a prefix
//! by a vertex already inside the prefix's closure has the same closure as a
//! set one element smaller, and every smaller set is already known not to
//! force, so that whole branch is skipped.
//!
//! The size-`k` candidates are partitioned by their smallest element and the
//! partitions run in parallel. The reported witness is the lexicographically
//! least forcing set of minimum size regardless of thread count.

use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::error::{AbortReason, Error, Result};
use crate::forcing::close_in_place;
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    /// Largest graph order the search will accept.
    pub max_order: usize,
    pub time_limit: Option<Duration>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_order: 24,
            time_limit: None,
        }
    }
}

impl SearchBudget {
    pub fn with_max_order(mut self, max_order: usize) -> Self {
        self.max_order = max_order.max(1);
        self
    }

    pub fn with_time_limit(mut self, limit: Duration) -> Self {
        self.time_limit = Some(limit);
        self
    }
}

/// Result of a completed search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZfCertificate {
    pub z: usize,
    /// Lexicographically least forcing set of size `z`.
    pub witness: VertexSet,
    /// Every set of size `z - 1` was enumerated and refuted. False only when
    /// the search started at a caller-supplied lower bound equal to `z`.
    pub exhausted_below: bool,
}

pub fn zero_forcing_number(g: &Graph, budget: &SearchBudget) -> Result<ZfCertificate> {
    zero_forcing_number_from(g, budget, 1)
}

/// Like [`zero_forcing_number`] but skips sizes below `lower_bound`, which
/// must be a valid lower bound on Z(g) (e.g. `n - rank` of a witness matrix).
pub fn zero_forcing_number_from(
    g: &Graph,
    budget: &SearchBudget,
    lower_bound: usize,
) -> Result<ZfCertificate> {
    let n = g.order();
    if n == 0 {
        return Ok(ZfCertificate {
            z: 0,
            witness: VertexSet::new(0),
            exhausted_below: true,
        });
    }
    let search = Search::new(g, budget)?;
    let start = lower_bound.clamp(1, n);
    for k in start..=n {
        if let Some(witness) = search
            .first_of_size(k)
            .map_err(|reason| Error::SearchAborted {
                reason,
                lower: k,
                upper: n,
            })?
        {
            return Ok(ZfCertificate {
                z: k,
                witness,
                exhausted_below: k == 1 || k > start,
            });
        }
    }
    unreachable!("the full vertex set always forces")
}

/// Every forcing set of minimum size, in lexicographic order.
pub fn all_minimum_sets(g: &Graph, budget: &SearchBudget) -> Result<Vec<VertexSet>> {
    let cert = zero_forcing_number(g, budget)?;
    if cert.z == 0 {
        return Ok(vec![VertexSet::new(0)]);
    }
    let search = Search::new(g, budget)?;
    search
        .all_of_size(cert.z)
        .map_err(|reason| Error::SearchAborted {
            reason,
            lower: cert.z,
            upper: cert.z,
        })
}

struct Search<'a> {
    graph: &'a Graph,
    deadline: Option<Instant>,
    aborted: AtomicBool,
}

/// Visits between deadline checks.
const CLOCK_STRIDE: u32 = 1 << 10;

impl<'a> Search<'a> {
    fn new(graph: &'a Graph, budget: &SearchBudget) -> Result<Self> {
        if graph.order() > budget.max_order {
            return Err(Error::SearchAborted {
                reason: AbortReason::OrderLimit,
                lower: 1,
                upper: graph.order(),
            });
        }
        Ok(Search {
            graph,
            deadline: budget.time_limit.map(|t| Instant::now() + t),
            aborted: AtomicBool::new(false),
        })
    }

    fn seed(&self, first: usize) -> VertexSet {
        let mut cl = VertexSet::new(self.graph.order());
        cl.insert(first);
        close_in_place(self.graph, &mut cl);
        cl
    }

    fn first_of_size(&self, k: usize) -> std::result::Result<Option<VertexSet>, AbortReason> {
        let n = self.graph.order();
        let best_first = AtomicUsize::new(usize::MAX);
        let found: Vec<Option<Vec<usize>>> = (0..=n - k)
            .into_par_iter()
            .map(|first| {
                if best_first.load(Ordering::Relaxed) < first {
                    return None;
                }
                let mut walk = Walk::new(self, k, Some(&best_first));
                let mut chosen = vec![first];
                let hit = walk.first(&mut chosen, &self.seed(first), first + 1);
                if hit.is_some() {
                    best_first.fetch_min(first, Ordering::Relaxed);
                }
                hit
            })
            .collect();
        if self.aborted.load(Ordering::Relaxed) {
            return Err(AbortReason::TimeLimit);
        }
        Ok(found
            .into_iter()
            .flatten()
            .next()
            .map(|s| VertexSet::from_indices(n, s)))
    }

    fn all_of_size(&self, k: usize) -> std::result::Result<Vec<VertexSet>, AbortReason> {
        let n = self.graph.order();
        let parts: Vec<Vec<Vec<usize>>> = (0..=n - k)
            .into_par_iter()
            .map(|first| {
                let mut walk = Walk::new(self, k, None);
                let mut out = Vec::new();
                walk.all(&mut vec![first], &self.seed(first), first + 1, &mut out);
                out
            })
            .collect();
        if self.aborted.load(Ordering::Relaxed) {
            return Err(AbortReason::TimeLimit);
        }
        Ok(parts
            .into_iter()
            .flatten()
            .map(|s| VertexSet::from_indices(n, s))
            .collect())
    }
}

/// One worker's depth-first walk over a partition.
struct Walk<'s, 'a> {
    search: &'s Search<'a>,
    size: usize,
    best_first: Option<&'s AtomicUsize>,
    ticks: u32,
}

impl<'s, 'a> Walk<'s, 'a> {
    fn new(search: &'s Search<'a>, size: usize, best_first: Option<&'s AtomicUsize>) -> Self {
        Walk {
            search,
            size,
            best_first,
            ticks: 0,
        }
    }

    /// True when this walk should stop: time is up, or (in first-hit mode) a
    /// partition with a smaller first element has already succeeded.
    fn should_stop(&mut self, first: usize) -> bool {
        if let Some(best) = self.best_first {
            if best.load(Ordering::Relaxed) < first {
                return true;
            }
        }
        self.ticks += 1;
        if self.ticks.is_multiple_of(CLOCK_STRIDE) {
            if let Some(deadline) = self.search.deadline {
                if Instant::now() >= deadline {
                    self.search.aborted.store(true, Ordering::Relaxed);
                }
            }
        }
        self.search.aborted.load(Ordering::Relaxed)
    }

    fn first(
        &mut self,
        chosen: &mut Vec<usize>,
        cl: &VertexSet,
        from: usize,
    ) -> Option<Vec<usize>> {
        let remaining = self.size - chosen.len();
        if remaining == 0 {
            return cl.is_full().then(|| chosen.clone());
        }
        let n = self.search.graph.order();
        for v in from..=n - remaining {
            if cl.contains(v) {
                continue;
            }
            if self.should_stop(chosen[0]) {
                return None;
            }
            let mut next = cl.clone();
            next.insert(v);
            close_in_place(self.search.graph, &mut next);
            chosen.push(v);
            let hit = self.first(chosen, &next, v + 1);
            chosen.pop();
            if hit.is_some() {
                return hit;
            }
        }
        None
    }

    fn all(
        &mut self,
        chosen: &mut Vec<usize>,
        cl: &VertexSet,
        from: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        let remaining = self.size - chosen.len();
        if remaining == 0 {
            if cl.is_full() {
                out.push(chosen.clone());
            }
            return;
        }
        let n = self.search.graph.order();
        for v in from..=n - remaining {
            if cl.contains(v) {
                continue;
            }
            if self.should_stop(chosen[0]) {
                return;
            }
            let mut next = cl.clone();
            next.insert(v);
            close_in_place(self.search.graph, &mut next);
            chosen.push(v);
            self.all(chosen, &next, v + 1, out);
            chosen.pop();
        }
    }
}
