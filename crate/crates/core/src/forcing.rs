//! The color-change rule.
//!
//! A filled vertex with exactly one unfilled neighbor forces that neighbor.
//! Rounds are synchronous: every force legal at the start of a round fires
//! in that round, and the number of rounds to fill the graph is the
//! propagation time.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, VertexLabel};
use crate::vertex_set::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Force {
    pub forcer: VertexId,
    pub forced: VertexId,
}

/// All forces legal against `filled`, one per forced vertex, ordered by the
/// forced vertex. When several filled vertices could force the same vertex
/// the smallest id is recorded.
pub fn forcing_round(g: &Graph, filled: &VertexSet) -> Vec<Force> {
    let mut claimed = VertexSet::new(g.order());
    let mut forces = Vec::new();
    for u in filled {
        if let Some(v) = g.neighbors(u).sole_outside(filled) {
            if claimed.insert(v) {
                forces.push(Force {
                    forcer: VertexId(u),
                    forced: VertexId(v),
                });
            }
        }
    }
    forces.sort_by_key(|f| f.forced);
    forces
}

/// The closure of `initial`: the fixed point of the color-change rule.
///
/// Uses a worklist and fires forces one at a time; the resulting set is the
/// same as under synchronous rounds.
pub fn closure(g: &Graph, initial: &VertexSet) -> VertexSet {
    let mut filled = initial.clone();
    close_in_place(g, &mut filled);
    filled
}

/// Extends `filled` to its closure.
pub fn close_in_place(g: &Graph, filled: &mut VertexSet) {
    let mut stack: Vec<usize> = filled.iter().collect();
    while let Some(u) = stack.pop() {
        if let Some(v) = g.neighbors(u).sole_outside(filled) {
            filled.insert(v);
            stack.push(v);
            stack.extend(
                g.neighbors(v)
                    .iter()
                    .filter(|&x| x != u && filled.contains(x)),
            );
        }
    }
}

pub fn is_zero_forcing_set(g: &Graph, s: &VertexSet) -> bool {
    closure(g, s).is_full()
}

/// Round-by-round record of a synchronous forcing run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForcingChronicle {
    pub initial: VertexSet,
    pub rounds: Vec<Vec<Force>>,
    pub final_state: VertexSet,
}

pub fn forcing_closure(g: &Graph, initial: &VertexSet) -> ForcingChronicle {
    let mut filled = initial.clone();
    let mut rounds = Vec::new();
    loop {
        let forces = forcing_round(g, &filled);
        if forces.is_empty() {
            break;
        }
        for f in &forces {
            filled.insert(f.forced.0);
        }
        rounds.push(forces);
    }
    ForcingChronicle {
        initial: initial.clone(),
        rounds,
        final_state: filled,
    }
}

/// Number of synchronous rounds for `s` to fill `g`.
pub fn propagation_time(g: &Graph, s: &VertexSet) -> Result<usize> {
    forcing_closure(g, s).propagation_time().ok_or_else(|| {
        let closure = closure(g, s);
        Error::NotForcing {
            order: g.order(),
            closure,
        }
    })
}

impl ForcingChronicle {
    pub fn filled_all(&self) -> bool {
        self.final_state.is_full()
    }

    /// Rounds used, or `None` when the run stalled short of the whole graph.
    pub fn propagation_time(&self) -> Option<usize> {
        self.filled_all().then_some(self.rounds.len())
    }

    /// Replays the chronicle against `g`: every force must be legal at the
    /// start of its round, and no vertex may be forced twice or be forced
    /// while already filled.
    pub fn audit(&self, g: &Graph) -> std::result::Result<(), String> {
        let mut filled = self.initial.clone();
        for (k, round) in self.rounds.iter().enumerate() {
            for f in round {
                if !filled.contains(f.forcer.0) {
                    return Err(format!("round {}: forcer {} is unfilled", k + 1, f.forcer));
                }
                if filled.contains(f.forced.0) {
                    return Err(format!("round {}: {} already filled", k + 1, f.forced));
                }
                if g.neighbors(f.forcer.0).sole_outside(&filled) != Some(f.forced.0) {
                    return Err(format!(
                        "round {}: {} -> {} is not a legal force",
                        k + 1,
                        f.forcer,
                        f.forced
                    ));
                }
            }
            for f in round {
                if !filled.insert(f.forced.0) {
                    return Err(format!("round {}: {} forced twice", k + 1, f.forced));
                }
            }
        }
        if filled != self.final_state {
            return Err("final state does not match replay".into());
        }
        if !forcing_round(g, &filled).is_empty() {
            return Err("final state is not a fixed point".into());
        }
        Ok(())
    }

    pub fn record<F>(&self, label: F) -> ChronicleRecord
    where
        F: Fn(VertexId) -> VertexLabel,
    {
        ChronicleRecord {
            initial: self.initial.iter().map(|v| label(VertexId(v))).collect(),
            rounds: self
                .rounds
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|f| ForceRecord {
                            forcer: label(f.forcer),
                            forced: label(f.forced),
                        })
                        .collect()
                })
                .collect(),
            filled_all: self.filled_all(),
            pt: self.propagation_time(),
            filled: self.final_state.len(),
        }
    }
}

/// Serializable chronicle with user-facing labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChronicleRecord {
    pub initial: Vec<VertexLabel>,
    pub rounds: Vec<Vec<ForceRecord>>,
    pub filled_all: bool,
    pub pt: Option<usize>,
    pub filled: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ForceRecord {
    pub forcer: VertexLabel,
    pub forced: VertexLabel,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn paw() -> Graph {
        Graph::from_edge_list(4, &[(1, 2), (2, 3), (2, 4), (3, 4)]).unwrap()
    }

    fn set(n: usize, labels: &[usize]) -> VertexSet {
        VertexSet::from_indices(n, labels.iter().map(|l| l - 1))
    }

    #[test]
    fn paw_first_round() {
        let g = paw();
        let forces = forcing_round(&g, &set(4, &[1, 3]));
        assert_eq!(
            forces,
            vec![Force {
                forcer: VertexId(0),
                forced: VertexId(1)
            }]
        );
    }

    #[test]
    fn stalled_and_finished_rounds_are_empty() {
        let g = paw();
        assert!(forcing_round(&g, &VertexSet::full(4)).is_empty());
        let p3 = Graph::path(3).unwrap();
        assert!(forcing_round(&p3, &set(3, &[2])).is_empty());
    }

    #[test]
    fn shared_target_recorded_once_with_smallest_forcer() {
        // Star with center 2: leaves 1 and 3 filled both want to force 2.
        let g = Graph::from_edge_list(3, &[(1, 2), (2, 3)]).unwrap();
        let forces = forcing_round(&g, &set(3, &[1, 3]));
        assert_eq!(forces.len(), 1);
        assert_eq!(forces[0].forcer, VertexId(0));
        assert_eq!(forces[0].forced, VertexId(1));
    }

    #[test]
    fn paw_walkthrough() {
        let g = paw();
        let chron = forcing_closure(&g, &set(4, &[1, 3]));
        assert!(chron.filled_all());
        assert_eq!(chron.propagation_time(), Some(2));
        assert_eq!(chron.rounds[1][0].forced, VertexId(3));
        chron.audit(&g).unwrap();
    }

    #[test]
    fn cycle_single_vertex_stalls() {
        let c5 = Graph::cycle(5).unwrap();
        let s = set(5, &[1]);
        let chron = forcing_closure(&c5, &s);
        assert_eq!(chron.final_state, s);
        assert!(chron.rounds.is_empty());
        match propagation_time(&c5, &s) {
            Err(Error::NotForcing { closure, order }) => {
                assert_eq!(order, 5);
                assert_eq!(closure, s);
            }
            other => panic!("expected NotForcing, got {other:?}"),
        }
    }

    #[test]
    fn complete_graph_thresholds() {
        let k5 = Graph::complete(5).unwrap();
        assert!(is_zero_forcing_set(&k5, &set(5, &[1, 2, 3, 4])));
        assert!(is_zero_forcing_set(&k5, &set(5, &[2, 3, 4, 5])));
        assert!(!is_zero_forcing_set(&k5, &set(5, &[1, 2, 3])));
        assert!(is_zero_forcing_set(&k5, &VertexSet::full(5)));
        assert_eq!(propagation_time(&k5, &set(5, &[1, 2, 3, 4])).unwrap(), 1);
    }

    #[test]
    fn family_propagation_times() {
        assert_eq!(
            propagation_time(&Graph::path(5).unwrap(), &set(5, &[1])).unwrap(),
            4
        );
        assert_eq!(
            propagation_time(&Graph::cycle(6).unwrap(), &set(6, &[1, 2])).unwrap(),
            2
        );
        assert_eq!(
            propagation_time(&Graph::path(3).unwrap(), &VertexSet::full(3)).unwrap(),
            0
        );
    }

    #[test]
    fn record_uses_labels() {
        let g = paw();
        let rec = forcing_closure(&g, &set(4, &[1, 3])).record(|v| VertexLabel::Plain(v.label()));
        assert_eq!(rec.pt, Some(2));
        assert_eq!(rec.rounds[0][0].forcer, VertexLabel::Plain(1));
        assert_eq!(rec.rounds[0][0].forced, VertexLabel::Plain(2));
    }

    #[test]
    fn audit_rejects_forged_chronicle() {
        let g = paw();
        let mut chron = forcing_closure(&g, &set(4, &[1, 3]));
        chron.rounds[0][0].forcer = VertexId(2);
        assert!(chron.audit(&g).is_err());
    }
}
