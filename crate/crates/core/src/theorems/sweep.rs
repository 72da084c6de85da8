//! Running a case over a parameter grid.

use rayon::prelude::*;
use serde::Serialize;

use super::{verify_construction, BoundReport, CaseId, ConstructionSpec, PtStatus};
use crate::error::Error;
use crate::family::{Factor, FactorKind};
use crate::products::RootSet;

/// Inclusive parameter ranges. For the general cases `w` and `h` range
/// over factor orders and every family pairing is used.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepGrid {
    pub w: (usize, usize),
    pub h: (usize, usize),
    pub m: (usize, usize),
    /// Every valid root set instead of the canonical one.
    pub all_placements: bool,
}

impl SweepGrid {
    pub fn new(w: (usize, usize), h: (usize, usize)) -> Self {
        SweepGrid {
            w,
            h,
            m: (1, 3),
            all_placements: false,
        }
    }

    pub fn with_m(mut self, m: (usize, usize)) -> Self {
        self.m = m;
        self
    }

    pub fn with_all_placements(mut self, all: bool) -> Self {
        self.all_placements = all;
        self
    }
}

/// The grid the acceptance checks use for `case`: `2..=7 x 2..=9` for
/// path-by-path cases, `4..=7 x 3..=16` with `m` in `1..=3` for end
/// blocks, `4..=7 x 4..=9` otherwise, always over every placement.
pub fn acceptance_grid(case: CaseId) -> SweepGrid {
    let grid = match case {
        CaseId::PpEndU1 | CaseId::PpMidU1 | CaseId::PpEndU2 | CaseId::PpGenU2 => {
            SweepGrid::new((2, 7), (2, 9))
        }
        CaseId::PcEndBlock => SweepGrid::new((4, 7), (3, 16)),
        CaseId::GeneralS1 | CaseId::GeneralS2 => SweepGrid::new((1, 4), (1, 4)),
        _ => SweepGrid::new((4, 7), (4, 9)),
    };
    grid.with_all_placements(true)
}

fn pairs(w: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=w).flat_map(move |i| (i + 1..=w).map(move |j| (i, j)))
}

fn roots<I: IntoIterator<Item = Vec<usize>>>(w: usize, sets: I) -> Vec<RootSet> {
    let mut out: Vec<RootSet> = sets
        .into_iter()
        .filter_map(|s| RootSet::new(s, w).ok())
        .collect();
    out.sort();
    out.dedup();
    out
}

fn subsets(w: usize) -> impl Iterator<Item = Vec<usize>> {
    (1u32..(1 << w)).map(move |mask| (1..=w).filter(|c| mask & (1 << (c - 1)) != 0).collect())
}

/// Every root set the case's construction covers on an outer factor of
/// order `w` (`m` is the block size for end blocks).
pub fn placements(case: CaseId, w: usize, m: usize) -> Vec<RootSet> {
    let cyclic = |a: usize, b: usize| a.abs_diff(b) == 1 || a.abs_diff(b) == w - 1;
    match case {
        CaseId::PpEndU1 => roots(w, [vec![w], vec![1]]),
        CaseId::PpMidU1 | CaseId::PcMidU1 => roots(w, (2..w).map(|i| vec![i])),
        CaseId::PpEndU2 if w >= 2 => roots(w, [vec![w - 1, w], vec![1, 2]]),
        CaseId::PpGenU2 => roots(
            w,
            pairs(w)
                .filter(|&p| p != (1, 2) && p != (w.saturating_sub(1), w))
                .map(|(i, j)| vec![i, j]),
        ),
        CaseId::PcU2 => roots(w, pairs(w).map(|(i, j)| vec![i, j])),
        CaseId::CcU1 => roots(w, (1..=w).map(|i| vec![i])),
        CaseId::CcU2Adj => roots(
            w,
            pairs(w)
                .filter(|&(i, j)| cyclic(i, j))
                .map(|(i, j)| vec![i, j]),
        ),
        CaseId::CcU2NonAdj => roots(
            w,
            pairs(w)
                .filter(|&(i, j)| !cyclic(i, j))
                .map(|(i, j)| vec![i, j]),
        ),
        CaseId::CcU3Consec => roots(w, (0..w).map(|s| (0..3).map(|k| (s + k) % w + 1).collect())),
        CaseId::CcAllButOne => roots(w, (1..=w).map(|x| (1..=w).filter(|&c| c != x).collect())),
        CaseId::PcEndBlock if m >= 1 && m < w => {
            roots(w, [(1..=m).collect(), (w + 1 - m..=w).collect()])
        }
        CaseId::Kk => roots(w, subsets(w).filter(|s| s.len() < w)),
        CaseId::GeneralS1 | CaseId::GeneralS2 => roots(w, subsets(w)),
        _ => Vec::new(),
    }
}

fn family_specs(case: CaseId, grid: &SweepGrid) -> Vec<ConstructionSpec> {
    let mut specs = Vec::new();
    for w in grid.w.0..=grid.w.1 {
        for h in grid.h.0..=grid.h.1 {
            let base = ConstructionSpec::new(case, w, h);
            let ms: Vec<Option<usize>> = if case == CaseId::PcEndBlock {
                (grid.m.0..=grid.m.1).filter(|&m| m < w).map(Some).collect()
            } else {
                vec![None]
            };
            for m in ms {
                let base = match m {
                    Some(m) => base.clone().with_m(m),
                    None => base.clone(),
                };
                let chosen: Vec<ConstructionSpec> = if grid.all_placements {
                    placements(case, w, m.unwrap_or(1))
                        .into_iter()
                        .map(|root| base.clone().with_root(root))
                        .collect()
                } else if case == CaseId::Kk {
                    (1..w).map(|r| base.clone().with_r(r)).collect()
                } else {
                    Vec::new()
                };
                if chosen.is_empty() {
                    // Kept so the row records why the case does not apply.
                    specs.push(base);
                } else {
                    specs.extend(chosen);
                }
            }
        }
    }
    specs
}

fn general_specs(case: CaseId, grid: &SweepGrid) -> Vec<ConstructionSpec> {
    let kinds = [FactorKind::Path, FactorKind::Cycle, FactorKind::Complete];
    let factors = |(lo, hi): (usize, usize)| -> Vec<Factor> {
        kinds
            .iter()
            .flat_map(|k| (lo..=hi).map(move |n| k.of(n)))
            .filter(|f| f.graph().is_ok())
            .collect()
    };
    let mut specs = Vec::new();
    for outer in factors(grid.w) {
        for inner in factors(grid.h) {
            let roots = if grid.all_placements {
                placements(case, outer.order(), 1)
            } else {
                vec![RootSet::full(outer.order()).expect("non-empty factor")]
            };
            for root in roots {
                specs.push(
                    ConstructionSpec::general(case, outer.clone(), Some(root), inner.clone())
                        .expect("general case"),
                );
            }
        }
    }
    specs
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    pub w: usize,
    pub h: usize,
    pub product: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    pub root: Option<RootSet>,
    pub report: Option<BoundReport>,
    pub out_of_hypothesis: bool,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub rows: usize,
    pub verified: usize,
    pub forces_ok: usize,
    pub size_ok: usize,
    pub size_unchecked: usize,
    pub pt_match: usize,
    pub pt_mismatch: usize,
    pub pt_out_of_hypothesis: usize,
    pub out_of_hypothesis: usize,
    pub errors: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub case: CaseId,
    pub grid: SweepGrid,
    pub summary: SweepSummary,
    pub rows: Vec<SweepRow>,
}

impl SweepReport {
    /// Verified rows whose set fails to force or has the wrong size.
    pub fn failures(&self) -> impl Iterator<Item = &BoundReport> {
        self.rows
            .iter()
            .filter_map(|r| r.report.as_ref())
            .filter(|r| !r.holds())
    }
}

/// Verifies `case` at every grid point, in parallel, keeping grid order.
/// Points outside the case hypotheses become rows with an explanation.
pub fn sweep(case: CaseId, grid: &SweepGrid) -> SweepReport {
    let specs = if case.is_general() {
        general_specs(case, grid)
    } else {
        family_specs(case, grid)
    };
    let rows: Vec<SweepRow> = specs
        .par_iter()
        .map(|spec| {
            let outcome = verify_construction(spec);
            let (report, error) = match outcome {
                Ok(r) => (Some(r), None),
                Err(e) => (None, Some(e)),
            };
            SweepRow {
                w: spec.w(),
                h: spec.h(),
                product: match &spec.root {
                    Some(root) => format!("{}({}) x {}", spec.outer, root, spec.inner),
                    None => format!("{} x {}", spec.outer, spec.inner),
                },
                m: report.as_ref().and_then(|r| r.m).or(spec.m),
                r: report.as_ref().and_then(|r| r.r).or(spec.r),
                root: report
                    .as_ref()
                    .map(|r| r.root.clone())
                    .or_else(|| spec.root.clone()),
                out_of_hypothesis: matches!(error, Some(Error::OutOfHypothesis { .. })),
                error: error.map(|e| e.to_string()),
                report,
            }
        })
        .collect();

    let mut summary = SweepSummary {
        rows: rows.len(),
        ..SweepSummary::default()
    };
    for row in &rows {
        if row.out_of_hypothesis {
            summary.out_of_hypothesis += 1;
        } else if row.error.is_some() {
            summary.errors += 1;
        }
        let Some(rep) = &row.report else { continue };
        summary.verified += 1;
        summary.forces_ok += usize::from(rep.forces);
        match rep.expected_size {
            Some(e) => summary.size_ok += usize::from(e == rep.set_size),
            None => summary.size_unchecked += 1,
        }
        match rep.pt_status {
            PtStatus::Match => summary.pt_match += 1,
            PtStatus::Mismatch => summary.pt_mismatch += 1,
            PtStatus::OutOfHypothesis => summary.pt_out_of_hypothesis += 1,
        }
    }
    SweepReport {
        case,
        grid: grid.clone(),
        summary,
        rows,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_end_sweep_all_force() {
        let report = sweep(CaseId::PpEndU1, &SweepGrid::new((2, 6), (2, 8)));
        assert_eq!(report.summary.rows, 5 * 7);
        assert_eq!(report.summary.forces_ok, 35);
        assert_eq!(report.summary.size_ok, 35);
    }

    #[test]
    fn complete_sweep_takes_three_rounds() {
        let report = sweep(CaseId::Kk, &SweepGrid::new((4, 6), (4, 6)));
        assert!(report.summary.rows > 0);
        for row in &report.rows {
            let rep = row.report.as_ref().unwrap();
            assert_eq!(rep.pt_observed, Some(3), "{}", row.product);
        }
    }

    #[test]
    fn end_block_routing_over_heights() {
        let grid = SweepGrid::new((6, 6), (3, 16)).with_m((2, 2));
        let report = sweep(CaseId::PcEndBlock, &grid);
        assert_eq!(report.summary.rows, 14);
        for row in &report.rows {
            let rep = row.report.as_ref().unwrap();
            let expected = match row.h {
                h if h <= 4 => h,
                h if h < 8 => 4,
                h => h.div_ceil(2),
            };
            assert_eq!(rep.claimed_bound, expected);
            assert!(rep.holds());
        }
    }

    #[test]
    fn out_of_hypothesis_rows_are_kept() {
        let report = sweep(CaseId::PpMidU1, &SweepGrid::new((2, 3), (2, 2)));
        assert_eq!(report.summary.rows, 2);
        assert!(report.rows[0].out_of_hypothesis);
        assert!(report.rows[1].report.is_some());
    }

    #[test]
    fn placement_counts() {
        assert_eq!(placements(CaseId::CcU2Adj, 5, 1).len(), 5);
        assert_eq!(placements(CaseId::CcU2NonAdj, 5, 1).len(), 5);
        assert_eq!(placements(CaseId::CcU3Consec, 4, 1).len(), 4);
        assert_eq!(placements(CaseId::PpGenU2, 4, 1).len(), 4);
        assert_eq!(placements(CaseId::Kk, 4, 1).len(), 14);
        assert_eq!(placements(CaseId::PcEndBlock, 4, 2).len(), 2);
        assert!(placements(CaseId::PcEndBlock, 2, 2).is_empty());
    }

    #[test]
    fn general_sweep_small() {
        let report = sweep(
            CaseId::GeneralS2,
            &SweepGrid::new((3, 3), (3, 3)).with_all_placements(true),
        );
        assert_eq!(report.summary.rows, 9 * 7);
        assert_eq!(report.summary.forces_ok, report.summary.rows);
        assert_eq!(report.summary.size_ok, report.summary.rows);
    }
}
