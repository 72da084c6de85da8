//! Explicit zero forcing sets for hierarchical products of paths, cycles
//! and complete graphs, with their bounds and a simulation check.
//!
//! Each case builds its set for one canonical root set. Other root sets
//! that give an isomorphic product are handled by a [`ColumnMap`] taking
//! the canonical root set to the requested one; the set is mapped the same
//! way and the map is recorded in the report.

mod formulas;
mod placement;
mod sweep;
mod tables;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::{Factor, FactorKind};
use crate::forcing::forcing_closure;
use crate::products::{hierarchical_product, ProductGraph, ProductVertex, RootSet};
use crate::solver::SearchBudget;

pub use formulas::{classify, pt_formula, table_bound_for, PtFormula, PtStatus};
pub use placement::ColumnMap;
pub use sweep::{
    acceptance_grid, placements, sweep, SweepGrid, SweepReport, SweepRow, SweepSummary,
};
pub use tables::{tables, TableRow, TablesReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CaseId {
    PpEndU1,
    PpMidU1,
    PpEndU2,
    PpGenU2,
    CcU1,
    #[serde(rename = "CC_U2_ADJ")]
    CcU2Adj,
    #[serde(rename = "CC_U2_NONADJ")]
    CcU2NonAdj,
    CcU3Consec,
    CcAllButOne,
    PcEndBlock,
    PcMidU1,
    PcU2,
    Kk,
    #[serde(rename = "GENERAL_S1")]
    GeneralS1,
    #[serde(rename = "GENERAL_S2")]
    GeneralS2,
}

impl CaseId {
    pub const ALL: [CaseId; 15] = [
        CaseId::PpEndU1,
        CaseId::PpMidU1,
        CaseId::PpEndU2,
        CaseId::PpGenU2,
        CaseId::CcU1,
        CaseId::CcU2Adj,
        CaseId::CcU2NonAdj,
        CaseId::CcU3Consec,
        CaseId::CcAllButOne,
        CaseId::PcEndBlock,
        CaseId::PcMidU1,
        CaseId::PcU2,
        CaseId::Kk,
        CaseId::GeneralS1,
        CaseId::GeneralS2,
    ];

    /// Every case with a fixed pair of factor families.
    pub const FAMILY_CASES: [CaseId; 13] = [
        CaseId::PpEndU1,
        CaseId::PpMidU1,
        CaseId::PpEndU2,
        CaseId::PpGenU2,
        CaseId::CcU1,
        CaseId::CcU2Adj,
        CaseId::CcU2NonAdj,
        CaseId::CcU3Consec,
        CaseId::CcAllButOne,
        CaseId::PcEndBlock,
        CaseId::PcMidU1,
        CaseId::PcU2,
        CaseId::Kk,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CaseId::PpEndU1 => "PP_END_U1",
            CaseId::PpMidU1 => "PP_MID_U1",
            CaseId::PpEndU2 => "PP_END_U2",
            CaseId::PpGenU2 => "PP_GEN_U2",
            CaseId::CcU1 => "CC_U1",
            CaseId::CcU2Adj => "CC_U2_ADJ",
            CaseId::CcU2NonAdj => "CC_U2_NONADJ",
            CaseId::CcU3Consec => "CC_U3_CONSEC",
            CaseId::CcAllButOne => "CC_ALL_BUT_ONE",
            CaseId::PcEndBlock => "PC_END_BLOCK",
            CaseId::PcMidU1 => "PC_MID_U1",
            CaseId::PcU2 => "PC_U2",
            CaseId::Kk => "KK",
            CaseId::GeneralS1 => "GENERAL_S1",
            CaseId::GeneralS2 => "GENERAL_S2",
        }
    }

    /// Outer and inner factor families, or `None` for the general cases.
    pub fn families(self) -> Option<(FactorKind, FactorKind)> {
        use FactorKind::*;
        Some(match self {
            CaseId::PpEndU1 | CaseId::PpMidU1 | CaseId::PpEndU2 | CaseId::PpGenU2 => (Path, Path),
            CaseId::CcU1
            | CaseId::CcU2Adj
            | CaseId::CcU2NonAdj
            | CaseId::CcU3Consec
            | CaseId::CcAllButOne => (Cycle, Cycle),
            CaseId::PcEndBlock | CaseId::PcMidU1 | CaseId::PcU2 => (Path, Cycle),
            CaseId::Kk => (Complete, Complete),
            CaseId::GeneralS1 | CaseId::GeneralS2 => return None,
        })
    }

    pub fn is_general(self) -> bool {
        self.families().is_none()
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CaseId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let wanted = s.trim().replace('-', "_").to_ascii_uppercase();
        CaseId::ALL
            .into_iter()
            .find(|c| c.name() == wanted)
            .ok_or_else(|| Error::Parse(format!("unknown case {s:?}")))
    }
}

/// A case together with its product parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstructionSpec {
    pub case: CaseId,
    pub outer: Factor,
    pub inner: Factor,
    /// `None` selects the case's canonical root set.
    pub root: Option<RootSet>,
    /// Block size for `PC_END_BLOCK`.
    pub m: Option<usize>,
    /// Root size for `KK`.
    pub r: Option<usize>,
}

impl ConstructionSpec {
    /// A family case on `(w, h)`. Panics for the general cases, which need
    /// explicit factors.
    pub fn new(case: CaseId, w: usize, h: usize) -> Self {
        let (outer, inner) = case
            .families()
            .expect("general cases are built with ConstructionSpec::general");
        ConstructionSpec {
            case,
            outer: outer.of(w),
            inner: inner.of(h),
            root: None,
            m: None,
            r: None,
        }
    }

    pub fn general(
        case: CaseId,
        outer: Factor,
        root: Option<RootSet>,
        inner: Factor,
    ) -> Result<Self> {
        if !case.is_general() {
            return Err(Error::Parse(format!(
                "{case} is not a general-product case"
            )));
        }
        Ok(ConstructionSpec {
            case,
            outer,
            inner,
            root,
            m: None,
            r: None,
        })
    }

    pub fn with_root(mut self, root: RootSet) -> Self {
        self.root = Some(root);
        self
    }

    pub fn with_m(mut self, m: usize) -> Self {
        self.m = Some(m);
        self
    }

    pub fn with_r(mut self, r: usize) -> Self {
        self.r = Some(r);
        self
    }

    pub fn w(&self) -> usize {
        self.outer.order()
    }

    pub fn h(&self) -> usize {
        self.inner.order()
    }
}

/// A spec with its hypotheses checked and its placement worked out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolved {
    pub w: usize,
    pub h: usize,
    pub root: RootSet,
    pub canonical_root: RootSet,
    pub placement: ColumnMap,
    pub m: Option<usize>,
    pub r: Option<usize>,
}

fn hypothesis(spec: &ConstructionSpec, reason: String) -> Error {
    Error::out_of_hypothesis(spec.case.name(), reason)
}

fn root_of(members: impl IntoIterator<Item = usize>, w: usize) -> Result<RootSet> {
    RootSet::new(members, w)
}

/// Checks the case hypotheses and finds the map from the canonical root
/// set to the requested one.
pub fn resolve(spec: &ConstructionSpec) -> Result<Resolved> {
    let (w, h) = (spec.w(), spec.h());
    if let Some((outer, inner)) = spec.case.families() {
        if spec.outer.kind() != Some(outer) || spec.inner.kind() != Some(inner) {
            return Err(hypothesis(
                spec,
                format!(
                    "needs {}w x {}h factors, got {} x {}",
                    outer.letter(),
                    inner.letter(),
                    spec.outer,
                    spec.inner
                ),
            ));
        }
    }
    let need = |ok: bool, what: &str| -> Result<()> {
        if ok {
            Ok(())
        } else {
            Err(hypothesis(spec, format!("{what} (w = {w}, h = {h})")))
        }
    };
    if let Some(root) = &spec.root {
        root.check_within(w)?;
    }
    let requested = |default: RootSet| spec.root.clone().unwrap_or(default);
    let done = |root: RootSet, canonical_root: RootSet, placement: ColumnMap| Resolved {
        w,
        h,
        root,
        canonical_root,
        placement,
        m: None,
        r: None,
    };
    let bad_root = |root: &RootSet, what: &str| hypothesis(spec, format!("root set {root} {what}"));

    match spec.case {
        CaseId::PpEndU1 => {
            need(w >= 2 && h >= 2, "needs w >= 2 and h >= 2")?;
            let canonical = root_of([w], w)?;
            let root = requested(canonical.clone());
            let placement = if root == canonical {
                ColumnMap::Identity
            } else if root.members() == [1] {
                ColumnMap::Reflection
            } else {
                return Err(bad_root(&root, "is not {1} or {w}"));
            };
            Ok(done(root, canonical, placement))
        }
        CaseId::PpMidU1 => {
            need(w >= 3 && h >= 2, "needs w >= 3 and h >= 2")?;
            let root = requested(root_of([2], w)?);
            match root.members() {
                &[i] if i > 1 && i < w => Ok(done(root.clone(), root, ColumnMap::Identity)),
                _ => Err(bad_root(&root, "is not a single interior column")),
            }
        }
        CaseId::PpEndU2 => {
            need(w >= 2 && h >= 3, "needs w >= 2 and h >= 3")?;
            let canonical = root_of([w - 1, w], w)?;
            let root = requested(canonical.clone());
            let placement = if root == canonical {
                ColumnMap::Identity
            } else if root.members() == [1, 2] {
                ColumnMap::Reflection
            } else {
                return Err(bad_root(&root, "is not {1,2} or {w-1,w}"));
            };
            Ok(done(root, canonical, placement))
        }
        CaseId::PpGenU2 | CaseId::PcU2 => {
            let pp = spec.case == CaseId::PpGenU2;
            if pp {
                need(w >= 3 && h >= 2, "needs w >= 3 and h >= 2")?;
            } else {
                need(w >= 2 && h >= 3, "needs w >= 2 and h >= 3")?;
            }
            let root = requested(root_of([1, w], w)?);
            let &[i, j] = root.members() else {
                return Err(bad_root(&root, "does not have two columns"));
            };
            if pp && ((i, j) == (1, 2) || (i, j) == (w - 1, w)) {
                return Err(bad_root(&root, "is an end pair; see PP_END_U2"));
            }
            if i == 1 && j != w {
                // Reflected onto {w+1-j, w}, which the construction covers.
                let canonical = root_of([w + 1 - j, w], w)?;
                Ok(done(root, canonical, ColumnMap::Reflection))
            } else {
                Ok(done(root.clone(), root, ColumnMap::Identity))
            }
        }
        CaseId::CcU1
        | CaseId::CcU2Adj
        | CaseId::CcU2NonAdj
        | CaseId::CcU3Consec
        | CaseId::CcAllButOne => {
            need(w >= 4 && h >= 4, "needs w >= 4 and h >= 4")?;
            resolve_cycle_case(spec, w, h)
        }
        CaseId::PcEndBlock => {
            need(w >= 2 && h >= 3, "needs w >= 2 and h >= 3")?;
            let m = match (spec.m, &spec.root) {
                (Some(m), _) => m,
                (None, Some(root)) => root.len(),
                (None, None) => 1,
            };
            need(m >= 1 && m < w, "needs 1 <= m < w")?;
            let canonical = root_of(1..=m, w)?;
            let root = requested(canonical.clone());
            let placement = if root == canonical {
                ColumnMap::Identity
            } else if root == root_of(w + 1 - m..=w, w)? {
                ColumnMap::Reflection
            } else {
                return Err(bad_root(
                    &root,
                    &format!("is not an end block of {m} columns"),
                ));
            };
            Ok(Resolved {
                m: Some(m),
                ..done(root, canonical, placement)
            })
        }
        CaseId::PcMidU1 => {
            need(w >= 3 && h >= 3, "needs w >= 3 and h >= 3")?;
            let root = requested(root_of([2], w)?);
            match root.members() {
                &[i] if i > 1 && i < w => Ok(done(root.clone(), root, ColumnMap::Identity)),
                _ => Err(bad_root(&root, "is not a single interior column")),
            }
        }
        CaseId::Kk => {
            need(w >= 4 && h >= 4, "needs w >= 4 and h >= 4")?;
            let r = match (spec.r, &spec.root) {
                (Some(r), _) => r,
                (None, Some(root)) => root.len(),
                (None, None) => 1,
            };
            need(r >= 1 && r < w, "needs 1 <= r <= w - 1")?;
            let canonical = root_of(w - r..w, w)?;
            let root = requested(canonical.clone());
            if root.len() != r {
                return Err(bad_root(&root, &format!("does not have r = {r} columns")));
            }
            let placement = if root == canonical {
                ColumnMap::Identity
            } else {
                ColumnMap::permutation_between(&canonical, &root, w)?
            };
            Ok(Resolved {
                r: Some(r),
                ..done(root, canonical, placement)
            })
        }
        CaseId::GeneralS1 | CaseId::GeneralS2 => {
            need(w >= 1 && h >= 1, "needs non-empty factors")?;
            let root = requested(RootSet::full(w)?);
            Ok(done(root.clone(), root, ColumnMap::Identity))
        }
    }
}

fn cyclic_adjacent(a: usize, b: usize, w: usize) -> bool {
    let d = a.abs_diff(b);
    d == 1 || d == w - 1
}

fn resolve_cycle_case(spec: &ConstructionSpec, w: usize, h: usize) -> Result<Resolved> {
    let rotation = |shift: usize| {
        if shift.is_multiple_of(w) {
            ColumnMap::Identity
        } else {
            ColumnMap::Rotation { shift: shift % w }
        }
    };
    let bad_root = |root: &RootSet, what: &str| hypothesis(spec, format!("root set {root} {what}"));
    let found = |root: RootSet, canonical: RootSet, shift: usize| Resolved {
        w,
        h,
        root,
        canonical_root: canonical,
        placement: rotation(shift),
        m: None,
        r: None,
    };
    // Finds the rotation carrying `canonical` onto `root`.
    let rotate_onto = |canonical: RootSet, root: RootSet, what: &str| -> Result<Resolved> {
        (0..w)
            .find(|&s| rotation(s).apply_root(&canonical, w).ok().as_ref() == Some(&root))
            .map(|s| found(root.clone(), canonical.clone(), s))
            .ok_or_else(|| bad_root(&root, what))
    };
    match spec.case {
        CaseId::CcU1 => {
            let canonical = root_of([1], w)?;
            let root = spec.root.clone().unwrap_or_else(|| canonical.clone());
            rotate_onto(canonical, root, "does not have one column")
        }
        CaseId::CcU2Adj => {
            let canonical = root_of([1, 2], w)?;
            let root = spec.root.clone().unwrap_or_else(|| canonical.clone());
            rotate_onto(canonical, root, "is not a cyclically adjacent pair")
        }
        CaseId::CcU2NonAdj => {
            let root = spec.root.clone().unwrap_or(root_of([1, 3], w)?);
            let &[a, c] = root.members() else {
                return Err(bad_root(&root, "does not have two columns"));
            };
            if cyclic_adjacent(a, c, w) {
                return Err(bad_root(
                    &root,
                    "is a cyclically adjacent pair; see CC_U2_ADJ",
                ));
            }
            let canonical = root_of([1, c - a + 1], w)?;
            Ok(found(root, canonical, a - 1))
        }
        CaseId::CcU3Consec => {
            let canonical = root_of([1, 2, 3], w)?;
            let root = spec.root.clone().unwrap_or_else(|| canonical.clone());
            rotate_onto(
                canonical,
                root,
                "is not three cyclically consecutive columns",
            )
        }
        CaseId::CcAllButOne => {
            let canonical = root_of(2..=w, w)?;
            let root = spec.root.clone().unwrap_or_else(|| canonical.clone());
            rotate_onto(canonical, root, "does not miss exactly one column")
        }
        _ => unreachable!("not a cycle-by-cycle case"),
    }
}

fn column(c: usize, rows: impl IntoIterator<Item = usize>) -> impl Iterator<Item = ProductVertex> {
    rows.into_iter().map(move |j| ProductVertex::new(c, j))
}

/// The construction for the canonical root set, before placement.
fn canonical_set(
    spec: &ConstructionSpec,
    res: &Resolved,
    budget: &SearchBudget,
) -> Result<Vec<ProductVertex>> {
    let (w, h) = (res.w, res.h);
    let mut s: Vec<ProductVertex> = match spec.case {
        CaseId::PpEndU1 if h % 2 == 0 => {
            column(1, [2]).chain(column(1, (3..h).step_by(2))).collect()
        }
        CaseId::PpEndU1 => column(1, [1]).chain(column(1, (2..h).step_by(2))).collect(),
        CaseId::PpMidU1 | CaseId::PpGenU2 | CaseId::PcMidU1 | CaseId::PcU2 => {
            column(1, 1..=h).collect()
        }
        CaseId::PpEndU2 => {
            let last = if h % 2 == 0 { h - 2 } else { h - 1 };
            column(1, [1])
                .chain(column(1, (2..=last).step_by(2)))
                .collect()
        }
        CaseId::CcU1 => column(1, [1, 2]).chain(column(2, 1..=h)).collect(),
        CaseId::CcU2Adj => column(2, [1])
            .chain(column(2, 3..=h - 2))
            .chain(column(2, [h]))
            .chain(column(3, [1, h]))
            .collect(),
        CaseId::CcU2NonAdj => column(1, 1..=h).chain(column(2, 1..=h)).collect(),
        CaseId::CcU3Consec => column(2, [1, 2]).chain(column(3, 1..=h)).collect(),
        CaseId::CcAllButOne => {
            let last = w.div_ceil(2) + 1;
            column(2, 1..=h)
                .chain((3..=last).map(|c| ProductVertex::new(c, 1)))
                .chain((3..=last).map(|c| ProductVertex::new(c, h)))
                .collect()
        }
        CaseId::PcEndBlock => {
            let m = res.m.expect("resolved with m");
            if h <= 2 * m {
                column(w, 1..=h).collect()
            } else if h < 4 * m {
                column(w, 1..=2 * m).collect()
            } else {
                let top = if h % 2 == 0 { h - 2 * m } else { h - 2 * m + 1 };
                column(w, 1..=2 * m)
                    .chain(column(w, (2 * m + 2..=top).step_by(2)))
                    .collect()
            }
        }
        CaseId::Kk => {
            let first = res.canonical_root.members()[0];
            (1..=w)
                .flat_map(|c| column(c, 1..=h))
                .filter(|v| {
                    let excluded = v.column == w - 1
                        || (v.column == w && v.row == h)
                        || (v.row == h && v.column >= first && v.column <= w - 2);
                    !excluded
                })
                .collect()
        }
        CaseId::GeneralS1 => {
            let zw = spec.outer.minimum_forcing_set(budget)?;
            (1..=h)
                .flat_map(|j| zw.iter().map(move |&c| ProductVertex::new(c, j)))
                .collect()
        }
        CaseId::GeneralS2 => {
            let zh = spec.inner.minimum_forcing_set(budget)?;
            (1..=w)
                .flat_map(|c| {
                    if res.canonical_root.contains(c) {
                        zh.iter()
                            .map(|&j| ProductVertex::new(c, j))
                            .collect::<Vec<_>>()
                    } else {
                        column(c, 1..=h).collect()
                    }
                })
                .collect()
        }
    };
    s.sort();
    s.dedup();
    Ok(s)
}

/// The construction's vertex set for the requested root set.
pub fn construct_set(spec: &ConstructionSpec) -> Result<Vec<ProductVertex>> {
    let res = resolve(spec)?;
    placed_set(spec, &res, &SearchBudget::default())
}

fn placed_set(
    spec: &ConstructionSpec,
    res: &Resolved,
    budget: &SearchBudget,
) -> Result<Vec<ProductVertex>> {
    let mut s: Vec<ProductVertex> = canonical_set(spec, res, budget)?
        .into_iter()
        .map(|v| res.placement.apply_vertex(v, res.w))
        .collect();
    s.sort();
    Ok(s)
}

/// The bound on `Z(W(U) x H)` for the case: the theorem's closed form, or
/// for the general cases the smaller of the two general-product terms.
pub fn claimed_bound(spec: &ConstructionSpec) -> Result<usize> {
    let res = resolve(spec)?;
    bound_for(spec, &res, &SearchBudget::default())
}

fn bound_for(spec: &ConstructionSpec, res: &Resolved, budget: &SearchBudget) -> Result<usize> {
    let (w, h) = (res.w, res.h);
    let ceil_half = h.div_ceil(2);
    Ok(match spec.case {
        CaseId::PpEndU1 | CaseId::PpEndU2 => ceil_half,
        CaseId::PpMidU1 | CaseId::PpGenU2 | CaseId::PcMidU1 | CaseId::PcU2 | CaseId::CcU2Adj => h,
        CaseId::CcU1 | CaseId::CcU3Consec => h + 2,
        CaseId::CcU2NonAdj => 2 * h,
        CaseId::CcAllButOne => 2 * h - 2,
        CaseId::PcEndBlock => {
            let m = res.m.expect("resolved with m");
            if h <= 2 * m {
                h
            } else if h < 4 * m {
                2 * m
            } else {
                ceil_half
            }
        }
        CaseId::Kk => w * h - (h + res.r.expect("resolved with r")),
        CaseId::GeneralS1 | CaseId::GeneralS2 => {
            let (s1, s2) = general_terms(spec, res, budget)?;
            s1.min(s2)
        }
    })
}

/// `(Z(W) |V(H)|, Z(H) |U| + (|V(W)| - |U|) |V(H)|)`.
fn general_terms(
    spec: &ConstructionSpec,
    res: &Resolved,
    budget: &SearchBudget,
) -> Result<(usize, usize)> {
    let zw = spec.outer.minimum_forcing_set(budget)?.len();
    let zh = spec.inner.minimum_forcing_set(budget)?.len();
    let u = res.root.len();
    Ok((zw * res.h, zh * u + (res.w - u) * res.h))
}

/// The general-product bound for `W(U) x H`.
pub fn general_product_bound(outer: &Factor, root: &RootSet, inner: &Factor) -> Result<usize> {
    let spec = ConstructionSpec::general(
        CaseId::GeneralS1,
        outer.clone(),
        Some(root.clone()),
        inner.clone(),
    )?;
    claimed_bound(&spec)
}

/// The size the construction is expected to have, where one is known: the claimed bound, or for the general cases the set's own term.
fn expected_size(
    spec: &ConstructionSpec,
    res: &Resolved,
    bound: usize,
    budget: &SearchBudget,
) -> Result<Option<usize>> {
    Ok(match spec.case {
        CaseId::CcAllButOne => None,
        CaseId::GeneralS1 => Some(general_terms(spec, res, budget)?.0),
        CaseId::GeneralS2 => Some(general_terms(spec, res, budget)?.1),
        _ => Some(bound),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub case: CaseId,
    pub product: String,
    pub w: usize,
    pub h: usize,
    pub root: RootSet,
    pub canonical_root: RootSet,
    pub placement: ColumnMap,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    pub set: Vec<ProductVertex>,
    pub set_size: usize,
    pub claimed_bound: usize,
    /// `None` where no size is known for the construction.
    pub expected_size: Option<usize>,
    pub forces: bool,
    pub filled: usize,
    pub order: usize,
    pub pt_observed: Option<usize>,
    pub pt_formula: Option<i64>,
    pub pt_formula_exact: Option<String>,
    pub pt_status: PtStatus,
    pub notes: Vec<String>,
}

impl BoundReport {
    /// True when the set forces and has the expected size.
    pub fn holds(&self) -> bool {
        self.forces && self.expected_size.is_none_or(|e| e == self.set_size)
    }
}

pub fn product_of(spec: &ConstructionSpec, root: &RootSet) -> Result<ProductGraph> {
    hierarchical_product(&spec.outer.graph()?, root, &spec.inner.graph()?)
}

/// Builds the product, runs the construction's set through the forcing
/// process and records the outcome. Failure to force is reported, not
/// raised.
pub fn verify_construction(spec: &ConstructionSpec) -> Result<BoundReport> {
    verify_with_budget(spec, &SearchBudget::default())
}

pub fn verify_with_budget(spec: &ConstructionSpec, budget: &SearchBudget) -> Result<BoundReport> {
    let res = resolve(spec)?;
    let product = product_of(spec, &res.root)?;
    let set = placed_set(spec, &res, budget)?;
    let initial = product.set_of(set.iter())?;
    let chronicle = forcing_closure(product.graph(), &initial);
    let claimed = bound_for(spec, &res, budget)?;
    let expected = expected_size(spec, &res, claimed, budget)?;
    let pt_observed = chronicle.propagation_time();
    let formula = pt_formula(spec.case, res.w, res.h, &res.root);
    let pt_status = classify(formula.as_ref(), pt_observed);

    let mut notes = Vec::new();
    if res.placement != ColumnMap::Identity {
        notes.push(format!(
            "set built for root {} and carried to {} by {}",
            res.canonical_root, res.root, res.placement
        ));
    }
    let (w, h) = (res.w, res.h);
    match spec.case {
        CaseId::CcAllButOne => notes.push(format!(
            "claimed bound 2h-2 = {}; 2h = {}; set has {} vertices",
            2 * h - 2,
            2 * h,
            set.len()
        )),
        CaseId::PcEndBlock => {
            let m = res.m.expect("resolved with m");
            if h == 2 * m {
                notes.push(format!(
                    "h = 2m = {h}: the full-column set is used; the block set needs h < 2m"
                ));
            }
            if h >= 4 * m {
                notes.push(format!("h >= 4m = {}: routed to the ceil(h/2) set", 4 * m));
            }
        }
        CaseId::GeneralS1 | CaseId::GeneralS2 => {
            let (s1, s2) = general_terms(spec, &res, budget)?;
            notes.push(format!("general bound min({s1}, {s2}) = {}", s1.min(s2)));
        }
        _ => {}
    }
    if let Some(f) = &formula {
        if f.value().is_none() {
            notes.push(format!("tabulated pt {} is not an integer", f.text));
        }
    }
    if !chronicle.filled_all() {
        notes.push(format!(
            "set does not force: closure has {} of {} vertices",
            chronicle.final_state.len(),
            product.graph().order()
        ));
    }

    Ok(BoundReport {
        case: spec.case,
        product: format!("{}({}) x {}", spec.outer, res.root, spec.inner),
        w,
        h,
        root: res.root.clone(),
        canonical_root: res.canonical_root.clone(),
        placement: res.placement.clone(),
        m: res.m,
        r: res.r,
        set_size: set.len(),
        set,
        claimed_bound: claimed,
        expected_size: expected,
        forces: chronicle.filled_all(),
        filled: chronicle.final_state.len(),
        order: product.graph().order(),
        pt_observed,
        pt_formula: formula.as_ref().and_then(PtFormula::value),
        pt_formula_exact: formula.map(|f| f.text),
        pt_status,
        notes,
    })
}
