//! Summary-table formulas: the tabulated bound and propagation time for
//! each case, evaluated exactly.

use num_rational::Ratio;
use serde::Serialize;

use super::CaseId;
use crate::products::RootSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PtStatus {
    Match,
    Mismatch,
    OutOfHypothesis,
}

impl PtStatus {
    pub fn name(self) -> &'static str {
        match self {
            PtStatus::Match => "MATCH",
            PtStatus::Mismatch => "MISMATCH",
            PtStatus::OutOfHypothesis => "OUT_OF_HYPOTHESIS",
        }
    }
}

/// A tabulated propagation time. `value` is `None` when the formula does
/// not evaluate to an integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PtFormula {
    pub exact: Ratio<i64>,
    pub text: String,
}

impl PtFormula {
    fn new(exact: Ratio<i64>) -> Self {
        let text = exact.to_string();
        PtFormula { exact, text }
    }

    pub fn value(&self) -> Option<i64> {
        self.exact.is_integer().then(|| self.exact.to_integer())
    }
}

fn r(n: i64) -> Ratio<i64> {
    Ratio::from_integer(n)
}

fn half(n: i64) -> Ratio<i64> {
    Ratio::new(n, 2)
}

/// Shared by the cycle-by-cycle rows for one, two adjacent and three
/// consecutive root columns.
fn cycle_run(w: i64, h: i64) -> Ratio<i64> {
    let base = half(h * (w - 2)) + half(h - 2);
    if h % 2 == 0 {
        base
    } else {
        base + r(w - 2) + r(1)
    }
}

/// The tabulated propagation time for `case` on `(w, h)` with root `root`,
/// or `None` where the table has no entry for these parameters.
pub fn pt_formula(case: CaseId, w: usize, h: usize, root: &RootSet) -> Option<PtFormula> {
    let (wi, hi) = (w as i64, h as i64);
    let even = h.is_multiple_of(2);
    let exact = match case {
        CaseId::PpEndU1 if even => r(2 * (wi - 1)) + half(hi - 2),
        CaseId::PpEndU1 => r(2 * (wi - 1)) + half(hi - 1),
        CaseId::PpMidU1 | CaseId::PpGenU2 | CaseId::PcMidU1 => r(wi - 1),
        CaseId::PpEndU2 if even => r(hi + 1 + 2 * (wi - 2)),
        CaseId::PpEndU2 => r(hi + 2 * (wi - 2)),
        CaseId::CcU1 | CaseId::CcU2Adj | CaseId::CcU3Consec => cycle_run(wi, hi),
        CaseId::CcU2NonAdj => r(wi - 2),
        CaseId::CcAllButOne => half(hi - 2) + r(wi - 2),
        CaseId::PcEndBlock if root.len() == 1 && even => r(2 * (wi - 1)) + half(hi - 2),
        CaseId::PcU2 => {
            let (i, j) = (root.members()[0], root.members()[1]);
            if i == 1 || i == w - 1 || j == 2 || j == w {
                return None;
            }
            r(wi - 1)
        }
        CaseId::Kk => r(3),
        _ => return None,
    };
    Some(PtFormula::new(exact))
}

/// The tabulated bound on `Z`, where the table has a row for the case.
pub fn table_bound_for(case: CaseId, w: usize, h: usize, root: &RootSet) -> Option<usize> {
    let ceil_half = h.div_ceil(2);
    Some(match case {
        CaseId::PpEndU1 | CaseId::PpEndU2 => ceil_half,
        CaseId::PpMidU1 | CaseId::PpGenU2 | CaseId::PcMidU1 | CaseId::PcU2 => h,
        CaseId::CcU1 | CaseId::CcU3Consec => h + 2,
        CaseId::CcU2Adj => h,
        CaseId::CcU2NonAdj => 2 * h,
        CaseId::CcAllButOne => 2 * h - 2,
        CaseId::PcEndBlock if root.len() == 1 => ceil_half,
        CaseId::Kk => (w - 1) * (h - 1) + (w - root.len()) - 1,
        _ => return None,
    })
}

/// Compares an observed propagation time against the table.
pub fn classify(formula: Option<&PtFormula>, observed: Option<usize>) -> PtStatus {
    match (formula, observed) {
        (None, _) => PtStatus::OutOfHypothesis,
        (Some(f), Some(pt)) if f.value() == Some(pt as i64) => PtStatus::Match,
        _ => PtStatus::Mismatch,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn root(m: &[usize], w: usize) -> RootSet {
        RootSet::new(m.iter().copied(), w).unwrap()
    }

    #[test]
    fn path_by_path_rows() {
        let f = pt_formula(CaseId::PpEndU1, 4, 6, &root(&[4], 4)).unwrap();
        assert_eq!(f.value(), Some(8));
        let f = pt_formula(CaseId::PpEndU2, 3, 5, &root(&[2, 3], 3)).unwrap();
        assert_eq!(f.value(), Some(7));
    }

    #[test]
    fn non_integer_formula_has_no_value() {
        let f = pt_formula(CaseId::CcU1, 4, 5, &root(&[1], 4)).unwrap();
        assert_eq!(f.exact, Ratio::new(19, 2));
        assert_eq!(f.value(), None);
        assert_eq!(classify(Some(&f), Some(9)), PtStatus::Mismatch);
    }

    #[test]
    fn restricted_rows() {
        assert!(pt_formula(CaseId::PcU2, 5, 4, &root(&[1, 3], 5)).is_none());
        assert!(pt_formula(CaseId::PcU2, 6, 4, &root(&[2, 4], 6)).is_some());
        assert!(pt_formula(CaseId::PcEndBlock, 5, 5, &root(&[1], 5)).is_none());
        assert!(pt_formula(CaseId::PcEndBlock, 5, 4, &root(&[1, 2], 5)).is_none());
        assert_eq!(classify(None, Some(3)), PtStatus::OutOfHypothesis);
    }

    #[test]
    fn complete_rows_agree_with_theorem_bound() {
        for w in 4..8 {
            for h in 4..8 {
                for r_ in 1..w {
                    let u = root(&(w - r_..w).collect::<Vec<_>>(), w);
                    assert_eq!(
                        table_bound_for(CaseId::Kk, w, h, &u),
                        Some(w * h - (h + r_))
                    );
                }
            }
        }
    }
}
