//! Every construction over its full parameter grid and every placement.

use zf_core::theorems::{acceptance_grid, sweep, CaseId, ColumnMap, ConstructionSpec};
use zf_core::{
    hierarchical_product, is_zero_forcing_set, verify_construction, zero_forcing_number, Graph,
    IsoWitness, RootSet, SearchBudget, VertexId,
};

#[test]
fn family_constructions_force_with_stated_size() {
    for case in CaseId::FAMILY_CASES {
        let report = sweep(case, &acceptance_grid(case));
        let failures: Vec<String> = report
            .failures()
            .map(|r| format!("{} |S|={} forces={}", r.product, r.set_size, r.forces))
            .collect();
        assert!(failures.is_empty(), "{case}: {failures:#?}");
        assert_eq!(report.summary.errors, 0, "{case}");
        assert!(report.summary.verified > 0, "{case}");
    }
}

#[test]
fn out_of_hypothesis_rows_are_only_small_orders() {
    for case in CaseId::FAMILY_CASES {
        for row in sweep(case, &acceptance_grid(case)).rows {
            if !row.out_of_hypothesis {
                continue;
            }
            let expected = match case {
                CaseId::PpMidU1 | CaseId::PpGenU2 => row.w == 2,
                CaseId::PpEndU2 => row.h == 2,
                _ => false,
            };
            assert!(expected, "{case} {}: {:?}", row.product, row.error);
        }
    }
}

#[test]
fn two_end_columns_with_height_two_need_two_vertices() {
    // The end-pair set is undefined at h = 2 and the bound ceil(h/2) = 1 fails.
    let b = SearchBudget::default();
    for w in 2..=7 {
        let root = RootSet::new([w - 1, w], w).unwrap();
        let g = hierarchical_product(&Graph::path(w).unwrap(), &root, &Graph::path(2).unwrap())
            .unwrap();
        assert_eq!(zero_forcing_number(g.graph(), &b).unwrap().z, 2, "w = {w}");
    }
}

#[test]
fn all_but_one_set_size_differs_from_stated_bound() {
    for w in 4..=7 {
        for h in 4..=9 {
            let r = verify_construction(&ConstructionSpec::new(CaseId::CcAllButOne, w, h)).unwrap();
            assert!(r.forces);
            assert_eq!(r.set_size, h + 2 * (w.div_ceil(2) - 1));
            assert_eq!(r.claimed_bound, 2 * h - 2);
        }
    }
}

#[test]
fn mirrored_end_root_is_the_reflected_construction() {
    for w in 2..=5 {
        for h in 2..=5 {
            let right = ConstructionSpec::new(CaseId::PpEndU1, w, h);
            let left = right.clone().with_root(RootSet::new([1], w).unwrap());
            let a = verify_construction(&right).unwrap();
            let b = verify_construction(&left).unwrap();
            let reflected: Vec<_> = a
                .set
                .iter()
                .map(|&v| ColumnMap::Reflection.apply_vertex(v, w))
                .collect();
            let mut reflected = reflected;
            reflected.sort();
            assert_eq!(b.set, reflected);
            assert!(a.forces && b.forces);

            let pw = Graph::path(w).unwrap();
            let ph = Graph::path(h).unwrap();
            let ga = hierarchical_product(&pw, &a.root, &ph).unwrap();
            let gb = hierarchical_product(&pw, &b.root, &ph).unwrap();
            let map = ColumnMap::Reflection.vertex_permutation(w, h);
            let witness = IsoWitness {
                mapping: map.into_iter().map(VertexId).collect(),
            };
            assert!(witness.verify(ga.graph(), gb.graph()));
            assert!(is_zero_forcing_set(
                gb.graph(),
                &gb.set_of(b.set.iter()).unwrap()
            ));
        }
    }
}

#[test]
fn general_constructions_on_small_factors() {
    for case in [CaseId::GeneralS1, CaseId::GeneralS2] {
        let report = sweep(case, &acceptance_grid(case));
        assert_eq!(report.failures().count(), 0, "{case}");
        assert_eq!(report.summary.verified, report.summary.rows);
    }
}
