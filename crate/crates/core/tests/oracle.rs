mod common;

use proptest::prelude::*;
use splitkit::group::FiniteAbelianGroup;
use splitkit::splitting::{
    enumerate_all_splittings, search_splitter, verify_splitting, EnumerationBudget, MultiplierSet,
    SearchConfig, SearchResult, SplitterSet,
};

#[test]
fn search_agrees_with_backtracking_up_to_40() {
    for n in 2..=40u64 {
        let g = FiniteAbelianGroup::cyclic(n).unwrap();
        for k in (1..n).filter(|k| (n - 1) % k == 0) {
            let m: Vec<u64> = (1..=k).collect();
            let expected = common::some_splitter_set(n, &m);
            let out = search_splitter(
                &g,
                &MultiplierSet::interval(k).unwrap(),
                &SearchConfig::default(),
            )
            .unwrap();
            match (&out.result, expected) {
                (SearchResult::Found(s), Some(_)) => {
                    assert!(common::is_splitting(n, &m, &s.residues()))
                }
                (SearchResult::ExhaustedNoSolution, None) => {}
                (got, want) => panic!("N={n} k={k}: search {got:?}, oracle {want:?}"),
            }
        }
    }
}

#[test]
fn search_agrees_on_explicit_multipliers() {
    let sets: [&[i64]; 5] = [&[1, 3], &[1, 4], &[2, 3], &[1, 5, 7], &[1, 2, 4, 8]];
    for n in 2..=40u64 {
        let g = FiniteAbelianGroup::cyclic(n).unwrap();
        for m in sets.iter().filter(|m| (n - 1) % m.len() as u64 == 0) {
            let residues: Vec<u64> = m.iter().map(|&x| x as u64 % n).collect();
            let expected = common::some_splitter_set(n, &residues);
            let set = MultiplierSet::explicit(m.to_vec()).unwrap();
            let out = search_splitter(&g, &set, &SearchConfig::default()).unwrap();
            assert_eq!(out.found().is_some(), expected.is_some(), "N={n} M={m:?}");
        }
    }
}

#[test]
fn z10_brute_force_finds_nothing() {
    assert!(common::naive_splitter_sets(10, &[1, 2, 3]).is_empty());
    assert_eq!(
        common::naive_splitter_sets(5, &[1, 2]),
        vec![vec![1, 4], vec![2, 3]]
    );
}

#[test]
fn enumeration_matches_naive_for_intervals() {
    for n in 2..=13u64 {
        for k in (1..n).filter(|k| (n - 1) % k == 0) {
            let m: Vec<u64> = (1..=k).collect();
            let naive = common::naive_splitter_sets(n, &m);
            let listed: Vec<Vec<u64>> =
                enumerate_all_splittings(n, k as usize, EnumerationBudget::default())
                    .unwrap()
                    .into_iter()
                    .filter(|c| {
                        c.multipliers().values() == MultiplierSet::interval(k).unwrap().values()
                    })
                    .map(|c| c.splitters().residues())
                    .collect();
            assert_eq!(listed, naive, "N={n} k={k}");
        }
    }
}

proptest! {
    #[test]
    fn verification_matches_definition(
        n in 2u64..30,
        m in proptest::collection::btree_set(1i64..30, 1..5),
        s in proptest::collection::btree_set(0u64..30, 1..10),
    ) {
        let g = FiniteAbelianGroup::cyclic(n).unwrap();
        let s: Vec<u64> = s.into_iter().filter(|&x| x < n).collect();
        prop_assume!(!s.is_empty());
        let m_set = MultiplierSet::explicit(m.iter().copied().collect()).unwrap();
        let splitters = SplitterSet::cyclic(&g, &s).unwrap();
        let residues: Vec<u64> = m.iter().map(|&x| x as u64 % n).collect();
        let report = verify_splitting(&g, &m_set, &splitters);
        prop_assert_eq!(report.is_valid(), common::is_splitting(n, &residues, &s));
    }
}
