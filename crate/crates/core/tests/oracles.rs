//! The enumerator, dedup and orientability checks against brute force.

mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use common::{Links, Tuple};
use wirecx::{
    enumerate, generate_potential_faces, positively_orientable, DedupStrategy, Graph, LinkArrangement, SearchConfig,
    WiredComplex,
};

type Spec = (&'static str, u32, Vec<(u32, u32)>);

fn k4() -> Vec<(u32, u32)> {
    vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
}

/// Small arrangements the subset oracle finishes on quickly.
pub fn small_cases() -> Vec<Vec<Spec>> {
    let mut cases: Vec<Vec<Spec>> = (3..=9).map(|n| vec![("cycle", n, common::cycle_edges(n))]).collect();
    cases.push(vec![("k4", 4, k4())]);
    cases.push(vec![("k23", 5, vec![(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)])]);
    cases.push(vec![("theta", 5, vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 2)])]);
    cases.push(vec![("c3", 3, common::cycle_edges(3)), ("c3", 3, common::cycle_edges(3))]);
    cases.push(vec![("c3", 3, common::cycle_edges(3)), ("c6", 6, common::cycle_edges(6))]);
    cases.push(vec![("k4", 4, k4()), ("k4", 4, k4())]);
    cases
}

fn build(specs: &[Spec]) -> (Arc<LinkArrangement>, Links) {
    let arr = specs.iter().map(|(name, n, es)| (name.to_string(), Graph::new(*n as usize, es.clone()).unwrap())).collect();
    let links = Links::new(&specs.iter().map(|(_, n, es)| (*n, es.clone())).collect::<Vec<_>>());
    (Arc::new(LinkArrangement::new(arr)), links)
}

fn tuples(c: &WiredComplex) -> Vec<Tuple> {
    let mut v: Vec<Tuple> = c.faces().iter().map(|f| common::normalize(&f.as_tuple())).collect();
    v.sort();
    v
}

fn label(specs: &[Spec]) -> String {
    specs.iter().map(|(name, n, _)| format!("{name}{n}")).collect::<Vec<_>>().join("+")
}

#[test]
fn potential_faces_match_tuple_scan() {
    for specs in small_cases() {
        let (arr, links) = build(&specs);
        let ours: Vec<Tuple> = generate_potential_faces(&arr, &[]).unwrap().iter().map(|c| c.face.as_tuple()).collect();
        let ours: BTreeSet<Tuple> = ours.iter().map(common::normalize).collect();
        let oracle: BTreeSet<Tuple> = common::potential_faces(&links).into_iter().collect();
        assert_eq!(ours, oracle, "{}", label(&specs));
    }
}

#[test]
fn mk16_potential_face_count() {
    let links = Links::new(&[(16, common::mobius_kantor_edges())]);
    let oracle = common::potential_faces(&links);
    let arr = LinkArrangement::builtin(&["mk16"]).unwrap();
    let ours = generate_potential_faces(&arr, &[]).unwrap();
    assert_eq!(ours.len(), oracle.len());
    assert_eq!(oracle.len(), 8864);
    let ours: BTreeSet<Tuple> = ours.iter().map(|c| common::normalize(&c.face.as_tuple())).collect();
    assert_eq!(ours, oracle.into_iter().collect());
}

#[test]
fn raw_solutions_match_subset_oracle() {
    for specs in small_cases() {
        let (arr, links) = build(&specs);
        let e = enumerate(arr, &SearchConfig { dedup: false, ..Default::default() }).unwrap();
        let mut ours: Vec<Vec<Tuple>> = e.solutions.iter().map(tuples).collect();
        ours.sort();
        let oracle: Vec<Vec<Tuple>> = common::complete_complexes(&links).into_iter().collect();
        assert_eq!(ours, oracle, "{}", label(&specs));
        assert_eq!(e.stats.solutions, oracle.len());
    }
}

#[test]
fn class_counts_match_pairwise_oracle() {
    for specs in small_cases() {
        let (arr, links) = build(&specs);
        let raw: Vec<Vec<Tuple>> = common::complete_complexes(&links).into_iter().collect();
        let group = common::group(&links);
        let expected = common::class_count(&group, &raw);
        for strategy in [DedupStrategy::Keys, DedupStrategy::Pairwise] {
            let cfg = SearchConfig { dedup_strategy: strategy, ..Default::default() };
            let e = enumerate(arr.clone(), &cfg).unwrap();
            assert_eq!(e.classes.len(), expected, "{} {strategy:?}", label(&specs));
            let total: usize = e.classes.iter().map(|c| c.multiplicity).sum();
            assert_eq!(total, raw.len());
        }
    }
}

#[test]
fn orientability_matches_exhaustive_assignment() {
    let mut seen = [0usize; 2];
    for specs in small_cases() {
        let (arr, _) = build(&specs);
        let e = enumerate(arr, &SearchConfig { dedup: false, ..Default::default() }).unwrap();
        for c in &e.solutions {
            let expected = common::positively_orientable(&tuples(c), true);
            assert_eq!(positively_orientable(c), expected, "{}", label(&specs));
            assert_eq!(
                wirecx::presentation::positively_orientable_strict(c),
                common::positively_orientable(c.faces().iter().map(|f| f.as_tuple()).collect::<Vec<_>>().as_slice(), false)
            );
            seen[expected as usize] += 1;
        }
    }
    // both verdicts occur, so the comparison is not vacuous
    assert!(seen[0] > 0 && seen[1] > 0, "{seen:?}");
}

#[test]
fn fixture_orientability_matches_exhaustive_assignment() {
    for (i, c) in wirecx::fixtures::v_complexes().iter().enumerate() {
        let raw: Vec<Tuple> = c.faces().iter().map(|f| f.as_tuple()).collect();
        assert_eq!(positively_orientable(c), common::positively_orientable(&raw, true), "V{}", i + 1);
    }
}

#[test]
fn pairwise_iso_oracle_agrees_on_fixtures() {
    let links = Links::new(&[(16, common::mobius_kantor_edges())]);
    let group = common::group(&links);
    assert_eq!(group.len(), 96);
    let vs: Vec<Vec<Tuple>> = wirecx::fixtures::v_complexes().iter().map(tuples).collect();
    assert_eq!(common::class_count(&group, &vs), 27);
}
