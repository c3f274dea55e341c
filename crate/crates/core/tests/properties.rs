mod common;

use common::{family, max_spanned, naive_contains, random_graph};
use proptest::prelude::*;
use turansep_core::combin::binomial;
use turansep_core::embed::{contains, find_dense_subset, is_free, spanned_edge_threshold_free};
use turansep_core::{FamilySpec, Hypergraph, Schedule, Vertex};

fn graph(k: usize, max_n: usize) -> impl Strategy<Value = Hypergraph> {
    (k..=max_n, any::<u64>(), 0.05f64..0.9).prop_map(move |(n, seed, p)| random_graph(k, n, p, seed))
}

fn vertex_subset(n: usize) -> impl Strategy<Value = Vec<Vertex>> {
    proptest::collection::vec(any::<bool>(), n).prop_map(|bits| {
        bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i as Vertex).collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn text_round_trip(h in graph(3, 9)) {
        let back: Hypergraph = h.to_text().parse().unwrap();
        prop_assert_eq!(&back, &h);
        prop_assert_eq!(back.to_text(), h.to_text());
    }

    #[test]
    fn deletion_counts_edges((h, s) in graph(3, 9).prop_flat_map(|h| {
        let n = h.vertex_count();
        (Just(h), vertex_subset(n))
    })) {
        let touching = h.edges().filter(|e| e.iter().any(|v| s.contains(v))).count();
        prop_assert_eq!(h.delete(&s).unwrap().edge_count() + touching, h.edge_count());
        let rest: Vec<Vertex> = (0..h.vertex_count() as Vertex).filter(|v| !s.contains(v)).collect();
        prop_assert_eq!(h.delete(&s).unwrap(), h.induced(&rest).unwrap());
    }

    #[test]
    fn induced_composes((h, s, pick) in graph(3, 9).prop_flat_map(|h| {
        let n = h.vertex_count();
        (Just(h), vertex_subset(n), vertex_subset(n))
    })) {
        let inner = h.induced(&s).unwrap();
        // positions inside `s` that are picked
        let t: Vec<Vertex> = pick.iter().copied().filter(|&i| (i as usize) < s.len()).collect();
        let image: Vec<Vertex> = t.iter().map(|&i| s[i as usize]).collect();
        prop_assert_eq!(inner.induced(&t).unwrap(), h.induced(&image).unwrap());
    }

    #[test]
    fn freeness_is_monotone(h in graph(3, 8), drop in any::<u64>()) {
        let k4m = family("K-:4,3");
        if is_free(&h, &k4m).unwrap() {
            let sub = h.edge_subgraph(|i| (drop >> (i % 64)) & 1 == 0);
            prop_assert!(is_free(&sub, &k4m).unwrap());
        }
    }

    #[test]
    fn embeddings_validate(h in graph(3, 8)) {
        for name in ["K-:4,3", "D:2,3", "K:4,3"] {
            let f = family(name);
            match contains(&h, &f).unwrap() {
                Some(emb) => {
                    let map = &emb.map;
                    let mut seen = map.clone();
                    seen.sort_unstable();
                    seen.dedup();
                    prop_assert_eq!(seen.len(), map.len());
                    for e in f.edges() {
                        let mut img: Vec<Vertex> = e.iter().map(|&v| map[v as usize]).collect();
                        img.sort_unstable();
                        prop_assert!(h.has_edge(&img));
                    }
                }
                None => prop_assert!(!naive_contains(&h, &f)),
            }
        }
    }
}

#[test]
fn is_free_agrees_with_threshold_scan() {
    let cases: [(&str, usize, usize); 4] = [("K:4,3", 4, 3), ("K-:4,3", 4, 2), ("K:5,3", 5, 9), ("K-:5,3", 5, 8)];
    for seed in 0..200u64 {
        let n = 5 + (seed % 8) as usize;
        let p = [0.2, 0.4, 0.6, 0.8][(seed % 4) as usize];
        let h = random_graph(3, n, p, seed);
        for (name, r, max) in cases {
            let f = family(name);
            let free = is_free(&h, &f).unwrap();
            assert_eq!(free, spanned_edge_threshold_free(&h, r, max).unwrap(), "{name} seed {seed}");
            if n <= 8 {
                assert_eq!(free, max_spanned(&h, r) <= max, "{name} seed {seed}");
            }
        }
    }
}

#[test]
fn dense_subset_scan_is_schedule_independent() {
    for seed in 0..30u64 {
        let h = random_graph(3, 11, 0.5, seed);
        let a = find_dense_subset(&h, 5, 8, Schedule::Serial).unwrap();
        let b = find_dense_subset(&h, 5, 8, Schedule::Parallel).unwrap();
        assert_eq!(a, b);
        if let Some(s) = a {
            let spanned = h.induced(&s).unwrap().edge_count();
            assert!(spanned > 8);
        }
    }
}

#[test]
fn named_builds_are_deterministic() {
    for spec in ["K:6,3", "K-:7,4", "D:3,5", "S6"] {
        let s: FamilySpec = spec.parse().unwrap();
        assert_eq!(s.build().unwrap().to_text(), s.build().unwrap().to_text());
        assert_eq!(s.to_string(), spec);
    }
    assert_eq!(
        family("K:6,3").density().unwrap(),
        turansep_core::Rational::from_integer(1)
    );
    assert_eq!(binomial(6, 3), 20);
}
