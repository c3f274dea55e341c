mod common;

use common::random_graph;
use turansep_core::partition_lab::{
    crossing_count, crossing_probability, enumerate_part_choices, expectation_check, sample_parts, BalancedParts,
};
use turansep_core::{Hypergraph, Rational, Vertex};

#[test]
fn probabilities_match_exhaustive_enumeration() {
    for (n, k, t0) in [(3, 3, 3), (6, 3, 6), (6, 3, 3), (8, 4, 4), (9, 3, 3), (12, 3, 4), (8, 2, 4)] {
        let edge: Vec<Vertex> = (0..k as Vertex).collect();
        let h = Hypergraph::new(k, n, [edge]).unwrap();
        let e = enumerate_part_choices(&h, t0).unwrap();
        assert_eq!(e.mean(), crossing_probability(n, k, t0).unwrap(), "({n}, {k}, {t0})");
    }
}

#[test]
fn expectation_is_linear_and_some_choice_is_below_it() {
    for seed in 0..30u64 {
        let n = [6, 8, 9][(seed % 3) as usize];
        let t0 = [3, 4, 3][(seed % 3) as usize];
        let h = random_graph(3, n, 0.5, seed);
        let e = enumerate_part_choices(&h, t0).unwrap();
        let exact = crossing_probability(n, 3, t0).unwrap() * Rational::from_integer(h.edge_count() as i128);
        assert_eq!(e.mean(), exact);
        assert!(Rational::from_integer(e.min_crossing as i128) <= exact);
    }
}

#[test]
fn sampled_parts_are_balanced() {
    for seed in 0..1000 {
        let p = sample_parts(12, 3, 4, seed).unwrap();
        assert_eq!(p.parts().len(), 3);
        assert!(BalancedParts::new(12, p.parts().to_vec()).is_ok());
        assert!(p.parts().iter().all(|q| q.len() == 3));
    }
}

#[test]
fn vertex_marginal_is_uniform() {
    let (n, s, samples) = (12, 3, 100_000u64);
    let hits = (0..samples)
        .filter(|&seed| sample_parts(n, 3, n / s, seed).unwrap().parts()[0].contains(&0))
        .count() as f64;
    let p = s as f64 / n as f64;
    let sd = (p * (1.0 - p) / samples as f64).sqrt();
    assert!((hits / samples as f64 - p).abs() < 5.0 * sd);
}

#[test]
fn complete_graph_crossing_counts() {
    let parts = sample_parts(6, 3, 3, 11).unwrap();
    assert_eq!(crossing_count(&Hypergraph::complete(3, 6).unwrap(), &parts).unwrap(), 8);
    let r = expectation_check(&Hypergraph::complete(3, 12).unwrap(), 4, 20_000, 5).unwrap();
    assert_eq!(r.exact_expectation, Rational::from_integer(27));
    // every choice of parts sees exactly s^k = 27 crossing edges
    assert_eq!(r.empirical_mean, 27.0);
    assert_eq!(r.standard_error, 0.0);
    assert_eq!(r.z_score, None);
}

#[test]
fn random_graph_z_scores_are_moderate() {
    let mut large = 0;
    for seed in 0..20u64 {
        let h = random_graph(3, 12, 0.4, seed);
        let r = expectation_check(&h, 4, 10_000, seed).unwrap();
        if r.z_score.is_some_and(|z| z.abs() > 4.0) {
            large += 1;
        }
    }
    assert!(large <= 1);
}
