mod common;

use common::{edge_set, family, max_spanned};
use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use turansep_core::combin::binomial;
use turansep_core::constructions::{
    augment_matching, bipartite_g, bipartite_g_edge_count, iterated_blowup_s6, iterated_blowup_s6_edge_count,
    six_part_h, Matching5, SixPartParams,
};
use turansep_core::densopt::{exact_count, exact_count_closed_form, h_density_poly, reconcile};
use turansep_core::embed::{is_free, spanned_edge_threshold_free};
use turansep_core::exact::random_maximal_free;
use turansep_core::{Rational, Vertex};

#[test]
fn bipartite_g_closed_form() {
    for n in 1..=30 {
        let g = bipartite_g(n).unwrap();
        assert_eq!(g.edge_count() as u64, bipartite_g_edge_count(n), "n = {n}");
        let direct: u64 = (1..n as u64).map(|m| 2 * m * m).sum();
        assert_eq!(direct, bipartite_g_edge_count(n));
    }
}

#[test]
fn bipartite_g_is_k4_free() {
    for n in [3, 6, 10] {
        let g = bipartite_g(n).unwrap();
        assert!(spanned_edge_threshold_free(&g, 4, 3).unwrap());
        assert!(is_free(&g, &family("K:4,3")).unwrap());
    }
    assert!(max_spanned(&bipartite_g(4).unwrap(), 4) <= 3);
}

#[test]
fn iterated_s6_is_k4_minus_free() {
    for n in [6, 12, 36] {
        let h = iterated_blowup_s6(n);
        assert!(spanned_edge_threshold_free(&h, 4, 2).unwrap(), "n = {n}");
    }
}

#[test]
fn iterated_s6_density_along_powers_of_six() {
    let bound = Rational::new(2, 7);
    let mut prev_cubic = Rational::from_integer(0);
    let mut prev_binomial = Rational::from_integer(1);
    for n in [6usize, 36, 216] {
        let e = iterated_blowup_s6(n).edge_count();
        assert_eq!(e as u64, iterated_blowup_s6_edge_count(n));
        let binomial_density = Rational::new(e as i128, binomial(n as u64, 3) as i128);
        assert!(binomial_density <= bound + Rational::new(3, n as i128));
        assert!(binomial_density <= prev_binomial);
        assert!(binomial_density > bound);
        // normalised by n³/6 the sequence climbs towards 2/7 from below
        let cubic = Rational::new(6 * e as i128, (n * n * n) as i128);
        assert!(cubic >= prev_cubic && cubic <= bound);
        prev_cubic = cubic;
        prev_binomial = binomial_density;
    }
}

fn part_profile(p: &SixPartParams, set: &[Vertex]) -> [usize; 6] {
    let mut c = [0; 6];
    for &v in set {
        c[p.part_of(v)] += 1;
    }
    c
}

#[test]
fn six_part_case_analysis() {
    let p = SixPartParams::symmetric(3, 4).unwrap();
    let h = six_part_h(p).unwrap();
    let mut checked = 0;
    for set in (0..p.vertex_count() as Vertex).combinations(5) {
        let profile = part_profile(&p, &set);
        let five_parts = profile.iter().filter(|&&c| c > 0).count() == 5;
        let crowded = profile.iter().any(|&c| c >= 4);
        if five_parts || crowded {
            let spanned = h.graph.induced(&set).unwrap().edge_count();
            assert!(spanned <= 8, "{set:?} spans {spanned}");
            checked += 1;
        }
    }
    assert!(checked > 0);
    assert!(spanned_edge_threshold_free(&h.graph, 5, 8).unwrap());
}

fn random_params(rng: &mut ChaCha8Rng, max: usize) -> SixPartParams {
    let a = rng.gen_range(1..=max);
    let c = rng.gen_range(1..=max);
    SixPartParams::new([a, a, rng.gen_range(1..=max), c, c, rng.gen_range(1..=max)]).unwrap()
}

#[test]
fn six_part_layers_never_collide_and_counts_reconcile() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..50 {
        let p = random_params(&mut rng, 9);
        let h = six_part_h(p).expect("layers are disjoint");
        assert_eq!(reconcile(&h).unwrap(), h.graph.edge_count() as u64);
        assert_eq!(exact_count(&p, &h.layers.s6_star, &h.layers.bipartite_g), h.graph.edge_count() as u64);
    }
}

#[test]
fn six_part_small_random_sizes_are_k5_minus_free() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..8 {
        let p = random_params(&mut rng, 4);
        let h = six_part_h(p).unwrap();
        assert!(spanned_edge_threshold_free(&h.graph, 5, 8).unwrap(), "{:?}", p.sizes());
    }
}

#[test]
fn finite_densities_approach_the_polynomial() {
    let poly = h_density_poly();
    let target = poly.eval(Rational::new(1, 6), Rational::new(1, 6));
    let mut last_gap = f64::INFINITY;
    for m in [10usize, 100, 1000] {
        let p = SixPartParams::symmetric(m, m).unwrap();
        let n = 6 * m;
        let e = exact_count_closed_form(&p);
        let density = Rational::new(e as i128, binomial(n as u64, 3) as i128);
        let gap = if density > target { density - target } else { target - density };
        let gap = *gap.numer() as f64 / *gap.denom() as f64;
        assert!(gap <= 10.0 / n as f64, "m = {m}: gap {gap}");
        assert!(gap < last_gap);
        last_gap = gap;
    }
}

#[test]
fn augmentation_over_random_k4_free_graphs() {
    let k4 = family("K:4,3");
    for seed in 0..100 {
        let h = random_maximal_free(15, &k4, seed).unwrap();
        let out = augment_matching(&h, None).unwrap();
        assert_eq!(out.edge_count(), h.edge_count() + 3);
        assert!(spanned_edge_threshold_free(&out, 5, 8).unwrap(), "seed {seed}");
        let before = edge_set(&h);
        let added: Vec<Vec<Vertex>> = edge_set(&out).into_iter().filter(|e| !before.contains(e)).collect();
        assert_eq!(added.len(), 3);
        let mut touched: Vec<Vertex> = added.concat();
        touched.sort_unstable();
        touched.dedup();
        assert_eq!(touched.len(), 9, "added edges share a vertex");
    }
}

#[test]
fn augmentation_with_explicit_matching() {
    let h = iterated_blowup_s6(12);
    assert!(is_free(&h, &family("K:4,3")).unwrap());
    let m = Matching5::new(12, vec![[0, 2, 4, 6, 8], [1, 3, 5, 7, 9]]).unwrap();
    let out = augment_matching(&h, Some(&m)).unwrap();
    assert_eq!(out.edge_count(), h.edge_count() + 2);
    assert!(spanned_edge_threshold_free(&out, 5, 8).unwrap());
}
