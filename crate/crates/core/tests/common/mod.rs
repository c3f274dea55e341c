//! Deliberately naive reference implementations shared by the oracle tests.

#![allow(dead_code)]

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use turansep_core::{FamilySpec, Hypergraph, Vertex};

pub fn family(s: &str) -> Hypergraph {
    s.parse::<FamilySpec>().unwrap().build().unwrap()
}

pub fn edge_set(h: &Hypergraph) -> Vec<Vec<Vertex>> {
    h.edges().map(<[Vertex]>::to_vec).collect()
}

/// Tries every injective map of pattern vertices into host vertices.
pub fn naive_contains(host: &Hypergraph, pattern: &Hypergraph) -> bool {
    let (n, p) = (host.vertex_count(), pattern.vertex_count());
    if p > n {
        return false;
    }
    (0..n as Vertex).permutations(p).any(|map| {
        pattern.edges().all(|e| {
            let mut image: Vec<Vertex> = e.iter().map(|&v| map[v as usize]).collect();
            image.sort_unstable();
            host.has_edge(&image)
        })
    })
}

/// Largest number of edges spanned by any `r`-subset.
pub fn max_spanned(host: &Hypergraph, r: usize) -> usize {
    (0..host.vertex_count() as Vertex)
        .combinations(r)
        .map(|s| host.edges().filter(|e| e.iter().all(|v| s.contains(v))).count())
        .max()
        .unwrap_or(0)
}

/// Edge subset of the complete graph selected by the bits of `mask`.
pub fn from_mask(k: usize, n: usize, mask: u64) -> Hypergraph {
    let all: Vec<Vec<Vertex>> = (0..n as Vertex).combinations(k).collect();
    let chosen = all.into_iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, e)| e);
    Hypergraph::new(k, n, chosen).unwrap()
}

/// Each k-subset kept independently with probability `p`.
pub fn random_graph(k: usize, n: usize, p: f64, seed: u64) -> Hypergraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<Vec<Vertex>> = (0..n as Vertex).combinations(k).filter(|_| rng.gen_bool(p)).collect();
    Hypergraph::new(k, n, edges).unwrap()
}

/// Applies the vertex permutation `perm` (old label -> new label).
pub fn relabel(h: &Hypergraph, perm: &[Vertex]) -> Hypergraph {
    let edges = h.edges().map(|e| e.iter().map(|&v| perm[v as usize]).collect::<Vec<_>>());
    Hypergraph::new(h.uniformity(), h.vertex_count(), edges).unwrap()
}

/// Plain exhaustive condition-2 check: all `k^m` assignments as base-k
/// counters with vertex 0 most significant, no symmetry reduction, no memo.
/// Returns the first violating assignment.
pub fn naive_condition2(host: &Hypergraph, sub: &Hypergraph) -> Option<Vec<Vec<Vertex>>> {
    let (k, m) = (host.uniformity(), host.vertex_count());
    let total = (k as u64).pow(m as u32);
    for code in 0..total {
        let mut labels = vec![0usize; m];
        let mut c = code;
        for v in (0..m).rev() {
            labels[v] = (c % k as u64) as usize;
            c /= k as u64;
        }
        let parts: Vec<Vec<Vertex>> = (0..k)
            .map(|j| (0..m as Vertex).filter(|&v| labels[v as usize] == j).collect())
            .collect();
        if !host.edges().all(|e| e.iter().any(|v| parts[0].contains(v))) {
            continue;
        }
        let some_part_keeps_sub = parts[1..]
            .iter()
            .any(|p| naive_contains(&host.delete(p).unwrap(), sub));
        if !some_part_keeps_sub {
            return Some(parts);
        }
    }
    None
}
