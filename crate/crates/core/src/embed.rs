//! Subhypergraph containment and freeness checks.
//!
//! A copy of `F` in `H` is an injective vertex map sending every edge of `F`
//! onto an edge of `H` (not necessarily induced).

use std::collections::HashSet;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::combin::{binomial, subsets, EdgeIndex, Ranker};
use crate::error::{param, Result};
use crate::hypercore::{Hypergraph, Vertex};
use crate::par::{self, Schedule};

const UNSET: Vertex = Vertex::MAX;

/// Injective, edge-preserving map `V(F) -> V(H)`; `map[u]` is the image of `u`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embedding {
    pub map: Vec<Vertex>,
}

impl Embedding {
    /// Independent re-check against both graphs.
    pub fn validate(&self, host: &Hypergraph, pattern: &Hypergraph) -> bool {
        if self.map.len() != pattern.vertex_count() {
            return false;
        }
        if self.map.iter().any(|&v| v as usize >= host.vertex_count()) {
            return false;
        }
        if self.map.iter().collect::<HashSet<_>>().len() != self.map.len() {
            return false;
        }
        pattern.edges().all(|e| {
            let mut image: Vec<Vertex> = e.iter().map(|&u| self.map[u as usize]).collect();
            image.sort_unstable();
            host.has_edge(&image)
        })
    }
}

fn check_uniformity(host: &Hypergraph, pattern: &Hypergraph) -> Result<()> {
    if host.uniformity() != pattern.uniformity() {
        return Err(param(format!(
            "uniformity mismatch: host is {}-uniform, pattern is {}-uniform",
            host.uniformity(),
            pattern.uniformity()
        )));
    }
    Ok(())
}

/// Assignment order for pattern vertices plus, for each position, the
/// pattern edges whose last vertex is assigned there.
#[derive(Clone, Debug)]
struct Plan {
    order: Vec<usize>,
    closing: Vec<Vec<usize>>,
}

impl Plan {
    /// `prefix` first, then remaining vertices by descending degree (ties by label).
    fn new(pattern: &Hypergraph, prefix: &[usize]) -> Self {
        let deg = pattern.degrees();
        let mut order = prefix.to_vec();
        let mut rest: Vec<usize> = (0..pattern.vertex_count()).filter(|u| !prefix.contains(u)).collect();
        rest.sort_by_key(|&u| (std::cmp::Reverse(deg[u]), u));
        order.extend(rest);
        let mut pos = vec![0; order.len()];
        for (p, &u) in order.iter().enumerate() {
            pos[u] = p;
        }
        let mut closing = vec![Vec::new(); order.len()];
        for (i, e) in pattern.edges().enumerate() {
            let last = e.iter().map(|&u| pos[u as usize]).max().expect("edges are non-empty");
            closing[last].push(i);
        }
        Plan { order, closing }
    }
}

struct Search<'a> {
    pattern: &'a Hypergraph,
    plan: &'a Plan,
    host: &'a EdgeIndex,
    host_n: usize,
    // degree filter, only for static hosts
    degree_bound: Option<(&'a [usize], Vec<usize>)>,
}

impl Search<'_> {
    fn extend(&self, pos: usize, map: &mut [Vertex], used: &mut [bool], buf: &mut Vec<Vertex>) -> bool {
        if pos == self.plan.order.len() {
            return true;
        }
        let u = self.plan.order[pos];
        for v in 0..self.host_n as Vertex {
            if used[v as usize] {
                continue;
            }
            if let Some((hdeg, pdeg)) = &self.degree_bound {
                if hdeg[v as usize] < pdeg[u] {
                    continue;
                }
            }
            map[u] = v;
            if self.closes_ok(pos, map, buf) {
                used[v as usize] = true;
                if self.extend(pos + 1, map, used, buf) {
                    return true;
                }
                used[v as usize] = false;
            }
            map[u] = UNSET;
        }
        false
    }

    #[inline]
    fn closes_ok(&self, pos: usize, map: &[Vertex], buf: &mut Vec<Vertex>) -> bool {
        self.plan.closing[pos].iter().all(|&ei| {
            buf.clear();
            buf.extend(self.pattern.edge(ei).iter().map(|&w| map[w as usize]));
            self.host.contains_unsorted(buf)
        })
    }
}

/// Some copy of `pattern` in `host`, the first in a fixed search order.
pub fn contains(host: &Hypergraph, pattern: &Hypergraph) -> Result<Option<Embedding>> {
    check_uniformity(host, pattern)?;
    if pattern.vertex_count() > host.vertex_count() || pattern.edge_count() > host.edge_count() {
        return Ok(None);
    }
    let plan = Plan::new(pattern, &[]);
    let index = host.edge_index();
    let search = Search {
        pattern,
        plan: &plan,
        host: &index,
        host_n: host.vertex_count(),
        degree_bound: Some((&host.degrees(), pattern.degrees())),
    };
    let mut map = vec![UNSET; pattern.vertex_count()];
    let mut used = vec![false; host.vertex_count()];
    let mut buf = Vec::with_capacity(pattern.uniformity());
    Ok(search
        .extend(0, &mut map, &mut used, &mut buf)
        .then_some(Embedding { map }))
}

pub fn is_free(host: &Hypergraph, pattern: &Hypergraph) -> Result<bool> {
    Ok(contains(host, pattern)?.is_none())
}

/// Automorphisms of small patterns by brute force; identity only above 8 vertices.
fn automorphisms(pattern: &Hypergraph) -> Vec<Vec<Vertex>> {
    let m = pattern.vertex_count();
    let identity: Vec<Vertex> = (0..m as Vertex).collect();
    if m > 8 {
        return vec![identity];
    }
    let index = pattern.edge_index();
    let deg = pattern.degrees();
    let mut buf = Vec::new();
    (0..m as Vertex)
        .permutations(m)
        .filter(|p| (0..m).all(|u| deg[u] == deg[p[u] as usize]))
        .filter(|p| {
            pattern.edges().all(|e| {
                buf.clear();
                buf.extend(e.iter().map(|&u| p[u as usize]));
                index.contains_unsorted(&buf)
            })
        })
        .collect()
}

/// Finds copies of a fixed pattern that are forced to use one given host edge.
///
/// Used when a host grows one edge at a time: if the host was free before
/// the edge was added, any new copy must map some pattern edge onto it.
/// Anchors (a pattern edge plus an ordering of its vertices) are reduced
/// modulo the pattern's automorphism group.
#[derive(Clone, Debug)]
pub struct ForcedMatcher {
    pattern: Hypergraph,
    plans: Vec<Plan>,
    // (plan index, ordered pattern vertices mapped onto the sorted host edge)
    anchors: Vec<(usize, Vec<usize>)>,
}

impl ForcedMatcher {
    pub fn new(pattern: &Hypergraph) -> Self {
        let k = pattern.uniformity();
        let auts = automorphisms(pattern);
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut plans = Vec::new();
        let mut anchors = Vec::new();
        for e in pattern.edges() {
            let verts: Vec<usize> = e.iter().map(|&u| u as usize).collect();
            let mut plan_id = None;
            for tuple in verts.iter().copied().permutations(k) {
                if seen.contains(&tuple) {
                    continue;
                }
                for a in &auts {
                    seen.insert(tuple.iter().map(|&u| a[u] as usize).collect());
                }
                let pid = *plan_id.get_or_insert_with(|| {
                    plans.push(Plan::new(pattern, &verts));
                    plans.len() - 1
                });
                anchors.push((pid, tuple));
            }
        }
        ForcedMatcher {
            pattern: pattern.clone(),
            plans,
            anchors,
        }
    }

    pub fn pattern(&self) -> &Hypergraph {
        &self.pattern
    }

    pub fn anchor_count(&self) -> usize {
        self.anchors.len()
    }

    /// A copy of the pattern in `host` (which must already contain `edge`,
    /// given sorted) mapping some pattern edge onto `edge`.
    pub fn copy_through(&self, host: &EdgeIndex, host_n: usize, edge: &[Vertex]) -> Option<Embedding> {
        let m = self.pattern.vertex_count();
        if m > host_n || self.pattern.is_empty() {
            return None;
        }
        let k = self.pattern.uniformity();
        let mut map = vec![UNSET; m];
        let mut used = vec![false; host_n];
        let mut buf = Vec::with_capacity(k);
        for (pid, tuple) in &self.anchors {
            let plan = &self.plans[*pid];
            for (&u, &v) in tuple.iter().zip(edge) {
                map[u] = v;
                used[v as usize] = true;
            }
            let search = Search {
                pattern: &self.pattern,
                plan,
                host,
                host_n,
                degree_bound: None,
            };
            // the anchored prefix closes only the anchor edge itself
            if search.extend(k, &mut map, &mut used, &mut buf) {
                return Some(Embedding { map });
            }
            map.iter_mut().for_each(|x| *x = UNSET);
            used.iter_mut().for_each(|x| *x = false);
        }
        None
    }
}

/// True iff every `r`-subset of `V(H)` spans at most `max_edges` edges.
///
/// With `k = 3, r = 5, max_edges = 8` this is exactly `K5⁻`-freeness; in
/// general `r = ℓ` with `max_edges = C(ℓ,k) - 1` tests `K_ℓ`-freeness and
/// `C(ℓ,k) - 2` tests `K_ℓ⁻`-freeness.
pub fn spanned_edge_threshold_free(host: &Hypergraph, r: usize, max_edges: usize) -> Result<bool> {
    Ok(find_dense_subset(host, r, max_edges, Schedule::default())?.is_none())
}

/// The lexicographically first `r`-subset spanning more than `max_edges`
/// edges, if any.
pub fn find_dense_subset(
    host: &Hypergraph,
    r: usize,
    max_edges: usize,
    schedule: Schedule,
) -> Result<Option<Vec<Vertex>>> {
    let (k, n) = (host.uniformity(), host.vertex_count());
    if r < k || r > n {
        return Err(param(format!("subset size r = {r} must satisfy k = {k} <= r <= n = {n}")));
    }
    if binomial(r as u64, k as u64) <= max_edges as u128 {
        return Ok(None);
    }
    let scan = DenseScan::new(host, r, max_edges);
    // seed the search with every admissible pair of leading vertices
    let seeds: Vec<(Vertex, Vertex)> = if r >= 2 {
        (0..=(n - r) as Vertex)
            .flat_map(|a| (a + 1..=(n - r + 1) as Vertex).map(move |b| (a, b)))
            .collect()
    } else {
        (0..=(n - r) as Vertex).map(|a| (a, UNSET)).collect()
    };
    Ok(par::find_map_first(schedule, &seeds, |&(a, b)| scan.scan_seed(a, b)))
}

struct DenseScan {
    index: EdgeIndex,
    ranker: Ranker,
    k: usize,
    n: usize,
    r: usize,
    max_edges: usize,
    // combos[len] = all (k-1)-subsets of positions 0..len
    combos: Vec<Vec<Vec<Vertex>>>,
}

impl DenseScan {
    fn new(host: &Hypergraph, r: usize, max_edges: usize) -> Self {
        let k = host.uniformity();
        DenseScan {
            index: host.edge_index(),
            ranker: Ranker::new(host.vertex_count(), k),
            k,
            n: host.vertex_count(),
            r,
            max_edges,
            combos: (0..r).map(|len| subsets(len, k - 1)).collect(),
        }
    }

    fn scan_seed(&self, a: Vertex, b: Vertex) -> Option<Vec<Vertex>> {
        let mut chosen = Vec::with_capacity(self.r);
        let mut count = self.add(&mut chosen, a, 0);
        if count > self.max_edges {
            return Some(self.pad(chosen));
        }
        if b != UNSET {
            count = self.add(&mut chosen, b, count);
            if count > self.max_edges {
                return Some(self.pad(chosen));
            }
        }
        self.dfs(&mut chosen, count)
    }

    /// Pushes `v` and returns the new spanned-edge count.
    #[inline]
    fn add(&self, chosen: &mut Vec<Vertex>, v: Vertex, count: usize) -> usize {
        let partials = self.partial_ranks(chosen);
        let top = self.ranker_top(v);
        chosen.push(v);
        count + partials.iter().filter(|&&p| self.index.contains_rank(p + top)).count()
    }

    #[inline]
    fn ranker_top(&self, v: Vertex) -> u64 {
        self.ranker.term(self.k - 1, v)
    }

    /// Colex rank terms of every (k-1)-subset of `chosen`.
    fn partial_ranks(&self, chosen: &[Vertex]) -> Vec<u64> {
        self.combos[chosen.len()]
            .iter()
            .map(|c| c.iter().enumerate().map(|(slot, &i)| self.ranker.term(slot, chosen[i as usize])).sum())
            .collect()
    }

    fn dfs(&self, chosen: &mut Vec<Vertex>, count: usize) -> Option<Vec<Vertex>> {
        let len = chosen.len();
        if len == self.r {
            return None;
        }
        let partials = self.partial_ranks(chosen);
        let lo = chosen.last().map_or(0, |&v| v + 1);
        let hi = (self.n - (self.r - len)) as Vertex;
        for v in lo..=hi {
            let top = self.ranker_top(v);
            let c = count + partials.iter().filter(|&&p| self.index.contains_rank(p + top)).count();
            chosen.push(v);
            if c > self.max_edges {
                return Some(self.pad(chosen.clone()));
            }
            if let Some(w) = self.dfs(chosen, c) {
                return Some(w);
            }
            chosen.pop();
        }
        None
    }

    fn pad(&self, mut chosen: Vec<Vertex>) -> Vec<Vertex> {
        let mut next = chosen.last().map_or(0, |&v| v + 1);
        while chosen.len() < self.r {
            chosen.push(next);
            next += 1;
        }
        chosen
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypercore::FamilySpec;

    fn fam(s: &str) -> Hypergraph {
        s.parse::<FamilySpec>().unwrap().build().unwrap()
    }

    #[test]
    fn identity_and_simple_containment() {
        let s6 = fam("S6");
        let emb = contains(&s6, &s6).unwrap().unwrap();
        assert!(emb.validate(&s6, &s6));
        let e = contains(&fam("K-:5,3"), &fam("K:4,3")).unwrap().unwrap();
        assert!(e.validate(&fam("K-:5,3"), &fam("K:4,3")));
        assert!(contains(&s6, &fam("K:4,3")).unwrap().is_none());
    }

    #[test]
    fn freeness_examples() {
        assert!(is_free(&fam("S6"), &fam("K-:4,3")).unwrap());
        assert!(!is_free(&fam("K:5,3"), &fam("K:4,3")).unwrap());
        assert!(is_free(&Hypergraph::empty(3, 9).unwrap(), &fam("D:1,3")).unwrap());
        assert!(contains(&fam("K:5,3"), &fam("K:5,4")).is_err());
    }

    #[test]
    fn pattern_with_isolated_vertices() {
        // one edge on 4 vertices needs a host with at least 4 vertices
        let d1 = fam("D:1,3");
        let one = Hypergraph::new(3, 3, [[0, 1, 2]]).unwrap();
        assert!(contains(&one, &d1).unwrap().is_none());
        let one4 = Hypergraph::new(3, 4, [[1, 2, 3]]).unwrap();
        let emb = contains(&one4, &d1).unwrap().unwrap();
        assert!(emb.validate(&one4, &d1));
    }

    #[test]
    fn threshold_scan_examples() {
        assert!(!spanned_edge_threshold_free(&fam("K:5,3"), 5, 8).unwrap());
        assert!(!spanned_edge_threshold_free(&fam("K-:5,3"), 5, 8).unwrap());
        assert!(spanned_edge_threshold_free(&fam("S6"), 4, 2).unwrap());
        assert!(spanned_edge_threshold_free(&fam("S6"), 2, 0).is_err());
        assert!(spanned_edge_threshold_free(&fam("S6"), 7, 0).is_err());
    }

    #[test]
    fn dense_subset_witness_is_lex_first() {
        // K4 on {3,4,5,6} inside 8 vertices
        let mut edges = Vec::new();
        for s in subsets(4, 3) {
            edges.push(s.iter().map(|&v| v + 3).collect::<Vec<_>>());
        }
        let h = Hypergraph::new(3, 8, edges).unwrap();
        for s in [Schedule::Serial, Schedule::Parallel] {
            assert_eq!(find_dense_subset(&h, 4, 3, s).unwrap(), Some(vec![3, 4, 5, 6]));
            assert_eq!(find_dense_subset(&h, 5, 3, s).unwrap(), Some(vec![0, 3, 4, 5, 6]));
        }
    }

    #[test]
    fn automorphism_reduction() {
        // K4^(3): all 24 ordered anchors collapse to one orbit
        assert_eq!(ForcedMatcher::new(&fam("K:4,3")).anchor_count(), 1);
        // S6 has a transitive action on its edges? anchors never exceed 10 * 3!
        assert!(ForcedMatcher::new(&fam("S6")).anchor_count() <= 60);
    }

    #[test]
    fn forced_matcher_finds_new_copies_only_through_edge() {
        let k4 = fam("K:4,3");
        let matcher = ForcedMatcher::new(&k4);
        let h = fam("K:4,3");
        let idx = h.edge_index();
        let emb = matcher.copy_through(&idx, 4, &[0, 1, 3]).unwrap();
        assert!(emb.validate(&h, &k4));
        let minus = fam("K-:4,3");
        let idx = minus.edge_index();
        assert!(matcher.copy_through(&idx, 4, &[0, 1, 2]).is_none());
    }
}
