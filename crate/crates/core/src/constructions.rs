//! Lower-bound constructions: blow-ups, the iterated blow-up of `S6`, the
//! bipartite 3-graph `G`, the six-part `K5⁻`-free 3-graph and the matching
//! augmentation of a `K4`-free 3-graph.

use std::ops::Range;

use itertools::Itertools;
use serde::Serialize;

use crate::combin::subsets;
use crate::embed::is_free;
use crate::error::{param, Error, Result};
use crate::hypercore::{FamilySpec, Hypergraph, Vertex, S6_EDGES};

/// Splits `0..n` into `parts` consecutive ranges whose lengths differ by at
/// most one; the longer ranges come first.
pub fn near_equal_parts(n: usize, parts: usize) -> Vec<Range<usize>> {
    let (q, r) = (n / parts, n % parts);
    let mut start = 0;
    (0..parts)
        .map(|i| {
            let len = q + usize::from(i < r);
            let range = start..start + len;
            start += len;
            range
        })
        .collect()
}

fn consecutive_parts(sizes: &[usize]) -> Vec<Range<usize>> {
    let mut start = 0;
    sizes
        .iter()
        .map(|&s| {
            let range = start..start + s;
            start += s;
            range
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlowupSpec {
    pub base: Hypergraph,
    pub part_sizes: Vec<usize>,
}

impl BlowupSpec {
    pub fn new(base: Hypergraph, part_sizes: Vec<usize>) -> Result<Self> {
        if part_sizes.len() != base.vertex_count() {
            return Err(param(format!(
                "blow-up needs {} part sizes, got {}",
                base.vertex_count(),
                part_sizes.len()
            )));
        }
        if part_sizes.contains(&0) {
            return Err(param("blow-up part sizes must be positive"));
        }
        Ok(BlowupSpec { base, part_sizes })
    }
}

// All transversals of the base edges across `parts`, each edge ascending
// because the parts are consecutive and base edges are sorted.
fn push_transversals(base: &Hypergraph, parts: &[Range<usize>], out: &mut Vec<Vec<Vertex>>) {
    for e in base.edges() {
        let classes = e.iter().map(|&v| parts[v as usize].clone());
        for t in classes.multi_cartesian_product() {
            out.push(t.into_iter().map(|v| v as Vertex).collect());
        }
    }
}

/// Single-level blow-up; vertex class of base vertex `v` is the `v`-th
/// consecutive block of the given size.
pub fn blowup(spec: &BlowupSpec) -> Result<Hypergraph> {
    let spec = BlowupSpec::new(spec.base.clone(), spec.part_sizes.clone())?;
    let parts = consecutive_parts(&spec.part_sizes);
    let mut edges = Vec::new();
    push_transversals(&spec.base, &parts, &mut edges);
    Hypergraph::from_sorted_edges(spec.base.uniformity(), parts.last().map_or(0, |p| p.end), edges)
}

/// Iterated blow-up of `base` on `n` vertices: near-equal consecutive parts,
/// transversal edges across them, then the same construction inside every
/// part. Parts smaller than `v(base)` stay empty.
pub fn iterated_blowup(base: &Hypergraph, n: usize) -> Result<Hypergraph> {
    if base.vertex_count() < 2 {
        return Err(param("iterated blow-up needs a base with at least two vertices"));
    }
    let mut edges = Vec::new();
    fill_iterated(base, 0, n, &mut edges);
    Hypergraph::from_sorted_edges(base.uniformity(), n, edges)
}

fn fill_iterated(base: &Hypergraph, offset: usize, n: usize, out: &mut Vec<Vec<Vertex>>) {
    let v = base.vertex_count();
    if n < v {
        return;
    }
    let parts: Vec<Range<usize>> = near_equal_parts(n, v)
        .into_iter()
        .map(|p| p.start + offset..p.end + offset)
        .collect();
    push_transversals(base, &parts, out);
    for p in parts {
        fill_iterated(base, p.start, p.len(), out);
    }
}

pub fn iterated_blowup_s6(n: usize) -> Hypergraph {
    let base = FamilySpec::S6.build().expect("S6 is valid");
    iterated_blowup(&base, n).expect("iterated blow-up of S6")
}

/// Edge count of [`iterated_blowup_s6`] without building it.
pub fn iterated_blowup_s6_edge_count(n: usize) -> u64 {
    if n < 6 {
        return 0;
    }
    let sizes: Vec<u64> = near_equal_parts(n, 6).iter().map(|p| p.len() as u64).collect();
    let across: u64 = S6_EDGES
        .iter()
        .map(|e| e.iter().map(|&v| sizes[v as usize]).product::<u64>())
        .sum();
    across + sizes.iter().map(|&s| iterated_blowup_s6_edge_count(s as usize)).sum::<u64>()
}

// Edges of G with the a-side at `a0..a0+s` and b-side at `b0..b0+s`, b0 > a0.
fn push_bipartite_g(a0: usize, b0: usize, s: usize, out: &mut Vec<Vec<Vertex>>) {
    let (a, b) = (|i: usize| (a0 + i) as Vertex, |j: usize| (b0 + j) as Vertex);
    for top in 1..s {
        for i in 0..top {
            for j in 0..top {
                out.push(vec![a(i), a(top), b(j)]);
                out.push(vec![a(i), b(j), b(top)]);
            }
        }
    }
}

/// The bipartite 3-graph `G` on `2n` vertices: a-side `0..n`, b-side `n..2n`,
/// edges `{a_i, b_j, a_k}` and `{a_i, b_j, b_k}` for all `i, j < k`.
pub fn bipartite_g(n: usize) -> Result<Hypergraph> {
    if n == 0 {
        return Err(param("bipartite G needs n >= 1"));
    }
    let mut edges = Vec::new();
    push_bipartite_g(0, n, n, &mut edges);
    Hypergraph::from_sorted_edges(3, 2 * n, edges)
}

/// `(n-1) n (2n-1) / 3`.
pub fn bipartite_g_edge_count(n: usize) -> u64 {
    let n = n as u64;
    n.saturating_sub(1) * n * (2 * n).saturating_sub(1) / 3
}

/// Part sizes of the six-part construction; the first, second, fourth and
/// fifth parts carry the `x` share, the third and sixth the `y` share.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SixPartParams {
    sizes: [usize; 6],
}

/// Part triples (0-based) that carry no transversal edges.
pub const FORBIDDEN_TRIPLES: [[usize; 3]; 4] = [[0, 1, 2], [3, 4, 5], [0, 1, 5], [2, 3, 4]];

/// The sixteen part triples that carry all their transversal edges.
pub fn allowed_triples() -> Vec<[usize; 3]> {
    (0..6)
        .combinations(3)
        .map(|c| [c[0], c[1], c[2]])
        .filter(|t| !FORBIDDEN_TRIPLES.contains(t))
        .collect()
}

// (pair part, third-vertex parts) for the two pair layers
pub(crate) const Y_PAIR_RULES: [(usize, [usize; 2]); 2] = [(2, [0, 1]), (5, [3, 4])];
pub(crate) const X_PAIR_RULES: [(usize, [usize; 1]); 4] = [(0, [5]), (1, [5]), (3, [2]), (4, [2])];

impl SixPartParams {
    pub fn new(sizes: [usize; 6]) -> Result<Self> {
        if sizes.contains(&0) {
            return Err(param(format!("six-part sizes must be positive, got {sizes:?}")));
        }
        if sizes[0] != sizes[1] || sizes[3] != sizes[4] {
            return Err(param(format!(
                "six-part sizes need s1 = s2 and s4 = s5, got {sizes:?}"
            )));
        }
        Ok(SixPartParams { sizes })
    }

    /// Sizes `(s, s, u, s, s, u)`.
    pub fn symmetric(s: usize, u: usize) -> Result<Self> {
        Self::new([s, s, u, s, s, u])
    }

    pub fn sizes(&self) -> [usize; 6] {
        self.sizes
    }

    pub fn vertex_count(&self) -> usize {
        self.sizes.iter().sum()
    }

    pub fn parts(&self) -> Vec<Range<usize>> {
        consecutive_parts(&self.sizes)
    }

    /// Index of the part containing `v`.
    pub fn part_of(&self, v: Vertex) -> usize {
        self.parts()
            .iter()
            .position(|p| p.contains(&(v as usize)))
            .expect("vertex inside the construction")
    }
}

/// Edge counts of the five layers of the six-part construction.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LayerCounts {
    /// Transversals of the allowed part triples.
    pub transversal: u64,
    /// Pairs inside the third or sixth part with a vertex from their two partner parts.
    pub pairs_in_y_parts: u64,
    /// Pairs inside an `x` part with a vertex from the opposite `y` part.
    pub pairs_in_x_parts: u64,
    /// Iterated blow-up of `S6` inside each part.
    pub s6_star: [u64; 6],
    /// `G` between parts one and two, and between parts four and five.
    pub bipartite_g: [u64; 2],
}

impl LayerCounts {
    pub fn total(&self) -> u64 {
        self.transversal
            + self.pairs_in_y_parts
            + self.pairs_in_x_parts
            + self.s6_star.iter().sum::<u64>()
            + self.bipartite_g.iter().sum::<u64>()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SixPartH {
    pub params: SixPartParams,
    pub layers: LayerCounts,
    pub graph: Hypergraph,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Layer {
    Transversal,
    PairsInY,
    PairsInX,
    S6Star(usize),
    BipartiteG(usize),
}

/// Builds the six-part `K5⁻`-free 3-graph. Fails with a consistency error if
/// two layers ever produce the same edge.
pub fn six_part_h(p: SixPartParams) -> Result<SixPartH> {
    let p = SixPartParams::new(p.sizes)?;
    let parts = p.parts();
    let mut tagged: Vec<(Vec<Vertex>, Layer)> = Vec::new();
    let mut layers = LayerCounts::default();
    let mut buf = Vec::new();

    let flush = |buf: &mut Vec<Vec<Vertex>>, layer: Layer, tagged: &mut Vec<(Vec<Vertex>, Layer)>| {
        let count = buf.len() as u64;
        tagged.extend(buf.drain(..).map(|mut e| {
            e.sort_unstable();
            (e, layer)
        }));
        count
    };

    for t in allowed_triples() {
        for e in t.iter().map(|&i| parts[i].clone()).multi_cartesian_product() {
            buf.push(e.into_iter().map(|v| v as Vertex).collect());
        }
    }
    layers.transversal = flush(&mut buf, Layer::Transversal, &mut tagged);

    for (pair_part, thirds) in Y_PAIR_RULES {
        push_pairs_with_third(&parts[pair_part], thirds.iter().map(|&i| parts[i].clone()), &mut buf);
    }
    layers.pairs_in_y_parts = flush(&mut buf, Layer::PairsInY, &mut tagged);

    for (pair_part, thirds) in X_PAIR_RULES {
        push_pairs_with_third(&parts[pair_part], thirds.iter().map(|&i| parts[i].clone()), &mut buf);
    }
    layers.pairs_in_x_parts = flush(&mut buf, Layer::PairsInX, &mut tagged);

    for (i, part) in parts.iter().enumerate() {
        let base = FamilySpec::S6.build()?;
        fill_iterated(&base, part.start, part.len(), &mut buf);
        layers.s6_star[i] = flush(&mut buf, Layer::S6Star(i), &mut tagged);
    }

    for (slot, (a, b)) in [(0, 1), (3, 4)].into_iter().enumerate() {
        push_bipartite_g(parts[a].start, parts[b].start, parts[a].len(), &mut buf);
        layers.bipartite_g[slot] = flush(&mut buf, Layer::BipartiteG(slot), &mut tagged);
    }

    tagged.sort_unstable();
    if let Some(w) = tagged.windows(2).find(|w| w[0].0 == w[1].0) {
        return Err(Error::Consistency(format!(
            "edge {:?} produced by layers {:?} and {:?}",
            w[0].0, w[0].1, w[1].1
        )));
    }
    let graph = Hypergraph::from_sorted_edges(3, p.vertex_count(), tagged.into_iter().map(|(e, _)| e).collect())?;
    Ok(SixPartH { params: p, layers, graph })
}

fn push_pairs_with_third(
    pair_part: &Range<usize>,
    thirds: impl Iterator<Item = Range<usize>> + Clone,
    out: &mut Vec<Vec<Vertex>>,
) {
    for pair in pair_part.clone().combinations(2) {
        for w in thirds.clone().flatten() {
            out.push(vec![pair[0] as Vertex, pair[1] as Vertex, w as Vertex]);
        }
    }
}

/// Pairwise-disjoint 5-sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Matching5 {
    blocks: Vec<[Vertex; 5]>,
}

impl Matching5 {
    pub fn new(n: usize, blocks: Vec<[Vertex; 5]>) -> Result<Self> {
        let mut seen = vec![false; n];
        let mut sorted = Vec::with_capacity(blocks.len());
        for mut b in blocks {
            b.sort_unstable();
            for &v in &b {
                let slot = seen
                    .get_mut(v as usize)
                    .ok_or_else(|| param(format!("matching vertex {v} out of range for n = {n}")))?;
                if *slot {
                    return Err(param(format!("matching blocks overlap at vertex {v}")));
                }
                *slot = true;
            }
            sorted.push(b);
        }
        Ok(Matching5 { blocks: sorted })
    }

    /// Blocks `{5t, ..., 5t + 4}` for `t < n / 5`.
    pub fn consecutive(n: usize) -> Self {
        let blocks = (0..n / 5)
            .map(|t| std::array::from_fn(|i| (5 * t + i) as Vertex))
            .collect();
        Matching5 { blocks }
    }

    pub fn blocks(&self) -> &[[Vertex; 5]] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

/// Adds the lexicographically smallest missing triple inside every block of
/// `matching` (consecutive blocks by default) to a `K4`-free 3-graph.
pub fn augment_matching(h: &Hypergraph, matching: Option<&Matching5>) -> Result<Hypergraph> {
    if h.uniformity() != 3 {
        return Err(param(format!("augmentation needs a 3-graph, got k = {}", h.uniformity())));
    }
    let k4 = Hypergraph::complete(3, 4)?;
    if !is_free(h, &k4)? {
        return Err(Error::Precondition("host graph contains K4".into()));
    }
    let default;
    let matching = match matching {
        Some(m) => {
            Matching5::new(h.vertex_count(), m.blocks.clone())?;
            m
        }
        None => {
            default = Matching5::consecutive(h.vertex_count());
            &default
        }
    };
    let mut edges: Vec<Vec<Vertex>> = h.edges().map(<[Vertex]>::to_vec).collect();
    for block in matching.blocks() {
        let pick = subsets(5, 3)
            .into_iter()
            .map(|idx| idx.iter().map(|&i| block[i as usize]).collect::<Vec<_>>())
            .find(|t| !h.has_edge(t))
            .ok_or_else(|| Error::Consistency(format!("block {block:?} spans all ten triples")))?;
        edges.push(pick);
    }
    Hypergraph::from_sorted_edges(3, h.vertex_count(), edges)
}
