//! k-uniform hypergraphs on dense vertex labels `0..n`, the named families
//! used throughout the crate, and the plain-text interchange format.
//!
//! Text format:
//!
//! ```text
//! # comment lines start with '#'
//! 3 5          <- uniformity k, vertex count n
//! 0 1 2        <- one edge per line, k vertex indices, any order
//! 2 4 3
//! ```
//!
//! Edges are canonicalised on input (each edge sorted, edge list sorted);
//! a repeated edge is a parse error.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::combin::{binomial, for_each_subset, subsets, EdgeIndex};
use crate::error::{param, Error, Result};
use crate::Rational;

pub type Vertex = u32;

/// Immutable k-uniform hypergraph with a canonical edge order.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawHypergraph", into = "RawHypergraph")]
pub struct Hypergraph {
    k: usize,
    n: usize,
    // Flat storage, `k` vertices per edge; edges sorted ascending and
    // lexicographically ordered.
    flat: Vec<Vertex>,
}

#[derive(Clone, Serialize, Deserialize)]
struct RawHypergraph {
    k: usize,
    n: usize,
    edges: Vec<Vec<Vertex>>,
}

impl TryFrom<RawHypergraph> for Hypergraph {
    type Error = Error;

    fn try_from(raw: RawHypergraph) -> Result<Self> {
        Hypergraph::new(raw.k, raw.n, raw.edges)
    }
}

impl From<Hypergraph> for RawHypergraph {
    fn from(h: Hypergraph) -> Self {
        RawHypergraph {
            k: h.k,
            n: h.n,
            edges: h.edges().map(<[Vertex]>::to_vec).collect(),
        }
    }
}

impl Hypergraph {
    /// Builds a hypergraph, canonicalising edge order. Rejects edges of the
    /// wrong size, repeated or out-of-range vertices, and duplicate edges.
    pub fn new<I, E>(k: usize, n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[Vertex]>,
    {
        check_shape(k, n)?;
        let mut list: Vec<Vec<Vertex>> = Vec::new();
        for e in edges {
            let mut e = e.as_ref().to_vec();
            validate_edge(k, n, &mut e)?;
            list.push(e);
        }
        Self::from_edge_list(k, n, list)
    }

    fn from_edge_list(k: usize, n: usize, mut list: Vec<Vec<Vertex>>) -> Result<Self> {
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(param(format!("duplicate edge {:?}", w[0])));
        }
        Ok(Hypergraph {
            k,
            n,
            flat: list.into_iter().flatten().collect(),
        })
    }

    pub fn empty(k: usize, n: usize) -> Result<Self> {
        check_shape(k, n)?;
        Ok(Hypergraph { k, n, flat: Vec::new() })
    }

    /// Complete k-graph on `n` vertices (no lower bound on `n`).
    pub fn complete(k: usize, n: usize) -> Result<Self> {
        check_shape(k, n)?;
        let mut flat = Vec::new();
        for_each_subset(n, k, |s| flat.extend_from_slice(s));
        Ok(Hypergraph { k, n, flat })
    }

    /// Internal constructor for builders that already produce sorted edges;
    /// sorts the list and rejects duplicates.
    pub(crate) fn from_sorted_edges(k: usize, n: usize, list: Vec<Vec<Vertex>>) -> Result<Self> {
        debug_assert!(list.iter().all(|e| e.len() == k && e.windows(2).all(|w| w[0] < w[1])));
        Self::from_edge_list(k, n, list)
    }

    pub fn uniformity(&self) -> usize {
        self.k
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.flat.len().checked_div(self.k).unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.flat.is_empty()
    }

    /// Edges in canonical order, each sorted ascending.
    pub fn edges(&self) -> impl ExactSizeIterator<Item = &[Vertex]> + '_ {
        self.flat.chunks_exact(self.k)
    }

    pub fn edge(&self, i: usize) -> &[Vertex] {
        &self.flat[i * self.k..(i + 1) * self.k]
    }

    /// Membership test for a sorted k-tuple.
    pub fn has_edge(&self, e: &[Vertex]) -> bool {
        if e.len() != self.k {
            return false;
        }
        let (mut lo, mut hi) = (0, self.edge_count());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.edge(mid).cmp(e) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &v in &self.flat {
            d[v as usize] += 1;
        }
        d
    }

    /// Bitset membership index over all k-subsets of the vertex set.
    pub fn edge_index(&self) -> EdgeIndex {
        let mut idx = EdgeIndex::new(self.n, self.k);
        for e in self.edges() {
            idx.insert_sorted(e);
        }
        idx
    }

    /// Returns a copy with one more edge (sorted or not). Errors if present.
    pub fn with_edge(&self, e: &[Vertex]) -> Result<Self> {
        let mut e = e.to_vec();
        validate_edge(self.k, self.n, &mut e)?;
        let mut list: Vec<Vec<Vertex>> = self.edges().map(<[Vertex]>::to_vec).collect();
        list.push(e);
        Self::from_edge_list(self.k, self.n, list)
    }

    /// Sub-hypergraph spanned by the given subset of edge positions.
    pub fn edge_subgraph(&self, keep: impl Fn(usize) -> bool) -> Self {
        let mut flat = Vec::new();
        for (i, e) in self.edges().enumerate() {
            if keep(i) {
                flat.extend_from_slice(e);
            }
        }
        Hypergraph { k: self.k, n: self.n, flat }
    }

    /// `H[S]`: edges of `H` inside `S`, vertices relabelled `0..|S|` in
    /// increasing order.
    pub fn induced(&self, set: &[Vertex]) -> Result<Self> {
        let mut s = set.to_vec();
        s.sort_unstable();
        s.dedup();
        if let Some(&v) = s.iter().find(|&&v| v as usize >= self.n) {
            return Err(param(format!("vertex {v} out of range for n = {}", self.n)));
        }
        let mut relabel = vec![Vertex::MAX; self.n];
        for (i, &v) in s.iter().enumerate() {
            relabel[v as usize] = i as Vertex;
        }
        let mut flat = Vec::new();
        for e in self.edges() {
            if e.iter().all(|&v| relabel[v as usize] != Vertex::MAX) {
                flat.extend(e.iter().map(|&v| relabel[v as usize]));
            }
        }
        // order-preserving relabelling keeps edges sorted and lex-ordered
        Ok(Hypergraph { k: self.k, n: s.len(), flat })
    }

    /// `H - S = H[V \ S]`.
    pub fn delete(&self, set: &[Vertex]) -> Result<Self> {
        if let Some(&v) = set.iter().find(|&&v| v as usize >= self.n) {
            return Err(param(format!("vertex {v} out of range for n = {}", self.n)));
        }
        let mut drop = vec![false; self.n];
        for &v in set {
            drop[v as usize] = true;
        }
        let keep: Vec<Vertex> = (0..self.n as Vertex).filter(|&v| !drop[v as usize]).collect();
        self.induced(&keep)
    }

    /// k-subsets of `S` that are not edges, lexicographic.
    pub fn missing_edges(&self, set: &[Vertex]) -> Result<Vec<Vec<Vertex>>> {
        let mut s = set.to_vec();
        s.sort_unstable();
        s.dedup();
        if s.len() < self.k {
            return Err(param(format!("|S| = {} is smaller than k = {}", s.len(), self.k)));
        }
        if let Some(&v) = s.iter().find(|&&v| v as usize >= self.n) {
            return Err(param(format!("vertex {v} out of range for n = {}", self.n)));
        }
        let mut out = Vec::new();
        let mut image = vec![0; self.k];
        for_each_subset(s.len(), self.k, |idx| {
            for (slot, &i) in image.iter_mut().zip(idx) {
                *slot = s[i as usize];
            }
            if !self.has_edge(&image) {
                out.push(image.clone());
            }
        });
        Ok(out)
    }

    /// `e(H) / C(n, k)`.
    pub fn density(&self) -> Result<Rational> {
        if self.n < self.k {
            return Err(param(format!("density needs n >= k, got n = {}, k = {}", self.n, self.k)));
        }
        let total = binomial(self.n as u64, self.k as u64) as i128;
        Ok(Rational::new(self.edge_count() as i128, total))
    }

    /// Canonical text serialization (see module docs).
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.k, self.n);
        for e in self.edges() {
            let line: Vec<String> = e.iter().map(u32::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut list = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let perr = |message: String| Error::Parse { line: lineno + 1, message };
            let nums = line
                .split_whitespace()
                .map(|t| t.parse::<u64>().map_err(|_| perr(format!("not a non-negative integer: {t:?}"))))
                .collect::<Result<Vec<u64>>>()?;
            match header {
                None => {
                    if nums.len() != 2 {
                        return Err(perr("header must be `k n`".into()));
                    }
                    let (k, n) = (nums[0] as usize, nums[1] as usize);
                    check_shape(k, n).map_err(|e| perr(e.to_string()))?;
                    header = Some((k, n));
                }
                Some((k, n)) => {
                    if nums.len() != k {
                        return Err(perr(format!("expected {k} vertices, found {}", nums.len())));
                    }
                    let mut e: Vec<Vertex> = nums.iter().map(|&x| x.min(u64::from(Vertex::MAX)) as Vertex).collect();
                    validate_edge(k, n, &mut e).map_err(|err| perr(err.to_string()))?;
                    list.push((e, lineno + 1));
                }
            }
        }
        let (k, n) = header.ok_or(Error::Parse { line: 0, message: "missing `k n` header".into() })?;
        list.sort();
        if let Some(w) = list.windows(2).find(|w| w[0].0 == w[1].0) {
            let line = w[0].1.max(w[1].1);
            return Err(Error::Parse { line, message: format!("duplicate edge {:?}", w[0].0) });
        }
        Ok(Hypergraph {
            k,
            n,
            flat: list.into_iter().flat_map(|(e, _)| e).collect(),
        })
    }
}

fn check_shape(k: usize, n: usize) -> Result<()> {
    if k < 2 {
        return Err(param(format!("uniformity must be at least 2, got {k}")));
    }
    if k > 32 {
        return Err(param(format!("uniformity above 32 is not supported, got {k}")));
    }
    if n > Vertex::MAX as usize / 2 {
        return Err(param(format!("vertex count {n} too large")));
    }
    Ok(())
}

fn validate_edge(k: usize, n: usize, e: &mut [Vertex]) -> Result<()> {
    if e.len() != k {
        return Err(param(format!("edge {e:?} has {} vertices, expected {k}", e.len())));
    }
    e.sort_unstable();
    if let Some(&v) = e.iter().find(|&&v| v as usize >= n) {
        return Err(param(format!("vertex {v} out of range for n = {n}")));
    }
    if e.windows(2).any(|w| w[0] == w[1]) {
        return Err(param(format!("edge {e:?} repeats a vertex")));
    }
    Ok(())
}

impl fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hypergraph(k={}, n={}, edges=", self.k, self.n)?;
        f.debug_list().entries(self.edges()).finish()?;
        write!(f, ")")
    }
}

impl fmt::Display for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for Hypergraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Hypergraph::parse(s)
    }
}

/// Named hypergraph families.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilySpec {
    /// `K_ℓ^(k)`.
    Complete { l: usize, k: usize },
    /// `K_ℓ^(k)` minus its lexicographically last edge.
    CompleteMinus { l: usize, k: usize },
    /// `t` edges on `k + 1` vertices: the `t` lexicographically smallest k-subsets.
    Daisy { t: usize, k: usize },
    /// The ten-edge 3-graph on six vertices.
    S6,
    Custom { graph: Hypergraph },
}

/// Edges of `S6`, 0-based.
pub const S6_EDGES: [[Vertex; 3]; 10] = [
    [0, 1, 2],
    [1, 2, 3],
    [2, 3, 4],
    [3, 4, 0],
    [4, 0, 1],
    [0, 2, 5],
    [1, 3, 5],
    [2, 4, 5],
    [1, 4, 5],
    [0, 3, 5],
];

impl FamilySpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            FamilySpec::Complete { l, k } | FamilySpec::CompleteMinus { l, k } => {
                if k < 2 {
                    return Err(param(format!("k must be at least 2, got {k}")));
                }
                if l <= k {
                    return Err(param(format!("need l > k, got l = {l}, k = {k}")));
                }
            }
            FamilySpec::Daisy { t, k } => {
                if k < 2 {
                    return Err(param(format!("k must be at least 2, got {k}")));
                }
                if t < 1 || t > k + 1 {
                    return Err(param(format!("daisy needs 1 <= t <= k + 1 = {}, got t = {t}", k + 1)));
                }
            }
            FamilySpec::S6 | FamilySpec::Custom { .. } => {}
        }
        Ok(())
    }

    /// Canonical member of the family.
    pub fn build(&self) -> Result<Hypergraph> {
        self.validate()?;
        match self {
            &FamilySpec::Complete { l, k } => Hypergraph::complete(k, l),
            &FamilySpec::CompleteMinus { l, k } => {
                let mut all = subsets(l, k);
                all.pop();
                Hypergraph::from_sorted_edges(k, l, all)
            }
            &FamilySpec::Daisy { t, k } => {
                let mut all = subsets(k + 1, k);
                all.truncate(t);
                Hypergraph::from_sorted_edges(k, k + 1, all)
            }
            FamilySpec::S6 => Hypergraph::new(3, 6, S6_EDGES),
            FamilySpec::Custom { graph } => Ok(graph.clone()),
        }
    }
}

/// Shorthand for [`FamilySpec::build`].
pub fn build_named(spec: &FamilySpec) -> Result<Hypergraph> {
    spec.build()
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Complete { l, k } => write!(f, "K:{l},{k}"),
            FamilySpec::CompleteMinus { l, k } => write!(f, "K-:{l},{k}"),
            FamilySpec::Daisy { t, k } => write!(f, "D:{t},{k}"),
            FamilySpec::S6 => write!(f, "S6"),
            FamilySpec::Custom { graph } => {
                write!(f, "custom(k={},n={},e={})", graph.uniformity(), graph.vertex_count(), graph.edge_count())
            }
        }
    }
}

/// Parses `K:l,k`, `K-:l,k`, `D:t,k` or `S6`. Custom graphs have no short form.
impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("S6") {
            return Ok(FamilySpec::S6);
        }
        let (tag, args) = s
            .split_once(':')
            .ok_or_else(|| param(format!("unrecognised family {s:?}")))?;
        let nums: Vec<usize> = args
            .split(',')
            .map(|x| x.trim().parse::<usize>().map_err(|_| param(format!("bad family parameter {x:?}"))))
            .collect::<Result<_>>()?;
        let [a, b] = nums[..] else {
            return Err(param(format!("family {s:?} needs two parameters")));
        };
        let spec = match tag {
            "K" => FamilySpec::Complete { l: a, k: b },
            "K-" => FamilySpec::CompleteMinus { l: a, k: b },
            "D" => FamilySpec::Daisy { t: a, k: b },
            _ => return Err(param(format!("unrecognised family tag {tag:?}"))),
        };
        spec.validate()?;
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(l: usize, k: usize) -> Hypergraph {
        FamilySpec::Complete { l, k }.build().unwrap()
    }

    #[test]
    fn named_family_sizes() {
        assert_eq!(k(4, 3).edge_count(), 4);
        let s6 = FamilySpec::S6.build().unwrap();
        assert_eq!((s6.vertex_count(), s6.edge_count()), (6, 10));
        let km = FamilySpec::CompleteMinus { l: 5, k: 3 }.build().unwrap();
        assert_eq!(km.edge_count(), 9);
        assert!(!km.has_edge(&[2, 3, 4]));
        let d = FamilySpec::Daisy { t: 2, k: 4 }.build().unwrap();
        assert_eq!((d.vertex_count(), d.edge_count()), (5, 2));
        assert_eq!(d.edge(0), &[0, 1, 2, 3]);
        assert_eq!(d.edge(1), &[0, 1, 2, 4]);
    }

    #[test]
    fn family_parameter_errors() {
        for bad in [
            FamilySpec::Complete { l: 3, k: 3 },
            FamilySpec::CompleteMinus { l: 2, k: 3 },
            FamilySpec::Daisy { t: 0, k: 3 },
            FamilySpec::Daisy { t: 5, k: 3 },
            FamilySpec::Complete { l: 4, k: 1 },
        ] {
            assert!(matches!(bad.build(), Err(Error::Parameter(_))), "{bad:?}");
        }
    }

    #[test]
    fn family_short_forms() {
        for s in ["K:5,3", "K-:7,5", "D:2,4", "S6"] {
            let spec: FamilySpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert!("K:3,3".parse::<FamilySpec>().is_err());
        assert!("Q:1,2".parse::<FamilySpec>().is_err());
        assert!("K:4".parse::<FamilySpec>().is_err());
    }

    #[test]
    fn induced_and_delete() {
        let k5 = k(5, 3);
        assert_eq!(k5.induced(&[0, 2, 3, 4]).unwrap(), k(4, 3));
        assert_eq!(k5.induced(&[0, 1, 2, 3, 4]).unwrap(), k5);
        assert_eq!(k5.delete(&[]).unwrap(), k5);
        assert_eq!(k5.delete(&[1]).unwrap(), k(4, 3));
        let km = FamilySpec::CompleteMinus { l: 5, k: 3 }.build().unwrap();
        for v in [2, 3, 4] {
            assert_eq!(km.delete(&[v]).unwrap(), k(4, 3));
        }
        assert!(k5.induced(&[5]).is_err());
        assert!(k5.delete(&[7]).is_err());
    }

    #[test]
    fn induced_s6_on_first_four() {
        // triples of S6 inside {0,1,2,3}: 012 and 123
        let s6 = FamilySpec::S6.build().unwrap();
        let sub = s6.induced(&[0, 1, 2, 3]).unwrap();
        assert_eq!(sub.edge_count(), 2);
    }

    #[test]
    fn missing_edges_cases() {
        let all: Vec<Vertex> = (0..5).collect();
        assert!(k(5, 3).missing_edges(&all).unwrap().is_empty());
        let empty = Hypergraph::empty(3, 5).unwrap();
        assert_eq!(empty.missing_edges(&all).unwrap().len(), 10);
        assert!(empty.missing_edges(&[0, 1]).is_err());
    }

    #[test]
    fn densities() {
        assert_eq!(k(4, 3).density().unwrap(), Rational::from_integer(1));
        assert_eq!(FamilySpec::S6.build().unwrap().density().unwrap(), Rational::new(1, 2));
        assert_eq!(Hypergraph::empty(3, 7).unwrap().density().unwrap(), Rational::from_integer(0));
        assert!(Hypergraph::empty(3, 2).unwrap().density().is_err());
    }

    #[test]
    fn text_format() {
        let text = "# a comment\n3 5\n4 3 2\n\n0 1 2\n# trailing\n";
        let h = Hypergraph::parse(text).unwrap();
        assert_eq!(h.to_text(), "3 5\n0 1 2\n2 3 4\n");
        assert_eq!(h.edge_count(), 2);

        let dup = "3 5\n0 1 2\n2 1 0\n";
        assert!(matches!(Hypergraph::parse(dup), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(Hypergraph::parse("3 5\n0 1\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(Hypergraph::parse("3 5\n0 1 5\n"), Err(Error::Parse { .. })));
        assert!(matches!(Hypergraph::parse("3 5\n0 0 1\n"), Err(Error::Parse { .. })));
        assert!(matches!(Hypergraph::parse("# nothing\n"), Err(Error::Parse { .. })));
        assert!(matches!(Hypergraph::parse("3 x\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn construction_rejects_duplicates() {
        assert!(Hypergraph::new(3, 4, [[0, 1, 2], [2, 0, 1]]).is_err());
        assert!(Hypergraph::new(3, 4, [[0, 1, 4]]).is_err());
        assert!(Hypergraph::new(3, 4, [[0, 1]]).is_err());
    }

    #[test]
    fn json_round_trip_validates() {
        let h = FamilySpec::S6.build().unwrap();
        let h2: Hypergraph = serde_json_like_round_trip(&h);
        assert_eq!(h, h2);
    }

    // serde without pulling in a format crate: go through the raw form
    fn serde_json_like_round_trip(h: &Hypergraph) -> Hypergraph {
        let raw: RawHypergraph = h.clone().into();
        Hypergraph::try_from(raw).unwrap()
    }
}
