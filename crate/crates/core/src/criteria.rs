//! Decision procedures for the two separation conditions on a pair `F' ⊆ F`
//! of k-graphs, `F` on `m` vertices:
//!
//! 1. `ex(m, F') + ∏_{i=0}^{k-1} ⌊(m+i)/k⌋ < e(F)`;
//! 2. for every assignment of `V(F)` into parts `V_1, .., V_k` (parts may be
//!    empty) in which every edge meets `V_1`, some `j ≥ 2` has `F' ⊆ F - V_j`.
//!
//! Either condition implies `π(F') < π(F)`.

use std::sync::OnceLock;

use serde::Serialize;

use crate::combin::binomial;
use crate::embed::contains;
use crate::error::{param, Error, Result};
use crate::exact::{turan_number_with, SearchOptions};
use crate::hypercore::{Hypergraph, Vertex};
use crate::par::{self, Schedule};
use crate::Rational;

/// Largest `v(F)` accepted by the partition enumerator.
pub const MAX_CONDITION2_VERTICES: usize = 20;

/// `∏_{i=0}^{k-1} ⌊(m+i)/k⌋`, the largest number of crossing edges a
/// balanced k-partition of `m` vertices can carry.
pub fn floor_product(m: usize, k: usize) -> Result<u64> {
    if k < 1 || m < k {
        return Err(param(format!("floor product needs m >= k >= 1, got m = {m}, k = {k}")));
    }
    Ok((0..k).map(|i| ((m + i) / k) as u64).product())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Condition1 {
    pub m: usize,
    pub k: usize,
    /// `ex(m, F')`; absent when the search ran out of budget.
    pub ex_value: Option<u64>,
    pub floor_product: u64,
    pub e_f: usize,
    /// `None` means unknown (oracle not exhausted).
    pub holds: Option<bool>,
    pub nodes_explored: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Condition2 {
    pub holds: bool,
    /// The enumeration-first violating partition `[V_1, .., V_k]`.
    pub counterexample: Option<Vec<Vec<Vertex>>>,
    /// Canonical partitions (every edge meeting `V_1`) examined up to the
    /// verdict.
    pub partitions_checked: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Separated,
    NotEstablished,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeparationReport {
    pub condition1: Condition1,
    pub condition2: Condition2,
    pub verdict: Verdict,
    /// Which conditions hold, by number.
    pub via: Vec<u8>,
}

fn check_pair(host: &Hypergraph, sub: &Hypergraph) -> Result<()> {
    if host.uniformity() != sub.uniformity() {
        return Err(param(format!(
            "uniformity mismatch: F is {}-uniform, F' is {}-uniform",
            host.uniformity(),
            sub.uniformity()
        )));
    }
    if contains(host, sub)?.is_none() {
        return Err(Error::Precondition("F' is not a subgraph of F".into()));
    }
    Ok(())
}

pub fn check_condition1(host: &Hypergraph, sub: &Hypergraph, budget: u64) -> Result<Condition1> {
    check_condition1_with(host, sub, SearchOptions { budget, ..Default::default() })
}

pub fn check_condition1_with(host: &Hypergraph, sub: &Hypergraph, opts: SearchOptions) -> Result<Condition1> {
    check_pair(host, sub)?;
    let (m, k) = (host.vertex_count(), host.uniformity());
    if m <= k {
        return Err(Error::Precondition(format!("condition 1 needs v(F) = {m} > k = {k}")));
    }
    let fp = floor_product(m, k)?;
    let res = turan_number_with(m, sub, opts)?;
    let ex_value = res.exhausted.then_some(res.value);
    Ok(Condition1 {
        m,
        k,
        ex_value,
        floor_product: fp,
        e_f: host.edge_count(),
        holds: ex_value.map(|ex| ex + fp < host.edge_count() as u64),
        nodes_explored: res.nodes_explored,
    })
}

pub fn check_condition2(host: &Hypergraph, sub: &Hypergraph) -> Result<Condition2> {
    check_condition2_with(host, sub, Schedule::default())
}

/// Enumerates assignments as base-k counters (vertex 0 most significant,
/// label 0 = `V_1`), keeping one representative per relabelling of parts
/// `2..k`: labels `≥ 1` appear in first-use order. The representative is
/// the lexicographically least member of its class, so the first violator
/// found is also the first violator of the unreduced enumeration.
pub fn check_condition2_with(host: &Hypergraph, sub: &Hypergraph, schedule: Schedule) -> Result<Condition2> {
    check_pair(host, sub)?;
    let m = host.vertex_count();
    if m > MAX_CONDITION2_VERTICES {
        return Err(param(format!(
            "condition 2 enumeration supports v(F) <= {MAX_CONDITION2_VERTICES}, got {m}"
        )));
    }
    let enumerator = Enumerator::new(host, sub);
    let mut prefixes = Vec::new();
    let depth = m.min(4);
    enumerator.prefixes(Node::root(host.uniformity()), depth, &mut prefixes);
    let results = par::map(schedule, &prefixes, |p| {
        let mut leaves = 0;
        let found = enumerator.first_violation(p.clone(), &mut leaves);
        (leaves, found)
    });
    let mut checked = 0;
    for (leaves, found) in results {
        checked += leaves;
        if let Some(node) = found {
            return Ok(Condition2 {
                holds: false,
                counterexample: Some(enumerator.parts(&node)),
                partitions_checked: checked,
            });
        }
    }
    Ok(Condition2 {
        holds: true,
        counterexample: None,
        partitions_checked: checked,
    })
}

/// Re-verifies a reported counterexample from scratch: the parts partition
/// `V(F)`, every edge meets `V_1`, and `F' ⊄ F - V_j` for every `j ≥ 2`.
pub fn is_counterexample(host: &Hypergraph, sub: &Hypergraph, parts: &[Vec<Vertex>]) -> Result<bool> {
    let k = host.uniformity();
    if parts.len() != k {
        return Ok(false);
    }
    let mut seen = vec![0usize; host.vertex_count()];
    for p in parts {
        for &v in p {
            if v as usize >= host.vertex_count() {
                return Ok(false);
            }
            seen[v as usize] += 1;
        }
    }
    if seen.iter().any(|&c| c != 1) {
        return Ok(false);
    }
    if !host.edges().all(|e| e.iter().any(|v| parts[0].contains(v))) {
        return Ok(false);
    }
    for p in &parts[1..] {
        if contains(&host.delete(p)?, sub)?.is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug)]
struct Node {
    next: usize,
    labels: Vec<u8>,
    masks: Vec<u64>,
    max_label: u8,
}

impl Node {
    fn root(k: usize) -> Self {
        Node {
            next: 0,
            labels: Vec::new(),
            masks: vec![0; k],
            max_label: 0,
        }
    }
}

struct Enumerator<'a> {
    host: &'a Hypergraph,
    sub: &'a Hypergraph,
    k: usize,
    m: usize,
    // edges (as vertex masks) grouped by their largest vertex
    closing: Vec<Vec<u64>>,
    // F' ⊆ F - S, memoised by the vertex mask S
    memo: Vec<OnceLock<bool>>,
}

impl<'a> Enumerator<'a> {
    fn new(host: &'a Hypergraph, sub: &'a Hypergraph) -> Self {
        let m = host.vertex_count();
        let mut closing = vec![Vec::new(); m];
        for e in host.edges() {
            let mask = e.iter().fold(0u64, |acc, &v| acc | 1 << v);
            closing[*e.last().expect("non-empty edge") as usize].push(mask);
        }
        Enumerator {
            host,
            sub,
            k: host.uniformity(),
            m,
            closing,
            memo: (0..1usize << m).map(|_| OnceLock::new()).collect(),
        }
    }

    fn children(&self, node: &Node) -> impl Iterator<Item = Node> + '_ {
        let v = node.next;
        let top = (node.max_label as usize + 1).min(self.k - 1) as u8;
        let node = node.clone();
        (0..=top).filter_map(move |label| {
            let mut child = node.clone();
            child.labels.push(label);
            child.masks[label as usize] |= 1 << v;
            child.max_label = child.max_label.max(label);
            child.next += 1;
            let v1 = child.masks[0];
            self.closing[v].iter().all(|&e| e & v1 != 0).then_some(child)
        })
    }

    fn prefixes(&self, node: Node, depth: usize, out: &mut Vec<Node>) {
        if node.next == depth {
            out.push(node);
            return;
        }
        for child in self.children(&node) {
            self.prefixes(child, depth, out);
        }
    }

    fn first_violation(&self, node: Node, leaves: &mut u64) -> Option<Node> {
        if node.next == self.m {
            *leaves += 1;
            return (!self.passes(&node)).then_some(node);
        }
        self.children(&node).find_map(|c| self.first_violation(c, leaves))
    }

    fn passes(&self, node: &Node) -> bool {
        node.masks[1..]
            .iter()
            .any(|&part| part == 0 || self.contained_after_removing(part))
    }

    fn contained_after_removing(&self, mask: u64) -> bool {
        *self.memo[mask as usize].get_or_init(|| {
            let removed: Vec<Vertex> = (0..self.m as Vertex).filter(|&v| mask >> v & 1 == 1).collect();
            let rest = self.host.delete(&removed).expect("vertices in range");
            contains(&rest, self.sub).expect("same uniformity").is_some()
        })
    }

    fn parts(&self, node: &Node) -> Vec<Vec<Vertex>> {
        node.masks
            .iter()
            .map(|&mask| (0..self.m as Vertex).filter(|&v| mask >> v & 1 == 1).collect())
            .collect()
    }
}

pub fn separate(host: &Hypergraph, sub: &Hypergraph, budget: u64) -> Result<SeparationReport> {
    separate_with(host, sub, SearchOptions { budget, ..Default::default() })
}

pub fn separate_with(host: &Hypergraph, sub: &Hypergraph, opts: SearchOptions) -> Result<SeparationReport> {
    let condition1 = check_condition1_with(host, sub, opts)?;
    let condition2 = check_condition2_with(host, sub, opts.schedule)?;
    let mut via = Vec::new();
    if condition1.holds == Some(true) {
        via.push(1);
    }
    if condition2.holds {
        via.push(2);
    }
    let verdict = if via.is_empty() { Verdict::NotEstablished } else { Verdict::Separated };
    Ok(SeparationReport {
        condition1,
        condition2,
        verdict,
        via,
    })
}

/// `1 - 1/C(m-1, k-1)`, the upper bound on `π(K_m^(k))`.
pub fn de_caen_bound(m: usize, k: usize) -> Result<Rational> {
    if k < 2 || m <= k {
        return Err(param(format!("de Caen bound needs m > k >= 2, got m = {m}, k = {k}")));
    }
    let c = binomial(m as u64 - 1, k as u64 - 1) as i128;
    Ok(Rational::from_integer(1) - Rational::new(1, c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::DEFAULT_BUDGET;
    use crate::hypercore::FamilySpec;

    fn fam(s: &str) -> Hypergraph {
        s.parse::<FamilySpec>().unwrap().build().unwrap()
    }

    #[test]
    fn floor_products() {
        for k in 2..8 {
            assert_eq!(floor_product(k + 1, k).unwrap(), 2);
            assert_eq!(floor_product(k, k).unwrap(), 1);
        }
        assert_eq!(floor_product(7, 3).unwrap(), 12);
        assert!(floor_product(2, 3).is_err());
    }

    #[test]
    fn condition1_examples() {
        let c = check_condition1(&fam("D:4,4"), &fam("D:2,4"), DEFAULT_BUDGET).unwrap();
        assert_eq!((c.ex_value, c.floor_product, c.e_f, c.holds), (Some(1), 2, 4, Some(true)));
        let c = check_condition1(&fam("K:4,3"), &fam("K:4,3"), DEFAULT_BUDGET).unwrap();
        assert_eq!((c.ex_value, c.holds), (Some(3), Some(false)));
    }

    #[test]
    fn condition1_unknown_when_budget_runs_out() {
        let opts = SearchOptions { budget: 3, schedule: Schedule::Serial };
        let c = check_condition1_with(&fam("K:6,3"), &fam("K:4,3"), opts).unwrap();
        assert_eq!(c.holds, None);
        assert_eq!(c.ex_value, None);
    }

    #[test]
    fn preconditions() {
        assert!(matches!(check_condition2(&fam("K:4,3"), &fam("K:5,3")), Err(Error::Precondition(_))));
        assert!(matches!(check_condition1(&fam("S6"), &fam("K:4,3"), 100), Err(Error::Precondition(_))));
        assert!(matches!(check_condition2(&fam("K:5,3"), &fam("K:5,4")), Err(Error::Parameter(_))));
    }

    #[test]
    fn condition2_cliques() {
        assert!(check_condition2(&fam("K:5,3"), &fam("K:4,3")).unwrap().holds);
        assert!(check_condition2(&fam("K-:6,4"), &fam("K:5,4")).unwrap().holds);
    }

    #[test]
    fn condition2_fails_for_k5_minus_over_k4() {
        let (f, fp) = (fam("K-:5,3"), fam("K:4,3"));
        let c = check_condition2(&f, &fp).unwrap();
        assert!(!c.holds);
        let parts = c.counterexample.unwrap();
        let sizes: Vec<usize> = parts.iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![3, 1, 1]);
        // the missing edge {2,3,4} is V_1
        assert_eq!(parts[0], vec![2, 3, 4]);
        assert!(is_counterexample(&f, &fp, &parts).unwrap());
    }

    #[test]
    fn separate_examples() {
        let r = separate(&fam("K:5,3"), &fam("K:4,3"), DEFAULT_BUDGET).unwrap();
        assert_eq!(r.verdict, Verdict::Separated);
        assert_eq!(r.via, vec![2]);
        let r = separate(&fam("D:4,4"), &fam("D:2,4"), DEFAULT_BUDGET).unwrap();
        assert!(r.via.contains(&1));
        let r = separate(&fam("K-:5,3"), &fam("K:4,3"), DEFAULT_BUDGET).unwrap();
        assert_eq!(r.verdict, Verdict::NotEstablished);
    }

    #[test]
    fn de_caen() {
        assert_eq!(de_caen_bound(4, 3).unwrap(), Rational::new(2, 3));
        assert_eq!(de_caen_bound(5, 3).unwrap(), Rational::new(5, 6));
        assert_eq!(de_caen_bound(6, 4).unwrap(), Rational::new(9, 10));
        assert!(de_caen_bound(3, 3).is_err());
    }
}
