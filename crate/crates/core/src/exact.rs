//! Exact Turán numbers `ex(n, F)` by branch and bound.
//!
//! The search walks the lexicographic list of all `C(n, k)` candidate edges,
//! branching include-first. An include is kept only if no copy of `F`
//! passes through the new edge, and a branch is cut when the edges chosen
//! so far plus every undecided candidate cannot beat the incumbent.
//! Two further bounds come from smaller Turán numbers: once the search is
//! inside the block of candidates whose least vertex is `a`, every later
//! block lies inside `{a+1, .., n-1}` and can contribute at most
//! `ex(n-a-1, F)` edges, and everything from vertex `a` on spans at most
//! `ex(n-a, F)`. These values are computed first by recursive calls.
//!
//! Among optimal graphs the one returned is the first found in search
//! order, which is the lexicographically smallest edge list. The parallel
//! schedule splits the tree into a fixed frontier of independent subtrees,
//! so its value, witness and node count do not depend on the thread count.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::combin::{binomial, subsets, EdgeIndex, Ranker};
use crate::embed::ForcedMatcher;
use crate::error::{param, Error, Result};
use crate::hypercore::{Hypergraph, Vertex};
use crate::par::{self, Schedule};

pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Depth of the frontier the parallel schedule splits at.
const SPLIT_DEPTH: usize = 10;

/// Node cap of the serial warm-up that seeds the parallel incumbent.
const WARM_UP_NODES: u64 = 20_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TuranResult {
    pub n: usize,
    pub pattern: Hypergraph,
    /// `ex(n, F)` when `exhausted`, otherwise the best lower bound found.
    pub value: u64,
    pub witness: Hypergraph,
    pub nodes_explored: u64,
    pub exhausted: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub budget: u64,
    pub schedule: Schedule,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: DEFAULT_BUDGET,
            schedule: Schedule::default(),
        }
    }
}

pub fn turan_number(n: usize, pattern: &Hypergraph, budget: u64) -> Result<TuranResult> {
    turan_number_with(n, pattern, SearchOptions { budget, ..Default::default() })
}

pub fn turan_number_with(n: usize, pattern: &Hypergraph, opts: SearchOptions) -> Result<TuranResult> {
    if opts.budget == 0 {
        return Err(param("node budget must be positive"));
    }
    let k = pattern.uniformity();
    if pattern.is_empty() && pattern.vertex_count() <= n {
        return Err(param("an edgeless pattern on at most n vertices is contained in every n-vertex graph"));
    }
    // bottom-up: each size reuses the exact values of all smaller sizes
    let mut sub_ex: Vec<u64> = (0..n as u64).map(|m| binomial(m, k as u64) as u64).collect();
    let mut sub_nodes = 0;
    for m in pattern.vertex_count()..n {
        let (witness, nodes, exhausted) = search(m, pattern, opts, &sub_ex[..m]);
        sub_nodes += nodes;
        if !exhausted {
            break;
        }
        sub_ex[m] = witness.len() as u64;
    }
    let (chosen, nodes, exhausted) = search(n, pattern, opts, &sub_ex);
    let candidates = subsets(n, k);
    let witness = Hypergraph::from_sorted_edges(k, n, chosen.iter().map(|&i| candidates[i].clone()).collect())?;
    Ok(TuranResult {
        n,
        pattern: pattern.clone(),
        value: witness.edge_count() as u64,
        witness,
        nodes_explored: nodes + sub_nodes,
        exhausted,
    })
}

/// One branch-and-bound run; returns chosen candidate positions, nodes and
/// whether the search completed within budget.
fn search(n: usize, pattern: &Hypergraph, opts: SearchOptions, sub_ex: &[u64]) -> (Vec<usize>, u64, bool) {
    let tree = Tree::new(n, pattern, opts.budget, sub_ex.to_vec());
    match opts.schedule {
        Schedule::Serial => {
            let mut st = tree.root_state();
            tree.dfs(&mut st, 0);
            (st.best.unwrap_or_default(), st.nodes, !st.aborted)
        }
        Schedule::Parallel => tree.split_search(opts.schedule),
    }
}

/// An `F`-free graph with `ex(n, F)` edges, or [`Error::Incomplete`] if the
/// default budget does not suffice.
pub fn extremal_witness(n: usize, pattern: &Hypergraph) -> Result<Hypergraph> {
    let res = turan_number(n, pattern, DEFAULT_BUDGET)?;
    if !res.exhausted {
        return Err(Error::Incomplete { budget: DEFAULT_BUDGET });
    }
    Ok(res.witness)
}

/// Adds candidate edges in a seeded random order whenever they keep the
/// graph `F`-free. The result is maximal: every missing edge creates a copy.
pub fn random_maximal_free(n: usize, pattern: &Hypergraph, seed: u64) -> Result<Hypergraph> {
    let k = pattern.uniformity();
    let mut order = subsets(n, k);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    order.shuffle(&mut rng);
    let matcher = ForcedMatcher::new(pattern);
    let mut index = EdgeIndex::new(n, k);
    let mut kept = Vec::new();
    for e in order {
        let r = index.ranker().rank_sorted(&e);
        index.set_rank(r, true);
        if matcher.copy_through(&index, n, &e).is_some() {
            index.set_rank(r, false);
        } else {
            kept.push(e);
        }
    }
    Hypergraph::from_sorted_edges(k, n, kept)
}

struct Tree {
    n: usize,
    k: usize,
    candidates: Vec<Vec<Vertex>>,
    ranks: Vec<u64>,
    // per candidate: its least vertex, and where that vertex's block starts and ends
    lead: Vec<usize>,
    block_start: Vec<usize>,
    block_end: Vec<usize>,
    sub_ex: Vec<u64>,
    matcher: ForcedMatcher,
    cap: u64,
}

struct State {
    index: EdgeIndex,
    chosen: Vec<usize>,
    nodes: u64,
    cap: u64,
    best: Option<Vec<usize>>,
    // edges in the incumbent; -1 before anything is recorded
    best_value: i64,
    aborted: bool,
}

/// Outcome of one frontier subtree.
struct Subtree {
    best: Option<Vec<usize>>,
    nodes: u64,
    aborted: bool,
}

impl Tree {
    fn new(n: usize, pattern: &Hypergraph, cap: u64, sub_ex: Vec<u64>) -> Self {
        let k = pattern.uniformity();
        let candidates = subsets(n, k);
        let ranker = Ranker::new(n, k);
        let ranks = candidates.iter().map(|e| ranker.rank_sorted(e)).collect();
        debug_assert_eq!(candidates.len() as u128, binomial(n as u64, k as u64));
        let lead: Vec<usize> = candidates.iter().map(|e| e[0] as usize).collect();
        let block_start = lead.iter().map(|&a| lead.partition_point(|&b| b < a)).collect();
        let block_end = lead.iter().map(|&a| lead.partition_point(|&b| b <= a)).collect();
        Tree {
            n,
            k,
            candidates,
            ranks,
            lead,
            block_start,
            block_end,
            sub_ex,
            matcher: ForcedMatcher::new(pattern),
            cap,
        }
    }

    fn root_state(&self) -> State {
        State {
            index: EdgeIndex::new(self.n, self.k),
            chosen: Vec::new(),
            nodes: 0,
            cap: self.cap,
            best: None,
            best_value: -1,
            aborted: false,
        }
    }

    /// Tentatively sets candidate `idx`; keeps it iff no copy runs through it.
    #[inline]
    fn try_include(&self, st: &mut State, idx: usize) -> bool {
        st.index.set_rank(self.ranks[idx], true);
        if self.matcher.copy_through(&st.index, self.n, &self.candidates[idx]).is_some() {
            st.index.set_rank(self.ranks[idx], false);
            false
        } else {
            true
        }
    }

    /// Upper bound on the final edge count of any completion.
    #[inline]
    fn bound(&self, st: &State, idx: usize) -> usize {
        let count = st.chosen.len();
        let mut bound = count + (self.candidates.len() - idx);
        if idx < self.candidates.len() {
            let a = self.lead[idx];
            let rest = (self.block_end[idx] - idx) + self.sub_ex[self.n - a - 1] as usize;
            bound = bound.min(count + rest);
            if a > 0 {
                let before = st.chosen.partition_point(|&c| c < self.block_start[idx]);
                bound = bound.min(before + self.sub_ex[self.n - a] as usize);
            }
        }
        bound
    }

    #[inline]
    fn hopeless(&self, st: &State, idx: usize) -> bool {
        self.bound(st, idx) as i64 <= st.best_value
    }

    fn dfs(&self, st: &mut State, idx: usize) {
        st.nodes += 1;
        if st.nodes > st.cap {
            st.aborted = true;
            return;
        }
        if self.hopeless(st, idx) {
            return;
        }
        if idx == self.candidates.len() {
            st.best_value = st.chosen.len() as i64;
            st.best = Some(st.chosen.clone());
            return;
        }
        if self.try_include(st, idx) {
            st.chosen.push(idx);
            self.dfs(st, idx + 1);
            st.chosen.pop();
            st.index.set_rank(self.ranks[idx], false);
            if st.aborted {
                return;
            }
        }
        self.dfs(st, idx + 1);
    }

    /// Incumbent from a short serial prefix of the search. It is the first
    /// graph in search order reaching its value, so seeding the subtrees with
    /// it leaves the tie-break unchanged.
    fn warm_up(&self) -> (Vec<usize>, u64) {
        let mut st = self.root_state();
        st.cap = self.cap.min(WARM_UP_NODES);
        self.dfs(&mut st, 0);
        (st.best.unwrap_or_default(), st.nodes)
    }

    fn frontier(&self, st: &mut State, idx: usize, depth: usize, out: &mut Vec<Vec<usize>>) {
        if self.hopeless(st, idx) {
            return;
        }
        if idx == depth {
            out.push(st.chosen.clone());
            return;
        }
        st.nodes += 1;
        if self.try_include(st, idx) {
            st.chosen.push(idx);
            self.frontier(st, idx + 1, depth, out);
            st.chosen.pop();
            st.index.set_rank(self.ranks[idx], false);
        }
        self.frontier(st, idx + 1, depth, out);
    }

    fn subtree(&self, prefix: &[usize], depth: usize, incumbent: i64) -> Subtree {
        let mut st = self.root_state();
        for &i in prefix {
            st.index.set_rank(self.ranks[i], true);
        }
        st.chosen = prefix.to_vec();
        st.best_value = incumbent;
        self.dfs(&mut st, depth);
        Subtree {
            best: st.best,
            nodes: st.nodes,
            aborted: st.aborted,
        }
    }

    /// Warm-up incumbent, then independent subtrees below a fixed frontier.
    fn split_search(&self, schedule: Schedule) -> (Vec<usize>, u64, bool) {
        let (seed, warm_nodes) = self.warm_up();
        let incumbent = seed.len() as i64;
        let depth = SPLIT_DEPTH.min(self.candidates.len());
        let mut st = self.root_state();
        st.best_value = incumbent;
        let mut prefixes = Vec::new();
        self.frontier(&mut st, 0, depth, &mut prefixes);

        let results = par::map(schedule, &prefixes, |p| self.subtree(p, depth, incumbent));

        let mut nodes = warm_nodes + st.nodes;
        let mut aborted = false;
        let mut best = seed;
        for r in results {
            nodes += r.nodes;
            aborted |= r.aborted;
            // strictly better only: earlier subtrees win ties
            if let Some(b) = r.best {
                if b.len() > best.len() {
                    best = b;
                }
            }
        }
        (best, nodes, !aborted && nodes <= self.cap)
    }
}
