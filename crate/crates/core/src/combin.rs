//! Binomial coefficients, colex ranking of k-subsets and a bitset edge index.

use crate::hypercore::Vertex;

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
    }
    acc
}

/// Falling factorial `n (n-1) ... (n-k+1)`.
pub fn falling(n: u64, k: u64) -> u128 {
    (0..k).map(|i| u128::from(n.saturating_sub(i))).product()
}

pub fn factorial(n: u64) -> u128 {
    (1..=n).map(u128::from).product()
}

/// Calls `f` on every `r`-subset of `0..n` in lexicographic order.
pub fn for_each_subset(n: usize, r: usize, mut f: impl FnMut(&[Vertex])) {
    if r > n {
        return;
    }
    let mut cur: Vec<Vertex> = (0..r as Vertex).collect();
    loop {
        f(&cur);
        let mut i = r;
        while i > 0 && cur[i - 1] as usize == n - r + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        i -= 1;
        cur[i] += 1;
        for j in i + 1..r {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// All `r`-subsets of `0..n`, lexicographic.
pub fn subsets(n: usize, r: usize) -> Vec<Vec<Vertex>> {
    let mut out = Vec::new();
    for_each_subset(n, r, |s| out.push(s.to_vec()));
    out
}

/// Table of `C(v, i)` for colex ranking k-subsets of `0..n`.
#[derive(Clone, Debug)]
pub struct Ranker {
    k: usize,
    // table[i][v] = C(v, i + 1)
    table: Vec<Vec<u64>>,
    total: u64,
}

impl Ranker {
    pub fn new(n: usize, k: usize) -> Self {
        let table = (0..k)
            .map(|i| (0..n.max(1)).map(|v| binomial(v as u64, i as u64 + 1) as u64).collect())
            .collect();
        Ranker {
            k,
            table,
            total: binomial(n as u64, k as u64) as u64,
        }
    }

    /// Number of k-subsets, i.e. the rank range.
    pub fn total(&self) -> u64 {
        self.total
    }

    /// Contribution `C(v, slot + 1)` of vertex `v` at position `slot`.
    #[inline]
    pub fn term(&self, slot: usize, v: Vertex) -> u64 {
        self.table[slot][v as usize]
    }

    /// Colex rank of a strictly increasing k-tuple.
    #[inline]
    pub fn rank_sorted(&self, set: &[Vertex]) -> u64 {
        debug_assert_eq!(set.len(), self.k);
        set.iter()
            .enumerate()
            .map(|(i, &v)| self.table[i][v as usize])
            .sum()
    }

    /// Colex rank of distinct vertices in any order.
    #[inline]
    pub fn rank_unsorted(&self, set: &[Vertex]) -> u64 {
        let mut buf = [0 as Vertex; 32];
        let s = &mut buf[..set.len()];
        s.copy_from_slice(set);
        insertion_sort(s);
        self.rank_sorted(s)
    }
}

#[inline]
fn insertion_sort(s: &mut [Vertex]) {
    for i in 1..s.len() {
        let mut j = i;
        while j > 0 && s[j - 1] > s[j] {
            s.swap(j - 1, j);
            j -= 1;
        }
    }
}

/// Membership table for the edges of a k-graph, one bit per k-subset.
#[derive(Clone, Debug)]
pub struct EdgeIndex {
    ranker: Ranker,
    bits: Vec<u64>,
}

impl EdgeIndex {
    pub fn new(n: usize, k: usize) -> Self {
        let ranker = Ranker::new(n, k);
        let words = (ranker.total() as usize).div_ceil(64);
        EdgeIndex {
            ranker,
            bits: vec![0; words],
        }
    }

    pub fn ranker(&self) -> &Ranker {
        &self.ranker
    }

    #[inline]
    pub fn contains_rank(&self, r: u64) -> bool {
        self.bits[(r >> 6) as usize] >> (r & 63) & 1 == 1
    }

    #[inline]
    pub fn set_rank(&mut self, r: u64, on: bool) {
        let w = &mut self.bits[(r >> 6) as usize];
        if on {
            *w |= 1 << (r & 63);
        } else {
            *w &= !(1 << (r & 63));
        }
    }

    #[inline]
    pub fn contains_sorted(&self, set: &[Vertex]) -> bool {
        self.contains_rank(self.ranker.rank_sorted(set))
    }

    #[inline]
    pub fn contains_unsorted(&self, set: &[Vertex]) -> bool {
        self.contains_rank(self.ranker.rank_unsorted(set))
    }

    pub fn insert_sorted(&mut self, set: &[Vertex]) {
        let r = self.ranker.rank_sorted(set);
        self.set_rank(r, true);
    }
}
