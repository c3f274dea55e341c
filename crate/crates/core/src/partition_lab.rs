//! Random balanced parts and crossing edges: for `k` disjoint random parts
//! of size `s = n / t0`, an edge is crossing when it meets every part once.
//! Each edge is crossing with probability `k! s^k / (n (n-1) ... (n-k+1))`.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::combin::{factorial, falling};
use crate::error::{param, Result};
use crate::hypercore::{Hypergraph, Vertex};
use crate::par::{map_reduce_range, Schedule};
use crate::surd::serialize_rational;
use crate::Rational;

/// `k` pairwise-disjoint vertex sets of equal size, each sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BalancedParts {
    n: usize,
    parts: Vec<Vec<Vertex>>,
}

impl BalancedParts {
    pub fn new(n: usize, parts: Vec<Vec<Vertex>>) -> Result<Self> {
        let size = parts.first().map_or(0, Vec::len);
        if parts.iter().any(|p| p.len() != size) {
            return Err(param("balanced parts must have equal sizes"));
        }
        let mut seen = vec![false; n];
        let mut parts = parts;
        for p in &mut parts {
            p.sort_unstable();
            for &v in p.iter() {
                let slot = seen
                    .get_mut(v as usize)
                    .ok_or_else(|| param(format!("part vertex {v} out of range for n = {n}")))?;
                if *slot {
                    return Err(param(format!("parts overlap at vertex {v}")));
                }
                *slot = true;
            }
        }
        Ok(BalancedParts { n, parts })
    }

    pub fn parts(&self) -> &[Vec<Vertex>] {
        &self.parts
    }

    pub fn part_size(&self) -> usize {
        self.parts.first().map_or(0, Vec::len)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }
}

fn part_size(n: usize, k: usize, t0: usize) -> Result<usize> {
    if k == 0 {
        return Err(param("need k >= 1"));
    }
    if t0 == 0 || !n.is_multiple_of(t0) {
        return Err(param(format!("t0 = {t0} must divide n = {n}")));
    }
    if t0 < k {
        return Err(param(format!("need t0 >= k, got t0 = {t0}, k = {k}")));
    }
    if n < k {
        return Err(param(format!("need n >= k, got n = {n}, k = {k}")));
    }
    Ok(n / t0)
}

/// Probability that a fixed k-set is crossing for random parts of size `n / t0`.
pub fn crossing_probability(n: usize, k: usize, t0: usize) -> Result<Rational> {
    let s = part_size(n, k, t0)?;
    let overflow = || param(format!("crossing probability for n = {n}, k = {k} overflows"));
    let num = factorial(k as u64)
        .checked_mul((s as u128).checked_pow(k as u32).ok_or_else(overflow)?)
        .ok_or_else(overflow)?;
    let den = falling(n as u64, k as u64);
    let num = i128::try_from(num).map_err(|_| overflow())?;
    let den = i128::try_from(den).map_err(|_| overflow())?;
    Ok(Rational::new(num, den))
}

fn sample_with(n: usize, k: usize, s: usize, rng: &mut ChaCha8Rng) -> BalancedParts {
    let mut vertices: Vec<Vertex> = (0..n as Vertex).collect();
    let (chosen, _) = vertices.partial_shuffle(rng, k * s);
    let parts = chosen
        .chunks(s)
        .map(|c| {
            let mut c = c.to_vec();
            c.sort_unstable();
            c
        })
        .collect();
    BalancedParts { n, parts }
}

/// Uniformly random ordered choice of `k` disjoint parts of size `n / t0`.
pub fn sample_parts(n: usize, k: usize, t0: usize, seed: u64) -> Result<BalancedParts> {
    let s = part_size(n, k, t0)?;
    Ok(sample_with(n, k, s, &mut ChaCha8Rng::seed_from_u64(seed)))
}

/// Number of edges meeting every part in exactly one vertex.
pub fn crossing_count(h: &Hypergraph, parts: &BalancedParts) -> Result<u64> {
    if parts.n != h.vertex_count() {
        return Err(param(format!(
            "parts are over {} vertices, graph has {}",
            parts.n,
            h.vertex_count()
        )));
    }
    if parts.parts.len() != h.uniformity() {
        return Err(param(format!(
            "need {} parts for a {}-graph, got {}",
            h.uniformity(),
            h.uniformity(),
            parts.parts.len()
        )));
    }
    let mut label = vec![u32::MAX; h.vertex_count()];
    for (i, p) in parts.parts.iter().enumerate() {
        for &v in p {
            label[v as usize] = i as u32;
        }
    }
    Ok(count_with_labels(h, &label))
}

fn count_with_labels(h: &Hypergraph, label: &[u32]) -> u64 {
    h.edges()
        .filter(|e| {
            let mut hit = 0u64;
            e.iter().all(|&v| {
                let l = label[v as usize];
                if l == u32::MAX || hit >> l & 1 == 1 {
                    return false;
                }
                hit |= 1 << l;
                true
            })
        })
        .count() as u64
}

#[derive(Clone, Debug, Serialize)]
pub struct ExpectationReport {
    pub n: usize,
    pub k: usize,
    pub t0: usize,
    pub part_size: usize,
    pub edges: usize,
    pub trials: u64,
    pub seed: u64,
    #[serde(serialize_with = "serialize_rational")]
    pub probability: Rational,
    #[serde(serialize_with = "serialize_rational")]
    pub exact_expectation: Rational,
    pub empirical_mean: f64,
    pub standard_error: f64,
    /// `None` when every trial gave the same count, so the error is zero.
    pub z_score: Option<f64>,
}

/// Monte-Carlo estimate of the expected crossing count. Trial `i` draws from
/// ChaCha8 seeded with `seed` on stream `i`, so the result does not depend on
/// the schedule.
pub fn expectation_check(h: &Hypergraph, t0: usize, trials: u64, seed: u64) -> Result<ExpectationReport> {
    expectation_check_with(h, t0, trials, seed, Schedule::default())
}

pub fn expectation_check_with(
    h: &Hypergraph,
    t0: usize,
    trials: u64,
    seed: u64,
    schedule: Schedule,
) -> Result<ExpectationReport> {
    if trials == 0 {
        return Err(param("need at least one trial"));
    }
    let (n, k) = (h.vertex_count(), h.uniformity());
    let s = part_size(n, k, t0)?;
    let probability = crossing_probability(n, k, t0)?;
    let exact_expectation = probability * Rational::from_integer(h.edge_count() as i128);

    let (sum, sum_sq) = map_reduce_range(
        schedule,
        trials,
        (0u128, 0u128),
        |i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i);
            let parts = sample_with(n, k, s, &mut rng);
            let mut label = vec![u32::MAX; n];
            for (j, p) in parts.parts.iter().enumerate() {
                for &v in p {
                    label[v as usize] = j as u32;
                }
            }
            let c = u128::from(count_with_labels(h, &label));
            (c, c * c)
        },
        |a, b| (a.0 + b.0, a.1 + b.1),
    );

    let t = trials as f64;
    let mean = sum as f64 / t;
    let variance = if trials > 1 {
        ((sum_sq as f64 - (sum as f64) * (sum as f64) / t) / (t - 1.0)).max(0.0)
    } else {
        0.0
    };
    let standard_error = (variance / t).sqrt();
    let expected = *exact_expectation.numer() as f64 / *exact_expectation.denom() as f64;
    let z_score = (standard_error > 0.0).then(|| (mean - expected) / standard_error);
    Ok(ExpectationReport {
        n,
        k,
        t0,
        part_size: s,
        edges: h.edge_count(),
        trials,
        seed,
        probability,
        exact_expectation,
        empirical_mean: mean,
        standard_error,
        z_score,
    })
}

/// Crossing counts over every ordered choice of `k` disjoint parts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Enumeration {
    pub choices: u64,
    pub total_crossing: u64,
    pub min_crossing: u64,
    pub max_crossing: u64,
}

impl Enumeration {
    pub fn mean(&self) -> Rational {
        Rational::new(self.total_crossing as i128, self.choices as i128)
    }
}

/// Exhausts all ordered part choices; intended for small `n`.
pub fn enumerate_part_choices(h: &Hypergraph, t0: usize) -> Result<Enumeration> {
    let (n, k) = (h.vertex_count(), h.uniformity());
    let s = part_size(n, k, t0)?;
    let mut caps = vec![s; k];
    caps.push(n - k * s);
    let mut label = vec![u32::MAX; n];
    let mut out = Enumeration {
        choices: 0,
        total_crossing: 0,
        min_crossing: u64::MAX,
        max_crossing: 0,
    };
    assign(h, 0, &mut caps, &mut label, &mut out);
    Ok(out)
}

fn assign(h: &Hypergraph, v: usize, caps: &mut [usize], label: &mut [u32], out: &mut Enumeration) {
    if v == label.len() {
        let c = count_with_labels(h, label);
        out.choices += 1;
        out.total_crossing += c;
        out.min_crossing = out.min_crossing.min(c);
        out.max_crossing = out.max_crossing.max(c);
        return;
    }
    let outside = caps.len() - 1;
    for l in 0..caps.len() {
        if caps[l] == 0 {
            continue;
        }
        caps[l] -= 1;
        label[v] = if l == outside { u32::MAX } else { l as u32 };
        assign(h, v + 1, caps, label, out);
        caps[l] += 1;
    }
}
