//! Edge bookkeeping for the six-part construction, its limiting density as a
//! cubic form in the part shares `x` (four parts) and `y` (two parts), and the
//! maximum of that form on `4x + 2y = 1`.

use std::cmp::Ordering;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::constructions::{
    allowed_triples, bipartite_g_edge_count, iterated_blowup_s6_edge_count, SixPartH, SixPartParams,
    X_PAIR_RULES, Y_PAIR_RULES,
};
use crate::criteria::de_caen_bound;
use crate::error::{Error, Result};
use crate::hypercore::S6_EDGES;
use crate::surd::{serialize_rational, QuadraticSurd};
use crate::Rational;

/// Parts 1, 2, 4, 5 have share `x`, parts 3 and 6 share `y`.
const IS_Y_PART: [bool; 6] = [false, false, true, false, false, true];

/// Homogeneous cubic `x3·x³ + x2y·x²y + xy2·xy² + y3·y³`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DensityPolynomial {
    #[serde(serialize_with = "serialize_rational")]
    pub x3: Rational,
    #[serde(serialize_with = "serialize_rational")]
    pub x2y: Rational,
    #[serde(serialize_with = "serialize_rational")]
    pub xy2: Rational,
    #[serde(serialize_with = "serialize_rational")]
    pub y3: Rational,
}

impl DensityPolynomial {
    fn zero() -> Self {
        let z = Rational::zero();
        DensityPolynomial { x3: z, x2y: z, xy2: z, y3: z }
    }

    // adds `c · x^(3-ys) · y^ys`
    fn add_term(&mut self, y_power: usize, c: Rational) {
        match y_power {
            0 => self.x3 += c,
            1 => self.x2y += c,
            2 => self.xy2 += c,
            3 => self.y3 += c,
            _ => unreachable!("cubic form"),
        }
    }

    /// Coefficients by power of `y`, from `x³` to `y³`.
    pub fn coefficients(&self) -> [Rational; 4] {
        [self.x3, self.x2y, self.xy2, self.y3]
    }

    pub fn eval(&self, x: Rational, y: Rational) -> Rational {
        self.x3 * x * x * x + self.x2y * x * x * y + self.xy2 * x * y * y + self.y3 * y * y * y
    }

    pub fn eval_f64(&self, x: f64, y: f64) -> f64 {
        let c = self.coefficients().map(to_f64);
        c[0] * x * x * x + c[1] * x * x * y + c[2] * x * y * y + c[3] * y * y * y
    }

    /// The cubic in `x` obtained by substituting `y = (1 - 4x) / 2`,
    /// coefficients from constant term upward.
    pub fn reduced_cubic(&self) -> [Rational; 4] {
        let y = [Rational::new(1, 2), Rational::from_integer(-2)];
        let x = [Rational::zero(), Rational::one()];
        let mut out = [Rational::zero(); 4];
        for (y_power, c) in self.coefficients().into_iter().enumerate() {
            let mut term = vec![c];
            for _ in 0..y_power {
                term = poly_mul(&term, &y);
            }
            for _ in y_power..3 {
                term = poly_mul(&term, &x);
            }
            for (slot, t) in out.iter_mut().zip(term) {
                *slot += t;
            }
        }
        out
    }
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, &p) in a.iter().enumerate() {
        for (j, &q) in b.iter().enumerate() {
            out[i + j] += p * q;
        }
    }
    out
}

fn to_f64(q: Rational) -> f64 {
    QuadraticSurd::from_rational(q).to_f64()
}

/// Limit of `e(S6*(n)) / n³`: each level contributes `e(S6)/6³` of the
/// cube and recurses into six parts of a sixth, so `c = e/216 + 6c/216`.
pub fn s6_star_cubic_coefficient() -> Rational {
    let e = S6_EDGES.len() as i128;
    Rational::new(e, 216 - 6)
}

/// Leading coefficient of `(n-1) n (2n-1) / 3`.
pub fn bipartite_g_cubic_coefficient() -> Rational {
    Rational::new(2, 3)
}

/// Limit of `e(H) / C(n, 3)` for the six-part construction with part sizes
/// `xn, xn, yn, xn, xn, yn`, assembled layer by layer.
pub fn h_density_poly() -> DensityPolynomial {
    let mut p = DensityPolynomial::zero();
    let ys = |parts: &[usize]| parts.iter().filter(|&&i| IS_Y_PART[i]).count();
    // each layer's n³ coefficient, scaled by 6 for C(n, 3) ~ n³/6
    let six = Rational::from_integer(6);
    let half = Rational::new(1, 2);

    for t in allowed_triples() {
        p.add_term(ys(&t), six);
    }
    // C(zn, 2) · wn ~ z² w n³ / 2
    for (pair, thirds) in Y_PAIR_RULES {
        for w in thirds {
            p.add_term(2 * ys(&[pair]) + ys(&[w]), six * half);
        }
    }
    for (pair, thirds) in X_PAIR_RULES {
        for w in thirds {
            p.add_term(2 * ys(&[pair]) + ys(&[w]), six * half);
        }
    }
    for part in 0..6 {
        p.add_term(3 * ys(&[part]), six * s6_star_cubic_coefficient());
    }
    for _ in 0..2 {
        p.add_term(0, six * bipartite_g_cubic_coefficient());
    }
    p
}

/// Exact edge count of the six-part construction from its part sizes and the
/// edge counts of the embedded `S6*` copies (per part) and `G` copies (per pair).
pub fn exact_count(p: &SixPartParams, s6_edge_counts: &[u64; 6], g_edge_counts: &[u64; 2]) -> u64 {
    let s = p.sizes().map(|v| v as u64);
    let pairs = |v: u64| v * v.saturating_sub(1) / 2;
    let transversal: u64 = allowed_triples().iter().map(|t| t.iter().map(|&i| s[i]).product::<u64>()).sum();
    let y_pairs: u64 = Y_PAIR_RULES
        .iter()
        .map(|(pair, thirds)| pairs(s[*pair]) * thirds.iter().map(|&w| s[w]).sum::<u64>())
        .sum();
    let x_pairs: u64 = X_PAIR_RULES
        .iter()
        .map(|(pair, thirds)| pairs(s[*pair]) * thirds.iter().map(|&w| s[w]).sum::<u64>())
        .sum();
    transversal + y_pairs + x_pairs + s6_edge_counts.iter().sum::<u64>() + g_edge_counts.iter().sum::<u64>()
}

/// [`exact_count`] with the closed-form sub-counts.
pub fn exact_count_closed_form(p: &SixPartParams) -> u64 {
    let sizes = p.sizes();
    let s6 = sizes.map(iterated_blowup_s6_edge_count);
    let g = [bipartite_g_edge_count(sizes[0]), bipartite_g_edge_count(sizes[3])];
    exact_count(p, &s6, &g)
}

/// Checks the bookkeeping count against a built construction.
pub fn reconcile(built: &SixPartH) -> Result<u64> {
    let expected = exact_count_closed_form(&built.params);
    let actual = built.graph.edge_count() as u64;
    if expected != actual || built.layers.total() != actual {
        return Err(Error::Consistency(format!(
            "six-part count mismatch: bookkeeping {expected}, layers {}, graph {actual}",
            built.layers.total()
        )));
    }
    Ok(actual)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OptimumMethod {
    InteriorStationaryPoint,
    Endpoint,
}

#[derive(Clone, Debug, Serialize)]
pub struct Candidate {
    pub x: QuadraticSurd,
    pub value: QuadraticSurd,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct GoldenSection {
    pub x: f64,
    pub value: f64,
    /// Value within `1e-9` of the exact optimum.
    pub agrees: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct OptimumResult {
    pub x_star: f64,
    pub y_star: f64,
    pub value: f64,
    pub exact_x: QuadraticSurd,
    pub exact_y: QuadraticSurd,
    pub exact_value: QuadraticSurd,
    pub method: OptimumMethod,
    /// Constant term first.
    #[serde(serialize_with = "serialize_cubic")]
    pub reduced_cubic: [Rational; 4],
    pub candidates: Vec<Candidate>,
    pub golden_section: GoldenSection,
}

fn serialize_cubic<S: serde::Serializer>(c: &[Rational; 4], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(c.iter().map(|q| q.to_string()))
}

fn eval_cubic(c: &[Rational; 4], x: QuadraticSurd) -> QuadraticSurd {
    c.iter()
        .rev()
        .fold(QuadraticSurd::from_rational(Rational::zero()), |acc, &q| {
            acc * x + QuadraticSurd::from_rational(q)
        })
}

fn eval_cubic_f64(c: &[Rational; 4], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &q| acc * x + to_f64(q))
}

/// Maximizes `poly` over `x, y ≥ 0`, `4x + 2y = 1`: reduces to a cubic on
/// `[0, 1/4]`, solves the derivative exactly and compares with the endpoints.
pub fn maximize_constrained(poly: &DensityPolynomial) -> OptimumResult {
    let c = poly.reduced_cubic();
    let lo = Rational::zero();
    let hi = Rational::new(1, 4);
    let inside = |x: &QuadraticSurd| {
        *x >= QuadraticSurd::from_rational(lo) && *x <= QuadraticSurd::from_rational(hi)
    };

    // derivative a x² + b x + d
    let (a, b, d) = (c[3] * Rational::from_integer(3), c[2] * Rational::from_integer(2), c[1]);
    let mut stationary = Vec::new();
    if !a.is_zero() {
        let disc = b * b - Rational::from_integer(4) * a * d;
        if disc >= Rational::zero() {
            let root = QuadraticSurd::sqrt(disc);
            let inv = Rational::one() / (Rational::from_integer(2) * a);
            for sign in [-1, 1] {
                let x = (QuadraticSurd::from_rational(-b) + root * Rational::from_integer(sign)) * inv;
                stationary.push(x);
            }
        }
    } else if !b.is_zero() {
        stationary.push(QuadraticSurd::from_rational(-d / b));
    }
    stationary.retain(|x| inside(x));
    stationary.dedup();

    let mut candidates: Vec<(QuadraticSurd, OptimumMethod)> = vec![
        (QuadraticSurd::from_rational(lo), OptimumMethod::Endpoint),
        (QuadraticSurd::from_rational(hi), OptimumMethod::Endpoint),
    ];
    candidates.extend(stationary.into_iter().map(|x| (x, OptimumMethod::InteriorStationaryPoint)));
    let evaluated: Vec<(Candidate, OptimumMethod)> = candidates
        .into_iter()
        .map(|(x, m)| (Candidate { x, value: eval_cubic(&c, x) }, m))
        .collect();
    let (best, method) = evaluated
        .iter()
        .max_by(|p, q| match p.0.value.cmp(&q.0.value) {
            // prefer the interior point on ties
            Ordering::Equal => (p.1 == OptimumMethod::InteriorStationaryPoint)
                .cmp(&(q.1 == OptimumMethod::InteriorStationaryPoint)),
            o => o,
        })
        .map(|(cand, m)| (cand.clone(), *m))
        .expect("endpoints are always candidates");

    let exact_y = QuadraticSurd::from_rational(Rational::new(1, 2)) - best.x * Rational::from_integer(2);
    let golden = golden_section_max(|x| eval_cubic_f64(&c, x), 0.0, 0.25);
    let value = best.value.to_f64();
    OptimumResult {
        x_star: best.x.to_f64(),
        y_star: exact_y.to_f64(),
        value,
        exact_x: best.x,
        exact_y,
        exact_value: best.value,
        method,
        reduced_cubic: c,
        candidates: evaluated.into_iter().map(|(cand, _)| cand).collect(),
        golden_section: GoldenSection {
            x: golden.0,
            value: golden.1,
            agrees: (golden.1 - value).abs() <= 1e-9,
        },
    }
}

/// Derivative of the reduced cubic at `x`.
pub fn reduced_derivative(poly: &DensityPolynomial, x: f64) -> f64 {
    let c = poly.reduced_cubic().map(to_f64);
    c[1] + 2.0 * c[2] * x + 3.0 * c[3] * x * x
}

fn golden_section_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - ratio * (b - a);
    let mut x2 = a + ratio * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..200 {
        if b - a < 1e-15 {
            break;
        }
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + ratio * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - ratio * (b - a);
            f1 = f(x1);
        }
    }
    let x = (a + b) / 2.0;
    (x, f(x))
}

#[derive(Clone, Debug, Serialize)]
pub struct ReferenceBound {
    pub name: &'static str,
    pub description: &'static str,
    pub value: QuadraticSurd,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReferenceBounds {
    /// Chung–Lu lower bound for `K5⁻`: `(3+√17)/12`.
    pub chung_lu: QuadraticSurd,
    /// Flag-algebra upper bound for `K4`: `0.5615`.
    pub baber: QuadraticSurd,
    /// Lower bound for `K5⁻` by Balogh, Clemen and Lidický: `0.58656`.
    pub bcl: QuadraticSurd,
    /// de Caen upper bound `1 - 1/C(3, 2)` for `K4`.
    pub de_caen_k4: QuadraticSurd,
}

impl ReferenceBounds {
    pub fn table(&self) -> Vec<ReferenceBound> {
        vec![
            ReferenceBound {
                name: "chung_lu",
                description: "K5- lower bound (Chung-Lu)",
                value: self.chung_lu,
            },
            ReferenceBound {
                name: "baber",
                description: "K4 upper bound (Baber)",
                value: self.baber,
            },
            ReferenceBound {
                name: "bcl",
                description: "K5- lower bound (Balogh-Clemen-Lidicky)",
                value: self.bcl,
            },
            ReferenceBound {
                name: "de_caen_k4",
                description: "K4 upper bound (de Caen)",
                value: self.de_caen_k4,
            },
        ]
    }
}

pub fn reference_bounds() -> ReferenceBounds {
    let r = QuadraticSurd::from_rational;
    ReferenceBounds {
        chung_lu: (r(Rational::from_integer(3)) + QuadraticSurd::sqrt(Rational::from_integer(17)))
            * Rational::new(1, 12),
        baber: r(Rational::new(1123, 2000)),
        bcl: r(Rational::new(1833, 3125)),
        de_caen_k4: r(de_caen_bound(4, 3).expect("m > k")),
    }
}
