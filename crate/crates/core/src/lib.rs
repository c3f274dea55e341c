//! Verification and search toolkit for separating hypergraph Turán densities.
//!
//! The crate is organised around a small immutable [`Hypergraph`] type:
//!
//! - [`hypercore`]: representation, named families, text format, induced
//!   subgraphs and densities;
//! - [`embed`]: containment ("copy of F") and freeness scans;
//! - [`exact`]: exact small Turán numbers by branch and bound;
//! - [`criteria`]: the two separation conditions and their verdicts;
//! - [`constructions`]: blow-ups, the iterated blow-up of `S6`, the bipartite
//!   3-graph `G`, the six-part `K5⁻`-free construction and matching augmentation;
//! - [`densopt`]: exact edge bookkeeping and the constrained cubic optimum;
//! - [`partition_lab`]: balanced random parts and crossing-edge expectations.
//!
//! Heavy scans run through [`Schedule`]; with the `parallel` feature (on by
//! default) `Schedule::Parallel` uses rayon, otherwise it falls back to the
//! sequential path. Both schedules produce identical results.

pub mod combin;
pub mod constructions;
pub mod criteria;
pub mod densopt;
pub mod embed;
mod error;
pub mod exact;
pub mod hypercore;
pub mod par;
pub mod partition_lab;
pub mod surd;

pub use error::{Error, Result};
pub use hypercore::{FamilySpec, Hypergraph, Vertex};
pub use par::Schedule;

/// Exact rational used for densities, probabilities and polynomial coefficients.
pub type Rational = num_rational::Ratio<i128>;
