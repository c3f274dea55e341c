//! Execution schedules for the data-parallel scans.
//!
//! Every helper here returns the same value under both schedules; the
//! parallel variants only change how the work is spread over threads.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Schedule {
    Serial,
    /// Rayon work-stealing when the `parallel` feature is enabled; serial otherwise.
    #[default]
    Parallel,
}

impl Schedule {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Schedule::Parallel
    }
}

/// Applies `f` to every item, preserving order.
pub fn map<T, R, F>(schedule: Schedule, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if schedule.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = schedule;
    items.iter().map(f).collect()
}

/// The first `Some` in item order, regardless of which worker finds it first.
pub fn find_map_first<T, R, F>(schedule: Schedule, items: &[T], f: F) -> Option<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Option<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if schedule.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().find_map_first(f);
    }
    let _ = schedule;
    items.iter().find_map(f)
}

/// Maps every index of `0..len` and folds the results with an associative,
/// commutative `combine`.
pub fn map_reduce_range<R, M, C>(schedule: Schedule, len: u64, identity: R, map: M, combine: C) -> R
where
    R: Send + Sync + Clone,
    M: Fn(u64) -> R + Sync + Send,
    C: Fn(R, R) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if schedule.is_parallel() {
        use rayon::prelude::*;
        return (0..len)
            .into_par_iter()
            .map(map)
            .reduce(|| identity.clone(), &combine);
    }
    let _ = schedule;
    (0..len).map(map).fold(identity, combine)
}
