//! Data-parallel evaluation of independent cells.
//!
//! Homology and operator matrices at distinct (degree, weight) cells share no
//! mutable state, so cell sweeps are embarrassingly parallel. With the
//! `parallel` feature (default) sweeps run on rayon; without it the same API
//! runs sequentially. Results are collected into ordered maps keyed by the
//! cell, so both modes produce identical output bit for bit.

use std::collections::BTreeMap;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Applies `f` to every key, in parallel when the `parallel` feature is on.
pub fn map_cells<K, V, F>(keys: Vec<K>, f: F) -> BTreeMap<K, V>
where
    K: Ord + Send + Sync + Clone,
    V: Send,
    F: Fn(&K) -> V + Send + Sync,
{
    #[cfg(feature = "parallel")]
    {
        keys.par_iter()
            .map(|k| (k.clone(), f(k)))
            .collect::<Vec<_>>()
            .into_iter()
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_cells_seq(keys, f)
    }
}

/// Sequential reference path; always available for benchmarks and as the
/// fallback when the `parallel` feature is disabled.
pub fn map_cells_seq<K, V, F>(keys: Vec<K>, f: F) -> BTreeMap<K, V>
where
    K: Ord + Clone,
    F: Fn(&K) -> V,
{
    keys.iter().map(|k| (k.clone(), f(k))).collect()
}

/// Installs a global rayon pool of the requested size. Call once at startup;
/// later calls are ignored (rayon pools cannot be resized). No-op without the
/// `parallel` feature.
pub fn configure_threads(n: usize) {
    #[cfg(feature = "parallel")]
    {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = n;
    }
}
