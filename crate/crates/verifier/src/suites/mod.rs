//! Suite implementations, grouped by the layer they exercise.

pub(crate) mod burnside;
pub(crate) mod free_group;
pub(crate) mod ideals;
pub(crate) mod rank;
pub(crate) mod series;

use burnside_core::rng::SplitMix64;
use rayon::prelude::*;

/// FNV-1a hash of the suite id, used to give every suite an independent
/// seed stream.
pub(crate) fn salt(id: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in id.as_bytes() {
        h ^= *b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// Deterministic per-sample generator: depends only on `(seed, suite, i)`,
/// never on evaluation order.
pub(crate) fn rng_for(seed: u64, suite_salt: u64, index: u64) -> SplitMix64 {
    SplitMix64::new(seed).fork(suite_salt).fork(index)
}

/// Evaluate samples in parallel, collecting results in index order so the
/// report is independent of the thread schedule.
pub(crate) fn par_map<T: Send, F: Fn(u32) -> T + Sync + Send>(n: u32, f: F) -> Vec<T> {
    (0..n).into_par_iter().map(f).collect()
}

/// An issue found by one sample: label plus reproducing text.
pub(crate) type Issue = (String, String);
