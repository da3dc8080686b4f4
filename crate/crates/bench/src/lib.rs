//! Fixed inputs shared by the benchmarks.

use umbral_core::random::Sampler;
use umbral_core::TruncatedSeries;

pub const SEED: u64 = 0x5eed;

/// A random series and a random delta series of the given order.
pub fn series_pair(order: usize) -> (TruncatedSeries, TruncatedSeries) {
    let mut s = Sampler::for_tag(SEED, "bench");
    (s.series(order), s.delta_series(order))
}
