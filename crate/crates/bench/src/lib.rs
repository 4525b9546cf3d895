//! Shared setup for the criterion benches.

use buchi_core::bench::Suite;
use buchi_core::GameGraph;

pub use buchi_core::bench::Algo;

/// Sizes small enough for criterion's repeated sampling.
pub fn bench_sizes(suite: Suite) -> &'static [usize] {
    match suite {
        Suite::Dense => &[250, 500, 1000],
        Suite::Sparse => &[1000, 4000, 16000],
        Suite::Traps => &[500, 1000, 2000],
    }
}

pub fn instances(suite: Suite, seed: u64) -> Vec<(usize, GameGraph)> {
    bench_sizes(suite)
        .iter()
        .map(|&n| (n, suite.instance(n, seed)))
        .collect()
}
