//! Benchmark suites with machine-readable rows.
//!
//! Each row records the instance size, the algorithm, the generator seed,
//! wall-clock time and the algorithm's own count of elementary operations.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use crate::classical::solve_classical_with_stats;
use crate::fast::solve_fast_traced;
use crate::generate::{chain_of_traps_sized, gen_random};
use crate::graph::GameGraph;
use crate::mec::mec_decomposition_traced;

pub const CSV_HEADER: &str = "n,m,algo,seed,wall_ms,work_counter";

/// Player-2 and Büchi fractions used by the random suites.
pub const P2_FRACTION: f64 = 0.5;
pub const BUCHI_FRACTION: f64 = 0.1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    /// Random graphs with `m = n^2 / 4`.
    Dense,
    /// Random graphs with `m = 2n`.
    Sparse,
    /// Chain of traps, a clique of `n / 8` and the rest in gadgets.
    Traps,
}

impl Suite {
    pub fn default_sizes(self) -> Vec<usize> {
        match self {
            Suite::Dense => vec![500, 1000, 2000],
            Suite::Sparse => vec![1000, 4000, 16000],
            Suite::Traps => vec![1000, 2000, 4000],
        }
    }

    /// Edge count the suite asks for at size `n`.
    pub fn target_edges(self, n: usize) -> usize {
        match self {
            Suite::Dense => (n * n / 4).max(n),
            Suite::Sparse => (2 * n).min(n * n),
            Suite::Traps => 0,
        }
    }

    pub fn instance(self, n: usize, seed: u64) -> GameGraph {
        match self {
            Suite::Traps => chain_of_traps_sized(n),
            _ => gen_random(n, self.target_edges(n), P2_FRACTION, BUCHI_FRACTION, seed)
                .expect("suite parameters are feasible"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algo {
    Classical,
    Fast,
    Mec,
}

impl Algo {
    pub const ALL: [Algo; 3] = [Algo::Classical, Algo::Fast, Algo::Mec];

    pub fn name(self) -> &'static str {
        match self {
            Algo::Classical => "classical",
            Algo::Fast => "fast",
            Algo::Mec => "mec",
        }
    }

    /// Runs the algorithm and returns its operation count.
    pub fn work(self, g: &GameGraph) -> u64 {
        match self {
            Algo::Classical => solve_classical_with_stats(g).1.work,
            Algo::Fast => solve_fast_traced(g).1.work,
            Algo::Mec => mec_decomposition_traced(g).1.work,
        }
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algo {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Algo::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| format!("unknown algorithm `{s}`"))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub m: usize,
    pub algo: Algo,
    pub seed: u64,
    pub wall_ms: f64,
    pub work: u64,
}

impl fmt::Display for BenchRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{},{},{},{:.3},{}",
            self.n, self.m, self.algo, self.seed, self.wall_ms, self.work
        )
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub suite: Suite,
    pub sizes: Vec<usize>,
    pub seeds: Vec<u64>,
    pub algos: Vec<Algo>,
}

impl SuiteConfig {
    pub fn new(suite: Suite) -> Self {
        SuiteConfig {
            suite,
            sizes: suite.default_sizes(),
            seeds: vec![1],
            algos: Algo::ALL.to_vec(),
        }
    }
}

pub fn run_one(g: &GameGraph, algo: Algo, seed: u64) -> BenchRow {
    let start = Instant::now();
    let work = algo.work(g);
    BenchRow {
        n: g.n(),
        m: g.edge_count(),
        algo,
        seed,
        wall_ms: start.elapsed().as_secs_f64() * 1e3,
        work,
    }
}

/// Runs every (size, seed, algorithm) combination, calling `emit` per row.
pub fn run_suite(config: &SuiteConfig, mut emit: impl FnMut(&BenchRow)) -> Vec<BenchRow> {
    let mut rows = Vec::new();
    for &n in &config.sizes {
        for &seed in &config.seeds {
            let g = config.suite.instance(n, seed);
            for &algo in &config.algos {
                let row = run_one(&g, algo, seed);
                emit(&row);
                rows.push(row);
            }
        }
    }
    rows
}

/// Least-squares slope of `log(work)` against `log(n)`.
///
/// Returns `None` with fewer than two distinct sizes or non-positive data.
pub fn fit_exponent(points: &[(f64, f64)]) -> Option<f64> {
    if points.iter().any(|&(x, y)| x <= 0.0 || y <= 0.0) {
        return None;
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let k = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / k;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}
