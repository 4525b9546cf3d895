//! Solvers for two-player Büchi games on graphs.
//!
//! * [`solve_classical`]: the iterative attractor algorithm, `O(n·m)`.
//! * [`solve_fast`]: level-view search for separating cuts, `O(n^2)`.
//! * [`mec_decomposition`]: maximal end-components in `O(n^2)`.
//! * [`DecrementalSolver`] / [`IncrementalSolver`]: winning sets under
//!   player-1 edge deletions or insertions, `O(n·m)` in total.
//!
//! The [`oracle`] module holds brute-force references for small graphs.

pub mod attractor;
pub mod bench;
pub mod classical;
pub mod fast;
pub mod format;
pub mod generate;
pub mod graph;
pub mod level;
pub mod mec;
pub mod oracle;
pub mod progress;
pub mod replay;

pub use attractor::{
    attractor, is_closed, verify_buchi_strategy, AttractorResult, Strategy, StrategyError,
};
pub use classical::{
    solve_classical, solve_classical_with_stats, winning_strategy, ClassicalStats, WinningPartition,
};
pub use fast::{
    find_candidate_set, solve_fast, solve_fast_traced, Candidate, FastIteration, FastTrace,
};
pub use format::{parse_game, parse_trace, render_game, render_trace, FormatError, TraceEvent};
pub use generate::{chain_of_traps, gen_bounded, gen_random, GenError};
pub use graph::{EdgeView, GameGraph, GraphError, Owner, VertexId, VertexSet};
pub use level::{level_count, Color, LevelView};
pub use mec::{mec_decomposition, mec_decomposition_traced, naive_mec, MecDecomposition, MecTrace};
pub use oracle::{maxvisit_oracle, oracle_buchi, oracle_mec, OracleError};
pub use progress::{
    colift_at, least_fixpoint, lift_at, DecrementalSolver, IncrementalSolver, Operator, PmValue,
    ProgressMeasure,
};
pub use replay::{replay_trace, Mode, ReplayError};
