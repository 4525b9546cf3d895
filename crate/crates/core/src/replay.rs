//! Replaying update traces through the dynamic solvers.

use thiserror::Error;

use crate::format::TraceEvent;
use crate::graph::{GameGraph, GraphError, VertexSet};
use crate::progress::{DecrementalSolver, IncrementalSolver};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Decremental,
    Incremental,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("event {index}: `{event}` does not match a {mode:?} trace")]
    MixedTrace {
        index: usize,
        event: TraceEvent,
        mode: Mode,
    },
    #[error("event {index}: {source}")]
    Solver {
        index: usize,
        #[source]
        source: GraphError,
    },
}

/// Applies `trace` to `g` and returns the winning set seen at each `query`.
///
/// The whole trace is checked against `mode` before any update runs.
pub fn replay_trace(
    g: &GameGraph,
    trace: &[TraceEvent],
    mode: Mode,
) -> Result<Vec<VertexSet>, ReplayError> {
    for (index, &event) in trace.iter().enumerate() {
        let fits = matches!(
            (event, mode),
            (TraceEvent::Query, _)
                | (TraceEvent::Delete(..), Mode::Decremental)
                | (TraceEvent::Insert(..), Mode::Incremental)
        );
        if !fits {
            return Err(ReplayError::MixedTrace { index, event, mode });
        }
    }

    let mut answers = Vec::new();
    match mode {
        Mode::Decremental => {
            let mut solver = DecrementalSolver::new(g.clone());
            for (index, &event) in trace.iter().enumerate() {
                match event {
                    TraceEvent::Delete(u, v) => {
                        solver
                            .delete(u, v)
                            .map_err(|source| ReplayError::Solver { index, source })?;
                    }
                    _ => answers.push(solver.winning_set()),
                }
            }
        }
        Mode::Incremental => {
            let mut solver = IncrementalSolver::new(g.clone());
            for (index, &event) in trace.iter().enumerate() {
                match event {
                    TraceEvent::Insert(u, v) => {
                        solver
                            .insert(u, v)
                            .map_err(|source| ReplayError::Solver { index, source })?;
                    }
                    _ => answers.push(solver.winning_set()),
                }
            }
        }
    }
    Ok(answers)
}
