//! The classical iterative Büchi solver.
//!
//! Each round computes the player-1 attractor of the surviving Büchi
//! vertices; whatever cannot reach them is a player-1 closed trap free of
//! Büchi vertices, so its player-2 attractor is removed. The game ends when
//! every survivor reaches the Büchi set.

use crate::attractor::{attractor, AttractorResult, Strategy};
use crate::graph::{GameGraph, Owner, VertexId, VertexSet};

/// Winning regions of both players plus a player-1 witness strategy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WinningPartition {
    /// Vertices winning for player 1 (Büchi).
    pub w1: VertexSet,
    /// Vertices winning for player 2 (coBüchi).
    pub w2: VertexSet,
    /// Memoryless winning strategy, defined on every player-1 vertex of `w1`.
    pub strategy1: Strategy,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClassicalStats {
    /// Number of attractor rounds, including the final one that removes nothing.
    pub iterations: usize,
    /// Elementary operations: vertex scans plus inedge touches.
    pub work: u64,
    /// Sizes of the removed sets, in removal order.
    pub removed: Vec<usize>,
}

pub fn solve_classical(g: &GameGraph) -> WinningPartition {
    solve_classical_with_stats(g).0
}

pub fn solve_classical_with_stats(g: &GameGraph) -> (WinningPartition, ClassicalStats) {
    let mut scratch = g.clone();
    let mut stats = ClassicalStats::default();
    let mut lost = vec![false; g.n()];

    loop {
        stats.iterations += 1;
        let reach = attractor(&scratch, Owner::Player1, scratch.buchi_vertices(), &scratch);
        stats.work += reach.work() + scratch.alive_count() as u64;
        let trap: Vec<VertexId> = scratch
            .alive_vertices()
            .filter(|&v| !reach.contains(v))
            .collect();
        if trap.is_empty() {
            let strategy1 = survivor_strategy(&scratch, &reach);
            let w2 = VertexSet::from_mask(&lost);
            let w1 = scratch.alive_vertices().collect();
            return (WinningPartition { w1, w2, strategy1 }, stats);
        }
        let removed = attractor(&scratch, Owner::Player2, trap, &scratch);
        stats.work += removed.work();
        let removed = removed.members();
        for v in &removed {
            lost[v.index()] = true;
        }
        stats.removed.push(removed.len());
        scratch
            .remove_vertices(removed.iter())
            .expect("attractor members are alive");
    }
}

/// Attractor strategy for player 1 inside a known winning region `w1`:
/// every player-1 vertex moves towards the Büchi vertices of `w1`.
pub fn winning_strategy(g: &GameGraph, w1: &VertexSet) -> Strategy {
    let mut inside = g.clone();
    let outside: Vec<VertexId> = g.alive_vertices().filter(|&v| !w1.contains(v)).collect();
    inside
        .remove_vertices(outside)
        .expect("alive vertices can be removed");
    let reach = attractor(&inside, Owner::Player1, inside.buchi_vertices(), &inside);
    survivor_strategy(&inside, &reach)
}

/// Attractor strategy on the surviving graph, where `reach` covers every
/// survivor. Büchi vertices of player 1 pick any surviving successor.
pub(crate) fn survivor_strategy(survivors: &GameGraph, reach: &AttractorResult) -> Strategy {
    let mut strategy = Strategy::new(survivors.n());
    for v in survivors.alive_vertices() {
        if survivors.owner(v) != Owner::Player1 {
            continue;
        }
        let choice = reach
            .strategy(v)
            .or_else(|| survivors.successors(v).next())
            .expect("survivors keep an outedge");
        strategy.set(v, choice);
    }
    strategy
}
