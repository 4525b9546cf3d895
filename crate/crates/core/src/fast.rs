//! Quadratic Büchi solver based on hierarchical level views.
//!
//! After an initial classical round, every outer iteration searches the
//! level views `1, 2, ...` for the first one in which some vertex cannot
//! reach the Büchi set or a high-degree vertex. That set is a player-1
//! closed, Büchi-free set with only white player-1 vertices, hence winning
//! for player 2, and its player-2 attractor is removed. Stopping at level
//! `i >= 2` guarantees at least `2^(i-1)` vertices in the set, which pays
//! for the `O(2^i n)` spent on the views.

use crate::attractor::{attractor, AttractorResult};
use crate::classical::{survivor_strategy, WinningPartition};
use crate::graph::{EdgeView, GameGraph, Owner, VertexId, VertexSet};
use crate::level::{level_count, Color, LevelView};

/// Builds the Büchi level view `E_i` of the current surviving graph.
pub fn build_level_view(g: &GameGraph, level: u32) -> LevelView<'_> {
    LevelView::buchi(g, level)
}

/// Outcome of one inner search.
#[derive(Clone, Debug)]
pub struct Candidate {
    /// Vertices that cannot reach the Büchi set or the coloured vertices.
    pub set: VertexSet,
    /// Level at which the search stopped.
    pub stop_level: u32,
    pub work: u64,
}

/// Searches levels `1..=L` for the first non-empty candidate set.
///
/// The search always executes level `L`, where the view is the full graph.
pub fn find_candidate_set(g: &GameGraph) -> Candidate {
    search(g).0
}

fn search(g: &GameGraph) -> (Candidate, AttractorResult) {
    let top = level_count(g.n());
    let mut work = 0u64;
    let mut level = 1;
    loop {
        let view = LevelView::buchi(g, level);
        work += view.work();
        let targets = g.alive_vertices().filter(|&v| {
            g.is_buchi(v)
                || match view.color(v) {
                    Color::Blue => true,
                    Color::Orange => view.out_degree(v) == 0,
                    Color::White => false,
                }
        });
        let reach = attractor(g, Owner::Player1, targets, &view);
        work += reach.work() + g.alive_count() as u64;
        let set: VertexSet = g.alive_vertices().filter(|&v| !reach.contains(v)).collect();
        if !set.is_empty() || level >= top {
            let candidate = Candidate {
                set,
                stop_level: level,
                work,
            };
            return (candidate, reach);
        }
        level += 1;
    }
}

/// Whether `set` induces a separating cut in `view`.
///
/// (a) only player-2 vertices of the set have view-edges leaving it,
/// (b) every player-2 vertex has a view-edge into the set,
/// (c) every player-1 vertex is white, (d) no Büchi vertex belongs to it.
pub fn is_separating_cut(g: &GameGraph, view: &LevelView<'_>, set: &VertexSet) -> bool {
    let inside = set.to_mask(g.n());
    set.iter().all(|v| {
        if g.is_buchi(v) {
            return false;
        }
        match g.owner(v) {
            Owner::Player1 => {
                view.color(v) == Color::White && view.successors(v).all(|w| inside[w.index()])
            }
            Owner::Player2 => view.successors(v).any(|w| inside[w.index()]),
        }
    })
}

/// One outer iteration of the solver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FastIteration {
    /// Level at which the inner search stopped; 0 for the initial round.
    pub stop_level: u32,
    /// Size of the candidate set (the separating cut).
    pub candidate_size: usize,
    /// Size of its player-2 attractor, i.e. the vertices removed.
    pub removed: usize,
    /// Survivors at the start of the iteration.
    pub alive_before: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FastTrace {
    /// Every outer iteration in order. The last entry is the final search
    /// that found nothing (`removed == 0`).
    pub iterations: Vec<FastIteration>,
    /// Elementary operations: view construction plus attractor work.
    pub work: u64,
}

pub fn solve_fast(g: &GameGraph) -> WinningPartition {
    solve_fast_traced(g).0
}

pub fn solve_fast_traced(g: &GameGraph) -> (WinningPartition, FastTrace) {
    let mut scratch = g.clone();
    let mut trace = FastTrace::default();
    let mut lost = vec![false; g.n()];

    let reach = attractor(&scratch, Owner::Player1, scratch.buchi_vertices(), &scratch);
    trace.work += reach.work() + scratch.alive_count() as u64;
    let trap: Vec<VertexId> = scratch
        .alive_vertices()
        .filter(|&v| !reach.contains(v))
        .collect();
    let first = remove_attractor(
        &mut scratch,
        trap.iter().copied(),
        &mut lost,
        &mut trace.work,
    );
    trace.iterations.push(FastIteration {
        stop_level: 0,
        candidate_size: trap.len(),
        removed: first,
        alive_before: g.alive_count(),
    });

    loop {
        let alive_before = scratch.alive_count();
        let (candidate, reach) = search(&scratch);
        trace.work += candidate.work;
        if candidate.set.is_empty() {
            trace.iterations.push(FastIteration {
                stop_level: candidate.stop_level,
                candidate_size: 0,
                removed: 0,
                alive_before,
            });
            let strategy1 = survivor_strategy(&scratch, &reach);
            let w1 = scratch.alive_vertices().collect();
            let w2 = VertexSet::from_mask(&lost);
            return (WinningPartition { w1, w2, strategy1 }, trace);
        }
        let removed = remove_attractor(
            &mut scratch,
            candidate.set.iter(),
            &mut lost,
            &mut trace.work,
        );
        trace.iterations.push(FastIteration {
            stop_level: candidate.stop_level,
            candidate_size: candidate.set.len(),
            removed,
            alive_before,
        });
    }
}

fn remove_attractor(
    g: &mut GameGraph,
    seed: impl IntoIterator<Item = VertexId>,
    lost: &mut [bool],
    work: &mut u64,
) -> usize {
    let attr = attractor(g, Owner::Player2, seed, g);
    *work += attr.work();
    let removed = attr.members();
    for v in &removed {
        lost[v.index()] = true;
    }
    g.remove_vertices(removed.iter())
        .expect("attractor members are alive");
    removed.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::attractor::verify_buchi_strategy;
    use crate::classical::solve_classical;
    use crate::graph::fixtures::*;

    #[test]
    fn fixtures_match_expected_partitions() {
        let p = solve_fast(&f1());
        assert_eq!(p.w1, set(&[0]));
        let p = solve_fast(&f2());
        assert_eq!((p.w1, p.w2), (set(&[]), set(&[0, 1, 2])));
        let p = solve_fast(&f3());
        assert_eq!(p.w1, set(&[0, 1]));
    }

    #[test]
    fn candidate_on_winning_graphs_is_empty_at_top() {
        for g in [f1(), f3()] {
            let c = find_candidate_set(&g);
            assert!(c.set.is_empty());
            assert_eq!(c.stop_level, level_count(g.n()));
        }
    }

    #[test]
    fn candidate_on_f2_is_a_separating_cut() {
        let g = f2();
        let c = find_candidate_set(&g);
        assert!(!c.set.is_empty());
        assert!(c.set.contains(v(2)));
        let view = build_level_view(&g, c.stop_level);
        assert!(is_separating_cut(&g, &view, &c.set));
        let top = build_level_view(&g, level_count(g.n()));
        assert!(is_separating_cut(&g, &top, &c.set));
    }

    #[test]
    fn separating_cut_conditions() {
        let g = f2();
        let top = build_level_view(&g, level_count(g.n()));
        assert!(is_separating_cut(&g, &top, &set(&[2])));
        assert!(!is_separating_cut(&g, &top, &set(&[0])));
        let g = f3();
        let top = build_level_view(&g, level_count(g.n()));
        assert!(!is_separating_cut(&g, &top, &set(&[1])));
    }

    #[test]
    fn agrees_with_classical_on_chain_of_traps() {
        let g = crate::generate::chain_of_traps(20, 6);
        let classical = solve_classical(&g);
        let (fast, trace) = solve_fast_traced(&g);
        assert_eq!(fast.w1, classical.w1);
        assert_eq!(fast.w1.len(), 6);
        assert!(trace.iterations.len() > 15);
        assert_eq!(
            verify_buchi_strategy(&g, &fast.w1, &fast.strategy1),
            Ok(true)
        );
    }
}
