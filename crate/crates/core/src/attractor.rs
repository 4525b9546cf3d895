//! Alternating attractors, closed sets and strategy certificates.

use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::{EdgeView, GameGraph, Owner, VertexId, VertexSet, NIL};

/// Result of an attractor computation.
///
/// `rank(v)` is the first stage of the backward induction that contains `v`;
/// targets have rank 0. For members owned by the attracting player that are
/// not targets, `strategy(v)` is a successor of strictly smaller rank.
#[derive(Clone, Debug)]
pub struct AttractorResult {
    member: Vec<bool>,
    rank: Vec<u32>,
    strategy: Vec<u32>,
    size: usize,
    work: u64,
}

impl AttractorResult {
    pub fn contains(&self, v: VertexId) -> bool {
        self.member[v.index()]
    }

    pub fn rank(&self, v: VertexId) -> Option<u32> {
        let r = self.rank[v.index()];
        (r != NIL).then_some(r)
    }

    pub fn strategy(&self, v: VertexId) -> Option<VertexId> {
        let s = self.strategy[v.index()];
        (s != NIL).then(|| VertexId::new(s as usize))
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn members(&self) -> VertexSet {
        VertexSet::from_mask(&self.member)
    }

    pub fn mask(&self) -> &[bool] {
        &self.member
    }

    /// Elementary operations performed: targets seeded plus inedges scanned.
    pub fn work(&self) -> u64 {
        self.work
    }
}

/// Computes `Attr_player(targets)` over the edges of `view`.
///
/// Opponent vertices are attracted once every view-successor is attracted.
/// An opponent vertex with no view-successor is never attracted: callers
/// working on sparsified views route such vertices through the target set.
pub fn attractor<V: EdgeView>(
    g: &GameGraph,
    player: Owner,
    targets: impl IntoIterator<Item = VertexId>,
    view: &V,
) -> AttractorResult {
    let n = g.n();
    let mut member = vec![false; n];
    let mut rank = vec![NIL; n];
    let mut strategy = vec![NIL; n];
    let mut pending = vec![NIL; n];
    let mut queue = VecDeque::new();
    let mut work = 0u64;
    let mut size = 0usize;

    for t in targets {
        work += 1;
        debug_assert!(view.contains_vertex(t), "target {t} is not alive");
        if !member[t.index()] {
            member[t.index()] = true;
            rank[t.index()] = 0;
            size += 1;
            queue.push_back(t);
        }
    }

    while let Some(x) = queue.pop_front() {
        let next_rank = rank[x.index()] + 1;
        for p in view.predecessors(x) {
            work += 1;
            let pi = p.index();
            if member[pi] {
                continue;
            }
            if g.owner(p) == player {
                member[pi] = true;
                rank[pi] = next_rank;
                strategy[pi] = x.index() as u32;
            } else {
                if pending[pi] == NIL {
                    pending[pi] = view.out_degree(p) as u32;
                }
                pending[pi] -= 1;
                if pending[pi] != 0 {
                    continue;
                }
                member[pi] = true;
                rank[pi] = next_rank;
            }
            size += 1;
            queue.push_back(p);
        }
    }

    AttractorResult {
        member,
        rank,
        strategy,
        size,
        work,
    }
}

/// Whether `set` is closed for `player`: the player's vertices cannot leave
/// it and every opponent vertex can stay inside.
pub fn is_closed(g: &GameGraph, player: Owner, set: &VertexSet) -> bool {
    let mask = set.to_mask(g.n());
    set.iter().all(|v| {
        let mut succ = g.successors(v);
        if g.owner(v) == player {
            succ.all(|w| mask[w.index()])
        } else {
            succ.any(|w| mask[w.index()])
        }
    })
}

/// A memoryless strategy: one chosen successor per vertex, where defined.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Strategy {
    choice: Vec<Option<VertexId>>,
}

impl Strategy {
    pub fn new(n: usize) -> Self {
        Strategy {
            choice: vec![None; n],
        }
    }

    pub fn get(&self, v: VertexId) -> Option<VertexId> {
        self.choice.get(v.index()).copied().flatten()
    }

    pub fn set(&mut self, v: VertexId, w: VertexId) {
        self.choice[v.index()] = Some(w);
    }

    /// Defined `(vertex, successor)` pairs in vertex order.
    pub fn iter(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.choice
            .iter()
            .enumerate()
            .filter_map(|(i, c)| c.map(|w| (VertexId::new(i), w)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrategyError {
    #[error("no strategy choice for player-1 vertex {0}")]
    StrategyUndefined(VertexId),
}

/// Checks that `strategy` wins the Büchi objective for player 1 from every
/// vertex of `w1`.
///
/// `w1` must be player-2 closed, every choice must be a real edge staying in
/// `w1`, and under the fixed strategy the Büchi vertices of `w1` must be
/// forced from every vertex of `w1`: ranks are the alternating distance to
/// `B ∩ w1` inside `w1` with player-1 vertices restricted to their chosen
/// edge, and every non-Büchi vertex must have a successor of smaller rank
/// (player 1) or only successors of smaller rank (player 2).
pub fn verify_buchi_strategy(
    g: &GameGraph,
    w1: &VertexSet,
    strategy: &Strategy,
) -> Result<bool, StrategyError> {
    let n = g.n();
    let inside = w1.to_mask(n);

    for v in w1 {
        if g.owner(v) == Owner::Player1 && strategy.get(v).is_none() {
            return Err(StrategyError::StrategyUndefined(v));
        }
    }

    for v in w1 {
        if !g.is_alive(v) {
            return Ok(false);
        }
        match g.owner(v) {
            Owner::Player1 => {
                let w = strategy.get(v).expect("checked above");
                if !inside[w.index()] || !g.has_edge(v, w) {
                    return Ok(false);
                }
            }
            Owner::Player2 => {
                if !g.successors(v).all(|w| inside[w.index()]) {
                    return Ok(false);
                }
            }
        }
    }

    let mut reached = vec![false; n];
    let mut pending: Vec<usize> = vec![0; n];
    let mut queue = VecDeque::new();
    for v in w1 {
        if g.is_buchi(v) {
            reached[v.index()] = true;
            queue.push_back(v);
        } else if g.owner(v) == Owner::Player2 {
            pending[v.index()] = g.out_degree(v);
        }
    }
    while let Some(x) = queue.pop_front() {
        for p in g.predecessors(x) {
            let pi = p.index();
            if !inside[pi] || reached[pi] {
                continue;
            }
            let attracted = match g.owner(p) {
                Owner::Player1 => strategy.get(p) == Some(x),
                Owner::Player2 => {
                    pending[pi] -= 1;
                    pending[pi] == 0
                }
            };
            if attracted {
                reached[pi] = true;
                queue.push_back(p);
            }
        }
    }
    Ok(w1.iter().all(|v| reached[v.index()]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    #[test]
    fn chain_ranks() {
        let g = graph(&[(Owner::Player1, false); 3], &[(0, 0), (1, 0), (2, 1)]);
        let a = attractor(&g, Owner::Player1, [v(0)], &g);
        assert_eq!(a.members(), set(&[0, 1, 2]));
        assert_eq!(
            (a.rank(v(0)), a.rank(v(1)), a.rank(v(2))),
            (Some(0), Some(1), Some(2))
        );
        assert_eq!(a.strategy(v(2)), Some(v(1)));
    }

    #[test]
    fn opponent_needs_all_successors() {
        // u (player 2) -> t, s; t and s have self-loops
        let g = graph(
            &[
                (Owner::Player2, false),
                (Owner::Player1, true),
                (Owner::Player1, false),
            ],
            &[(0, 1), (0, 2), (1, 1), (2, 2)],
        );
        let a = attractor(&g, Owner::Player1, [v(1)], &g);
        assert!(!a.contains(v(0)));
        assert_eq!(a.len(), 1);
    }

    #[test]
    fn f2_player_two_attractor() {
        let g = f2();
        let a = attractor(&g, Owner::Player2, [v(2)], &g);
        assert_eq!(a.members(), set(&[0, 1, 2]));
        assert_eq!(a.rank(v(1)), Some(1));
        assert_eq!(a.rank(v(0)), Some(2));
        assert_eq!(a.strategy(v(1)), Some(v(2)));
    }

    #[test]
    fn closed_sets() {
        let g = f2();
        assert!(is_closed(&g, Owner::Player1, &set(&[2])));
        assert!(!is_closed(&g, Owner::Player1, &set(&[0])));
        let all = set(&[0, 1, 2]);
        assert!(is_closed(&g, Owner::Player1, &all));
        assert!(is_closed(&g, Owner::Player2, &all));
    }

    #[test]
    fn strategy_certificates() {
        let g = f1();
        let mut s = Strategy::new(1);
        s.set(v(0), v(0));
        assert_eq!(verify_buchi_strategy(&g, &set(&[0]), &s), Ok(true));

        let g = f3();
        let mut s = Strategy::new(2);
        s.set(v(1), v(0));
        assert_eq!(verify_buchi_strategy(&g, &set(&[0, 1]), &s), Ok(true));

        let g = f2();
        let mut s = Strategy::new(3);
        s.set(v(0), v(1));
        assert_eq!(verify_buchi_strategy(&g, &set(&[0, 1, 2]), &s), Ok(false));
        assert_eq!(
            verify_buchi_strategy(&g, &set(&[0, 1, 2]), &Strategy::new(3)),
            Err(StrategyError::StrategyUndefined(v(0)))
        );
    }

    #[test]
    fn strategy_that_loops_away_from_buchi_is_rejected() {
        // a (player 1) -> a, b; b (Büchi, player 1) -> a
        let g = graph(
            &[(Owner::Player1, false), (Owner::Player1, true)],
            &[(0, 0), (0, 1), (1, 0)],
        );
        let mut s = Strategy::new(2);
        s.set(v(0), v(0));
        s.set(v(1), v(0));
        assert_eq!(verify_buchi_strategy(&g, &set(&[0, 1]), &s), Ok(false));
        s.set(v(0), v(1));
        assert_eq!(verify_buchi_strategy(&g, &set(&[0, 1]), &s), Ok(true));
    }
}
