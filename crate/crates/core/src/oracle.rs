//! Brute-force reference solutions for small graphs.
//!
//! Everything here is deliberately naive: strategies and vertex subsets are
//! enumerated outright and plays are walked step by step. Nothing reuses the
//! attractor or SCC machinery of the solvers it is meant to check.

use thiserror::Error;

use crate::attractor::Strategy;
use crate::classical::WinningPartition;
use crate::graph::{GameGraph, Owner, VertexId, VertexSet};
use crate::mec::MecDecomposition;
use crate::progress::PmValue;

/// Largest number of strategy profiles the Büchi oracles will enumerate.
pub const MAX_PROFILES: u64 = 1_000_000;
/// Largest vertex count accepted by [`oracle_mec`].
pub const MAX_MEC_VERTICES: usize = 15;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("instance too large for brute force: {0}")]
    TooLarge(String),
}

/// One successor choice per alive vertex, for both players.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrategyProfile {
    next: Vec<Option<VertexId>>,
}

impl StrategyProfile {
    pub fn successor(&self, v: VertexId) -> Option<VertexId> {
        self.next[v.index()]
    }

    /// The play from `v`: its prefix and its cycle, as vertex lists.
    pub fn lasso(&self, v: VertexId) -> (Vec<VertexId>, Vec<VertexId>) {
        let mut seen_at = vec![usize::MAX; self.next.len()];
        let mut walk = Vec::new();
        let mut x = v;
        while seen_at[x.index()] == usize::MAX {
            seen_at[x.index()] = walk.len();
            walk.push(x);
            x = self.next[x.index()].expect("profile covers every alive vertex");
        }
        let cycle = walk.split_off(seen_at[x.index()]);
        (walk, cycle)
    }
}

fn check_profile_count(g: &GameGraph) -> Result<(), OracleError> {
    let mut product = 1u64;
    for v in g.alive_vertices() {
        product = product.saturating_mul(g.out_degree(v) as u64);
        if product > MAX_PROFILES {
            return Err(OracleError::TooLarge(format!(
                "more than {MAX_PROFILES} strategy profiles"
            )));
        }
    }
    Ok(())
}

/// Calls `f` once per combination of successor choices for `owners`,
/// writing the choices into `next`.
fn for_each_choice(
    g: &GameGraph,
    owners: &[VertexId],
    next: &mut [Option<VertexId>],
    mut f: impl FnMut(&[Option<VertexId>]),
) {
    let options: Vec<Vec<VertexId>> = owners.iter().map(|&v| g.successors(v).collect()).collect();
    let mut digits = vec![0usize; owners.len()];
    for (v, opts) in owners.iter().zip(&options) {
        next[v.index()] = Some(opts[0]);
    }
    loop {
        f(next);
        let mut k = 0;
        loop {
            if k == owners.len() {
                return;
            }
            digits[k] += 1;
            if digits[k] < options[k].len() {
                next[owners[k].index()] = Some(options[k][digits[k]]);
                break;
            }
            digits[k] = 0;
            next[owners[k].index()] = Some(options[k][0]);
            k += 1;
        }
    }
}

fn owned_by(g: &GameGraph, player: Owner) -> Vec<VertexId> {
    g.alive_vertices()
        .filter(|&v| g.owner(v) == player)
        .collect()
}

/// Winning regions by enumerating every pair of memoryless strategies.
///
/// `v` is winning for player 1 iff some player-1 strategy makes every
/// player-2 strategy produce a play whose cycle holds a Büchi vertex. The
/// returned strategy is the first such player-1 strategy found for each
/// vertex.
pub fn oracle_buchi(g: &GameGraph) -> Result<WinningPartition, OracleError> {
    check_profile_count(g)?;
    let n = g.n();
    let p1 = owned_by(g, Owner::Player1);
    let p2 = owned_by(g, Owner::Player2);
    let alive: Vec<VertexId> = g.alive_vertices().collect();
    let mut won = vec![false; n];
    let mut strategy1 = Strategy::new(n);

    let mut sigma_next = vec![None; n];
    for_each_choice(g, &p1, &mut sigma_next, |sigma| {
        let mut good: Vec<bool> = vec![true; n];
        let mut profile = sigma.to_vec();
        for_each_choice(g, &p2, &mut profile, |full| {
            let play = StrategyProfile {
                next: full.to_vec(),
            };
            for &v in &alive {
                if good[v.index()] {
                    let (_, cycle) = play.lasso(v);
                    if !cycle.iter().any(|&w| g.is_buchi(w)) {
                        good[v.index()] = false;
                    }
                }
            }
        });
        let fresh: Vec<VertexId> = alive
            .iter()
            .copied()
            .filter(|v| good[v.index()] && !won[v.index()])
            .collect();
        for v in &fresh {
            won[v.index()] = true;
        }
        // Record this strategy on player-1 vertices it newly certifies.
        for v in fresh.into_iter().filter(|&v| g.owner(v) == Owner::Player1) {
            strategy1.set(v, sigma[v.index()].expect("player-1 choice"));
        }
    });

    let w1: VertexSet = alive.iter().copied().filter(|v| won[v.index()]).collect();
    let w2: VertexSet = alive.iter().copied().filter(|v| !won[v.index()]).collect();
    Ok(WinningPartition { w1, w2, strategy1 })
}

/// `min` over player-2 strategies of `max` over player-1 strategies of the
/// number of Büchi visits on the play from `v`; `Top` when infinite.
pub fn maxvisit_oracle(g: &GameGraph, v: VertexId) -> Result<PmValue, OracleError> {
    check_profile_count(g)?;
    let p1 = owned_by(g, Owner::Player1);
    let p2 = owned_by(g, Owner::Player2);
    let mut best = PmValue::Top;
    let mut pi_next = vec![None; g.n()];
    for_each_choice(g, &p2, &mut pi_next, |pi| {
        let mut worst = PmValue::ZERO;
        let mut profile = pi.to_vec();
        for_each_choice(g, &p1, &mut profile, |full| {
            let play = StrategyProfile {
                next: full.to_vec(),
            };
            let (prefix, cycle) = play.lasso(v);
            let value = if cycle.iter().any(|&w| g.is_buchi(w)) {
                PmValue::Top
            } else {
                PmValue::Finite(prefix.iter().filter(|&&w| g.is_buchi(w)).count() as u32)
            };
            worst = worst.max(value);
        });
        best = best.min(worst);
    });
    Ok(best)
}

/// Whether the alive vertices in `mask` form an end-component: at least two
/// vertices or a self-loop, player-2 vertices keep every edge inside,
/// player-1 vertices keep at least one, and the induced graph is strongly
/// connected.
pub fn is_end_component(g: &GameGraph, members: &[VertexId], mask: &[bool]) -> bool {
    let Some(&root) = members.first() else {
        return false;
    };
    if members.len() == 1 && !g.has_edge(root, root) {
        return false;
    }
    for &v in members {
        let mut succ = g.successors(v);
        let ok = match g.owner(v) {
            Owner::Player2 => succ.all(|w| mask[w.index()]),
            Owner::Player1 => succ.any(|w| mask[w.index()]),
        };
        if !ok {
            return false;
        }
    }
    let reach = |forward: bool| {
        let mut seen = vec![false; g.n()];
        let mut stack = vec![root];
        seen[root.index()] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            let next: Vec<VertexId> = if forward {
                g.successors(x).collect()
            } else {
                g.predecessors(x).collect()
            };
            for w in next {
                if mask[w.index()] && !seen[w.index()] {
                    seen[w.index()] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count
    };
    reach(true) == members.len() && reach(false) == members.len()
}

/// Maximal end-components by checking every subset of alive vertices.
pub fn oracle_mec(g: &GameGraph) -> Result<MecDecomposition, OracleError> {
    let alive: Vec<VertexId> = g.alive_vertices().collect();
    if alive.len() > MAX_MEC_VERTICES {
        return Err(OracleError::TooLarge(format!(
            "{} vertices, limit {MAX_MEC_VERTICES}",
            alive.len()
        )));
    }
    let k = alive.len();
    let mut components: Vec<u32> = Vec::new();
    let mut mask = vec![false; g.n()];
    for bits in 1u32..(1u32 << k) {
        let members: Vec<VertexId> = (0..k)
            .filter(|i| bits >> i & 1 == 1)
            .map(|i| alive[i])
            .collect();
        for &v in &members {
            mask[v.index()] = true;
        }
        if is_end_component(g, &members, &mask) {
            components.push(bits);
        }
        for &v in &members {
            mask[v.index()] = false;
        }
    }
    let maximal: Vec<u32> = components
        .iter()
        .copied()
        .filter(|&c| !components.iter().any(|&d| d != c && d & c == c))
        .collect();
    let to_set = |bits: u32| -> VertexSet {
        (0..k)
            .filter(|i| bits >> i & 1 == 1)
            .map(|i| alive[i])
            .collect()
    };
    let covered = maximal.iter().fold(0u32, |acc, &c| acc | c);
    let mut mecs: Vec<VertexSet> = maximal.iter().map(|&c| to_set(c)).collect();
    mecs.sort_by_key(|s| s.first());
    let all = if k == 0 { 0 } else { u32::MAX >> (32 - k) };
    Ok(MecDecomposition {
        mecs,
        non_mec: to_set(all & !covered),
    })
}
