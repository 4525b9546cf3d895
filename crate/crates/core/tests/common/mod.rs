//! Seeded corpora shared by the integration tests.
#![allow(dead_code)]

use buchi_core::generate::{gen_bounded_with, gen_random_with, rng_from_seed, GenRng};
use buchi_core::{GameGraph, VertexSet, WinningPartition};
use rand::Rng;

fn fractions(rng: &mut GenRng) -> (f64, f64) {
    (rng.gen_range(0.0..=1.0), rng.gen_range(0.0..=1.0))
}

/// `count` graphs with `n <= max_n` and outdegree at most `max_outdeg`.
pub fn small_corpus(count: usize, max_n: usize, max_outdeg: usize, seed: u64) -> Vec<GameGraph> {
    let mut rng = rng_from_seed(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=max_n);
            let (p2, b) = fractions(&mut rng);
            gen_bounded_with(&mut rng, n, max_outdeg, p2, b).unwrap()
        })
        .collect()
}

/// `count` graphs with `min_n <= n <= max_n`, cycling through ten densities
/// spaced geometrically from `m = 2n` up to `m = n^2 / 4`.
pub fn density_sweep(count: usize, min_n: usize, max_n: usize, seed: u64) -> Vec<GameGraph> {
    let mut rng = rng_from_seed(seed);
    (0..count)
        .map(|i| {
            let n = rng.gen_range(min_n..=max_n);
            let t = (i % 10) as f64 / 9.0;
            let sparse = 2.0 * n as f64;
            let dense = (n * n) as f64 / 4.0;
            let m = (sparse * (dense / sparse).max(1.0).powf(t)).round() as usize;
            let m = m.clamp(n, n * n);
            let (p2, b) = fractions(&mut rng);
            gen_random_with(&mut rng, n, m, p2, b).unwrap()
        })
        .collect()
}

/// `w1` and `w2` are disjoint and cover the alive vertices.
pub fn is_partition(g: &GameGraph, p: &WinningPartition) -> bool {
    let alive: VertexSet = g.alive_vertices().collect();
    p.w1.is_disjoint(&p.w2) && p.w1.union(&p.w2) == alive
}

/// Random graphs with a chain of planted Büchi-free traps. Player-1 trap
/// vertices have edges only inside their trap, with outdegrees up to the
/// trap size. Trap `t > 0` also has one exit to a player-2 Büchi bridge
/// whose only edge leads into trap `t - 1`, so it becomes a trap only once
/// its predecessor is gone and has to be found by a later search.
pub fn planted_traps(count: usize, max_n: usize, seed: u64) -> Vec<GameGraph> {
    use buchi_core::{Owner, VertexId};
    use rand::seq::index::sample;

    let mut rng = rng_from_seed(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(30..=max_n);
            let (p2, b) = (rng.gen_range(0.1..=0.6), rng.gen_range(0.1..=0.5));
            let mut vertices: Vec<(Owner, bool)> = (0..n)
                .map(|_| {
                    let owner = if rng.gen_bool(p2) {
                        Owner::Player2
                    } else {
                        Owner::Player1
                    };
                    (owner, rng.gen_bool(b))
                })
                .collect();
            let order = sample(&mut rng, n, n).into_vec();
            let mut next = 0;
            let mut trap_of = vec![usize::MAX; n];
            let mut traps: Vec<Vec<usize>> = Vec::new();
            let mut bridge_into = vec![usize::MAX; n];
            let mut bridges = Vec::new();
            for t in 0..rng.gen_range(1..=5) {
                let k = rng.gen_range(3..=(n / 5).max(3));
                if next + k + 1 > n {
                    break;
                }
                let members = order[next..next + k].to_vec();
                next += k;
                for &v in &members {
                    trap_of[v] = t;
                    vertices[v].1 = false;
                }
                if t > 0 {
                    let bridge = order[next];
                    next += 1;
                    vertices[bridge] = (Owner::Player2, true);
                    bridge_into[bridge] = t - 1;
                    bridges.push(bridge);
                    vertices[members[0]].0 = Owner::Player1;
                }
                traps.push(members);
            }
            let mut edges = Vec::new();
            for u in 0..n {
                let mut targets: Vec<usize> = if bridge_into[u] != usize::MAX {
                    vec![traps[bridge_into[u]][0]]
                } else if trap_of[u] != usize::MAX {
                    let t = &traps[trap_of[u]];
                    match vertices[u].0 {
                        Owner::Player1 => {
                            let d = rng.gen_range(1..=t.len());
                            sample(&mut rng, t.len(), d)
                                .into_iter()
                                .map(|i| t[i])
                                .collect()
                        }
                        Owner::Player2 => {
                            let mut out = vec![t[rng.gen_range(0..t.len())]];
                            let extra = rng.gen_range(0..=4);
                            out.extend((0..extra).map(|_| rng.gen_range(0..n)));
                            out
                        }
                    }
                } else {
                    let d = rng.gen_range(1..=8.min(n));
                    sample(&mut rng, n, d).into_vec()
                };
                if trap_of[u] != usize::MAX && trap_of[u] > 0 && traps[trap_of[u]][0] == u {
                    targets.push(bridges[trap_of[u] - 1]);
                }
                targets.sort_unstable();
                targets.dedup();
                edges.extend(
                    targets
                        .into_iter()
                        .map(|v| (VertexId::new(u), VertexId::new(v))),
                );
            }
            GameGraph::build(&vertices, &edges).unwrap()
        })
        .collect()
}
