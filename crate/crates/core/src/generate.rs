//! Seeded random game graphs and the chain-of-traps family.
//!
//! All randomness comes from `ChaCha8Rng` seeded with the caller's `u64`, so
//! a seed pins an instance across platforms and releases of this crate.

use std::collections::HashSet;

use rand::seq::{index, SliceRandom};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{GameGraph, Owner, VertexId};

/// The generator behind every seeded instance.
pub type GenRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> GenRng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("{m} edges do not fit into {n} vertices (at most n^2)")]
    InfeasibleDensity { n: usize, m: usize },
    #[error("{m} edges cannot give each of {n} vertices an outedge")]
    TooFewEdges { n: usize, m: usize },
    #[error("fraction {0} is outside [0, 1]")]
    InvalidFraction(String),
}

/// Above this many vertex pairs the edge sampler tracks used pairs in a hash
/// set instead of a bitmap.
const BITMAP_LIMIT: u64 = 1 << 30;

/// `round(fraction * n)` vertices, chosen uniformly.
fn pick_flags(rng: &mut GenRng, n: usize, fraction: f64) -> Result<Vec<bool>, GenError> {
    if !(0.0..=1.0).contains(&fraction) {
        return Err(GenError::InvalidFraction(fraction.to_string()));
    }
    let k = ((fraction * n as f64).round() as usize).min(n);
    let mut flags = vec![false; n];
    for i in index::sample(rng, n, k) {
        flags[i] = true;
    }
    Ok(flags)
}

fn vertex_records(
    rng: &mut GenRng,
    n: usize,
    p2_fraction: f64,
    buchi_fraction: f64,
) -> Result<Vec<(Owner, bool)>, GenError> {
    let p2 = pick_flags(rng, n, p2_fraction)?;
    let buchi = pick_flags(rng, n, buchi_fraction)?;
    Ok(p2
        .into_iter()
        .zip(buchi)
        .map(|(is_p2, b)| {
            (
                if is_p2 {
                    Owner::Player2
                } else {
                    Owner::Player1
                },
                b,
            )
        })
        .collect())
}

/// Set of vertex pairs `(u, v)` encoded as `u * n + v`.
enum PairSet {
    Bits(Vec<u64>),
    Hash(HashSet<u64>),
}

impl PairSet {
    fn new(n: usize) -> Self {
        let pairs = (n as u64) * (n as u64);
        if pairs <= BITMAP_LIMIT {
            PairSet::Bits(vec![0; pairs.div_ceil(64) as usize])
        } else {
            PairSet::Hash(HashSet::new())
        }
    }

    /// Inserts `key`; false if it was already present.
    fn insert(&mut self, key: u64) -> bool {
        match self {
            PairSet::Bits(bits) => {
                let (word, bit) = ((key / 64) as usize, key % 64);
                let fresh = bits[word] >> bit & 1 == 0;
                bits[word] |= 1 << bit;
                fresh
            }
            PairSet::Hash(set) => set.insert(key),
        }
    }

    fn contains(&self, key: u64) -> bool {
        match self {
            PairSet::Bits(bits) => bits[(key / 64) as usize] >> (key % 64) & 1 == 1,
            PairSet::Hash(set) => set.contains(&key),
        }
    }
}

/// Random game graph with exactly `target_m` edges.
///
/// Every vertex first receives one uniformly random outedge; the remaining
/// edges are drawn uniformly without replacement from the unused pairs.
/// Self-loops are allowed. `round(p2_fraction * n)` vertices belong to
/// player 2 and `round(buchi_fraction * n)` are Büchi vertices, both chosen
/// uniformly. The edge list is shuffled before building, so the inedge order
/// is random as well.
pub fn gen_random(
    n: usize,
    target_m: usize,
    p2_fraction: f64,
    buchi_fraction: f64,
    seed: u64,
) -> Result<GameGraph, GenError> {
    let mut rng = rng_from_seed(seed);
    gen_random_with(&mut rng, n, target_m, p2_fraction, buchi_fraction)
}

/// [`gen_random`] drawing from an existing generator.
pub fn gen_random_with(
    rng: &mut GenRng,
    n: usize,
    target_m: usize,
    p2_fraction: f64,
    buchi_fraction: f64,
) -> Result<GameGraph, GenError> {
    let pairs = (n as u64) * (n as u64);
    if target_m as u64 > pairs {
        return Err(GenError::InfeasibleDensity { n, m: target_m });
    }
    if target_m < n {
        return Err(GenError::TooFewEdges { n, m: target_m });
    }
    let vertices = vertex_records(rng, n, p2_fraction, buchi_fraction)?;

    let key = |u: usize, v: usize| (u as u64) * (n as u64) + v as u64;
    let mut mandatory = PairSet::new(n);
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(target_m);
    for u in 0..n {
        let v = rng.gen_range(0..n);
        mandatory.insert(key(u, v));
        edges.push((u, v));
    }

    let extra = target_m - n;
    let free = pairs - n as u64;
    if (extra as u64) * 2 <= free {
        // Sparse side: draw the extra edges directly.
        let mut used = mandatory;
        while edges.len() < target_m {
            let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if used.insert(key(u, v)) {
                edges.push((u, v));
            }
        }
    } else {
        // Dense side: draw the pairs to leave out, keep everything else.
        let skip = (free - extra as u64) as usize;
        let mut excluded = PairSet::new(n);
        let mut drawn = 0;
        while drawn < skip {
            let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if !mandatory.contains(key(u, v)) && excluded.insert(key(u, v)) {
                drawn += 1;
            }
        }
        for u in 0..n {
            for v in 0..n {
                let k = key(u, v);
                if !mandatory.contains(k) && !excluded.contains(k) {
                    edges.push((u, v));
                }
            }
        }
    }

    edges.shuffle(rng);
    Ok(build(&vertices, &edges))
}

/// Random game graph where every vertex has between 1 and `max_outdeg`
/// distinct successors, chosen uniformly.
pub fn gen_bounded(
    n: usize,
    max_outdeg: usize,
    p2_fraction: f64,
    buchi_fraction: f64,
    seed: u64,
) -> Result<GameGraph, GenError> {
    let mut rng = rng_from_seed(seed);
    gen_bounded_with(&mut rng, n, max_outdeg, p2_fraction, buchi_fraction)
}

pub fn gen_bounded_with(
    rng: &mut GenRng,
    n: usize,
    max_outdeg: usize,
    p2_fraction: f64,
    buchi_fraction: f64,
) -> Result<GameGraph, GenError> {
    if n > 0 && max_outdeg == 0 {
        return Err(GenError::TooFewEdges { n, m: 0 });
    }
    let vertices = vertex_records(rng, n, p2_fraction, buchi_fraction)?;
    let mut edges = Vec::new();
    for u in 0..n {
        let d = rng.gen_range(1..=max_outdeg.min(n));
        edges.extend(index::sample(rng, n, d).into_iter().map(|v| (u, v)));
    }
    edges.shuffle(rng);
    Ok(build(&vertices, &edges))
}

fn build(vertices: &[(Owner, bool)], edges: &[(usize, usize)]) -> GameGraph {
    let edges: Vec<(VertexId, VertexId)> = edges
        .iter()
        .map(|&(u, v)| (VertexId::new(u), VertexId::new(v)))
        .collect();
    GameGraph::build(vertices, &edges).expect("generated graphs are well formed")
}

/// A family on which the classical solver needs one round per gadget.
///
/// Gadget `k` is a player-2 Büchi vertex `b_k` (id `2k`) whose only edge
/// leads to a player-1 vertex `a_k` (id `2k + 1`); `a_k` has a self-loop and,
/// for `k > 0`, an edge back to `b_{k-1}`. Only `a_0` fails to reach the
/// Büchi set, and removing gadget `k` strands `a_{k+1}`, so the gadgets fall
/// one per round. The last `clique` vertices form a complete player-1 Büchi
/// clique, won by player 1, whose edges every classical round has to rescan.
pub fn chain_of_traps(gadgets: usize, clique: usize) -> GameGraph {
    let mut vertices = Vec::with_capacity(2 * gadgets + clique);
    let mut edges = Vec::new();
    for k in 0..gadgets {
        vertices.push((Owner::Player2, true));
        vertices.push((Owner::Player1, false));
        edges.push((2 * k, 2 * k + 1));
        edges.push((2 * k + 1, 2 * k + 1));
        if k > 0 {
            edges.push((2 * k + 1, 2 * k - 2));
        }
    }
    let base = 2 * gadgets;
    vertices.extend(std::iter::repeat_n((Owner::Player1, true), clique));
    for u in 0..clique {
        for v in 0..clique {
            edges.push((base + u, base + v));
        }
    }
    build(&vertices, &edges)
}

/// Chain of traps with about `n` vertices, an eighth of them in the clique.
pub fn chain_of_traps_sized(n: usize) -> GameGraph {
    let clique = (n / 8).max(1);
    chain_of_traps(n.saturating_sub(clique) / 2, clique)
}
