//! Maximal end-component decomposition.
//!
//! An end-component is a strongly connected, player-2 closed vertex set
//! with at least two vertices or a self-loop. The quadratic algorithm looks
//! for bottom SCCs in level views: in view `i`, the vertices that cannot
//! reach a high-degree (blue) vertex are closed in the full graph, so the
//! bottom SCCs among them are bottom SCCs of the whole graph and therefore
//! maximal end-components. Their player-2 attractors are peeled off and the
//! search restarts on the rest.

use std::collections::VecDeque;

use crate::attractor::attractor;
use crate::graph::{EdgeView, GameGraph, Owner, VertexId, VertexSet, NIL};
use crate::level::{level_count, Color, LevelView};

/// Maximal end-components plus the vertices that belong to none.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MecDecomposition {
    /// Pairwise disjoint components, ordered by smallest vertex.
    pub mecs: Vec<VertexSet>,
    pub non_mec: VertexSet,
}

impl MecDecomposition {
    fn from_parts(mut mecs: Vec<VertexSet>, non_mec: &[bool]) -> Self {
        mecs.sort_by_key(|c| c.first());
        MecDecomposition {
            mecs,
            non_mec: VertexSet::from_mask(non_mec),
        }
    }
}

/// Strongly connected components of the subgraph of `view` induced by
/// `vertices`, in reverse topological order (sinks first).
pub fn sccs<V: EdgeView>(vertices: &VertexSet, view: &V) -> Vec<VertexSet> {
    let mask = vertices.to_mask(view.vertex_bound());
    tarjan(&mask, vertices, view)
}

fn tarjan<V: EdgeView>(inside: &[bool], vertices: &VertexSet, view: &V) -> Vec<VertexSet> {
    let n = inside.len();
    let mut index = vec![NIL; n];
    let mut low = vec![NIL; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<VertexId> = Vec::new();
    let mut frames: Vec<(VertexId, V::Succ<'_>)> = Vec::new();
    let mut next_index = 0u32;
    let mut out = Vec::new();

    for root in vertices {
        if index[root.index()] != NIL {
            continue;
        }
        index[root.index()] = next_index;
        low[root.index()] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root.index()] = true;
        frames.push((root, view.successors(root)));

        while let Some(frame) = frames.last_mut() {
            let v = frame.0;
            match frame.1.next() {
                Some(w) => {
                    let wi = w.index();
                    if !inside[wi] {
                        continue;
                    }
                    if index[wi] == NIL {
                        index[wi] = next_index;
                        low[wi] = next_index;
                        next_index += 1;
                        stack.push(w);
                        on_stack[wi] = true;
                        frames.push((w, view.successors(w)));
                    } else if on_stack[wi] {
                        low[v.index()] = low[v.index()].min(index[wi]);
                    }
                }
                None => {
                    frames.pop();
                    if low[v.index()] == index[v.index()] {
                        let mut component = Vec::new();
                        loop {
                            let w = stack.pop().expect("tarjan stack underflow");
                            on_stack[w.index()] = false;
                            component.push(w);
                            if w == v {
                                break;
                            }
                        }
                        out.push(component.into_iter().collect());
                    }
                    if let Some(parent) = frames.last() {
                        let p = parent.0.index();
                        low[p] = low[p].min(low[v.index()]);
                    }
                }
            }
        }
    }
    out
}

/// SCCs of the induced subgraph with no edge to another vertex of `vertices`.
pub fn bottom_sccs<V: EdgeView>(vertices: &VertexSet, view: &V) -> Vec<VertexSet> {
    let n = view.vertex_bound();
    let mask = vertices.to_mask(n);
    let components = tarjan(&mask, vertices, view);
    let mut component_of = vec![NIL; n];
    for (k, c) in components.iter().enumerate() {
        for v in c {
            component_of[v.index()] = k as u32;
        }
    }
    components
        .into_iter()
        .enumerate()
        .filter(|(k, c)| {
            c.iter().all(|v| {
                view.successors(v)
                    .all(|w| !mask[w.index()] || component_of[w.index()] == *k as u32)
            })
        })
        .map(|(_, c)| c)
        .collect()
}

/// MEC level view: edges of vertices with current outdegree at most `2^i`;
/// every vertex above that degree is blue.
pub fn mec_level_view(g: &GameGraph, level: u32) -> LevelView<'_> {
    LevelView::mec(g, level)
}

/// One outer iteration of [`mec_decomposition_traced`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MecIteration {
    /// Level where the inner search stopped; 0 for the initial full-graph round.
    pub stop_level: u32,
    /// Sizes of the bottom SCCs emitted in this iteration.
    pub component_sizes: Vec<usize>,
    /// For each emitted component: does it contain a vertex whose current
    /// outdegree exceeds `2^(stop_level - 1)`? Always `true` at levels < 2.
    pub meets_previous_blue: Vec<bool>,
    /// Vertices removed (components plus their attractor shells).
    pub removed: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MecTrace {
    pub iterations: Vec<MecIteration>,
    pub work: u64,
}

pub fn mec_decomposition(g: &GameGraph) -> MecDecomposition {
    mec_decomposition_traced(g).0
}

pub fn mec_decomposition_traced(g: &GameGraph) -> (MecDecomposition, MecTrace) {
    let mut scratch = g.clone();
    let mut trace = MecTrace::default();
    let mut mecs = Vec::new();
    let mut non_mec = vec![false; g.n()];
    let top = level_count(g.n());

    let alive: VertexSet = scratch.alive_vertices().collect();
    let bottoms = bottom_sccs(&alive, &scratch);
    trace.work += (scratch.alive_count() + scratch.edge_count()) as u64;
    let removed = emit(
        &mut scratch,
        bottoms.clone(),
        &mut mecs,
        &mut non_mec,
        &mut trace.work,
    );
    trace.iterations.push(MecIteration {
        stop_level: 0,
        component_sizes: bottoms.iter().map(VertexSet::len).collect(),
        meets_previous_blue: vec![true; bottoms.len()],
        removed,
    });

    while scratch.alive_count() > 0 {
        let mut level = 1;
        let (bottoms, stop_level) = loop {
            let view = LevelView::mec(&scratch, level);
            trace.work += view.work();
            let reach = reach_blue(&scratch, &view, &mut trace.work);
            let rest: VertexSet = scratch
                .alive_vertices()
                .filter(|v| !reach[v.index()])
                .collect();
            if !rest.is_empty() {
                trace.work += (rest.len() + view.edge_count()) as u64;
                break (bottom_sccs(&rest, &view), level);
            }
            assert!(level < top, "top level view has no blue vertex");
            level += 1;
        };
        let meets_previous_blue = bottoms
            .iter()
            .map(|c| {
                stop_level < 2
                    || c.iter()
                        .any(|v| scratch.out_degree(v) as u64 > 1u64 << (stop_level - 1))
            })
            .collect();
        let component_sizes = bottoms.iter().map(VertexSet::len).collect();
        let removed = emit(
            &mut scratch,
            bottoms,
            &mut mecs,
            &mut non_mec,
            &mut trace.work,
        );
        trace.iterations.push(MecIteration {
            stop_level,
            component_sizes,
            meets_previous_blue,
            removed,
        });
    }

    (MecDecomposition::from_parts(mecs, &non_mec), trace)
}

/// Backward reachability from all blue vertices inside the view.
fn reach_blue(g: &GameGraph, view: &LevelView<'_>, work: &mut u64) -> Vec<bool> {
    let mut seen = vec![false; g.n()];
    let mut queue = VecDeque::new();
    for v in g.alive_vertices() {
        if view.color(v) == Color::Blue {
            seen[v.index()] = true;
            queue.push_back(v);
        }
    }
    while let Some(x) = queue.pop_front() {
        for p in view.predecessors(x) {
            *work += 1;
            if !seen[p.index()] {
                seen[p.index()] = true;
                queue.push_back(p);
            }
        }
    }
    seen
}

/// Records `components` as MECs and removes their player-2 attractor; the
/// attractor shell around them belongs to no MEC.
fn emit(
    g: &mut GameGraph,
    components: Vec<VertexSet>,
    mecs: &mut Vec<VertexSet>,
    non_mec: &mut [bool],
    work: &mut u64,
) -> usize {
    let seeds = components.iter().flat_map(|c| c.iter());
    let attr = attractor(g, Owner::Player2, seeds, g);
    *work += attr.work();
    let mut in_component = vec![false; g.n()];
    for c in &components {
        for v in c {
            in_component[v.index()] = true;
        }
    }
    let removed = attr.members();
    for v in &removed {
        if !in_component[v.index()] {
            non_mec[v.index()] = true;
        }
    }
    mecs.extend(components);
    g.remove_vertices(removed.iter())
        .expect("attractor members are alive");
    removed.len()
}

/// Baseline decomposition built directly on SCCs and player-2 attractors.
///
/// Each round takes the SCCs of the surviving graph. An SCC whose player-2
/// vertices cannot leave it (and which is not a trivial singleton) is a MEC;
/// it is emitted and its attractor removed. Otherwise the player-2 vertices
/// that can leave it, or the singleton itself, seed a player-2 attractor
/// that contains no MEC vertex and is removed from the whole graph.
pub fn naive_mec(g: &GameGraph) -> MecDecomposition {
    let mut scratch = g.clone();
    let mut mecs = Vec::new();
    let mut non_mec = vec![false; g.n()];

    while scratch.alive_count() > 0 {
        let alive: VertexSet = scratch.alive_vertices().collect();
        let components = sccs(&alive, &scratch);
        let mut component_of = vec![NIL; g.n()];
        for (k, c) in components.iter().enumerate() {
            for v in c {
                component_of[v.index()] = k as u32;
            }
        }
        for (k, c) in components.iter().enumerate() {
            if !c.iter().all(|v| scratch.is_alive(v)) {
                continue;
            }
            let k = k as u32;
            let trivial = c.len() == 1 && {
                let v = c.first().unwrap();
                !scratch.successors(v).any(|w| w == v)
            };
            let leaking: Vec<VertexId> = c
                .iter()
                .filter(|&v| {
                    scratch.owner(v) == Owner::Player2
                        && scratch.successors(v).any(|w| component_of[w.index()] != k)
                })
                .collect();
            if leaking.is_empty() && !trivial {
                let mut unused = 0;
                emit(
                    &mut scratch,
                    vec![c.clone()],
                    &mut mecs,
                    &mut non_mec,
                    &mut unused,
                );
                continue;
            }
            let seeds = if trivial { c.iter().collect() } else { leaking };
            let attr = attractor(&scratch, Owner::Player2, seeds, &scratch);
            let removed = attr.members();
            for v in &removed {
                non_mec[v.index()] = true;
            }
            scratch
                .remove_vertices(removed.iter())
                .expect("attractor members are alive");
        }
    }

    MecDecomposition::from_parts(mecs, &non_mec)
}
