//! Progress measures and the dynamic Büchi solvers.
//!
//! A progress measure maps every vertex to `0..=n` or `Top`. The Lift
//! operator's least fixpoint is finite exactly on player 1's winning set and
//! counts the alternating distance to the Büchi set there. The coLift
//! operator's least fixpoint is finite exactly on player 2's winning set and
//! counts how often player 2 must concede a Büchi visit.
//!
//! Both operators have the same shape: the new value of `v` is a minimum or
//! a maximum over the successors, after a monotone map of each successor's
//! value. Deleting player-1 edges can only raise the Lift fixpoint and
//! inserting player-1 edges can only raise the coLift fixpoint, so both
//! dynamic solvers run the same worklist: raised vertices are queued and
//! push their new value into their predecessors. Minimum-type vertices keep
//! a witness list of the successors that realise their current value and
//! only rescan once that list runs empty.

use std::collections::VecDeque;
use std::fmt;

use crate::attractor::attractor;
use crate::fast::solve_fast;
use crate::graph::{GameGraph, GraphError, Owner, VertexId, VertexSet, NIL};

/// A value in `0..=n` or `Top`; every number is below `Top`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PmValue {
    Finite(u32),
    Top,
}

impl PmValue {
    pub const ZERO: PmValue = PmValue::Finite(0);

    /// `k + 1`, where `n + 1` (and anything above) is `Top`.
    pub fn succ(self, n: usize) -> PmValue {
        match self {
            PmValue::Finite(k) if (k as usize) < n => PmValue::Finite(k + 1),
            _ => PmValue::Top,
        }
    }

    pub fn is_top(self) -> bool {
        self == PmValue::Top
    }
}

impl fmt::Display for PmValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PmValue::Finite(k) => write!(f, "{k}"),
            PmValue::Top => f.write_str("T"),
        }
    }
}

/// One value per vertex. Removed vertices hold `Top`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProgressMeasure {
    values: Vec<PmValue>,
}

impl ProgressMeasure {
    pub fn zero(n: usize) -> Self {
        ProgressMeasure {
            values: vec![PmValue::ZERO; n],
        }
    }

    pub fn from_values(values: Vec<PmValue>) -> Self {
        ProgressMeasure { values }
    }

    pub fn get(&self, v: VertexId) -> PmValue {
        self.values[v.index()]
    }

    pub fn set(&mut self, v: VertexId, value: PmValue) {
        self.values[v.index()] = value;
    }

    pub fn values(&self) -> &[PmValue] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Alive vertices with a finite value.
    pub fn support(&self, g: &GameGraph) -> VertexSet {
        g.alive_vertices()
            .filter(|&v| !self.get(v).is_top())
            .collect()
    }

    /// Alive vertices at `Top`.
    pub fn top_set(&self, g: &GameGraph) -> VertexSet {
        g.alive_vertices()
            .filter(|&v| self.get(v).is_top())
            .collect()
    }

    /// Pointwise `self <= other`.
    pub fn le(&self, other: &ProgressMeasure) -> bool {
        self.values.len() == other.values.len()
            && self.values.iter().zip(&other.values).all(|(a, b)| a <= b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Operator {
    Lift,
    CoLift,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Agg {
    Min,
    Max,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Map {
    Id,
    Inc,
    /// `Top` stays `Top`, everything else becomes 0.
    Flag,
}

#[derive(Clone, Copy, Debug)]
struct Rule {
    agg: Agg,
    map: Map,
}

impl Rule {
    fn of(op: Operator, owner: Owner, buchi: bool) -> Rule {
        use Agg::*;
        use Map::*;
        let (agg, map) = match (op, owner, buchi) {
            (Operator::Lift, Owner::Player1, true) => (Min, Flag),
            (Operator::Lift, Owner::Player2, true) => (Max, Flag),
            (Operator::Lift, Owner::Player1, false) => (Min, Inc),
            (Operator::Lift, Owner::Player2, false) => (Max, Inc),
            (Operator::CoLift, Owner::Player2, false) => (Min, Id),
            (Operator::CoLift, Owner::Player2, true) => (Min, Inc),
            (Operator::CoLift, Owner::Player1, false) => (Max, Id),
            (Operator::CoLift, Owner::Player1, true) => (Max, Inc),
        };
        Rule { agg, map }
    }

    fn for_vertex(op: Operator, g: &GameGraph, v: VertexId) -> Rule {
        Rule::of(op, g.owner(v), g.is_buchi(v))
    }

    #[inline]
    fn apply(self, value: PmValue, n: usize) -> PmValue {
        match self.map {
            Map::Id => value,
            Map::Inc => value.succ(n),
            Map::Flag if value.is_top() => PmValue::Top,
            Map::Flag => PmValue::ZERO,
        }
    }

    fn eval(self, g: &GameGraph, pm: &[PmValue], v: VertexId) -> PmValue {
        let n = g.n();
        let mapped = g.successors(v).map(|w| self.apply(pm[w.index()], n));
        let folded = match self.agg {
            Agg::Min => mapped.min(),
            Agg::Max => mapped.max(),
        };
        folded.expect("alive vertices keep an outedge")
    }
}

/// The Lift operator at `v`.
pub fn lift_at(g: &GameGraph, pm: &ProgressMeasure, v: VertexId) -> PmValue {
    Rule::for_vertex(Operator::Lift, g, v).eval(g, &pm.values, v)
}

/// The coLift operator at `v`.
pub fn colift_at(g: &GameGraph, pm: &ProgressMeasure, v: VertexId) -> PmValue {
    Rule::for_vertex(Operator::CoLift, g, v).eval(g, &pm.values, v)
}

/// Least fixpoint of `op` over the surviving graph, by chaotic iteration
/// from the all-zero measure.
pub fn least_fixpoint(g: &GameGraph, op: Operator) -> ProgressMeasure {
    let mut pm = ProgressMeasure::zero(g.n());
    for v in g.vertices().filter(|&v| !g.is_alive(v)) {
        pm.set(v, PmValue::Top);
    }
    let mut queue: VecDeque<VertexId> = g.alive_vertices().collect();
    let mut queued = vec![false; g.n()];
    for &v in &queue {
        queued[v.index()] = true;
    }
    while let Some(v) = queue.pop_front() {
        queued[v.index()] = false;
        let next = Rule::for_vertex(op, g, v).eval(g, &pm.values, v);
        if next == pm.get(v) {
            continue;
        }
        debug_assert!(next > pm.get(v));
        pm.set(v, next);
        for p in g.predecessors(v) {
            if !queued[p.index()] {
                queued[p.index()] = true;
                queue.push_back(p);
            }
        }
    }
    pm
}

/// Per-vertex doubly linked lists of edge ids. An edge id sits in at most
/// one list, the one of its source vertex.
#[derive(Clone, Debug, Default)]
struct WitnessLists {
    head: Vec<u32>,
    len: Vec<u32>,
    prev: Vec<u32>,
    next: Vec<u32>,
    member: Vec<bool>,
}

impl WitnessLists {
    fn new(n: usize, edge_bound: usize) -> Self {
        let mut lists = WitnessLists {
            head: vec![NIL; n],
            len: vec![0; n],
            ..Default::default()
        };
        lists.reserve_edges(edge_bound);
        lists
    }

    fn reserve_edges(&mut self, edge_bound: usize) {
        if self.member.len() < edge_bound {
            self.prev.resize(edge_bound, NIL);
            self.next.resize(edge_bound, NIL);
            self.member.resize(edge_bound, false);
        }
    }

    fn contains(&self, e: u32) -> bool {
        self.member[e as usize]
    }

    fn is_empty(&self, v: VertexId) -> bool {
        self.len[v.index()] == 0
    }

    fn push(&mut self, v: VertexId, e: u32) {
        debug_assert!(!self.member[e as usize]);
        let h = self.head[v.index()];
        self.prev[e as usize] = NIL;
        self.next[e as usize] = h;
        if h != NIL {
            self.prev[h as usize] = e;
        }
        self.head[v.index()] = e;
        self.member[e as usize] = true;
        self.len[v.index()] += 1;
    }

    fn remove(&mut self, v: VertexId, e: u32) {
        debug_assert!(self.member[e as usize]);
        let (p, nx) = (self.prev[e as usize], self.next[e as usize]);
        if p == NIL {
            self.head[v.index()] = nx;
        } else {
            self.next[p as usize] = nx;
        }
        if nx != NIL {
            self.prev[nx as usize] = p;
        }
        self.member[e as usize] = false;
        self.len[v.index()] -= 1;
    }

    fn clear(&mut self, v: VertexId) {
        let mut e = self.head[v.index()];
        while e != NIL {
            self.member[e as usize] = false;
            e = self.next[e as usize];
        }
        self.head[v.index()] = NIL;
        self.len[v.index()] = 0;
    }

    #[cfg(test)]
    fn iter(&self, v: VertexId) -> impl Iterator<Item = u32> + '_ {
        let mut e = self.head[v.index()];
        std::iter::from_fn(move || {
            (e != NIL).then(|| {
                let cur = e;
                e = self.next[cur as usize];
                cur
            })
        })
    }
}

/// Shared state of both dynamic solvers.
#[derive(Clone, Debug)]
struct Engine {
    op: Operator,
    pm: Vec<PmValue>,
    lists: WitnessLists,
    queue: VecDeque<VertexId>,
    queued: Vec<bool>,
    changes: Vec<u32>,
    work: u64,
}

impl Engine {
    fn new(op: Operator, g: &GameGraph, pm: Vec<PmValue>) -> Self {
        Engine {
            op,
            pm,
            lists: WitnessLists::new(g.n(), g.edge_id_bound()),
            queue: VecDeque::new(),
            queued: vec![false; g.n()],
            changes: vec![0; g.n()],
            work: 0,
        }
    }

    fn rule(&self, g: &GameGraph, v: VertexId) -> Rule {
        Rule::for_vertex(self.op, g, v)
    }

    /// Stores a strictly larger value and queues `v` for propagation.
    fn raise(&mut self, v: VertexId, value: PmValue) {
        debug_assert!(value > self.pm[v.index()]);
        self.pm[v.index()] = value;
        self.changes[v.index()] += 1;
        if value.is_top() {
            self.lists.clear(v);
        }
        if !self.queued[v.index()] {
            self.queued[v.index()] = true;
            self.queue.push_back(v);
        }
    }

    /// Witness list of a minimum-type vertex: the successors whose mapped
    /// value equals the vertex's own value.
    fn fill_list(&mut self, g: &GameGraph, v: VertexId) {
        let rule = self.rule(g, v);
        let n = g.n();
        let target = self.pm[v.index()];
        self.lists.clear(v);
        if target.is_top() {
            return;
        }
        for (e, w) in g.out_edges(v) {
            self.work += 1;
            if rule.apply(self.pm[w.index()], n) == target {
                self.lists.push(v, e);
            }
        }
    }

    /// Re-evaluates a minimum-type vertex whose witness list ran empty. A
    /// self-loop can invalidate the fresh list at once, hence the loop.
    fn rescan(&mut self, g: &GameGraph, v: VertexId) {
        loop {
            let next = self.rule(g, v).eval(g, &self.pm, v);
            self.work += g.out_degree(v) as u64;
            if next > self.pm[v.index()] {
                self.raise(v, next);
            }
            self.fill_list(g, v);
            if next.is_top() || !self.lists.is_empty(v) {
                return;
            }
        }
    }

    /// Brings `v` up to its operator value and builds its list; used when
    /// starting from a measure that is only a lower bound.
    fn settle(&mut self, g: &GameGraph, v: VertexId) {
        match self.rule(g, v).agg {
            Agg::Min => self.rescan(g, v),
            Agg::Max => {
                let next = self.rule(g, v).eval(g, &self.pm, v);
                self.work += g.out_degree(v) as u64;
                if next > self.pm[v.index()] {
                    self.raise(v, next);
                }
            }
        }
    }

    /// A successor edge `e = (p, x)` of `p` may have stopped witnessing, or
    /// may force `p` upwards.
    fn notify(&mut self, g: &GameGraph, p: VertexId, e: u32, x: VertexId) {
        if self.pm[p.index()].is_top() {
            return;
        }
        let rule = self.rule(g, p);
        let mapped = rule.apply(self.pm[x.index()], g.n());
        match rule.agg {
            Agg::Min => {
                if self.lists.contains(e) && mapped != self.pm[p.index()] {
                    self.lists.remove(p, e);
                    if self.lists.is_empty(p) {
                        self.rescan(g, p);
                    }
                }
            }
            Agg::Max => {
                if mapped > self.pm[p.index()] {
                    self.raise(p, mapped);
                }
            }
        }
    }

    fn drain(&mut self, g: &GameGraph) {
        while let Some(x) = self.queue.pop_front() {
            self.queued[x.index()] = false;
            for (e, p) in g.in_edges(x) {
                self.work += 1;
                self.notify(g, p, e, x);
            }
        }
    }

    fn measure(&self) -> ProgressMeasure {
        ProgressMeasure::from_values(self.pm.clone())
    }
}

/// Maintains player 1's winning set under deletions of player-1 edges.
///
/// Between operations the measure is the least Lift fixpoint of the
/// current graph.
#[derive(Clone, Debug)]
pub struct DecrementalSolver {
    graph: GameGraph,
    engine: Engine,
}

impl DecrementalSolver {
    /// Starts from the static solution: `Top` on player 2's region and the
    /// attractor rank towards the Büchi set inside player 1's region.
    pub fn new(g: GameGraph) -> Self {
        let partition = solve_fast(&g);
        let mut inside = g.clone();
        inside
            .remove_vertices(partition.w2.iter())
            .expect("w2 is alive");
        let targets: Vec<VertexId> = inside.buchi_vertices().collect();
        let ranks = attractor(&inside, Owner::Player1, targets, &inside);

        let mut pm = vec![PmValue::Top; g.n()];
        for v in &partition.w1 {
            let r = ranks.rank(v).expect("w1 reaches the Büchi set");
            pm[v.index()] = PmValue::Finite(r);
        }
        let mut engine = Engine::new(Operator::Lift, &g, pm);
        engine.work += ranks.work();
        for v in g.alive_vertices() {
            if engine.rule(&g, v).agg == Agg::Min {
                engine.fill_list(&g, v);
            }
        }
        DecrementalSolver { graph: g, engine }
    }

    /// Deletes the player-1 edge `(u, v)` and returns the new winning set.
    pub fn delete(&mut self, u: VertexId, v: VertexId) -> Result<VertexSet, GraphError> {
        let e = self.graph.delete_edge_id(u, v)?;
        let engine = &mut self.engine;
        if engine.lists.contains(e) {
            engine.lists.remove(u, e);
            if engine.lists.is_empty(u) {
                engine.rescan(&self.graph, u);
            }
        }
        engine.drain(&self.graph);
        Ok(self.winning_set())
    }

    /// Player 1's winning set: the finite support of the measure.
    pub fn winning_set(&self) -> VertexSet {
        self.engine.measure().support(&self.graph)
    }

    pub fn pm(&self) -> ProgressMeasure {
        self.engine.measure()
    }

    pub fn graph(&self) -> &GameGraph {
        &self.graph
    }

    /// How often each vertex's value has changed since construction.
    pub fn change_counts(&self) -> &[u32] {
        &self.engine.changes
    }

    pub fn work(&self) -> u64 {
        self.engine.work
    }
}

/// Maintains player 1's winning set under insertions of player-1 edges.
///
/// Between operations the measure is the least coLift fixpoint of the
/// current graph; player 1 wins exactly at `Top`.
#[derive(Clone, Debug)]
pub struct IncrementalSolver {
    graph: GameGraph,
    engine: Engine,
}

impl IncrementalSolver {
    /// Runs the worklist from the all-zero measure.
    pub fn new(g: GameGraph) -> Self {
        let mut pm = vec![PmValue::ZERO; g.n()];
        for v in g.vertices().filter(|&v| !g.is_alive(v)) {
            pm[v.index()] = PmValue::Top;
        }
        let mut engine = Engine::new(Operator::CoLift, &g, pm);
        for v in g.alive_vertices() {
            engine.settle(&g, v);
        }
        engine.drain(&g);
        IncrementalSolver { graph: g, engine }
    }

    /// Inserts the player-1 edge `(u, v)` and returns the new winning set.
    pub fn insert(&mut self, u: VertexId, v: VertexId) -> Result<VertexSet, GraphError> {
        self.graph.insert_edge_id(u, v)?;
        let engine = &mut self.engine;
        engine.lists.reserve_edges(self.graph.edge_id_bound());
        let candidate = engine
            .rule(&self.graph, u)
            .apply(engine.pm[v.index()], self.graph.n());
        engine.work += 1;
        if candidate > engine.pm[u.index()] {
            engine.raise(u, candidate);
        }
        engine.drain(&self.graph);
        Ok(self.winning_set())
    }

    /// Player 1's winning set: the vertices at `Top`.
    pub fn winning_set(&self) -> VertexSet {
        self.engine.measure().top_set(&self.graph)
    }

    pub fn pm(&self) -> ProgressMeasure {
        self.engine.measure()
    }

    pub fn graph(&self) -> &GameGraph {
        &self.graph
    }

    pub fn change_counts(&self) -> &[u32] {
        &self.engine.changes
    }

    pub fn work(&self) -> u64 {
        self.engine.work
    }
}

#[cfg(test)]
impl Engine {
    /// Every witness list is exactly its defining set.
    fn lists_are_exact(&self, g: &GameGraph) -> bool {
        g.alive_vertices().all(|v| {
            let rule = self.rule(g, v);
            if rule.agg == Agg::Max || self.pm[v.index()].is_top() {
                return self.lists.is_empty(v);
            }
            let mut expected: Vec<u32> = g
                .out_edges(v)
                .filter(|&(_, w)| rule.apply(self.pm[w.index()], g.n()) == self.pm[v.index()])
                .map(|(e, _)| e)
                .collect();
            let mut actual: Vec<u32> = self.lists.iter(v).collect();
            expected.sort_unstable();
            actual.sort_unstable();
            expected == actual
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::solve_classical;
    use crate::graph::fixtures::*;
    use PmValue::{Finite, Top};

    fn values(pm: &ProgressMeasure) -> Vec<PmValue> {
        pm.values().to_vec()
    }

    #[test]
    fn succ_arithmetic() {
        assert_eq!(Finite(2).succ(4), Finite(3));
        assert_eq!(Finite(4).succ(4), Top);
        assert_eq!(Top.succ(4), Top);
        assert!(Finite(u32::MAX) < Top);
    }

    #[test]
    fn lift_cases() {
        let g = f4();
        let pm = ProgressMeasure::zero(4);
        assert_eq!(lift_at(&g, &pm, v(1)), Finite(1));
        assert_eq!(lift_at(&g, &pm, v(0)), Finite(0));

        let all_top = ProgressMeasure::from_values(vec![Top; 4]);
        assert_eq!(lift_at(&g, &all_top, v(0)), Top);

        // player-2 non-Büchi vertex with successors at 3 and Top
        let g = graph(
            &[
                (Owner::Player2, false),
                (Owner::Player1, false),
                (Owner::Player1, false),
            ],
            &[(0, 1), (0, 2), (1, 1), (2, 2)],
        );
        let pm = ProgressMeasure::from_values(vec![Finite(0), Finite(3), Top]);
        assert_eq!(lift_at(&g, &pm, v(0)), Top);
    }

    #[test]
    fn colift_cases() {
        let g = f2();
        let pm = ProgressMeasure::zero(3);
        assert_eq!(colift_at(&g, &pm, v(0)), Finite(1));
        assert_eq!(colift_at(&g, &pm, v(2)), Finite(0));

        let g = graph(
            &[
                (Owner::Player2, true),
                (Owner::Player1, false),
                (Owner::Player1, false),
            ],
            &[(0, 1), (0, 2), (1, 1), (2, 2)],
        );
        let pm = ProgressMeasure::from_values(vec![Finite(0), Finite(0), Top]);
        assert_eq!(colift_at(&g, &pm, v(0)), Finite(1));
    }

    #[test]
    fn fixpoint_examples() {
        let pm = least_fixpoint(&f4(), Operator::Lift);
        assert_eq!(
            values(&pm),
            vec![Finite(0), Finite(1), Finite(2), Finite(3)]
        );

        assert_eq!(values(&least_fixpoint(&f2(), Operator::Lift)), vec![Top; 3]);
        assert_eq!(
            values(&least_fixpoint(&f2(), Operator::CoLift)),
            vec![Finite(1), Finite(0), Finite(0)]
        );
        assert_eq!(values(&least_fixpoint(&f1(), Operator::CoLift)), vec![Top]);
    }

    #[test]
    fn decremental_init_matches_fixpoint() {
        for g in [f1(), f2(), f3(), f4(), f5()] {
            let s = DecrementalSolver::new(g.clone());
            assert_eq!(s.pm(), least_fixpoint(&g, Operator::Lift));
            assert!(s.engine.lists_are_exact(&g));
        }
        assert_eq!(values(&DecrementalSolver::new(f1()).pm()), vec![Finite(0)]);
    }

    #[test]
    fn deleting_a_non_witness_keeps_the_measure() {
        let g = graph(
            &[
                (Owner::Player1, true),
                (Owner::Player1, false),
                (Owner::Player1, false),
            ],
            &[(0, 0), (1, 0), (1, 2), (2, 1)],
        );
        let mut s = DecrementalSolver::new(g);
        let before = s.pm();
        s.delete(v(1), v(2)).unwrap();
        assert_eq!(s.pm(), before);
        assert!(s.engine.lists_are_exact(s.graph()));
    }

    #[test]
    fn deletion_climbs_to_top() {
        // b (player 1, Büchi) -> u; u (player 1) -> b, u
        let g = graph(
            &[(Owner::Player1, true), (Owner::Player1, false)],
            &[(0, 1), (1, 0), (1, 1)],
        );
        let mut s = DecrementalSolver::new(g);
        assert_eq!(values(&s.pm()), vec![Finite(0), Finite(1)]);
        let w1 = s.delete(v(1), v(0)).unwrap();
        assert!(w1.is_empty());
        assert_eq!(values(&s.pm()), vec![Top, Top]);
        assert_eq!(s.pm(), least_fixpoint(s.graph(), Operator::Lift));
        // u climbs 2, then Top; b jumps once
        assert_eq!(s.change_counts(), &[1, 2]);
    }

    #[test]
    fn deletion_errors() {
        let mut s = DecrementalSolver::new(f2());
        assert_eq!(
            s.delete(v(1), v(2)),
            Err(GraphError::NotPlayer1Edge(v(1), v(2)))
        );
        assert_eq!(
            s.delete(v(0), v(1)),
            Err(GraphError::LastOutedge(v(0), v(1)))
        );
        assert_eq!(
            s.delete(v(0), v(2)),
            Err(GraphError::NoSuchEdge(v(0), v(2)))
        );
    }

    #[test]
    fn incremental_init_matches_fixpoint() {
        for g in [f1(), f2(), f3(), f4(), f5()] {
            let s = IncrementalSolver::new(g.clone());
            assert_eq!(s.pm(), least_fixpoint(&g, Operator::CoLift));
            assert_eq!(s.winning_set(), solve_classical(&g).w1);
            assert!(s.engine.lists_are_exact(&g));
        }
        assert_eq!(values(&IncrementalSolver::new(f3()).pm()), vec![Top, Top]);
    }

    #[test]
    fn insertion_examples() {
        let mut s = IncrementalSolver::new(f2());
        assert!(s.insert(v(0), v(2)).unwrap().is_empty());

        // b (player 1, Büchi) -> d; d (player 1) -> d
        let g = graph(
            &[(Owner::Player1, true), (Owner::Player1, false)],
            &[(0, 1), (1, 1)],
        );
        let mut s = IncrementalSolver::new(g);
        assert_eq!(s.insert(v(1), v(0)).unwrap(), set(&[0, 1]));
        assert_eq!(values(&s.pm()), vec![Top, Top]);
        assert_eq!(
            s.insert(v(1), v(0)),
            Err(GraphError::EdgeExists(v(1), v(0)))
        );
        assert!(s.engine.lists_are_exact(s.graph()));
    }
}
