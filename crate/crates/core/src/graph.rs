//! Mutable game graphs with ownership, Büchi marking and a fixed inedge order.
//!
//! Adjacency is kept as intrusive doubly-linked lists over an edge arena, so
//! removing an edge or a vertex unlinks entries in constant time per edge and
//! iteration never walks over tombstones. The inedge list of every vertex is
//! ordered so that edges from player-2 non-Büchi sources come first; inside
//! each group the order is the order in which edges were created.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

pub(crate) const NIL: u32 = u32::MAX;

/// Dense vertex identifier in `[0, n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(u32);

impl VertexId {
    pub const fn new(index: usize) -> Self {
        VertexId(index as u32)
    }

    #[inline]
    pub const fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for VertexId {
    fn from(index: usize) -> Self {
        VertexId::new(index)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The player owning a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Owner {
    Player1,
    Player2,
}

impl Owner {
    pub fn opponent(self) -> Owner {
        match self {
            Owner::Player1 => Owner::Player2,
            Owner::Player2 => Owner::Player1,
        }
    }
}

impl fmt::Display for Owner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Owner::Player1 => write!(f, "player 1"),
            Owner::Player2 => write!(f, "player 2"),
        }
    }
}

/// A sorted, duplicate-free set of vertices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct VertexSet(Vec<VertexId>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(Vec::new())
    }

    /// Builds a set from a membership mask.
    pub fn from_mask(mask: &[bool]) -> Self {
        VertexSet(
            mask.iter()
                .enumerate()
                .filter(|(_, &m)| m)
                .map(|(i, _)| VertexId::new(i))
                .collect(),
        )
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = VertexId> + ExactSizeIterator + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[VertexId] {
        &self.0
    }

    /// Membership mask over the id space `[0, n)`.
    pub fn to_mask(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for v in &self.0 {
            mask[v.index()] = true;
        }
        mask
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.iter().all(|&v| other.contains(v))
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.0.iter().all(|&v| !other.contains(v))
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.iter().chain(other.iter()).collect()
    }

    pub fn first(&self) -> Option<VertexId> {
        self.0.first().copied()
    }
}

impl FromIterator<VertexId> for VertexSet {
    fn from_iter<I: IntoIterator<Item = VertexId>>(iter: I) -> Self {
        let mut v: Vec<VertexId> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = VertexId;
    type IntoIter = std::iter::Copied<std::slice::Iter<'a, VertexId>>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter().copied()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex id {0} is out of range")]
    InvalidVertex(usize),
    #[error("vertex {0} has no outgoing edge")]
    ZeroOutdegree(VertexId),
    #[error("edge ({0}, {1}) appears more than once")]
    DuplicateEdge(VertexId, VertexId),
    #[error("vertex {0} is already removed")]
    AlreadyDead(VertexId),
    #[error("vertex {0} is removed")]
    VertexDead(VertexId),
    #[error("edge ({0}, {1}) does not leave a player-1 vertex")]
    NotPlayer1Edge(VertexId, VertexId),
    #[error("edge ({0}, {1}) is the last outgoing edge of {0}")]
    LastOutedge(VertexId, VertexId),
    #[error("edge ({0}, {1}) does not exist")]
    NoSuchEdge(VertexId, VertexId),
    #[error("edge ({0}, {1}) already exists")]
    EdgeExists(VertexId, VertexId),
}

#[derive(Clone, Debug)]
struct EdgeRec {
    src: u32,
    dst: u32,
    out_prev: u32,
    out_next: u32,
    in_prev: u32,
    in_next: u32,
}

/// An alternating game graph with a Büchi objective for player 1.
#[derive(Clone, Debug)]
pub struct GameGraph {
    owner: Vec<Owner>,
    buchi: Vec<bool>,
    alive: Vec<bool>,
    alive_count: usize,
    out_head: Vec<u32>,
    out_tail: Vec<u32>,
    in_head: Vec<u32>,
    in_tail: Vec<u32>,
    out_deg: Vec<u32>,
    in_deg: Vec<u32>,
    edges: Vec<EdgeRec>,
    edge_alive: Vec<bool>,
    edge_count: usize,
}

impl GameGraph {
    /// Builds a graph from vertex records `(owner, is_buchi)` and an edge list.
    ///
    /// The edge list order is the tie-breaking order inside both inedge
    /// groups and the order of every outedge list.
    pub fn build(
        vertices: &[(Owner, bool)],
        edges: &[(VertexId, VertexId)],
    ) -> Result<GameGraph, GraphError> {
        let n = vertices.len();
        let mut g = GameGraph {
            owner: vertices.iter().map(|&(o, _)| o).collect(),
            buchi: vertices.iter().map(|&(_, b)| b).collect(),
            alive: vec![true; n],
            alive_count: n,
            out_head: vec![NIL; n],
            out_tail: vec![NIL; n],
            in_head: vec![NIL; n],
            in_tail: vec![NIL; n],
            out_deg: vec![0; n],
            in_deg: vec![0; n],
            edges: Vec::with_capacity(edges.len()),
            edge_alive: Vec::with_capacity(edges.len()),
            edge_count: 0,
        };

        let mut seen = HashSet::with_capacity(edges.len());
        for &(u, v) in edges {
            for w in [u, v] {
                if w.index() >= n {
                    return Err(GraphError::InvalidVertex(w.index()));
                }
            }
            if !seen.insert((u, v)) {
                return Err(GraphError::DuplicateEdge(u, v));
            }
        }

        for &(u, v) in edges {
            let e = g.new_edge(u, v);
            g.link_out(e);
        }
        // Two passes so that sources of the first group precede all others.
        for pass in [true, false] {
            for e in 0..g.edges.len() as u32 {
                let src = g.edges[e as usize].src as usize;
                if g.is_first_group_source(src) == pass {
                    g.link_in_tail(e);
                }
            }
        }

        for v in 0..n {
            if g.out_deg[v] == 0 {
                return Err(GraphError::ZeroOutdegree(VertexId::new(v)));
            }
        }
        Ok(g)
    }

    fn is_first_group_source(&self, u: usize) -> bool {
        self.owner[u] == Owner::Player2 && !self.buchi[u]
    }

    fn new_edge(&mut self, u: VertexId, v: VertexId) -> u32 {
        let e = self.edges.len() as u32;
        self.edges.push(EdgeRec {
            src: u.0,
            dst: v.0,
            out_prev: NIL,
            out_next: NIL,
            in_prev: NIL,
            in_next: NIL,
        });
        self.edge_alive.push(true);
        self.edge_count += 1;
        e
    }

    fn link_out(&mut self, e: u32) {
        let u = self.edges[e as usize].src as usize;
        let tail = self.out_tail[u];
        self.edges[e as usize].out_prev = tail;
        if tail == NIL {
            self.out_head[u] = e;
        } else {
            self.edges[tail as usize].out_next = e;
        }
        self.out_tail[u] = e;
        self.out_deg[u] += 1;
    }

    fn link_in_tail(&mut self, e: u32) {
        let v = self.edges[e as usize].dst as usize;
        let tail = self.in_tail[v];
        self.edges[e as usize].in_prev = tail;
        if tail == NIL {
            self.in_head[v] = e;
        } else {
            self.edges[tail as usize].in_next = e;
        }
        self.in_tail[v] = e;
        self.in_deg[v] += 1;
    }

    fn unlink(&mut self, e: u32) {
        let EdgeRec {
            src,
            dst,
            out_prev,
            out_next,
            in_prev,
            in_next,
        } = self.edges[e as usize].clone();
        let (u, v) = (src as usize, dst as usize);

        if out_prev == NIL {
            self.out_head[u] = out_next;
        } else {
            self.edges[out_prev as usize].out_next = out_next;
        }
        if out_next == NIL {
            self.out_tail[u] = out_prev;
        } else {
            self.edges[out_next as usize].out_prev = out_prev;
        }

        if in_prev == NIL {
            self.in_head[v] = in_next;
        } else {
            self.edges[in_prev as usize].in_next = in_next;
        }
        if in_next == NIL {
            self.in_tail[v] = in_prev;
        } else {
            self.edges[in_next as usize].in_prev = in_prev;
        }

        self.out_deg[u] -= 1;
        self.in_deg[v] -= 1;
        self.edge_alive[e as usize] = false;
        self.edge_count -= 1;
    }

    /// Size of the vertex id space, including removed vertices.
    pub fn n(&self) -> usize {
        self.owner.len()
    }

    pub fn alive_count(&self) -> usize {
        self.alive_count
    }

    /// Number of surviving edges.
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn owner(&self, v: VertexId) -> Owner {
        self.owner[v.index()]
    }

    pub fn is_buchi(&self, v: VertexId) -> bool {
        self.buchi[v.index()]
    }

    pub fn is_alive(&self, v: VertexId) -> bool {
        self.alive[v.index()]
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        self.out_deg[v.index()] as usize
    }

    pub fn in_degree(&self, v: VertexId) -> usize {
        self.in_deg[v.index()] as usize
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.n()).map(VertexId::new)
    }

    pub fn alive_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices().filter(move |&v| self.is_alive(v))
    }

    /// Surviving Büchi vertices.
    pub fn buchi_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.alive_vertices().filter(move |&v| self.is_buchi(v))
    }

    /// Surviving out-neighbours of `v` in insertion order.
    pub fn successors(&self, v: VertexId) -> Successors<'_> {
        Successors {
            graph: self,
            cursor: self.out_head[v.index()],
        }
    }

    /// Surviving in-neighbours of `v` in the fixed inedge order.
    pub fn predecessors(&self, v: VertexId) -> Predecessors<'_> {
        Predecessors {
            graph: self,
            cursor: self.in_head[v.index()],
        }
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.find_edge(u, v).is_some()
    }

    /// All surviving edges in creation order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.edges
            .iter()
            .zip(&self.edge_alive)
            .filter(|(_, &a)| a)
            .map(|(e, _)| (VertexId(e.src), VertexId(e.dst)))
    }

    /// Vertex records in the form accepted by [`GameGraph::build`].
    pub fn vertex_records(&self) -> Vec<(Owner, bool)> {
        self.owner
            .iter()
            .copied()
            .zip(self.buchi.iter().copied())
            .collect()
    }

    /// Removes every vertex of `set` together with its incident edges.
    ///
    /// The call is atomic: if some vertex is already removed (or listed
    /// twice) nothing is changed.
    pub fn remove_vertices<I>(&mut self, set: I) -> Result<(), GraphError>
    where
        I: IntoIterator<Item = VertexId>,
    {
        let set: Vec<VertexId> = set.into_iter().collect();
        for &v in &set {
            if v.index() >= self.n() {
                return Err(GraphError::InvalidVertex(v.index()));
            }
        }
        let mut marked = Vec::with_capacity(set.len());
        let mut failure = None;
        for &v in &set {
            if !self.alive[v.index()] {
                failure = Some(GraphError::AlreadyDead(v));
                break;
            }
            self.alive[v.index()] = false;
            marked.push(v);
        }
        if let Some(err) = failure {
            for v in marked {
                self.alive[v.index()] = true;
            }
            return Err(err);
        }

        for &v in &set {
            let v = v.index();
            while self.out_head[v] != NIL {
                let e = self.out_head[v];
                self.unlink(e);
            }
            while self.in_head[v] != NIL {
                let e = self.in_head[v];
                self.unlink(e);
            }
        }
        self.alive_count -= set.len();
        Ok(())
    }

    /// Deletes the player-1 edge `(u, v)`; `u` must keep another outedge.
    pub fn delete_edge(&mut self, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        self.delete_edge_id(u, v).map(|_| ())
    }

    pub(crate) fn delete_edge_id(&mut self, u: VertexId, v: VertexId) -> Result<u32, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if self.owner(u) != Owner::Player1 {
            return Err(GraphError::NotPlayer1Edge(u, v));
        }
        let e = self.find_edge(u, v).ok_or(GraphError::NoSuchEdge(u, v))?;
        if self.out_degree(u) < 2 {
            return Err(GraphError::LastOutedge(u, v));
        }
        self.unlink(e);
        Ok(e)
    }

    /// Inserts the player-1 edge `(u, v)` at the end of both adjacency lists.
    pub fn insert_edge(&mut self, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        self.insert_edge_id(u, v).map(|_| ())
    }

    pub(crate) fn insert_edge_id(&mut self, u: VertexId, v: VertexId) -> Result<u32, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if self.owner(u) != Owner::Player1 {
            return Err(GraphError::NotPlayer1Edge(u, v));
        }
        for w in [u, v] {
            if !self.is_alive(w) {
                return Err(GraphError::VertexDead(w));
            }
        }
        if self.has_edge(u, v) {
            return Err(GraphError::EdgeExists(u, v));
        }
        // Player-1 sources always belong to the second inedge group, which
        // is the tail of the list.
        let e = self.new_edge(u, v);
        self.link_out(e);
        self.link_in_tail(e);
        Ok(e)
    }

    fn check_vertex(&self, v: VertexId) -> Result<(), GraphError> {
        if v.index() >= self.n() {
            Err(GraphError::InvalidVertex(v.index()))
        } else {
            Ok(())
        }
    }

    pub(crate) fn find_edge(&self, u: VertexId, v: VertexId) -> Option<u32> {
        self.out_edges(u).find(|&(_, w)| w == v).map(|(e, _)| e)
    }

    /// Upper bound (exclusive) on edge ids handed out so far.
    pub(crate) fn edge_id_bound(&self) -> usize {
        self.edges.len()
    }

    /// `(edge id, target)` for every surviving outedge of `v`.
    pub(crate) fn out_edges(&self, v: VertexId) -> impl Iterator<Item = (u32, VertexId)> + '_ {
        let mut cursor = self.out_head[v.index()];
        std::iter::from_fn(move || {
            if cursor == NIL {
                return None;
            }
            let e = cursor;
            let rec = &self.edges[e as usize];
            cursor = rec.out_next;
            Some((e, VertexId(rec.dst)))
        })
    }

    /// `(edge id, source)` for every surviving inedge of `v`, in the fixed order.
    pub(crate) fn in_edges(&self, v: VertexId) -> impl Iterator<Item = (u32, VertexId)> + '_ {
        let mut cursor = self.in_head[v.index()];
        std::iter::from_fn(move || {
            if cursor == NIL {
                return None;
            }
            let e = cursor;
            let rec = &self.edges[e as usize];
            cursor = rec.in_next;
            Some((e, VertexId(rec.src)))
        })
    }
}

/// Iterator over surviving out-neighbours.
#[derive(Clone)]
pub struct Successors<'a> {
    graph: &'a GameGraph,
    cursor: u32,
}

impl Iterator for Successors<'_> {
    type Item = VertexId;

    #[inline]
    fn next(&mut self) -> Option<VertexId> {
        if self.cursor == NIL {
            return None;
        }
        let rec = &self.graph.edges[self.cursor as usize];
        self.cursor = rec.out_next;
        Some(VertexId(rec.dst))
    }
}

/// Iterator over surviving in-neighbours in the fixed order.
#[derive(Clone)]
pub struct Predecessors<'a> {
    graph: &'a GameGraph,
    cursor: u32,
}

impl Iterator for Predecessors<'_> {
    type Item = VertexId;

    #[inline]
    fn next(&mut self) -> Option<VertexId> {
        if self.cursor == NIL {
            return None;
        }
        let rec = &self.graph.edges[self.cursor as usize];
        self.cursor = rec.in_next;
        Some(VertexId(rec.src))
    }
}

/// A read-only edge set over the vertices of a game graph.
///
/// Implemented by the full surviving graph and by sparsified level views.
pub trait EdgeView {
    type Succ<'a>: Iterator<Item = VertexId>
    where
        Self: 'a;
    type Pred<'a>: Iterator<Item = VertexId>
    where
        Self: 'a;

    /// Size of the vertex id space.
    fn vertex_bound(&self) -> usize;
    fn contains_vertex(&self, v: VertexId) -> bool;
    fn successors(&self, v: VertexId) -> Self::Succ<'_>;
    fn predecessors(&self, v: VertexId) -> Self::Pred<'_>;
    fn out_degree(&self, v: VertexId) -> usize;
}

impl EdgeView for GameGraph {
    type Succ<'a> = Successors<'a>;
    type Pred<'a> = Predecessors<'a>;

    fn vertex_bound(&self) -> usize {
        self.n()
    }

    fn contains_vertex(&self, v: VertexId) -> bool {
        self.is_alive(v)
    }

    fn successors(&self, v: VertexId) -> Successors<'_> {
        GameGraph::successors(self, v)
    }

    fn predecessors(&self, v: VertexId) -> Predecessors<'_> {
        GameGraph::predecessors(self, v)
    }

    fn out_degree(&self, v: VertexId) -> usize {
        GameGraph::out_degree(self, v)
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    pub fn v(i: usize) -> VertexId {
        VertexId::new(i)
    }

    pub fn graph(vertices: &[(Owner, bool)], edges: &[(usize, usize)]) -> GameGraph {
        let edges: Vec<_> = edges.iter().map(|&(a, b)| (v(a), v(b))).collect();
        GameGraph::build(vertices, &edges).unwrap()
    }

    /// Single player-1 Büchi vertex with a self-loop.
    pub fn f1() -> GameGraph {
        graph(&[(Owner::Player1, true)], &[(0, 0)])
    }

    /// b (player 1, Büchi) -> u; u (player 2) -> b, c; c (player 2) -> c.
    pub fn f2() -> GameGraph {
        graph(
            &[
                (Owner::Player1, true),
                (Owner::Player2, false),
                (Owner::Player2, false),
            ],
            &[(0, 1), (1, 0), (1, 2), (2, 2)],
        )
    }

    /// Two-cycle through a player-2 Büchi vertex.
    pub fn f3() -> GameGraph {
        graph(
            &[(Owner::Player2, true), (Owner::Player1, false)],
            &[(0, 1), (1, 0)],
        )
    }

    /// Chain v3 -> v2 -> v1 -> v0 of player-1 vertices, v0 Büchi with self-loop.
    pub fn f4() -> GameGraph {
        graph(
            &[
                (Owner::Player1, true),
                (Owner::Player1, false),
                (Owner::Player1, false),
                (Owner::Player1, false),
            ],
            &[(0, 0), (1, 0), (2, 1), (3, 2)],
        )
    }

    /// a, b (player 2) with a <-> b and a -> c; c (player 1) with a self-loop.
    pub fn f5() -> GameGraph {
        graph(
            &[
                (Owner::Player2, false),
                (Owner::Player2, false),
                (Owner::Player1, false),
            ],
            &[(0, 1), (1, 0), (0, 2), (2, 2)],
        )
    }

    pub fn set(ids: &[usize]) -> VertexSet {
        ids.iter().map(|&i| v(i)).collect()
    }
}
