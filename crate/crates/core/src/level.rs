//! Sparsified level views of a game graph.
//!
//! Level `i` keeps every outedge of a vertex whose current outdegree is at
//! most `2^i`. Vertices above that degree are coloured (blue for player 1,
//! orange for player 2); in the Büchi variant their edges survive only
//! through the inedge window of the target, i.e. the first `2^i` surviving
//! inedges in the fixed order. The MEC variant has no window and colours
//! every high-degree vertex blue. Views are snapshots in CSR form and are
//! rebuilt from the current graph whenever they are needed.

use crate::graph::{EdgeView, GameGraph, Owner, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Color {
    White,
    Blue,
    Orange,
}

/// Number of levels for an `n`-vertex graph: `ceil(log2(max(2, n)))`.
///
/// At the top level `2^L >= n`, so no vertex is coloured and the view is the
/// full surviving graph.
pub fn level_count(n: usize) -> u32 {
    let n = n.max(2);
    usize::BITS - (n - 1).leading_zeros()
}

fn capacity(level: u32) -> u64 {
    1u64.checked_shl(level).unwrap_or(u64::MAX)
}

/// The edge subset `E_i` with its vertex colouring.
#[derive(Clone, Debug)]
pub struct LevelView<'g> {
    graph: &'g GameGraph,
    level: u32,
    color: Vec<Color>,
    out_start: Vec<u32>,
    out_adj: Vec<u32>,
    in_start: Vec<u32>,
    in_adj: Vec<u32>,
    work: u64,
}

impl<'g> LevelView<'g> {
    /// Büchi level view: outedges of white vertices plus the inedge windows.
    pub fn buchi(graph: &'g GameGraph, level: u32) -> Self {
        let cap = capacity(level);
        let mut work = 0u64;
        let mut color = vec![Color::White; graph.n()];
        for v in graph.alive_vertices() {
            work += 1;
            if graph.out_degree(v) as u64 > cap {
                color[v.index()] = match graph.owner(v) {
                    Owner::Player1 => Color::Blue,
                    Owner::Player2 => Color::Orange,
                };
            }
        }

        let mut edges = Vec::new();
        for v in graph.alive_vertices() {
            // Edges of white sources are taken from the source side below.
            for u in graph
                .predecessors(v)
                .take(cap.min(usize::MAX as u64) as usize)
            {
                work += 1;
                if color[u.index()] != Color::White {
                    edges.push((u.index() as u32, v.index() as u32));
                }
            }
            if color[v.index()] == Color::White {
                for w in graph.successors(v) {
                    work += 1;
                    edges.push((v.index() as u32, w.index() as u32));
                }
            }
        }
        Self::from_edges(graph, level, color, &edges, work)
    }

    /// MEC level view: only outedges of white vertices, blue = high degree.
    pub fn mec(graph: &'g GameGraph, level: u32) -> Self {
        let cap = capacity(level);
        let mut work = 0u64;
        let mut color = vec![Color::White; graph.n()];
        let mut edges = Vec::new();
        for v in graph.alive_vertices() {
            work += 1;
            if graph.out_degree(v) as u64 > cap {
                color[v.index()] = Color::Blue;
                continue;
            }
            for w in graph.successors(v) {
                work += 1;
                edges.push((v.index() as u32, w.index() as u32));
            }
        }
        Self::from_edges(graph, level, color, &edges, work)
    }

    fn from_edges(
        graph: &'g GameGraph,
        level: u32,
        color: Vec<Color>,
        edges: &[(u32, u32)],
        mut work: u64,
    ) -> Self {
        let n = graph.n();
        let mut out_start = vec![0u32; n + 1];
        let mut in_start = vec![0u32; n + 1];
        for &(u, v) in edges {
            out_start[u as usize + 1] += 1;
            in_start[v as usize + 1] += 1;
        }
        for i in 0..n {
            out_start[i + 1] += out_start[i];
            in_start[i + 1] += in_start[i];
        }
        let mut out_fill = out_start.clone();
        let mut in_fill = in_start.clone();
        let mut out_adj = vec![0u32; edges.len()];
        let mut in_adj = vec![0u32; edges.len()];
        for &(u, v) in edges {
            out_adj[out_fill[u as usize] as usize] = v;
            out_fill[u as usize] += 1;
            in_adj[in_fill[v as usize] as usize] = u;
            in_fill[v as usize] += 1;
        }
        work += edges.len() as u64;
        LevelView {
            graph,
            level,
            color,
            out_start,
            out_adj,
            in_start,
            in_adj,
            work,
        }
    }

    pub fn graph(&self) -> &'g GameGraph {
        self.graph
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn color(&self, v: VertexId) -> Color {
        self.color[v.index()]
    }

    pub fn edge_count(&self) -> usize {
        self.out_adj.len()
    }

    pub fn contains_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.out_slice(u).contains(&(v.index() as u32))
    }

    /// All view edges, grouped by source.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        (0..self.graph.n()).flat_map(move |u| {
            self.out_slice(VertexId::new(u))
                .iter()
                .map(move |&w| (VertexId::new(u), VertexId::new(w as usize)))
        })
    }

    /// Operations spent building the view.
    pub fn work(&self) -> u64 {
        self.work
    }

    fn out_slice(&self, v: VertexId) -> &[u32] {
        let i = v.index();
        &self.out_adj[self.out_start[i] as usize..self.out_start[i + 1] as usize]
    }

    fn in_slice(&self, v: VertexId) -> &[u32] {
        let i = v.index();
        &self.in_adj[self.in_start[i] as usize..self.in_start[i + 1] as usize]
    }
}

/// Iterator over one CSR adjacency row.
#[derive(Clone)]
pub struct Row<'a>(std::slice::Iter<'a, u32>);

impl Iterator for Row<'_> {
    type Item = VertexId;

    #[inline]
    fn next(&mut self) -> Option<VertexId> {
        self.0.next().map(|&w| VertexId::new(w as usize))
    }
}

impl EdgeView for LevelView<'_> {
    type Succ<'a>
        = Row<'a>
    where
        Self: 'a;
    type Pred<'a>
        = Row<'a>
    where
        Self: 'a;

    fn vertex_bound(&self) -> usize {
        self.graph.n()
    }

    fn contains_vertex(&self, v: VertexId) -> bool {
        self.graph.is_alive(v)
    }

    fn successors(&self, v: VertexId) -> Row<'_> {
        Row(self.out_slice(v).iter())
    }

    fn predecessors(&self, v: VertexId) -> Row<'_> {
        Row(self.in_slice(v).iter())
    }

    fn out_degree(&self, v: VertexId) -> usize {
        self.out_slice(v).len()
    }
}
