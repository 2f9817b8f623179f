//! Multigraph storage with stable edge identities.

mod analysis;
pub mod io;

pub use analysis::{
    deficiency_report, detect_star_structure, is_overfull, overfull_subgraph_check_dense,
    DeficiencyReport, DenseCheck, OverfullVerdict, StarKind, StarProfile,
};

use std::collections::HashMap;
use thiserror::Error;

pub type Vertex = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("loop at vertex {0} rejected")]
    LoopRejected(Vertex),
    #[error("vertex {v} out of range for graph on {n} vertices")]
    VertexOutOfRange { v: Vertex, n: usize },
    #[error("zero multiplicity for pair ({0}, {1})")]
    ZeroMultiplicity(Vertex, Vertex),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Undirected loopless multigraph. Edge ids are never reused, so deleting an
/// edge leaves a hole and every other id keeps its meaning.
#[derive(Debug, Clone, Default)]
pub struct Multigraph {
    n: usize,
    ends: Vec<Option<(Vertex, Vertex)>>,
    inc: Vec<Vec<EdgeId>>,
    pairs: HashMap<(Vertex, Vertex), Vec<EdgeId>>,
    m: usize,
}

pub(crate) fn key(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl Multigraph {
    pub fn new(n: usize) -> Self {
        Multigraph {
            n,
            ends: Vec::new(),
            inc: vec![Vec::new(); n],
            pairs: HashMap::new(),
            m: 0,
        }
    }

    /// Builds a graph from `(u, v, multiplicity)` triples; each unit of
    /// multiplicity becomes its own edge id, in input order.
    pub fn build(n: usize, edge_list: &[(Vertex, Vertex, usize)]) -> Result<Self, GraphError> {
        let mut g = Multigraph::new(n);
        for &(u, v, mult) in edge_list {
            if mult == 0 {
                return Err(GraphError::ZeroMultiplicity(u, v));
            }
            for _ in 0..mult {
                g.add_edge(u, v)?;
            }
        }
        Ok(g)
    }

    pub fn from_simple_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let mut g = Multigraph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<EdgeId, GraphError> {
        for w in [u, v] {
            if w >= self.n {
                return Err(GraphError::VertexOutOfRange { v: w, n: self.n });
            }
        }
        if u == v {
            return Err(GraphError::LoopRejected(u));
        }
        let id = self.ends.len();
        self.ends.push(Some((u, v)));
        self.inc[u].push(id);
        self.inc[v].push(id);
        self.pairs.entry(key(u, v)).or_default().push(id);
        self.m += 1;
        Ok(id)
    }

    /// Appends a fresh isolated vertex and returns its index.
    pub fn add_vertex(&mut self) -> Vertex {
        self.inc.push(Vec::new());
        self.n += 1;
        self.n - 1
    }

    pub fn remove_edge(&mut self, e: EdgeId) -> Option<(Vertex, Vertex)> {
        let (u, v) = self.ends.get(e).copied().flatten()?;
        self.ends[e] = None;
        self.inc[u].retain(|&f| f != e);
        self.inc[v].retain(|&f| f != e);
        let k = key(u, v);
        if let Some(list) = self.pairs.get_mut(&k) {
            list.retain(|&f| f != e);
            if list.is_empty() {
                self.pairs.remove(&k);
            }
        }
        self.m -= 1;
        Some((u, v))
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    /// One past the largest edge id ever issued.
    pub fn edge_capacity(&self) -> usize {
        self.ends.len()
    }

    pub fn endpoints(&self, e: EdgeId) -> Option<(Vertex, Vertex)> {
        self.ends.get(e).copied().flatten()
    }

    pub fn has_edge_id(&self, e: EdgeId) -> bool {
        self.endpoints(e).is_some()
    }

    /// The endpoint of `e` that is not `v`.
    pub fn other(&self, e: EdgeId, v: Vertex) -> Vertex {
        let (a, b) = self.ends[e].expect("live edge");
        if a == v {
            b
        } else {
            a
        }
    }

    /// Live edges in increasing id order.
    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, Vertex, Vertex)> + '_ {
        self.ends
            .iter()
            .enumerate()
            .filter_map(|(id, e)| e.map(|(u, v)| (id, u, v)))
    }

    pub fn edge_ids(&self) -> Vec<EdgeId> {
        self.edges().map(|(e, _, _)| e).collect()
    }

    pub fn incident(&self, v: Vertex) -> &[EdgeId] {
        &self.inc[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.inc[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn multiplicity(&self, u: Vertex, v: Vertex) -> usize {
        self.pairs.get(&key(u, v)).map_or(0, |l| l.len())
    }

    pub fn edges_between(&self, u: Vertex, v: Vertex) -> &[EdgeId] {
        self.pairs.get(&key(u, v)).map_or(&[], |l| l.as_slice())
    }

    /// Distinct neighbours in increasing order.
    pub fn neighbors(&self, v: Vertex) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = self.inc[v].iter().map(|&e| self.other(e, v)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn simple_degree(&self, v: Vertex) -> usize {
        self.neighbors(v).len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// μ(G): largest multiplicity over all vertex pairs.
    pub fn max_multiplicity(&self) -> usize {
        self.pairs.values().map(|l| l.len()).max().unwrap_or(0)
    }

    /// μ(v): largest multiplicity of a pair containing `v`.
    pub fn max_multiplicity_at(&self, v: Vertex) -> usize {
        let mut best = 0;
        for u in self.neighbors(v) {
            best = best.max(self.multiplicity(u, v));
        }
        best
    }

    /// Vertex pairs with multiplicity at least two, sorted.
    pub fn multi_pairs(&self) -> Vec<(Vertex, Vertex)> {
        let mut out: Vec<_> = self
            .pairs
            .iter()
            .filter(|(_, l)| l.len() >= 2)
            .map(|(&k, _)| k)
            .collect();
        out.sort_unstable();
        out
    }

    pub fn is_simple(&self) -> bool {
        self.pairs.values().all(|l| l.len() <= 1)
    }

    /// Same vertex set and edge ids, keeping only edges accepted by `keep`.
    pub fn filter_edges(&self, mut keep: impl FnMut(EdgeId, Vertex, Vertex) -> bool) -> Multigraph {
        let mut g = Multigraph::new(self.n);
        g.ends = vec![None; self.ends.len()];
        for (e, u, v) in self.edges() {
            if keep(e, u, v) {
                g.ends[e] = Some((u, v));
                g.inc[u].push(e);
                g.inc[v].push(e);
                g.pairs.entry(key(u, v)).or_default().push(e);
                g.m += 1;
            }
        }
        g
    }

    /// Drops every edge incident with a vertex in `gone`; indices are kept.
    pub fn without_vertices(&self, gone: &[Vertex]) -> Multigraph {
        let mut mark = vec![false; self.n];
        for &v in gone {
            mark[v] = true;
        }
        self.filter_edges(|_, u, v| !mark[u] && !mark[v])
    }

    /// Induced subgraph on `keep`, relabelled to `0..keep.len()`.
    /// Returns the graph, the old vertex of each new vertex, and the old edge
    /// id of each new edge id.
    pub fn induced_relabel(&self, keep: &[Vertex]) -> (Multigraph, Vec<Vertex>, Vec<EdgeId>) {
        let mut new_of = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            new_of[v] = i;
        }
        let mut g = Multigraph::new(keep.len());
        let mut old_edge = Vec::new();
        for (e, u, v) in self.edges() {
            if new_of[u] != usize::MAX && new_of[v] != usize::MAX {
                g.add_edge(new_of[u], new_of[v]).expect("relabelled edge is valid");
                old_edge.push(e);
            }
        }
        (g, keep.to_vec(), old_edge)
    }

    /// Boolean adjacency matrix of the underlying simple graph.
    pub fn adjacency_matrix(&self) -> Vec<Vec<bool>> {
        let mut adj = vec![vec![false; self.n]; self.n];
        for (_, u, v) in self.edges() {
            adj[u][v] = true;
            adj[v][u] = true;
        }
        adj
    }

    /// Underlying simple graph (one edge per adjacent pair, ids renumbered).
    pub fn underlying_simple(&self) -> Multigraph {
        let mut g = Multigraph::new(self.n);
        for u in 0..self.n {
            for v in self.neighbors(u) {
                if u < v {
                    g.add_edge(u, v).expect("valid");
                }
            }
        }
        g
    }

    /// Two-coloring of the vertices if the graph is bipartite.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut side: Vec<Option<bool>> = vec![None; self.n];
        let mut stack = Vec::new();
        for s in 0..self.n {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            stack.push(s);
            while let Some(u) = stack.pop() {
                let su = side[u].unwrap();
                for &e in &self.inc[u] {
                    let w = self.other(e, u);
                    match side[w] {
                        None => {
                            side[w] = Some(!su);
                            stack.push(w);
                        }
                        Some(sw) if sw == su => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(|s| s.unwrap_or(false)).collect())
    }
}
