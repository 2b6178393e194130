//! Finite simple undirected graphs over opaque labels.

mod dense;
mod iso;
pub mod json;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub(crate) use dense::{bits, DenseGraph, MAX_DENSE_VERTICES};
pub use iso::{are_isomorphic, are_isomorphic_within, is_isomorphism, DEFAULT_ISO_LIMIT};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(VertexLabel),
    #[error("loop at {0}: simple graphs have no loops")]
    Loop(VertexLabel),
    #[error("duplicate vertex label {0}")]
    DuplicateVertex(VertexLabel),
    #[error("edge {0}-{1} is not in the graph")]
    UnknownEdge(VertexLabel, VertexLabel),
    #[error("graph has {vertices} vertices; this operation is limited to {limit}")]
    TooLarge { vertices: usize, limit: usize },
    #[error("malformed graph: {0}")]
    Parse(String),
}

/// Vertex label: an integer or a string. Integers sort numerically and
/// before all strings.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VertexLabel {
    Int(i64),
    Str(String),
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexLabel::Int(i) => write!(f, "{i}"),
            VertexLabel::Str(s) => f.write_str(s),
        }
    }
}

impl From<i64> for VertexLabel {
    fn from(i: i64) -> Self {
        VertexLabel::Int(i)
    }
}

impl From<&str> for VertexLabel {
    fn from(s: &str) -> Self {
        VertexLabel::Str(s.to_owned())
    }
}

impl From<String> for VertexLabel {
    fn from(s: String) -> Self {
        VertexLabel::Str(s)
    }
}

/// Edges are stored as `(a, b)` with `a < b`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SimpleGraph {
    vertices: BTreeSet<VertexLabel>,
    edges: BTreeSet<(VertexLabel, VertexLabel)>,
}

fn ordered(a: VertexLabel, b: VertexLabel) -> (VertexLabel, VertexLabel) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

impl SimpleGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a graph from vertex and edge lists. Repeated edges collapse;
    /// loops and endpoints outside `vertices` are errors.
    pub fn from_parts<V, E, L>(vertices: V, edges: E) -> Result<Self, GraphError>
    where
        V: IntoIterator<Item = L>,
        E: IntoIterator<Item = (L, L)>,
        L: Into<VertexLabel>,
    {
        let mut g = Self::new();
        for v in vertices {
            let v = v.into();
            if g.vertices.contains(&v) {
                return Err(GraphError::DuplicateVertex(v));
            }
            g.vertices.insert(v);
        }
        for (a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    /// Adds `v`; returns false if it was already present.
    pub fn add_vertex(&mut self, v: impl Into<VertexLabel>) -> bool {
        self.vertices.insert(v.into())
    }

    /// Adds the edge `ab`; returns false if it was already present.
    pub fn add_edge(
        &mut self,
        a: impl Into<VertexLabel>,
        b: impl Into<VertexLabel>,
    ) -> Result<bool, GraphError> {
        let (a, b) = (a.into(), b.into());
        if a == b {
            return Err(GraphError::Loop(a));
        }
        for v in [&a, &b] {
            if !self.vertices.contains(v) {
                return Err(GraphError::UnknownVertex(v.clone()));
            }
        }
        Ok(self.edges.insert(ordered(a, b)))
    }

    pub fn remove_edge(&mut self, a: &VertexLabel, b: &VertexLabel) -> Result<(), GraphError> {
        if self.edges.remove(&ordered(a.clone(), b.clone())) {
            Ok(())
        } else {
            Err(GraphError::UnknownEdge(a.clone(), b.clone()))
        }
    }

    /// Removes `v` and every edge incident to it.
    pub fn remove_vertex(&mut self, v: &VertexLabel) -> Result<(), GraphError> {
        if !self.vertices.remove(v) {
            return Err(GraphError::UnknownVertex(v.clone()));
        }
        self.edges.retain(|(a, b)| a != v && b != v);
        Ok(())
    }

    pub fn vertices(&self) -> impl ExactSizeIterator<Item = &VertexLabel> + '_ {
        self.vertices.iter()
    }

    pub fn vertex_set(&self) -> &BTreeSet<VertexLabel> {
        &self.vertices
    }

    /// Edges as `(a, b)` with `a < b`, in ascending order.
    pub fn edges(&self) -> impl ExactSizeIterator<Item = (&VertexLabel, &VertexLabel)> + '_ {
        self.edges.iter().map(|(a, b)| (a, b))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains_vertex(&self, v: &VertexLabel) -> bool {
        self.vertices.contains(v)
    }

    pub fn has_edge(&self, a: &VertexLabel, b: &VertexLabel) -> bool {
        self.edges.contains(&ordered(a.clone(), b.clone()))
    }

    pub fn neighbors<'a>(&'a self, v: &'a VertexLabel) -> impl Iterator<Item = &'a VertexLabel> + 'a {
        self.edges.iter().filter_map(move |(a, b)| {
            if a == v {
                Some(b)
            } else if b == v {
                Some(a)
            } else {
                None
            }
        })
    }

    pub fn degree(&self, v: &VertexLabel) -> usize {
        self.neighbors(v).count()
    }

    pub fn adjacency(&self) -> BTreeMap<&VertexLabel, BTreeSet<&VertexLabel>> {
        let mut adj: BTreeMap<_, BTreeSet<_>> = self.vertices.iter().map(|v| (v, BTreeSet::new())).collect();
        for (a, b) in &self.edges {
            adj.get_mut(a).expect("endpoint").insert(b);
            adj.get_mut(b).expect("endpoint").insert(a);
        }
        adj
    }

    /// `G[W]`. Fails if `W` is not a subset of `V(G)`.
    pub fn induced_subgraph<'a, I>(&self, subset: I) -> Result<SimpleGraph, GraphError>
    where
        I: IntoIterator<Item = &'a VertexLabel>,
    {
        let mut vertices = BTreeSet::new();
        for v in subset {
            if !self.vertices.contains(v) {
                return Err(GraphError::UnknownVertex(v.clone()));
            }
            vertices.insert(v.clone());
        }
        let edges = self
            .edges
            .iter()
            .filter(|(a, b)| vertices.contains(a) && vertices.contains(b))
            .cloned()
            .collect();
        Ok(SimpleGraph { vertices, edges })
    }

    /// The empty graph and single vertices count as connected.
    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// Vertex sets of the connected components, each sorted, in order of
    /// their smallest label.
    pub fn connected_components(&self) -> Vec<BTreeSet<VertexLabel>> {
        let adj = self.adjacency();
        let mut seen: BTreeSet<&VertexLabel> = BTreeSet::new();
        let mut out = Vec::new();
        for start in &self.vertices {
            if !seen.insert(start) {
                continue;
            }
            let mut block = BTreeSet::new();
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                block.insert(v.clone());
                for &w in &adj[v] {
                    if seen.insert(w) {
                        queue.push_back(w);
                    }
                }
            }
            out.push(block);
        }
        out
    }

    /// A shortest path from `from` to `to` (inclusive), if one exists.
    pub fn shortest_path(&self, from: &VertexLabel, to: &VertexLabel) -> Option<Vec<VertexLabel>> {
        if !self.contains_vertex(from) || !self.contains_vertex(to) {
            return None;
        }
        let adj = self.adjacency();
        let mut parent: BTreeMap<&VertexLabel, &VertexLabel> = BTreeMap::new();
        let mut queue = VecDeque::from([from]);
        parent.insert(from, from);
        while let Some(v) = queue.pop_front() {
            if v == to {
                let mut path = vec![v.clone()];
                let mut cur = v;
                while cur != from {
                    cur = parent[cur];
                    path.push(cur.clone());
                }
                path.reverse();
                return Some(path);
            }
            for &w in &adj[v] {
                if !parent.contains_key(w) {
                    parent.insert(w, v);
                    queue.push_back(w);
                }
            }
        }
        None
    }

    /// Relabels vertices through `f`, which must be injective on `V(G)`.
    pub fn relabel<F>(&self, mut f: F) -> Result<SimpleGraph, GraphError>
    where
        F: FnMut(&VertexLabel) -> VertexLabel,
    {
        let map: BTreeMap<&VertexLabel, VertexLabel> = self.vertices.iter().map(|v| (v, f(v))).collect();
        SimpleGraph::from_parts(
            map.values().cloned(),
            self.edges.iter().map(|(a, b)| (map[a].clone(), map[b].clone())),
        )
    }
}

/// Small named graphs used across tests and examples.
pub mod named {
    use super::SimpleGraph;

    fn ints(n: usize) -> impl Iterator<Item = i64> {
        0..n as i64
    }

    pub fn complete(n: usize) -> SimpleGraph {
        let edges = ints(n).flat_map(|a| ints(n).filter(move |&b| a < b).map(move |b| (a, b)));
        SimpleGraph::from_parts(ints(n), edges).expect("valid")
    }

    pub fn path(n: usize) -> SimpleGraph {
        SimpleGraph::from_parts(ints(n), ints(n.saturating_sub(1)).map(|a| (a, a + 1))).expect("valid")
    }

    pub fn cycle(n: usize) -> SimpleGraph {
        assert!(n >= 3, "cycles need at least 3 vertices");
        let n = n as i64;
        SimpleGraph::from_parts(0..n, (0..n).map(|a| (a, (a + 1) % n))).expect("valid")
    }

    pub fn empty(n: usize) -> SimpleGraph {
        SimpleGraph::from_parts(ints(n), std::iter::empty()).expect("valid")
    }

    /// `K_{1,n}` with centre 0.
    pub fn star(n: usize) -> SimpleGraph {
        SimpleGraph::from_parts(ints(n + 1), (1..=n as i64).map(|b| (0, b))).expect("valid")
    }

    /// Outer 5-cycle 0..5, inner pentagram 5..10, spokes i -- i+5.
    pub fn petersen() -> SimpleGraph {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        SimpleGraph::from_parts(0..10, outer.chain(inner).chain(spokes)).expect("valid")
    }
}
