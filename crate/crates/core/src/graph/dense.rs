use super::{GraphError, SimpleGraph, VertexLabel};

pub(crate) const MAX_DENSE_VERTICES: usize = 64;

/// Bitmask adjacency over vertex indices `0..n`, indices in label order.
#[derive(Debug, Clone)]
pub(crate) struct DenseGraph {
    pub labels: Vec<VertexLabel>,
    pub adj: Vec<u64>,
}

impl DenseGraph {
    pub fn new(g: &SimpleGraph) -> Result<Self, GraphError> {
        let n = g.vertex_count();
        if n > MAX_DENSE_VERTICES {
            return Err(GraphError::TooLarge { vertices: n, limit: MAX_DENSE_VERTICES });
        }
        let labels: Vec<VertexLabel> = g.vertices().cloned().collect();
        let index = |v: &VertexLabel| labels.binary_search(v).expect("endpoint is a vertex");
        let mut adj = vec![0u64; n];
        for (a, b) in g.edges() {
            let (i, j) = (index(a), index(b));
            adj[i] |= 1 << j;
            adj[j] |= 1 << i;
        }
        Ok(Self { labels, adj })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn degree(&self, v: usize) -> u32 {
        self.adj[v].count_ones()
    }

    /// Open neighbourhood of a vertex set.
    pub fn neighborhood(&self, set: u64) -> u64 {
        bits(set).fold(0, |acc, v| acc | self.adj[v]) & !set
    }

    /// The connected component of `start` inside `within`.
    pub fn component(&self, start: usize, within: u64) -> u64 {
        let mut comp = 1u64 << start;
        let mut frontier = comp;
        while frontier != 0 {
            let next = self.neighborhood_raw(frontier) & within & !comp;
            comp |= next;
            frontier = next;
        }
        comp
    }

    fn neighborhood_raw(&self, set: u64) -> u64 {
        bits(set).fold(0, |acc, v| acc | self.adj[v])
    }
}

/// Indices of the set bits, ascending.
pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}
