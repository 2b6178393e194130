//! Isomorphism testing for small graphs: invariant checks, colour
//! refinement, then backtracking inside colour classes.

use std::collections::BTreeMap;

use super::{bits, DenseGraph, GraphError, SimpleGraph, VertexLabel, MAX_DENSE_VERTICES};

pub const DEFAULT_ISO_LIMIT: usize = 12;

/// An edge-preserving bijection `V(G) -> V(H)`, or `None`.
///
/// Graphs with different vertex counts, edge counts or degree sequences are
/// answered without search; otherwise graphs larger than
/// [`DEFAULT_ISO_LIMIT`] vertices are refused.
pub fn are_isomorphic(
    g: &SimpleGraph,
    h: &SimpleGraph,
) -> Result<Option<BTreeMap<VertexLabel, VertexLabel>>, GraphError> {
    are_isomorphic_within(g, h, DEFAULT_ISO_LIMIT)
}

pub fn are_isomorphic_within(
    g: &SimpleGraph,
    h: &SimpleGraph,
    limit: usize,
) -> Result<Option<BTreeMap<VertexLabel, VertexLabel>>, GraphError> {
    if g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count() {
        return Ok(None);
    }
    let n = g.vertex_count();
    if n > limit.min(MAX_DENSE_VERTICES) {
        return Err(GraphError::TooLarge { vertices: n, limit: limit.min(MAX_DENSE_VERTICES) });
    }
    let dg = DenseGraph::new(g)?;
    let dh = DenseGraph::new(h)?;
    let mut deg_g: Vec<u32> = (0..n).map(|v| dg.degree(v)).collect();
    let mut deg_h: Vec<u32> = (0..n).map(|v| dh.degree(v)).collect();
    deg_g.sort_unstable();
    deg_h.sort_unstable();
    if deg_g != deg_h {
        return Ok(None);
    }

    let [cg, ch] = refine([&dg, &dh]);
    let histogram = |c: &[u32]| {
        let mut v = c.to_vec();
        v.sort_unstable();
        v
    };
    if histogram(&cg) != histogram(&ch) {
        return Ok(None);
    }

    let mut search = Search {
        g: &dg,
        h: &dh,
        cg: &cg,
        ch: &ch,
        order: Vec::with_capacity(n),
        map: vec![usize::MAX; n],
        used: 0,
    };
    search.order = search.vertex_order();
    if !search.extend(0) {
        return Ok(None);
    }
    let mapping: BTreeMap<VertexLabel, VertexLabel> =
        (0..n).map(|v| (dg.labels[v].clone(), dh.labels[search.map[v]].clone())).collect();
    assert!(is_isomorphism(g, h, &mapping), "isomorphism search produced an invalid bijection");
    Ok(Some(mapping))
}

/// Checks that `map` is a bijection `V(G) -> V(H)` carrying edges exactly
/// onto edges.
pub fn is_isomorphism(g: &SimpleGraph, h: &SimpleGraph, map: &BTreeMap<VertexLabel, VertexLabel>) -> bool {
    if g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count() {
        return false;
    }
    if map.len() != g.vertex_count() || !g.vertices().all(|v| map.contains_key(v)) {
        return false;
    }
    let mut image: Vec<&VertexLabel> = map.values().collect();
    image.sort();
    image.dedup();
    if image.len() != map.len() || !image.iter().all(|v| h.contains_vertex(v)) {
        return false;
    }
    g.edges().all(|(a, b)| h.has_edge(&map[a], &map[b]))
}

/// Joint 1-dimensional Weisfeiler-Leman colouring of two graphs, so that
/// colours are comparable across them.
fn refine(graphs: [&DenseGraph; 2]) -> [Vec<u32>; 2] {
    let mut colors: [Vec<u32>; 2] = graphs.map(|g| (0..g.len()).map(|v| g.degree(v)).collect());
    let mut classes = 0;
    loop {
        let sigs: [Vec<(u32, Vec<u32>)>; 2] = [0, 1].map(|k| {
            (0..graphs[k].len())
                .map(|v| {
                    let mut nb: Vec<u32> = bits(graphs[k].adj[v]).map(|w| colors[k][w]).collect();
                    nb.sort_unstable();
                    (colors[k][v], nb)
                })
                .collect()
        });
        let mut ids: BTreeMap<&(u32, Vec<u32>), u32> = BTreeMap::new();
        for s in sigs.iter().flatten() {
            ids.entry(s).or_insert(0);
        }
        for (i, id) in ids.values_mut().enumerate() {
            *id = i as u32;
        }
        let next = [0, 1].map(|k| sigs[k].iter().map(|s| ids[s]).collect::<Vec<u32>>());
        let count = ids.len();
        colors = next;
        if count == classes {
            return colors;
        }
        classes = count;
    }
}

struct Search<'a> {
    g: &'a DenseGraph,
    h: &'a DenseGraph,
    cg: &'a [u32],
    ch: &'a [u32],
    order: Vec<usize>,
    map: Vec<usize>,
    used: u64,
}

impl Search<'_> {
    /// Most-constrained first: many already-ordered neighbours, then small
    /// colour class, then index.
    fn vertex_order(&self) -> Vec<usize> {
        let n = self.g.len();
        let class_size = |c: u32| self.cg.iter().filter(|&&x| x == c).count();
        let mut order = Vec::with_capacity(n);
        let mut placed = 0u64;
        while order.len() < n {
            let next = (0..n)
                .filter(|&v| placed & (1 << v) == 0)
                .min_by_key(|&v| {
                    (std::cmp::Reverse((self.g.adj[v] & placed).count_ones()), class_size(self.cg[v]), v)
                })
                .expect("vertex left");
            placed |= 1 << next;
            order.push(next);
        }
        order
    }

    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let v = self.order[depth];
        for c in 0..self.h.len() {
            if self.used & (1 << c) != 0 || self.ch[c] != self.cg[v] {
                continue;
            }
            let consistent = self.order[..depth].iter().all(|&u| {
                let gu = self.g.adj[v] & (1 << u) != 0;
                let hu = self.h.adj[c] & (1 << self.map[u]) != 0;
                gu == hu
            });
            if !consistent {
                continue;
            }
            self.map[v] = c;
            self.used |= 1 << c;
            if self.extend(depth + 1) {
                return true;
            }
            self.used &= !(1 << c);
            self.map[v] = usize::MAX;
        }
        false
    }
}
