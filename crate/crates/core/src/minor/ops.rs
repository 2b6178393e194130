//! Minors as sequences of deletions and contractions.
//!
//! [`minor_by_operations`] is a brute-force oracle that shares nothing with
//! the branch-set search except the graph type. It explores every graph
//! reachable from `G` by vertex deletions and edge contractions, and at
//! each state with `|V(H)|` vertices looks for an edge-preserving bijection
//! from `H`; the unused edges are then deleted. Any delete/contract
//! sequence can be rearranged into that normal form, so the search is
//! complete.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::MinorError;
use crate::graph::{are_isomorphic, bits, DenseGraph, GraphError, SimpleGraph, VertexLabel};

pub const ORACLE_VERTEX_LIMIT: usize = 8;

/// JSON: `{"kind": "contract_edge", "target": ["a", "b"]}`,
/// `{"kind": "delete_vertex", "target": "a"}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "target", rename_all = "snake_case")]
pub enum MinorOperation {
    DeleteEdge([VertexLabel; 2]),
    DeleteVertex(VertexLabel),
    /// Merges the endpoints into the smaller of the two labels.
    ContractEdge([VertexLabel; 2]),
}

/// Applies one operation. Contraction keeps the graph simple: the merged
/// vertex is adjacent to the union of both neighbourhoods, minus itself.
pub fn apply_operation(g: &SimpleGraph, op: &MinorOperation) -> Result<SimpleGraph, GraphError> {
    let mut out = g.clone();
    match op {
        MinorOperation::DeleteEdge([a, b]) => out.remove_edge(a, b)?,
        MinorOperation::DeleteVertex(v) => out.remove_vertex(v)?,
        MinorOperation::ContractEdge([a, b]) => {
            if !g.has_edge(a, b) {
                return Err(GraphError::UnknownEdge(a.clone(), b.clone()));
            }
            let (keep, gone) = if a < b { (a, b) } else { (b, a) };
            let moved: Vec<VertexLabel> = g.neighbors(gone).filter(|w| *w != keep).cloned().collect();
            out.remove_vertex(gone)?;
            for w in moved {
                out.add_edge(keep.clone(), w)?;
            }
        }
    }
    Ok(out)
}

/// A sequence of operations turning `G` into a graph isomorphic to `H`, or
/// `None` if `H` is not a minor of `G`. Exponential; `G` may have at most
/// [`ORACLE_VERTEX_LIMIT`] vertices.
pub fn minor_by_operations(
    h: &SimpleGraph,
    g: &SimpleGraph,
) -> Result<Option<Vec<MinorOperation>>, MinorError> {
    if g.vertex_count() > ORACLE_VERTEX_LIMIT {
        return Err(MinorError::OracleTooLarge { vertices: g.vertex_count(), limit: ORACLE_VERTEX_LIMIT });
    }
    let (hn, hm) = (h.vertex_count(), h.edge_count());
    if hn > g.vertex_count() || hm > g.edge_count() {
        return Ok(None);
    }
    let dh = DenseGraph::new(h)?;

    // Breadth-first over deletion/contraction states, so prefixes are as
    // short as possible and the first hit is deterministic.
    let mut parent: HashMap<SimpleGraph, Option<(SimpleGraph, MinorOperation)>> = HashMap::new();
    let mut queue = VecDeque::from([g.clone()]);
    parent.insert(g.clone(), None);
    while let Some(state) = queue.pop_front() {
        if state.vertex_count() == hn {
            if let Some(ops) = finish(&dh, &state) {
                let mut seq = prefix(&parent, &state);
                seq.extend(ops);
                let replayed = seq.iter().try_fold(g.clone(), |acc, op| apply_operation(&acc, op))?;
                if are_isomorphic(&replayed, h)?.is_none() {
                    return Err(MinorError::InvalidWitness(
                        "replayed operation sequence is not isomorphic to H".into(),
                    ));
                }
                return Ok(Some(seq));
            }
            continue;
        }
        let contractions = state.edges().map(|(a, b)| MinorOperation::ContractEdge([a.clone(), b.clone()]));
        let deletions = state.vertices().map(|v| MinorOperation::DeleteVertex(v.clone()));
        let moves: Vec<MinorOperation> = contractions.chain(deletions).collect();
        for op in moves {
            let next = apply_operation(&state, &op)?;
            if next.vertex_count() < hn || next.edge_count() < hm || parent.contains_key(&next) {
                continue;
            }
            parent.insert(next.clone(), Some((state.clone(), op)));
            queue.push_back(next);
        }
    }
    Ok(None)
}

fn prefix(
    parent: &HashMap<SimpleGraph, Option<(SimpleGraph, MinorOperation)>>,
    state: &SimpleGraph,
) -> Vec<MinorOperation> {
    let mut ops = Vec::new();
    let mut cur = state;
    while let Some(Some((prev, op))) = parent.get(cur) {
        ops.push(op.clone());
        cur = prev;
    }
    ops.reverse();
    ops
}

/// Edge deletions reducing `state` (with `|V(H)|` vertices) to a copy of
/// `H`, if `H` maps bijectively into it with edges onto edges.
fn finish(h: &DenseGraph, state: &SimpleGraph) -> Option<Vec<MinorOperation>> {
    let s = DenseGraph::new(state).ok()?;
    let n = h.len();
    let mut map = vec![usize::MAX; n];
    if !monomorphism(h, &s, 0, 0, &mut map) {
        return None;
    }
    let mut used = vec![0u64; n];
    for u in 0..n {
        for w in bits(h.adj[u]) {
            used[map[u]] |= 1 << map[w];
        }
    }
    let ops = state
        .edges()
        .filter(|(a, b)| {
            let i = s.labels.binary_search(a).expect("vertex");
            let j = s.labels.binary_search(b).expect("vertex");
            used[i] & (1 << j) == 0
        })
        .map(|(a, b)| MinorOperation::DeleteEdge([a.clone(), b.clone()]))
        .collect();
    Some(ops)
}

/// Plain backtracking: map `H`-vertex `u` to an unused vertex of `s` so that
/// every edge to an earlier `H`-vertex lands on an edge.
fn monomorphism(h: &DenseGraph, s: &DenseGraph, u: usize, used: u64, map: &mut [usize]) -> bool {
    if u == h.len() {
        return true;
    }
    for c in 0..s.len() {
        if used & (1 << c) != 0 {
            continue;
        }
        let ok = bits(h.adj[u] & ((1u64 << u) - 1)).all(|w| s.adj[c] & (1 << map[w]) != 0);
        if ok {
            map[u] = c;
            if monomorphism(h, s, u + 1, used | (1 << c), map) {
                return true;
            }
        }
    }
    false
}
