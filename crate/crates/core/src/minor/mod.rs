//! Graph minors: branch-set witnesses, an exact search for them, and an
//! independent delete/contract oracle.
//!
//! `H ≼ G` holds when `V(G)` contains pairwise disjoint, nonempty, connected
//! sets `V_h` (one per `h ∈ V(H)`) such that every edge `hh'` of `H` is
//! matched by some edge of `G` between `V_h` and `V_h'`.

mod ops;
mod search;

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::graph::{GraphError, SimpleGraph, VertexLabel};

pub use ops::{apply_operation, minor_by_operations, MinorOperation, ORACLE_VERTEX_LIMIT};
pub use search::{SearchOutcome, DEFAULT_BUDGET};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MinorError {
    #[error("minor search exceeded its budget of {budget} expansions")]
    BudgetExceeded { budget: u64 },
    #[error("operation-sequence oracle is limited to {limit} vertices, got {vertices}")]
    OracleTooLarge { vertices: usize, limit: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("search returned an embedding that fails verification: {0}")]
    InvalidWitness(String),
}

impl MinorError {
    /// Budget and size limits, as opposed to malformed input.
    pub fn is_resource_error(&self) -> bool {
        matches!(
            self,
            MinorError::BudgetExceeded { .. }
                | MinorError::OracleTooLarge { .. }
                | MinorError::Graph(GraphError::TooLarge { .. })
        )
    }
}

/// Branch sets `h -> V_h` witnessing `H ≼ G`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct MinorEmbedding {
    pub branch_sets: BTreeMap<VertexLabel, BTreeSet<VertexLabel>>,
}

impl MinorEmbedding {
    /// `V_h = {h}`, the witness for `G ≼ G`.
    pub fn identity(g: &SimpleGraph) -> Self {
        Self { branch_sets: g.vertices().map(|v| (v.clone(), BTreeSet::from([v.clone()]))).collect() }
    }

    pub fn branch_set(&self, h: &VertexLabel) -> Option<&BTreeSet<VertexLabel>> {
        self.branch_sets.get(h)
    }

    /// `{"branch_sets": {"h": ["g1", "g2"], ...}}`; keys are label strings.
    pub fn to_json(&self) -> Value {
        let sets: Map<String, Value> = self
            .branch_sets
            .iter()
            .map(|(h, set)| (h.to_string(), json!(set.iter().collect::<Vec<_>>())))
            .collect();
        json!({ "branch_sets": sets })
    }
}

/// Per-clause findings of [`verify_embedding`]. Every list is empty for a
/// valid embedding.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EmbeddingReport {
    /// Branch-set keys that are not vertices of `H`, or vertices of `H`
    /// with no branch set.
    pub key_mismatches: Vec<VertexLabel>,
    /// Branch-set members that are not vertices of `G`.
    pub unknown_vertices: Vec<VertexLabel>,
    /// `(h, h', g)`: `g` lies in both `V_h` and `V_h'`.
    pub overlaps: Vec<(VertexLabel, VertexLabel, VertexLabel)>,
    pub empty_sets: Vec<VertexLabel>,
    pub disconnected_sets: Vec<VertexLabel>,
    /// Edges `hh'` of `H` with no `G`-edge between `V_h` and `V_h'`.
    pub uncovered_edges: Vec<(VertexLabel, VertexLabel)>,
}

impl EmbeddingReport {
    pub fn disjoint(&self) -> bool {
        self.overlaps.is_empty()
    }

    pub fn nonempty(&self) -> bool {
        self.empty_sets.is_empty()
    }

    pub fn connected(&self) -> bool {
        self.disconnected_sets.is_empty()
    }

    pub fn covers_edges(&self) -> bool {
        self.uncovered_edges.is_empty()
    }

    pub fn well_formed(&self) -> bool {
        self.key_mismatches.is_empty() && self.unknown_vertices.is_empty()
    }

    pub fn is_valid(&self) -> bool {
        self.well_formed() && self.disjoint() && self.nonempty() && self.connected() && self.covers_edges()
    }

    pub fn to_json(&self) -> Value {
        let verdict = |ok: bool| if ok { "pass" } else { "fail" };
        json!({
            "well_formed": verdict(self.well_formed()),
            "disjointness": verdict(self.disjoint()),
            "nonemptiness": verdict(self.nonempty()),
            "connectivity": verdict(self.connected()),
            "edge_coverage": verdict(self.covers_edges()),
            "uncovered_edges": self.uncovered_edges.iter().map(|(a, b)| json!([a, b])).collect::<Vec<_>>(),
            "disconnected_sets": self.disconnected_sets,
        })
    }
}

/// Checks every clause of the branch-set definition directly.
pub fn verify_embedding(h: &SimpleGraph, g: &SimpleGraph, emb: &MinorEmbedding) -> EmbeddingReport {
    let mut report = EmbeddingReport::default();
    for key in emb.branch_sets.keys() {
        if !h.contains_vertex(key) {
            report.key_mismatches.push(key.clone());
        }
    }
    for v in h.vertices() {
        if !emb.branch_sets.contains_key(v) {
            report.key_mismatches.push(v.clone());
        }
    }

    let mut owner: BTreeMap<&VertexLabel, &VertexLabel> = BTreeMap::new();
    for (key, set) in &emb.branch_sets {
        if set.is_empty() {
            report.empty_sets.push(key.clone());
        }
        for x in set {
            if !g.contains_vertex(x) {
                report.unknown_vertices.push(x.clone());
            }
            if let Some(prev) = owner.insert(x, key) {
                report.overlaps.push((prev.clone(), key.clone(), x.clone()));
            }
        }
        let connected = match g.induced_subgraph(set.iter().filter(|x| g.contains_vertex(x))) {
            Ok(sub) => sub.is_connected() && sub.vertex_count() == set.len(),
            Err(_) => false,
        };
        if !connected {
            report.disconnected_sets.push(key.clone());
        }
    }

    let empty = BTreeSet::new();
    for (a, b) in h.edges() {
        let sa = emb.branch_sets.get(a).unwrap_or(&empty);
        let sb = emb.branch_sets.get(b).unwrap_or(&empty);
        let covered = sa.iter().any(|x| sb.iter().any(|y| g.has_edge(x, y)));
        if !covered {
            report.uncovered_edges.push((a.clone(), b.clone()));
        }
    }
    report
}

/// Configuration for [`find_minor_embedding_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MinorSearch {
    /// Maximum number of candidate branch sets generated before giving up.
    pub budget: u64,
}

impl Default for MinorSearch {
    fn default() -> Self {
        Self { budget: DEFAULT_BUDGET }
    }
}

impl MinorSearch {
    pub fn with_budget(budget: u64) -> Self {
        Self { budget }
    }

    /// Runs the exhaustive search and verifies any witness before
    /// returning it.
    pub fn run(&self, h: &SimpleGraph, g: &SimpleGraph) -> Result<SearchOutcome, MinorError> {
        let outcome = search::search(h, g, self.budget)?;
        if let Some(emb) = &outcome.embedding {
            let report = verify_embedding(h, g, emb);
            if !report.is_valid() {
                return Err(MinorError::InvalidWitness(report.to_json().to_string()));
            }
        }
        Ok(outcome)
    }

    pub fn find(&self, h: &SimpleGraph, g: &SimpleGraph) -> Result<Option<MinorEmbedding>, MinorError> {
        self.run(h, g).map(|o| o.embedding)
    }
}

/// A verified witness for `H ≼ G`, or `None` if there is none, using the
/// default budget.
pub fn find_minor_embedding(h: &SimpleGraph, g: &SimpleGraph) -> Result<Option<MinorEmbedding>, MinorError> {
    MinorSearch::default().find(h, g)
}

pub fn find_minor_embedding_with(
    h: &SimpleGraph,
    g: &SimpleGraph,
    config: &MinorSearch,
) -> Result<Option<MinorEmbedding>, MinorError> {
    config.find(h, g)
}
