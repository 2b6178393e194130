//! `{"vertices": [...], "edges": [[a, b], ...]}`.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{GraphError, SimpleGraph, VertexLabel};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub vertices: Vec<VertexLabel>,
    #[serde(default)]
    pub edges: Vec<[VertexLabel; 2]>,
}

impl TryFrom<GraphJson> for SimpleGraph {
    type Error = GraphError;

    fn try_from(raw: GraphJson) -> Result<Self, GraphError> {
        SimpleGraph::from_parts(raw.vertices, raw.edges.into_iter().map(|[a, b]| (a, b)))
    }
}

impl From<&SimpleGraph> for GraphJson {
    fn from(g: &SimpleGraph) -> Self {
        GraphJson {
            vertices: g.vertices().cloned().collect(),
            edges: g.edges().map(|(a, b)| [a.clone(), b.clone()]).collect(),
        }
    }
}

pub fn graph_from_json(value: &Value) -> Result<SimpleGraph, GraphError> {
    let raw: GraphJson =
        serde_json::from_value(value.clone()).map_err(|e| GraphError::Parse(e.to_string()))?;
    raw.try_into()
}

pub fn graph_to_json(g: &SimpleGraph) -> Value {
    serde_json::to_value(GraphJson::from(g)).expect("graph serializes")
}
