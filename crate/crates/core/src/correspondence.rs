//! Finite subsets of an FCSG as graphs, and back.
//!
//! The gcd graph of `M` has `M` as vertex set and an edge `{x, y}` exactly
//! when `gcd(x, y)` is not a unit. [`realize_graph`] goes the other way:
//! given any graph it produces a set whose gcd graph is isomorphic to it.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::graph::json::graph_to_json;
use crate::graph::{is_isomorphism, GraphError, SimpleGraph, VertexLabel};
use crate::semigroup::json::element_to_json_in;
use crate::semigroup::{Backend, FactoredElement, PrimeSymbol, Primes, SemigroupContext, SemigroupError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorrespondenceError {
    #[error("duplicate element {0} in set input")]
    Duplicate(String),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(
        "element for vertex {vertex} does not fit in 64 bits ({primes} primes); \
         use the free backend for graphs this large"
    )]
    Overflow { vertex: VertexLabel, primes: usize },
    #[error("realization failed its isomorphism check: {0}")]
    Internal(String),
}

/// Vertex label used for an element in gcd graphs: its canonical text.
pub fn label_of(element: &FactoredElement) -> VertexLabel {
    VertexLabel::Str(element.to_string())
}

/// A gcd graph together with the element behind each vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GcdGraph {
    pub graph: SimpleGraph,
    pub element_of: BTreeMap<VertexLabel, FactoredElement>,
}

impl GcdGraph {
    pub fn element(&self, v: &VertexLabel) -> Option<&FactoredElement> {
        self.element_of.get(v)
    }

    /// Labels of `elements`, which must all be vertices of this graph.
    pub fn labels_of<'a, I>(&self, elements: I) -> Vec<VertexLabel>
    where
        I: IntoIterator<Item = &'a FactoredElement>,
    {
        elements.into_iter().map(label_of).collect()
    }

    pub fn to_json(&self, ctx: &SemigroupContext) -> Value {
        let table: Map<String, Value> =
            self.element_of.iter().map(|(v, e)| (v.to_string(), element_to_json_in(ctx, e))).collect();
        json!({ "graph": graph_to_json(&self.graph), "elements": table })
    }
}

/// `G(M) = (M, {{x, y} ∈ [M]² | gcd(x, y) ∉ S^×})`. Units are allowed and
/// come out isolated; repeated elements are rejected.
pub fn build_gcd_graph(elements: &[FactoredElement]) -> Result<GcdGraph, CorrespondenceError> {
    let mut element_of = BTreeMap::new();
    for e in elements {
        if element_of.insert(label_of(e), e.clone()).is_some() {
            return Err(CorrespondenceError::Duplicate(e.to_string()));
        }
    }
    let mut graph = SimpleGraph::new();
    for v in element_of.keys() {
        graph.add_vertex(v.clone());
    }
    let entries: Vec<(&VertexLabel, &FactoredElement)> = element_of.iter().collect();
    for (i, (va, a)) in entries.iter().enumerate() {
        for (vb, b) in &entries[i + 1..] {
            if a.shares_prime_with(b) {
                graph.add_edge((*va).clone(), (*vb).clone())?;
            }
        }
    }
    Ok(GcdGraph { graph, element_of })
}

/// [`build_gcd_graph`] after checking every element belongs to `ctx`.
pub fn build_gcd_graph_in(
    ctx: &SemigroupContext,
    elements: &[FactoredElement],
) -> Result<GcdGraph, CorrespondenceError> {
    for e in elements {
        ctx.validate(e)?;
    }
    build_gcd_graph(elements)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realization {
    /// The realizing set, in canonical order.
    pub elements: Vec<FactoredElement>,
    pub vertex_element: BTreeMap<VertexLabel, FactoredElement>,
}

impl Realization {
    pub fn to_json(&self, ctx: &SemigroupContext) -> Value {
        let table: Map<String, Value> =
            self.vertex_element.iter().map(|(v, e)| (v.to_string(), element_to_json_in(ctx, e))).collect();
        json!({
            "backend": ctx.backend().to_string(),
            "elements": self.elements.iter().map(|e| element_to_json_in(ctx, e)).collect::<Vec<_>>(),
            "vertex_elements": table,
        })
    }
}

/// A set `M` whose gcd graph is isomorphic to `g`.
///
/// Every edge and every vertex gets its own prime (edges first, each group
/// in label order); vertex `v` maps to its own prime times the primes of
/// its incident edges. Two elements then share a prime exactly when their
/// vertices are adjacent, and own primes keep elements distinct.
pub fn realize_graph(g: &SimpleGraph, backend: Backend) -> Result<Realization, CorrespondenceError> {
    let edges: Vec<(&VertexLabel, &VertexLabel)> = g.edges().collect();
    let vertices: Vec<&VertexLabel> = g.vertices().collect();
    let (edge_primes, vertex_primes): (Vec<PrimeSymbol>, Vec<PrimeSymbol>) = match backend {
        Backend::Naturals => {
            let mut primes = Primes::new().map(PrimeSymbol::Natural);
            let e = primes.by_ref().take(edges.len()).collect();
            let v = primes.take(vertices.len()).collect();
            (e, v)
        }
        Backend::Free => (
            (1..=edges.len()).map(|j| PrimeSymbol::Named(format!("e{j}"))).collect(),
            (1..=vertices.len()).map(|i| PrimeSymbol::Named(format!("v{i}"))).collect(),
        ),
    };

    let mut vertex_element = BTreeMap::new();
    for (v, own) in vertices.iter().zip(&vertex_primes) {
        let mut e = FactoredElement::prime(own.clone());
        for (k, (a, b)) in edges.iter().enumerate() {
            if a == v || b == v {
                e = e.multiply(&FactoredElement::prime(edge_primes[k].clone()));
            }
        }
        if backend == Backend::Naturals && e.to_u64().is_none() {
            return Err(CorrespondenceError::Overflow { vertex: (*v).clone(), primes: e.support().count() });
        }
        vertex_element.insert((*v).clone(), e);
    }

    let mut elements: Vec<FactoredElement> = vertex_element.values().cloned().collect();
    elements.sort();

    let rebuilt = build_gcd_graph(&elements)?;
    let map: BTreeMap<VertexLabel, VertexLabel> =
        vertex_element.iter().map(|(v, e)| (v.clone(), label_of(e))).collect();
    if !is_isomorphism(g, &rebuilt.graph, &map) {
        return Err(CorrespondenceError::Internal(format!(
            "vertex map {map:?} does not carry the edges of the input graph"
        )));
    }
    Ok(Realization { elements, vertex_element })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::are_isomorphic;
    use crate::graph::named::*;
    use crate::semigroup::factorize;

    fn nats(xs: &[u64]) -> Vec<FactoredElement> {
        xs.iter().map(|&x| factorize(x).unwrap()).collect()
    }

    fn l(s: &str) -> VertexLabel {
        VertexLabel::from(s)
    }

    #[test]
    fn triangle_plus_isolated() {
        let r = build_gcd_graph(&nats(&[6, 10, 15, 7])).unwrap();
        let expect =
            SimpleGraph::from_parts(["6", "10", "15", "7"], [("6", "10"), ("10", "15"), ("6", "15")])
                .unwrap();
        assert_eq!(r.graph, expect);
        assert_eq!(r.element(&l("15")), Some(&factorize(15).unwrap()));
    }

    #[test]
    fn empty_and_coprime_sets() {
        assert_eq!(build_gcd_graph(&[]).unwrap().graph, SimpleGraph::new());
        let r = build_gcd_graph(&nats(&[4, 9])).unwrap();
        assert_eq!((r.graph.vertex_count(), r.graph.edge_count()), (2, 0));
    }

    #[test]
    fn units_become_isolated_vertices() {
        let r = build_gcd_graph(&nats(&[1, 2, 4])).unwrap();
        assert_eq!(r.graph.degree(&l("1")), 0);
        assert!(r.graph.has_edge(&l("2"), &l("4")));
    }

    #[test]
    fn duplicates_rejected() {
        assert_eq!(build_gcd_graph(&nats(&[6, 10, 6])), Err(CorrespondenceError::Duplicate("6".into())));
    }

    #[test]
    fn context_validation() {
        let free = SemigroupContext::free();
        assert!(build_gcd_graph_in(&free, &nats(&[6])).is_err());
        assert!(build_gcd_graph_in(&SemigroupContext::naturals(), &nats(&[6])).is_ok());
    }

    #[test]
    fn realize_path_on_three_vertices() {
        let p3 = SimpleGraph::from_parts(["u", "v", "w"], [("u", "v"), ("v", "w")]).unwrap();
        let r = realize_graph(&p3, Backend::Naturals).unwrap();
        assert_eq!(r.elements, nats(&[10, 33, 42]));
        assert_eq!(r.vertex_element[&l("u")], factorize(10).unwrap());
        assert_eq!(r.vertex_element[&l("v")], factorize(42).unwrap());
        assert_eq!(r.vertex_element[&l("w")], factorize(33).unwrap());
        let rebuilt = build_gcd_graph(&r.elements).unwrap().graph;
        assert!(are_isomorphic(&rebuilt, &p3).unwrap().is_some());
    }

    #[test]
    fn realize_trivial_graphs() {
        let r = realize_graph(&empty(1), Backend::Naturals).unwrap();
        assert_eq!(r.elements, nats(&[2]));
        assert!(realize_graph(&SimpleGraph::new(), Backend::Naturals).unwrap().elements.is_empty());
    }

    #[test]
    fn realize_free_backend() {
        let r = realize_graph(&complete(3), Backend::Free).unwrap();
        assert_eq!(r.vertex_element[&VertexLabel::Int(0)].to_string(), "e1*e2*v1");
        assert!(r.elements.iter().all(|e| !e.is_unit()));
        let r = realize_graph(&complete(12), Backend::Free).unwrap();
        assert_eq!(r.elements.len(), 12);
    }

    #[test]
    fn realize_overflow_suggests_free_backend() {
        let err = realize_graph(&complete(12), Backend::Naturals).unwrap_err();
        assert!(matches!(err, CorrespondenceError::Overflow { .. }));
        assert!(err.to_string().contains("free backend"));
    }

    #[test]
    fn realized_elements_distinct_even_for_matching_edges() {
        // two disjoint edges: without own primes the endpoints would collide
        let g = SimpleGraph::from_parts(0..4, [(0, 1), (2, 3)]).unwrap();
        let r = realize_graph(&g, Backend::Naturals).unwrap();
        let mut d = r.elements.clone();
        d.dedup();
        assert_eq!(d.len(), 4);
    }
}
