//! Finite sequences of subsets: pair colourings by the minor relation,
//! longest increasing chains, and minor-derived partitions.
//!
//! Indices into a [`SubsetSequence`] are 1-based everywhere in this module,
//! in the library API as well as in JSON.

mod partition;

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::correspondence::{build_gcd_graph, CorrespondenceError, GcdGraph};
use crate::minor::{MinorEmbedding, MinorError, MinorSearch};
use crate::semigroup::json::{context_for, element_from_json, merge_backend};
use crate::semigroup::{FactoredElement, SemigroupContext, SemigroupError};

pub use partition::{
    chain_witness, construct_partial_partition, default_k0, extend_to_full_partition, verify_partition,
    ChainCheck, GcdObligation, PartitionReport, PartitionResult,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoremError {
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error(transparent)]
    Correspondence(#[from] CorrespondenceError),
    #[error("set {index}: {source}")]
    InSet { index: usize, source: CorrespondenceError },
    #[error("pair ({}, {}): {source}", .pair.0, .pair.1)]
    Minor { pair: (usize, usize), source: MinorError },
    #[error(transparent)]
    Search(#[from] MinorError),
    #[error("embedding is not valid for these gcd graphs: {0}")]
    InvalidEmbedding(String),
    #[error("k0 = {0} is not an element of the smaller set")]
    UnknownK0(String),
    #[error("{0} is not an element of the larger set")]
    NotInSet(String),
    #[error("duplicate element {0}")]
    DuplicateElement(String),
    #[error("malformed sequence: {0}")]
    Parse(String),
    #[error("pair ({}, {}): constructed partition failed verification: {report}", .pair.0, .pair.1)]
    VerificationFailed { pair: (usize, usize), report: String },
}

impl TheoremError {
    pub fn is_resource_error(&self) -> bool {
        match self {
            TheoremError::Minor { source, .. } | TheoremError::Search(source) => source.is_resource_error(),
            _ => false,
        }
    }
}

/// A finite sequence `M_1, …, M_n` of finite subsets of one semigroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetSequence {
    context: SemigroupContext,
    sets: Vec<Vec<FactoredElement>>,
}

impl SubsetSequence {
    /// Validates every element against `context` and rejects repeated
    /// elements within a set.
    pub fn new(context: SemigroupContext, sets: Vec<Vec<FactoredElement>>) -> Result<Self, TheoremError> {
        for (i, set) in sets.iter().enumerate() {
            for e in set {
                context.validate(e)?;
            }
            build_gcd_graph(set).map_err(|source| TheoremError::InSet { index: i + 1, source })?;
        }
        Ok(Self { context, sets })
    }

    /// A JSON array of element arrays; the backend is inferred and must be
    /// the same throughout.
    pub fn from_json(value: &Value) -> Result<Self, TheoremError> {
        let Value::Array(raw_sets) = value else {
            return Err(TheoremError::Parse("expected a JSON array of element arrays".into()));
        };
        let mut backend = None;
        let mut sets = Vec::with_capacity(raw_sets.len());
        for (i, raw) in raw_sets.iter().enumerate() {
            let Value::Array(items) = raw else {
                return Err(TheoremError::Parse(format!("set {} is not an array", i + 1)));
            };
            let mut set = Vec::with_capacity(items.len());
            for item in items {
                let (b, e) = element_from_json(item)?;
                backend = merge_backend(backend, b)?;
                set.push(e);
            }
            sets.push(set);
        }
        Self::new(context_for(backend), sets)
    }

    pub fn context(&self) -> &SemigroupContext {
        &self.context
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// `M_i`, 1-based.
    pub fn set(&self, i: usize) -> &[FactoredElement] {
        &self.sets[i - 1]
    }

    pub fn gcd_graphs(&self) -> Vec<GcdGraph> {
        self.sets.iter().map(|s| build_gcd_graph(s).expect("validated in new")).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PairColor {
    /// `G_i ≼ G_j`.
    Green,
    /// `G_j ≼ G_i`, and not Green (so the graphs are not isomorphic).
    Red,
    /// Incomparable.
    Yellow,
}

impl PairColor {
    pub fn as_str(self) -> &'static str {
        match self {
            PairColor::Green => "green",
            PairColor::Red => "red",
            PairColor::Yellow => "yellow",
        }
    }
}

/// Colour of every pair `(i, j)`, `1 <= i < j <= n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairColoring {
    len: usize,
    colors: BTreeMap<(usize, usize), PairColor>,
}

impl PairColoring {
    /// Builds a colouring from explicit colours; every pair must be present.
    pub fn from_colors(len: usize, colors: BTreeMap<(usize, usize), PairColor>) -> Option<Self> {
        let complete = (1..=len).all(|i| (i + 1..=len).all(|j| colors.contains_key(&(i, j))));
        (complete && colors.len() == len * len.saturating_sub(1) / 2).then_some(Self { len, colors })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn color(&self, i: usize, j: usize) -> Option<PairColor> {
        self.colors.get(&(i, j)).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), PairColor)> + '_ {
        self.colors.iter().map(|(&p, &c)| (p, c))
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.iter().map(|((i, j), c)| json!({ "pair": [i, j], "color": c.as_str() })).collect())
    }
}

fn minor_between(
    search: &MinorSearch,
    graphs: &[GcdGraph],
    small: usize,
    large: usize,
    pair: (usize, usize),
) -> Result<Option<MinorEmbedding>, TheoremError> {
    search
        .find(&graphs[small - 1].graph, &graphs[large - 1].graph)
        .map_err(|source| TheoremError::Minor { pair, source })
}

/// Colours every index pair by comparing the gcd graphs under `≼`: Green is
/// tested first, then Red, and Yellow is what remains.
pub fn color_pairs(seq: &SubsetSequence, search: &MinorSearch) -> Result<PairColoring, TheoremError> {
    let graphs = seq.gcd_graphs();
    let n = graphs.len();
    let mut colors = BTreeMap::new();
    for i in 1..=n {
        for j in i + 1..=n {
            let color = if minor_between(search, &graphs, i, j, (i, j))?.is_some() {
                PairColor::Green
            } else if minor_between(search, &graphs, j, i, (i, j))?.is_some() {
                PairColor::Red
            } else {
                PairColor::Yellow
            };
            colors.insert((i, j), color);
        }
    }
    Ok(PairColoring { len: n, colors })
}

/// A longest `i_1 < … < i_m` with every consecutive pair Green; ties go to
/// the lexicographically smallest index list. Green is transitive, so every
/// pair of the chain is Green.
pub fn longest_green_chain(coloring: &PairColoring) -> Vec<usize> {
    let n = coloring.len();
    let mut best: Vec<Vec<usize>> = Vec::with_capacity(n);
    for j in 1..=n {
        let mut chain = vec![j];
        for i in 1..j {
            if coloring.color(i, j) != Some(PairColor::Green) {
                continue;
            }
            let prev = &best[i - 1];
            if prev.len() + 1 > chain.len()
                || (prev.len() + 1 == chain.len() && prev[..] < chain[..chain.len() - 1])
            {
                let mut c = prev.clone();
                c.push(j);
                chain = c;
            }
        }
        best.push(chain);
    }
    best.into_iter()
        .reduce(|a, b| if b.len() > a.len() || (b.len() == a.len() && b < a) { b } else { a })
        .unwrap_or_default()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ScanOptions {
    /// Demonstrate every Green pair, not only the first one per left index.
    pub all_pairs: bool,
    pub search: MinorSearch,
}

/// A Green pair with its witness, both partitions and their reports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Demonstration {
    pub pair: (usize, usize),
    pub color: PairColor,
    pub embedding: MinorEmbedding,
    pub partial: PartitionResult,
    pub partial_report: PartitionReport,
    /// Absent when `M_i` is empty (there is no block to absorb leftovers).
    pub full: Option<PartitionResult>,
    pub full_report: Option<PartitionReport>,
}

impl Demonstration {
    pub fn passes(&self) -> bool {
        self.partial_report.passes() && self.full_report.as_ref().is_none_or(PartitionReport::passes)
    }

    pub fn to_json(&self, ctx: &SemigroupContext) -> Value {
        json!({
            "pair": [self.pair.0, self.pair.1],
            "coloring": self.color.as_str(),
            "embedding": self.embedding.to_json(),
            "partial_partition": self.partial.to_json(ctx),
            "full_partition": self.full.as_ref().map(|f| f.to_json(ctx)),
            "report": {
                "partial": self.partial_report.to_json(ctx),
                "full": self.full_report.as_ref().map(|r| r.to_json(ctx)),
            },
        })
    }
}

/// For each left index `i`, the first `j > i` with `G_i ≼ G_j` (or every
/// such `j` with `all_pairs`): the branch sets, the partial partition of
/// `M_j`, its extension to all of `M_j` with the default `k0`, and both
/// verification reports. Output is ordered by pair.
pub fn scan_and_demonstrate(
    seq: &SubsetSequence,
    options: &ScanOptions,
) -> Result<Vec<Demonstration>, TheoremError> {
    let graphs = seq.gcd_graphs();
    let n = graphs.len();
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            let Some(embedding) = minor_between(&options.search, &graphs, i, j, (i, j))? else {
                continue;
            };
            out.push(demonstrate(seq, (i, j), embedding)?);
            if !options.all_pairs {
                break;
            }
        }
    }
    Ok(out)
}

fn demonstrate(
    seq: &SubsetSequence,
    pair: (usize, usize),
    embedding: MinorEmbedding,
) -> Result<Demonstration, TheoremError> {
    let (m_h, m_g) = (seq.set(pair.0), seq.set(pair.1));
    let mut partial = construct_partial_partition(m_h, m_g, &embedding)?;
    partial.index_pair = Some(pair);
    let partial_report = verify_partition(m_h, m_g, &partial);
    let (full, full_report) = match default_k0(m_h) {
        Some(k0) => {
            let full = extend_to_full_partition(&partial, m_g, &k0)?;
            let report = verify_partition(m_h, m_g, &full);
            (Some(full), Some(report))
        }
        None => (None, None),
    };
    let demo = Demonstration {
        pair,
        color: PairColor::Green,
        embedding,
        partial,
        partial_report,
        full,
        full_report,
    };
    if !demo.passes() {
        return Err(TheoremError::VerificationFailed {
            pair,
            report: format!("{:?} / {:?}", demo.partial_report, demo.full_report),
        });
    }
    Ok(demo)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correspondence::realize_graph;
    use crate::graph::named::*;
    use crate::graph::SimpleGraph;
    use crate::semigroup::{factorize, Backend};

    fn nats(xs: &[u64]) -> Vec<FactoredElement> {
        xs.iter().map(|&x| factorize(x).unwrap()).collect()
    }

    fn realized(g: &SimpleGraph) -> Vec<FactoredElement> {
        realize_graph(g, Backend::Naturals).unwrap().elements
    }

    fn seq_of(graphs: &[SimpleGraph]) -> SubsetSequence {
        SubsetSequence::new(SemigroupContext::naturals(), graphs.iter().map(realized).collect()).unwrap()
    }

    #[test]
    fn coloring_k3_k2_k4() {
        let seq = seq_of(&[complete(3), complete(2), complete(4)]);
        let c = color_pairs(&seq, &MinorSearch::default()).unwrap();
        assert_eq!(c.color(1, 2), Some(PairColor::Red));
        assert_eq!(c.color(1, 3), Some(PairColor::Green));
        assert_eq!(c.color(2, 3), Some(PairColor::Green));
        assert_eq!(longest_green_chain(&c), vec![1, 3]);
    }

    #[test]
    fn identical_sets_are_green() {
        let s = nats(&[6, 10, 15]);
        let seq = SubsetSequence::new(SemigroupContext::naturals(), vec![s.clone(), s.clone(), s]).unwrap();
        let c = color_pairs(&seq, &MinorSearch::default()).unwrap();
        assert!(c.iter().all(|(_, col)| col == PairColor::Green));
        assert_eq!(longest_green_chain(&c), vec![1, 2, 3]);
        let demos =
            scan_and_demonstrate(&seq, &ScanOptions { all_pairs: true, ..Default::default() }).unwrap();
        assert_eq!(demos.len(), 3);
        for d in &demos {
            assert!(d.embedding.branch_sets.values().all(|s| s.len() == 1));
        }
    }

    #[test]
    fn triangle_and_star_incomparable() {
        let seq = seq_of(&[complete(3), star(3)]);
        let c = color_pairs(&seq, &MinorSearch::default()).unwrap();
        assert_eq!(c.color(1, 2), Some(PairColor::Yellow));
        assert_eq!(longest_green_chain(&c), vec![1]);
    }

    #[test]
    fn chain_edge_cases() {
        let one = PairColoring::from_colors(1, BTreeMap::new()).unwrap();
        assert_eq!(longest_green_chain(&one), vec![1]);
        let none = PairColoring::from_colors(0, BTreeMap::new()).unwrap();
        assert!(longest_green_chain(&none).is_empty());
        assert!(PairColoring::from_colors(2, BTreeMap::new()).is_none());
    }

    #[test]
    fn scan_hand_example() {
        let seq =
            SubsetSequence::new(SemigroupContext::naturals(), vec![nats(&[6, 10]), nats(&[4, 6, 9, 35])])
                .unwrap();
        let demos = scan_and_demonstrate(&seq, &ScanOptions::default()).unwrap();
        assert_eq!(demos.len(), 1);
        let d = &demos[0];
        assert_eq!(d.pair, (1, 2));
        assert!(d.passes());
        let full = d.full.as_ref().unwrap();
        assert_eq!(full.exceptional_k0, factorize(6).ok());
        let covered: usize = full.blocks.values().map(Vec::len).sum();
        assert_eq!(covered, 4);
    }

    #[test]
    fn scan_into_empty_set_finds_nothing() {
        let seq = SubsetSequence::new(SemigroupContext::naturals(), vec![nats(&[30]), vec![]]).unwrap();
        assert!(scan_and_demonstrate(&seq, &ScanOptions::default()).unwrap().is_empty());
        let c = color_pairs(&seq, &MinorSearch::default()).unwrap();
        assert_eq!(c.color(1, 2), Some(PairColor::Red));
    }

    #[test]
    fn scan_from_empty_set() {
        let seq = SubsetSequence::new(SemigroupContext::naturals(), vec![vec![], nats(&[2, 3])]).unwrap();
        let demos = scan_and_demonstrate(&seq, &ScanOptions::default()).unwrap();
        assert_eq!(demos.len(), 1);
        assert!(demos[0].full.is_none());
        assert!(demos[0].partial.blocks.is_empty());
    }

    #[test]
    fn budget_errors_carry_the_pair() {
        let seq = seq_of(&[complete(5), petersen()]);
        let err = color_pairs(&seq, &MinorSearch::with_budget(2)).unwrap_err();
        assert!(matches!(err, TheoremError::Minor { pair: (1, 2), .. }));
        assert!(err.is_resource_error());
    }

    #[test]
    fn sequence_json() {
        let seq = SubsetSequence::from_json(&json!([[6, 10], [4, 6, 9, 35]])).unwrap();
        assert_eq!(seq.len(), 2);
        assert_eq!(seq.set(2), &nats(&[4, 6, 9, 35])[..]);
        assert!(SubsetSequence::from_json(&json!([[6, 6]])).is_err());
        assert!(SubsetSequence::from_json(&json!([[6], [{"primes": {"p": 1}}]])).is_err());
        assert!(SubsetSequence::from_json(&json!({"sets": []})).is_err());
        let free = SubsetSequence::from_json(&json!([[{"primes": {"p": 1, "q": 1}}, {"primes": {"q": 2}}]]))
            .unwrap();
        assert_eq!(free.context(), &SemigroupContext::free());
    }
}
