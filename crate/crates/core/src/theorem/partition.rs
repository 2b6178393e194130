//! Partitions of `M_g` indexed by `M_h`, built from a minor witness between
//! the two gcd graphs.
//!
//! Two conditions are checked for a family `{B_k}_{k ∈ M_h}`:
//!
//! * **A**: for `k ≠ k'` with `gcd(k, k')` not a unit, `gcd(m(B_k), m(B_k'))`
//!   is not a unit either.
//! * **B**: any two elements of a block are joined by a chain inside the
//!   block whose consecutive gcds are non-units, i.e. the block is connected
//!   in its own gcd graph.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Map, Value};

use super::TheoremError;
use crate::correspondence::{build_gcd_graph, label_of};
use crate::minor::{verify_embedding, MinorEmbedding};
use crate::semigroup::json::element_to_json_in;
use crate::semigroup::{set_product, FactoredElement, SemigroupContext};

/// The block family `{M_{g,k}}_{k ∈ M_h}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionResult {
    /// 1-based `(i, j)` when produced from a sequence.
    pub index_pair: Option<(usize, usize)>,
    /// Blocks keyed by `k ∈ M_h`, each sorted canonically.
    pub blocks: BTreeMap<FactoredElement, Vec<FactoredElement>>,
    /// The block exempt from condition B after extension.
    pub exceptional_k0: Option<FactoredElement>,
    /// True when the blocks are meant to cover all of `M_g`.
    pub covers_all: bool,
}

impl PartitionResult {
    pub fn block(&self, k: &FactoredElement) -> Option<&[FactoredElement]> {
        self.blocks.get(k).map(Vec::as_slice)
    }

    pub fn to_json(&self, ctx: &SemigroupContext) -> Value {
        let el = |e: &FactoredElement| element_to_json_in(ctx, e);
        let blocks: Map<String, Value> = self
            .blocks
            .iter()
            .map(|(k, b)| (k.to_string(), Value::Array(b.iter().map(el).collect())))
            .collect();
        json!({
            "index_pair": self.index_pair.map(|(i, j)| json!([i, j])),
            "blocks": blocks,
            "exceptional_k0": self.exceptional_k0.as_ref().map(el),
            "covers_all": self.covers_all,
        })
    }
}

fn sorted_set(elements: &[FactoredElement]) -> Result<BTreeSet<FactoredElement>, TheoremError> {
    let mut set = BTreeSet::new();
    for e in elements {
        if !set.insert(e.clone()) {
            return Err(TheoremError::DuplicateElement(e.to_string()));
        }
    }
    Ok(set)
}

/// Reads the branch sets of `emb` (an embedding of the gcd graph of `m_h`
/// into that of `m_g`) back as blocks of elements. The embedding is
/// verified first.
pub fn construct_partial_partition(
    m_h: &[FactoredElement],
    m_g: &[FactoredElement],
    emb: &MinorEmbedding,
) -> Result<PartitionResult, TheoremError> {
    let h = build_gcd_graph(m_h)?;
    let g = build_gcd_graph(m_g)?;
    let report = verify_embedding(&h.graph, &g.graph, emb);
    if !report.is_valid() {
        return Err(TheoremError::InvalidEmbedding(report.to_json().to_string()));
    }
    let blocks = emb
        .branch_sets
        .iter()
        .map(|(hv, set)| {
            let k = h.element_of[hv].clone();
            let mut block: Vec<FactoredElement> = set.iter().map(|gv| g.element_of[gv].clone()).collect();
            block.sort();
            (k, block)
        })
        .collect();
    Ok(PartitionResult { index_pair: None, blocks, exceptional_k0: None, covers_all: false })
}

/// Smallest element of `m_h` in canonical order.
pub fn default_k0(m_h: &[FactoredElement]) -> Option<FactoredElement> {
    m_h.iter().min().cloned()
}

/// Moves every element of `m_g` outside the blocks into block `k0`.
pub fn extend_to_full_partition(
    partial: &PartitionResult,
    m_g: &[FactoredElement],
    k0: &FactoredElement,
) -> Result<PartitionResult, TheoremError> {
    if !partial.blocks.contains_key(k0) {
        return Err(TheoremError::UnknownK0(k0.to_string()));
    }
    let universe = sorted_set(m_g)?;
    let mut placed = BTreeSet::new();
    for block in partial.blocks.values() {
        for x in block {
            if !universe.contains(x) {
                return Err(TheoremError::NotInSet(x.to_string()));
            }
            placed.insert(x);
        }
    }
    let leftover: Vec<FactoredElement> = universe.iter().filter(|x| !placed.contains(x)).cloned().collect();
    let mut blocks = partial.blocks.clone();
    let target = blocks.get_mut(k0).expect("checked above");
    target.extend(leftover);
    target.sort();
    Ok(PartitionResult {
        index_pair: partial.index_pair,
        blocks,
        exceptional_k0: Some(k0.clone()),
        covers_all: true,
    })
}

/// One condition-A obligation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GcdObligation {
    pub k: FactoredElement,
    pub k_prime: FactoredElement,
    /// `gcd(m(B_k), m(B_k'))`.
    pub block_gcd: FactoredElement,
}

impl GcdObligation {
    pub fn holds(&self) -> bool {
        !self.block_gcd.is_unit()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainCheck {
    pub k: FactoredElement,
    /// The block is connected in its gcd graph.
    pub connected: bool,
    pub exempt: bool,
}

impl ChainCheck {
    pub fn passes(&self) -> bool {
        self.connected || self.exempt
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PartitionReport {
    /// Elements of `M_h` without a block, or block keys outside `M_h`.
    pub key_mismatches: Vec<FactoredElement>,
    /// Block members that are not in `M_g`.
    pub foreign_elements: Vec<FactoredElement>,
    /// `(k, k', x)`: `x` lies in both blocks.
    pub overlaps: Vec<(FactoredElement, FactoredElement, FactoredElement)>,
    /// Elements of `M_g` in no block; only checked when `covers_all`.
    pub uncovered: Vec<FactoredElement>,
    pub coverage_checked: bool,
    pub condition_a: Vec<GcdObligation>,
    pub condition_b: Vec<ChainCheck>,
}

impl PartitionReport {
    pub fn disjoint(&self) -> bool {
        self.overlaps.is_empty()
    }

    pub fn well_formed(&self) -> bool {
        self.key_mismatches.is_empty() && self.foreign_elements.is_empty()
    }

    pub fn covered(&self) -> bool {
        self.uncovered.is_empty()
    }

    pub fn condition_a_holds(&self) -> bool {
        self.condition_a.iter().all(GcdObligation::holds)
    }

    pub fn condition_b_holds(&self) -> bool {
        self.condition_b.iter().all(ChainCheck::passes)
    }

    pub fn passes(&self) -> bool {
        self.well_formed()
            && self.disjoint()
            && self.covered()
            && self.condition_a_holds()
            && self.condition_b_holds()
    }

    pub fn to_json(&self, ctx: &SemigroupContext) -> Value {
        let verdict = |ok: bool| if ok { "pass" } else { "fail" };
        let el = |e: &FactoredElement| element_to_json_in(ctx, e);
        let a: Vec<Value> = self
            .condition_a
            .iter()
            .map(|o| {
                json!({
                    "k": el(&o.k),
                    "k_prime": el(&o.k_prime),
                    "block_gcd": el(&o.block_gcd),
                    "result": verdict(o.holds()),
                })
            })
            .collect();
        let b: Vec<Value> = self
            .condition_b
            .iter()
            .map(|c| {
                let result = match (c.connected, c.exempt) {
                    (true, _) => "pass",
                    (false, true) => "exempt",
                    (false, false) => "fail",
                };
                json!({ "k": el(&c.k), "result": result })
            })
            .collect();
        json!({
            "well_formed": verdict(self.well_formed()),
            "disjointness": verdict(self.disjoint()),
            "coverage": if self.coverage_checked { verdict(self.covered()) } else { "not_required" },
            "condition_a": a,
            "condition_b": b,
            "overall": verdict(self.passes()),
        })
    }
}

/// Checks a block family against `m_h` and `m_g`: keys, membership,
/// disjointness, coverage (when `covers_all`), and conditions A and B.
/// Block products and gcds are recomputed from the elements.
pub fn verify_partition(
    m_h: &[FactoredElement],
    m_g: &[FactoredElement],
    result: &PartitionResult,
) -> PartitionReport {
    let mut report = PartitionReport { coverage_checked: result.covers_all, ..Default::default() };
    let h_set: BTreeSet<&FactoredElement> = m_h.iter().collect();
    let g_set: BTreeSet<&FactoredElement> = m_g.iter().collect();

    for k in result.blocks.keys() {
        if !h_set.contains(k) {
            report.key_mismatches.push(k.clone());
        }
    }
    for &k in &h_set {
        if !result.blocks.contains_key(k) {
            report.key_mismatches.push(k.clone());
        }
    }

    let mut owner: BTreeMap<&FactoredElement, &FactoredElement> = BTreeMap::new();
    for (k, block) in &result.blocks {
        for x in block {
            if !g_set.contains(x) {
                report.foreign_elements.push(x.clone());
            }
            if let Some(prev) = owner.insert(x, k) {
                report.overlaps.push((prev.clone(), k.clone(), x.clone()));
            }
        }
    }
    if result.covers_all {
        report.uncovered = g_set.iter().filter(|x| !owner.contains_key(*x)).map(|&x| x.clone()).collect();
    }

    let products: BTreeMap<&FactoredElement, FactoredElement> =
        result.blocks.iter().map(|(k, b)| (k, set_product(b))).collect();
    let keys: Vec<&FactoredElement> = result.blocks.keys().collect();
    for (i, &k) in keys.iter().enumerate() {
        for &k_prime in &keys[i + 1..] {
            if k.gcd(k_prime).is_unit() {
                continue;
            }
            report.condition_a.push(GcdObligation {
                k: k.clone(),
                k_prime: k_prime.clone(),
                block_gcd: products[k].gcd(&products[k_prime]),
            });
        }
    }

    for (k, block) in &result.blocks {
        let connected = match build_gcd_graph(block) {
            Ok(g) => g.graph.is_connected(),
            Err(_) => false,
        };
        report.condition_b.push(ChainCheck {
            k: k.clone(),
            connected,
            exempt: result.exceptional_k0.as_ref() == Some(k),
        });
    }
    report
}

/// Intermediates `a_1, …, a_l` inside `block` with every consecutive gcd in
/// `x, a_1, …, a_l, y` a non-unit. Empty when `x == y` or when `x` and `y`
/// already share a prime; `None` if no chain exists.
pub fn chain_witness(
    block: &[FactoredElement],
    x: &FactoredElement,
    y: &FactoredElement,
) -> Option<Vec<FactoredElement>> {
    if !block.contains(x) || !block.contains(y) {
        return None;
    }
    if x == y {
        return Some(Vec::new());
    }
    let g = build_gcd_graph(block).ok()?;
    let path = g.graph.shortest_path(&label_of(x), &label_of(y))?;
    Some(path[1..path.len() - 1].iter().map(|v| g.element_of[v].clone()).collect())
}
