//! Exhaustive branch-set search.
//!
//! `H`-vertices are assigned one at a time. Each gets a connected set of
//! still-unused `G`-vertices that touches the branch set of every
//! already-assigned `H`-neighbour; candidates are tried smallest first, ties
//! broken by label order. Three sound prunes cut the tree:
//!
//! * enough unused vertices must remain for the unassigned `H`-vertices;
//! * a candidate `V_h` needs at least as many unused neighbours as `h` has
//!   unassigned `H`-neighbours (each of those needs its own vertex next to
//!   `V_h`);
//! * every unassigned `h` with assigned neighbours needs one component of
//!   the unused vertices adjacent to all of their branch sets.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet};

use super::{MinorEmbedding, MinorError};
use crate::graph::{bits, DenseGraph, SimpleGraph};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub embedding: Option<MinorEmbedding>,
    /// Candidate branch sets generated.
    pub expansions: u64,
}

pub(super) fn search(h: &SimpleGraph, g: &SimpleGraph, budget: u64) -> Result<SearchOutcome, MinorError> {
    if h.vertex_count() > g.vertex_count() || h.edge_count() > g.edge_count() {
        return Ok(SearchOutcome { embedding: None, expansions: 0 });
    }
    let dh = DenseGraph::new(h)?;
    let dg = DenseGraph::new(g)?;
    let order = pattern_order(&dh);
    let mut pos = vec![0; dh.len()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut state =
        State { h: &dh, g: &dg, order, pos, sets: vec![0; dh.len()], used: 0, expansions: 0, budget };
    let found = state.assign(0)?;
    let embedding = found.then(|| MinorEmbedding {
        branch_sets: (0..dh.len())
            .map(|v| {
                let set: BTreeSet<_> = bits(state.sets[v]).map(|x| dg.labels[x].clone()).collect();
                (dh.labels[v].clone(), set)
            })
            .collect::<BTreeMap<_, _>>(),
    });
    Ok(SearchOutcome { embedding, expansions: state.expansions })
}

/// Highest degree first, then repeatedly the vertex with the most
/// already-ordered neighbours (ties: higher degree, then label order).
fn pattern_order(h: &DenseGraph) -> Vec<usize> {
    let n = h.len();
    let mut order = Vec::with_capacity(n);
    let mut placed = 0u64;
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| placed & (1 << v) == 0)
            .min_by_key(|&v| (Reverse((h.adj[v] & placed).count_ones()), Reverse(h.degree(v)), v))
            .expect("vertex left");
        placed |= 1 << next;
        order.push(next);
    }
    order
}

struct State<'a> {
    h: &'a DenseGraph,
    g: &'a DenseGraph,
    order: Vec<usize>,
    pos: Vec<usize>,
    sets: Vec<u64>,
    used: u64,
    expansions: u64,
    budget: u64,
}

impl State<'_> {
    fn all_g(&self) -> u64 {
        if self.g.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.g.len()) - 1
        }
    }

    fn tick(&mut self) -> Result<(), MinorError> {
        self.expansions += 1;
        if self.expansions > self.budget {
            Err(MinorError::BudgetExceeded { budget: self.budget })
        } else {
            Ok(())
        }
    }

    fn assign(&mut self, depth: usize) -> Result<bool, MinorError> {
        if depth == self.order.len() {
            return Ok(true);
        }
        let hv = self.order[depth];
        let free = self.all_g() & !self.used;
        let remaining_after = self.order.len() - depth - 1;
        let max_size = (free.count_ones() as usize).saturating_sub(remaining_after);
        if max_size == 0 {
            return Ok(false);
        }
        let assigned_nbrs: Vec<usize> = bits(self.h.adj[hv]).filter(|&u| self.pos[u] < depth).collect();
        let unassigned_nbrs = self.h.degree(hv) as usize - assigned_nbrs.len();
        let targets: Vec<u64> = assigned_nbrs.iter().map(|&u| self.g.neighborhood(self.sets[u])).collect();

        let g = self.g;
        let mut candidates = Vec::new();
        self.enumerate_connected(free, max_size, &mut |set| {
            let touches_all = targets.iter().all(|&t| t & set != 0);
            let room = (g.neighborhood(set) & free).count_ones() as usize >= unassigned_nbrs;
            if touches_all && room {
                candidates.push(set);
            }
        })?;
        candidates.sort_unstable_by_key(|&s| (s.count_ones(), Reverse(s.reverse_bits())));

        for set in candidates {
            self.tick()?;
            self.sets[hv] = set;
            self.used |= set;
            if self.feasible(depth + 1) && self.assign(depth + 1)? {
                return Ok(true);
            }
            self.used &= !set;
            self.sets[hv] = 0;
        }
        Ok(false)
    }

    /// Necessary conditions for completing the assignment from `depth` on.
    fn feasible(&self, depth: usize) -> bool {
        let free = self.all_g() & !self.used;
        if (free.count_ones() as usize) < self.order.len() - depth {
            return false;
        }
        let mut components = Vec::new();
        let mut rest = free;
        while rest != 0 {
            let c = self.g.component(rest.trailing_zeros() as usize, free);
            components.push(c);
            rest &= !c;
        }
        self.order[depth..].iter().all(|&hv| {
            let targets: Vec<u64> = bits(self.h.adj[hv])
                .filter(|&u| self.pos[u] < depth)
                .map(|u| self.g.neighborhood(self.sets[u]))
                .collect();
            targets.is_empty() || components.iter().any(|&c| targets.iter().all(|&t| t & c != 0))
        })
    }

    /// Calls `visit` once for every connected subset of `allowed` with at
    /// most `max_size` vertices. Each generated set counts against the
    /// budget.
    fn enumerate_connected(
        &mut self,
        allowed: u64,
        max_size: usize,
        visit: &mut dyn FnMut(u64),
    ) -> Result<(), MinorError> {
        for root in bits(allowed) {
            // Sets whose smallest vertex is `root`.
            let above = allowed & !((1u64 << root) | ((1u64 << root) - 1));
            let ext = self.g.adj[root] & above;
            self.grow(1 << root, ext, above, max_size, visit)?;
        }
        Ok(())
    }

    fn grow(
        &mut self,
        set: u64,
        mut ext: u64,
        mut allowed: u64,
        max_size: usize,
        visit: &mut dyn FnMut(u64),
    ) -> Result<(), MinorError> {
        self.tick()?;
        visit(set);
        if set.count_ones() as usize == max_size {
            return Ok(());
        }
        while ext != 0 {
            let v = ext.trailing_zeros() as usize;
            ext &= ext - 1;
            allowed &= !(1 << v);
            let child = set | (1 << v);
            let child_ext = (ext | (self.g.adj[v] & allowed)) & !child;
            self.grow(child, child_ext, allowed, max_size, visit)?;
        }
        Ok(())
    }
}
