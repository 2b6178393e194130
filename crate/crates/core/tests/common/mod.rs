//! Test-side oracles and generators, written without the library's graph
//! algorithms so they can check them.
#![allow(dead_code)]

pub mod corpus;

use std::collections::{BTreeMap, BTreeSet, HashSet};

use gcdminor::semigroup::PrimeSymbol;
use gcdminor::{FactoredElement, SimpleGraph, VertexLabel};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Adjacency rows over vertices `0..n`, `n <= 16`.
pub type Adj = Vec<u16>;

pub fn adj_of(g: &SimpleGraph) -> Adj {
    let labels: Vec<&VertexLabel> = g.vertices().collect();
    let idx = |v: &VertexLabel| labels.iter().position(|w| *w == v).unwrap();
    let mut adj = vec![0u16; labels.len()];
    for (a, b) in g.edges() {
        let (i, j) = (idx(a), idx(b));
        adj[i] |= 1 << j;
        adj[j] |= 1 << i;
    }
    adj
}

pub fn graph_of(adj: &[u16]) -> SimpleGraph {
    let n = adj.len() as i64;
    let edges = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
    SimpleGraph::from_parts(0..n, edges.filter(|&(a, b)| adj[a as usize] >> b & 1 == 1)).unwrap()
}

/// Canonical code: the largest upper-triangle bit string over all vertex
/// orders that list degrees in non-increasing order.
pub fn canonical_code(adj: &[u16]) -> u64 {
    let n = adj.len();
    let deg: Vec<u32> = adj.iter().map(|r| r.count_ones()).collect();
    let mut sorted = deg.clone();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let mut best = 0u64;
    let mut order = Vec::with_capacity(n);
    fn rec(adj: &[u16], deg: &[u32], sorted: &[u32], order: &mut Vec<usize>, used: u16, best: &mut u64) {
        let n = adj.len();
        if order.len() == n {
            let mut code = 0u64;
            for i in 0..n {
                for j in i + 1..n {
                    code = code << 1 | (adj[order[i]] >> order[j] & 1) as u64;
                }
            }
            *best = (*best).max(code);
            return;
        }
        let want = sorted[order.len()];
        for v in 0..n {
            if used >> v & 1 == 0 && deg[v] == want {
                order.push(v);
                rec(adj, deg, sorted, order, used | 1 << v, best);
                order.pop();
            }
        }
    }
    rec(adj, &deg, &sorted, &mut order, 0, &mut best);
    best
}

pub fn brute_isomorphic(a: &[u16], b: &[u16]) -> bool {
    a.len() == b.len() && canonical_code(a) == canonical_code(b)
}

/// One representative per isomorphism class, by order `0..=max_n`. Every
/// graph on `n` vertices is some graph on `n - 1` vertices plus a vertex,
/// so extending each class by every neighbourhood reaches all classes.
pub fn graph_classes(max_n: usize) -> Vec<Vec<Adj>> {
    assert!(max_n <= 8);
    let mut out: Vec<Vec<Adj>> = vec![vec![Vec::new()]];
    for n in 1..=max_n {
        let mut seen = HashSet::new();
        let mut layer = Vec::new();
        for base in &out[n - 1] {
            for nbhd in 0u16..(1 << (n - 1)) {
                let mut adj = base.clone();
                adj.push(nbhd);
                for (v, row) in adj.iter_mut().enumerate().take(n - 1) {
                    *row |= (nbhd >> v & 1) << (n - 1);
                }
                if seen.insert(canonical_code(&adj)) {
                    layer.push(adj);
                }
            }
        }
        out.push(layer);
    }
    out
}

/// Every labelled graph on vertices `0..n`.
pub fn labelled_graphs(n: usize) -> impl Iterator<Item = Adj> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    (0u32..1 << pairs.len()).map(move |mask| {
        let mut adj = vec![0u16; n];
        for (k, &(a, b)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                adj[a] |= 1 << b;
                adj[b] |= 1 << a;
            }
        }
        adj
    })
}

pub fn random_adj<R: Rng>(rng: &mut R, n: usize, p: f64) -> Adj {
    let mut adj = vec![0u16; n];
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                adj[a] |= 1 << b;
                adj[b] |= 1 << a;
            }
        }
    }
    adj
}

pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> SimpleGraph {
    graph_of(&random_adj(rng, n, p))
}

/// Grows `h` into a graph having `h` as a minor by undoing minor
/// operations: adding a vertex, adding an edge, or splitting a vertex into
/// two adjacent ones that share out its neighbourhood.
pub fn inverse_minor_ops<R: Rng>(rng: &mut R, h: &SimpleGraph, steps: usize, max_n: usize) -> SimpleGraph {
    let mut g: BTreeMap<i64, BTreeSet<i64>> = BTreeMap::new();
    let relabel: BTreeMap<&VertexLabel, i64> = h.vertices().zip(0..).collect();
    for v in relabel.values() {
        g.insert(*v, BTreeSet::new());
    }
    for (a, b) in h.edges() {
        let (a, b) = (relabel[a], relabel[b]);
        g.get_mut(&a).unwrap().insert(b);
        g.get_mut(&b).unwrap().insert(a);
    }
    let mut next = g.len() as i64;
    for _ in 0..steps {
        let vs: Vec<i64> = g.keys().copied().collect();
        match rng.gen_range(0..3) {
            0 if g.len() < max_n => {
                g.insert(next, BTreeSet::new());
                next += 1;
            }
            1 if vs.len() >= 2 => {
                let pick: Vec<&i64> = vs.choose_multiple(rng, 2).collect();
                let (a, b) = (*pick[0], *pick[1]);
                g.get_mut(&a).unwrap().insert(b);
                g.get_mut(&b).unwrap().insert(a);
            }
            2 if g.len() < max_n && !vs.is_empty() => {
                let v = *vs.choose(rng).unwrap();
                let w = next;
                next += 1;
                let nbrs: Vec<i64> = g[&v].iter().copied().collect();
                g.insert(w, BTreeSet::new());
                for u in nbrs {
                    // each neighbour stays with v, moves to w, or joins both
                    let choice = rng.gen_range(0..3);
                    if choice >= 1 {
                        g.get_mut(&w).unwrap().insert(u);
                        g.get_mut(&u).unwrap().insert(w);
                    }
                    if choice == 1 {
                        g.get_mut(&v).unwrap().remove(&u);
                        g.get_mut(&u).unwrap().remove(&v);
                    }
                }
                g.get_mut(&v).unwrap().insert(w);
                g.get_mut(&w).unwrap().insert(v);
            }
            _ => {}
        }
    }
    let edges: Vec<(i64, i64)> =
        g.iter().flat_map(|(&a, ns)| ns.iter().filter(move |&&b| a < b).map(move |&b| (a, b))).collect();
    SimpleGraph::from_parts(g.keys().copied(), edges).unwrap()
}

pub const SMALL_PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];
pub const NAMES: [&str; 5] = ["p", "q", "r", "s", "t"];

/// A random element over a small prime pool; the identity about one time
/// in five, so unit cases are exercised.
pub fn random_element<R: Rng>(rng: &mut R, free: bool) -> FactoredElement {
    if rng.gen_ratio(1, 5) {
        return FactoredElement::identity();
    }
    let pool = if free { NAMES.len() } else { SMALL_PRIMES.len() };
    let k = rng.gen_range(1..=3);
    let pairs = (0..k).map(|_| {
        let i = rng.gen_range(0..pool);
        let sym = if free {
            PrimeSymbol::named(NAMES[i]).unwrap()
        } else {
            PrimeSymbol::natural(SMALL_PRIMES[i]).unwrap()
        };
        (sym, rng.gen_range(1..=3u64))
    });
    FactoredElement::from_exponents(pairs).unwrap()
}

pub fn euclid(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        euclid(b, a % b)
    }
}
