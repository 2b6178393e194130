mod common;

use std::collections::BTreeMap;

use common::*;
use gcdminor::correspondence::label_of;
use gcdminor::semigroup::set_product;
use gcdminor::theorem::{
    chain_witness, color_pairs, construct_partial_partition, extend_to_full_partition, longest_green_chain,
    scan_and_demonstrate, verify_partition, PairColor, PairColoring, ScanOptions, SubsetSequence,
};
use gcdminor::{
    are_isomorphic, build_gcd_graph, find_minor_embedding, realize_graph, Backend, FactoredElement,
    MinorSearch, SemigroupContext,
};
use proptest::prelude::*;
use rand::Rng;

fn realized(g: &gcdminor::SimpleGraph) -> Vec<FactoredElement> {
    realize_graph(g, Backend::Naturals).unwrap().elements
}

/// Lexicographically smallest longest chain, by brute force over subsets.
fn brute_chain(c: &PairColoring) -> Vec<usize> {
    let n = c.len();
    let mut best: Vec<usize> = Vec::new();
    for mask in 1u32..1 << n {
        let idx: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect();
        if idx.windows(2).all(|w| c.color(w[0], w[1]) == Some(PairColor::Green))
            && (idx.len() > best.len() || (idx.len() == best.len() && idx < best))
        {
            best = idx;
        }
    }
    best
}

#[test]
fn longest_chain_matches_brute_force() {
    let mut r = rng(21);
    for _ in 0..300 {
        let n = r.gen_range(0..=8);
        let mut colors = BTreeMap::new();
        for i in 1..=n {
            for j in i + 1..=n {
                let c = match r.gen_range(0..3) {
                    0 => PairColor::Green,
                    1 => PairColor::Red,
                    _ => PairColor::Yellow,
                };
                colors.insert((i, j), c);
            }
        }
        let c = PairColoring::from_colors(n, colors).unwrap();
        assert_eq!(longest_green_chain(&c), brute_chain(&c));
    }
}

#[test]
fn coloring_is_consistent_with_direct_minor_tests() {
    let mut r = rng(23);
    for _ in 0..40 {
        let len = r.gen_range(2..=5);
        let graphs: Vec<_> = (0..len)
            .map(|_| {
                let n = r.gen_range(1..=5);
                random_graph(&mut r, n, 0.5)
            })
            .collect();
        let seq =
            SubsetSequence::new(SemigroupContext::naturals(), graphs.iter().map(realized).collect()).unwrap();
        let coloring = color_pairs(&seq, &MinorSearch::default()).unwrap();
        assert_eq!(coloring.iter().count(), len * (len - 1) / 2);
        for ((i, j), c) in coloring.iter() {
            let (gi, gj) = (&graphs[i - 1], &graphs[j - 1]);
            let up = find_minor_embedding(gi, gj).unwrap().is_some();
            let down = find_minor_embedding(gj, gi).unwrap().is_some();
            let expect = if up {
                PairColor::Green
            } else if down {
                PairColor::Red
            } else {
                PairColor::Yellow
            };
            assert_eq!(c, expect);
            if are_isomorphic(gi, gj).unwrap().is_some() {
                assert_eq!(c, PairColor::Green);
            }
        }
    }
}

#[test]
fn chain_witnesses_are_valid_chains() {
    let mut r = rng(29);
    for _ in 0..200 {
        let n = r.gen_range(2..=8);
        let g = random_graph(&mut r, n, 0.35);
        let block = realized(&g);
        let gg = build_gcd_graph(&block).unwrap();
        for _ in 0..5 {
            let x = &block[r.gen_range(0..n)];
            let y = &block[r.gen_range(0..n)];
            let same = gg
                .graph
                .connected_components()
                .iter()
                .any(|c| c.contains(&label_of(x)) && c.contains(&label_of(y)));
            match chain_witness(&block, x, y) {
                Some(mid) => {
                    assert!(same);
                    let chain: Vec<&FactoredElement> =
                        std::iter::once(x).chain(&mid).chain(std::iter::once(y)).collect();
                    if x != y {
                        assert!(chain.windows(2).all(|w| !w[0].gcd(w[1]).is_unit()));
                    }
                }
                None => assert!(!same),
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn partitions_of_grown_instances_pass(seed in any::<u64>()) {
        let mut r = rng(seed);
        let hn = r.gen_range(1..=4);
        let h = random_graph(&mut r, hn, 0.6);
        let steps = r.gen_range(0..6);
        let g = inverse_minor_ops(&mut r, &h, steps, 7);
        let (m_h, m_g) = (realized(&h), realized(&g));
        let hg = build_gcd_graph(&m_h).unwrap().graph;
        let gg = build_gcd_graph(&m_g).unwrap().graph;
        let emb = find_minor_embedding(&hg, &gg).unwrap().expect("grown from H");
        let partial = construct_partial_partition(&m_h, &m_g, &emb).unwrap();
        let report = verify_partition(&m_h, &m_g, &partial);
        prop_assert!(report.passes());
        // recompute every obligation independently
        for (i, k) in m_h.iter().enumerate() {
            for kp in &m_h[i + 1..] {
                if !k.gcd(kp).is_unit() {
                    let a = set_product(partial.block(k).unwrap());
                    let b = set_product(partial.block(kp).unwrap());
                    prop_assert!(!a.gcd(&b).is_unit());
                }
            }
        }
        for k0 in &m_h {
            let full = extend_to_full_partition(&partial, &m_g, k0).unwrap();
            prop_assert!(verify_partition(&m_h, &m_g, &full).passes());
            let covered: usize = full.blocks.values().map(Vec::len).sum();
            prop_assert_eq!(covered, m_g.len());
        }
    }

    #[test]
    fn scan_is_deterministic(seed in any::<u64>()) {
        let mut r = rng(seed);
        let sets: Vec<Vec<FactoredElement>> = (0..3)
            .map(|_| {
                let n = r.gen_range(0..=5);
                realized(&random_graph(&mut r, n, 0.5))
            })
            .collect();
        let seq = SubsetSequence::new(SemigroupContext::naturals(), sets).unwrap();
        let opts = ScanOptions { all_pairs: true, ..Default::default() };
        let a = scan_and_demonstrate(&seq, &opts).unwrap();
        let b = scan_and_demonstrate(&seq, &opts).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert!(a.iter().all(|d| d.passes()));
        let coloring = color_pairs(&seq, &MinorSearch::default()).unwrap();
        let greens = coloring.iter().filter(|(_, c)| *c == PairColor::Green).count();
        prop_assert_eq!(a.len(), greens);
    }
}
