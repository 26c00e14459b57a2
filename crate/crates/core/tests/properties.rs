mod common;

use common::{brute_optimum, from_bits, is_independent, members, satisfies};
use linforest::bounds::{f_ratio, lif_regular_lower_bound};
use linforest::cubic::canonical_key;
use linforest::enumerate::{canonical_form, random_regular};
use linforest::greedy::greedy_partition;
use linforest::io::{decode_graph6, encode_graph6, parse_graph};
use linforest::solve::{oracle_subset_scan, solve};
use linforest::{Graph, Rational, SearchBudget, Shape, VertexSet};
use num_bigint::BigInt;
use proptest::prelude::*;

const U: SearchBudget = SearchBudget::UNLIMITED;

/// Random graph of order in `lo..=hi` with a random edge density.
fn graph(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    (lo..=hi, 0.05f64..0.95).prop_flat_map(|(n, p)| {
        proptest::collection::vec(proptest::bool::weighted(p), n * n.saturating_sub(1) / 2)
            .prop_map(move |bits| from_bits(n, &bits))
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn value(g: &Graph, shape: Shape) -> usize {
    solve(g, shape, U).unwrap().value
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn graph6_round_trip(g in graph(0, 62)) {
        let text = encode_graph6(&g);
        prop_assert_eq!(decode_graph6(&text).unwrap(), g);
    }

    #[test]
    fn graph6_long_form_round_trip(g in graph(63, 80)) {
        prop_assert_eq!(decode_graph6(&encode_graph6(&g)).unwrap(), g);
    }

    #[test]
    fn decoder_never_panics_on_bytes(bytes in proptest::collection::vec(any::<u8>(), 0..40)) {
        let text = String::from_utf8_lossy(&bytes);
        let _ = decode_graph6(&text);
        let _ = parse_graph(&text);
    }

    #[test]
    fn decoder_never_panics_on_graph6_alphabet(s in "[?-~]{0,30}") {
        if let Ok(g) = decode_graph6(&s) {
            // anything accepted must re-encode to the same text
            prop_assert_eq!(encode_graph6(&g), s);
        }
    }

    #[test]
    fn edge_list_and_graph6_agree(g in graph(1, 30)) {
        let mut text = format!("{} {}", g.order(), g.size());
        for (u, v) in g.edges() {
            text.push_str(&format!("/{u} {v}"));
        }
        let from_edges = parse_graph(&text).unwrap();
        let from_g6 = parse_graph(&encode_graph6(&g)).unwrap();
        prop_assert_eq!(&from_edges, &from_g6);
        prop_assert_eq!(from_edges, g);
    }

    #[test]
    fn complement_is_an_involution(g in graph(0, 128)) {
        prop_assert_eq!(g.complement().complement(), g.clone());
        prop_assert_eq!(g.size() + g.complement().size(), g.order() * g.order().saturating_sub(1) / 2);
    }

    #[test]
    fn degrees_sum_to_twice_the_size(g in graph(0, 128)) {
        prop_assert_eq!(g.degree_sequence().iter().sum::<usize>(), 2 * g.size());
    }

    #[test]
    fn shape_implications_and_checker_agreement(g in graph(1, 20), mask in any::<u64>()) {
        let s: Vec<usize> = members(mask, g.order());
        let set: VertexSet = s.iter().copied().collect();
        let path = g.shape_check(set, Shape::InducedPath);
        let lin = g.shape_check(set, Shape::LinearForest);
        let forest = g.shape_check(set, Shape::Forest);
        prop_assert!(!path || lin);
        prop_assert!(!lin || forest);
        prop_assert_eq!(path, satisfies(&g, &s, Shape::InducedPath));
        prop_assert_eq!(lin, satisfies(&g, &s, Shape::LinearForest));
        prop_assert_eq!(forest, satisfies(&g, &s, Shape::Forest));
        if is_independent(&g, &s) {
            prop_assert!(lin);
        }
    }

    #[test]
    fn value_chain_and_witnesses(g in graph(1, 16)) {
        let n = g.order();
        let mut values = Vec::new();
        for shape in Shape::ALL {
            let r = solve(&g, shape, U).unwrap();
            prop_assert!(r.optimal);
            prop_assert_eq!(r.witness.len(), r.value);
            prop_assert!(satisfies(&g, &r.witness.to_vec(), shape));
            values.push(r.value);
        }
        let (a, lif, lip) = (values[0], values[1], values[2]);
        prop_assert!(1 <= lip && lip <= lif && lif <= a && a <= n);
    }

    #[test]
    fn solvers_match_brute_force(g in graph(1, 11)) {
        for shape in Shape::ALL {
            let expected = brute_optimum(&g, shape);
            prop_assert_eq!(value(&g, shape), expected);
            prop_assert_eq!(oracle_subset_scan(&g, shape).unwrap().value, expected);
        }
    }

    #[test]
    fn adding_an_edge_never_increases_a_or_lif(g in graph(2, 16), pick in any::<prop::sample::Index>()) {
        let comp = g.complement().edges();
        prop_assume!(!comp.is_empty());
        let (u, v) = comp[pick.index(comp.len())];
        let h = g.with_edge(u, v).unwrap();
        prop_assert!(value(&h, Shape::Forest) <= value(&g, Shape::Forest));
        prop_assert!(value(&h, Shape::LinearForest) <= value(&g, Shape::LinearForest));
    }

    #[test]
    fn values_are_relabelling_invariant(g in graph(1, 14).prop_flat_map(|g| {
        let n = g.order();
        (Just(g), permutation(n))
    })) {
        let (g, perm) = g;
        let h = g.relabel(&perm);
        for shape in Shape::ALL {
            prop_assert_eq!(value(&g, shape), value(&h, shape));
        }
    }

    #[test]
    fn canonical_form_is_relabelling_invariant(g in graph(1, 8).prop_flat_map(|g| {
        let n = g.order();
        (Just(g), permutation(n))
    })) {
        let (g, perm) = g;
        let h = g.relabel(&perm);
        prop_assert_eq!(canonical_form(&g).unwrap(), canonical_form(&h).unwrap());
        prop_assert_eq!(canonical_key(&g).0, canonical_key(&h).0);
    }

    #[test]
    fn f_ratio_is_at_least_one(g in graph(1, 12)) {
        let f = f_ratio::<BigInt>(&g, value(&g, Shape::LinearForest));
        prop_assert!(f >= Rational::from_integer(BigInt::from(1)));
    }

    #[test]
    fn random_regular_is_regular(n in 4usize..40, r in 0usize..8, seed in any::<u64>()) {
        prop_assume!(r < n && n * r % 2 == 0);
        let g = random_regular(n, r, seed).unwrap();
        prop_assert_eq!(g.order(), n);
        prop_assert_eq!(g.regularity().unwrap(), Some(r));
        prop_assert_eq!(random_regular(n, r, seed).unwrap(), g);
    }

    #[test]
    fn greedy_partition_properties(n in 6usize..=16, r in 2usize..=5, seed in any::<u64>()) {
        prop_assume!(r < n && n * r % 2 == 0);
        let g = random_regular(n, r, seed).unwrap();
        let res = greedy_partition::<i64>(&g).unwrap();
        let mut seen = VertexSet::EMPTY;
        for w in res.parts.windows(2) {
            prop_assert!(w[0].len() >= w[1].len());
        }
        for p in &res.parts {
            prop_assert!(satisfies(&g, &p.to_vec(), Shape::LinearForest));
            prop_assert!(p.intersection(seen).is_empty());
            seen = seen.union(*p);
        }
        prop_assert_eq!(seen, g.vertices());
        prop_assert!(res.meets_bound());
        let lif = value(&g, Shape::LinearForest);
        prop_assert!(res.certified().len() <= lif);
        let bound = lif_regular_lower_bound::<i64>(n, r).unwrap();
        prop_assert!(num_rational::Ratio::from_integer(lif as i64) >= bound);
    }
}

#[test]
fn lip_can_grow_when_an_edge_is_added() {
    // two disjoint edges have LIP 2; joining them gives P_4 with LIP 4
    let g = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
    let h = g.with_edge(1, 2).unwrap();
    assert_eq!(value(&g, Shape::InducedPath), 2);
    assert_eq!(value(&h, Shape::InducedPath), 4);
}
