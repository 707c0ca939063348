use std::collections::HashSet;

use loose_ramsey::coloring::{Coloring, StandardColoring, TableColoring};
use loose_ramsey::hypergraph::{
    all_edges, binomial, build_partite_path, colex_rank, colex_unrank, enumerate_partite_edges,
    validate_loose_path, PartiteFamily, Vertex,
};
use proptest::prelude::*;

/// Reference check straight from the definition.
fn pairwise_loose(seq: &[Vertex], k: usize, n: usize) -> bool {
    if seq.len() < k || !(seq.len() - 1).is_multiple_of(k - 1) || seq.iter().any(|&v| v as usize >= n) {
        return false;
    }
    let edges: Vec<HashSet<Vertex>> = seq
        .windows(k)
        .step_by(k - 1)
        .map(|w| w.iter().copied().collect())
        .collect();
    if edges.iter().any(|e| e.len() != k) {
        return false;
    }
    (0..edges.len()).all(|i| {
        (i + 1..edges.len()).all(|j| edges[i].intersection(&edges[j]).count() == usize::from(j == i + 1))
    })
}

fn accepts(seq: &[Vertex], k: usize, n: usize) -> bool {
    seq.len() >= k && validate_loose_path(seq, k, n).is_ok()
}

#[test]
fn colex_round_trip_exhaustive() {
    for k in 1..=5 {
        for n in k..=12 {
            let total = binomial(n as u64, k as u64);
            for x in 0..total {
                let edge = colex_unrank(x, k, n).unwrap();
                assert_eq!(colex_rank(edge.vertices(), k).unwrap(), x);
            }
            assert!(colex_unrank(total, k, n).is_err());
        }
    }
}

#[test]
fn validation_matches_pairwise_exhaustive() {
    // every sequence of length <= 7 over 7 vertices
    let n = 7usize;
    for k in [3, 4] {
        for len in 1..=7u32 {
            for code in 0..(n as u64).pow(len) {
                let mut c = code;
                let seq: Vec<Vertex> = (0..len)
                    .map(|_| {
                        let v = (c % n as u64) as Vertex;
                        c /= n as u64;
                        v
                    })
                    .collect();
                assert_eq!(accepts(&seq, k, n), pairwise_loose(&seq, k, n), "k={k} {seq:?}");
            }
        }
    }
}

fn nine_sequences() -> impl Strategy<Value = Vec<Vertex>> {
    // permutations with a few overwritten positions, so both outcomes occur
    (Just((0..9).collect::<Vec<Vertex>>()).prop_shuffle(), prop::collection::vec((0usize..9, 0u32..9), 0..3), 5usize..=9)
        .prop_map(|(mut seq, edits, len)| {
            for (pos, v) in edits {
                seq[pos] = v;
            }
            seq.truncate(len);
            seq
        })
}

fn family() -> impl Strategy<Value = (usize, Vec<usize>, usize, Vec<Vertex>)> {
    (2usize..=5).prop_flat_map(|k| {
        (Just(k), 2usize..=k).prop_flat_map(|(k, m)| {
            (
                Just(k),
                prop::collection::vec(1usize..=3, m - 1),
                (k - m + 1)..=8,
                Just((0..24).collect::<Vec<Vertex>>()).prop_shuffle(),
            )
        })
    })
}

fn split(sizes: &[usize], residual: usize, order: &[Vertex], k: usize) -> PartiteFamily {
    let mut at = 0;
    let parts = sizes
        .iter()
        .map(|&s| {
            let p = order[at..at + s].to_vec();
            at += s;
            p
        })
        .collect();
    PartiteFamily::new(parts, order[at..at + residual].to_vec(), k).unwrap()
}

proptest! {
    #[test]
    fn validation_matches_pairwise_on_nine(seq in nine_sequences(), k in 3usize..=4) {
        prop_assert_eq!(accepts(&seq, k, 9), pairwise_loose(&seq, k, 9));
    }

    #[test]
    fn colex_order_matches_rank(a in prop::collection::btree_set(0u32..40, 4), b in prop::collection::btree_set(0u32..40, 4)) {
        let a: Vec<Vertex> = a.into_iter().collect();
        let b: Vec<Vertex> = b.into_iter().collect();
        let by_rank = colex_rank(&a, 4).unwrap().cmp(&colex_rank(&b, 4).unwrap());
        let by_colex = a.iter().rev().cmp(b.iter().rev());
        prop_assert_eq!(by_rank, by_colex);
    }

    #[test]
    fn partite_enumeration_counts((k, sizes, residual, order) in family()) {
        let fam = split(&sizes, residual, &order, k);
        let listed: Vec<Vec<Vertex>> = enumerate_partite_edges(&fam, k).unwrap().map(|e| e.into_vec()).collect();
        let distinct: HashSet<&Vec<Vertex>> = listed.iter().collect();
        prop_assert_eq!(distinct.len(), listed.len());
        prop_assert_eq!(listed.len() as u64, fam.edge_total(k));
        let brute: Vec<Vec<Vertex>> = all_edges(24, k).filter(|e| fam.contains_edge(e, k)).collect();
        prop_assert_eq!(listed, brute);
    }

    #[test]
    fn tables_are_deterministic(seed in any::<u64>(), r in 2usize..6) {
        let source = StandardColoring::SeededRandom { r, seed };
        let a = TableColoring::materialize(&source, 3, 11).unwrap();
        let b = TableColoring::materialize(&source, 3, 11).unwrap();
        prop_assert_eq!(a.as_slice(), b.as_slice());
        prop_assert!(a.as_slice().iter().all(|&c| c >= 1 && c as usize <= r));
        for e in all_edges(11, 3) {
            prop_assert_eq!(a.color_of(&e), source.color_of(&e));
        }
    }
}

#[test]
fn partite_paths_at_minimum_sizes() {
    for k in 2..=6 {
        for m in 2..=k {
            for ell in 1..=5 {
                let residual = if m < k { ell * (k - m) + 1 } else { ell };
                let mut next = 0 as Vertex;
                let mut take = |count: usize| -> Vec<Vertex> {
                    let out: Vec<Vertex> = (next..next + count as Vertex).rev().collect();
                    next += count as Vertex;
                    out
                };
                let parts: Vec<Vec<Vertex>> = (0..m - 1).map(|_| take(ell)).collect();
                let res = take(residual);
                let n = next as usize;
                let fam = PartiteFamily::new(parts.clone(), res.clone(), k).unwrap();
                let path = build_partite_path(&fam, k, ell).unwrap();
                assert_eq!(validate_loose_path(path.sequence(), k, n), Ok(ell), "k={k} m={m} ell={ell}");
                for e in path.edge_keys() {
                    assert!(fam.contains_edge(e.vertices(), k), "k={k} m={m} ell={ell} edge {e}");
                }
                // one vertex short in the residual class is refused
                if residual > 1 {
                    let short = PartiteFamily::new(parts, res[1..].to_vec(), k).unwrap();
                    assert!(build_partite_path(&short, k, ell).is_err());
                }
            }
        }
    }
}
