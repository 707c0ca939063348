use loose_ramsey::coloring::{Coloring, TableColoring};
use loose_ramsey::hypergraph::{binomial, Vertex};
use loose_ramsey::oracle::{exhaustive_mono_path_search, search_color, verify_witness, OracleVerdict};
use loose_ramsey::testbed::SparseColoring;
use loose_ramsey::{LoosePath, Params, StandardColoring};

/// Second implementation: tries every injective vertex sequence.
fn brute_force<C: Coloring + ?Sized>(coloring: &C, k: usize, ell: usize, n: usize, color: u16) -> bool {
    fn extend<C: Coloring + ?Sized>(c: &C, k: usize, len: usize, n: usize, color: u16, seq: &mut Vec<Vertex>, used: &mut [bool]) -> bool {
        let at = seq.len();
        // an edge closes whenever the sequence reaches 1 mod (k - 1) past the first k
        if at >= k && (at - 1).is_multiple_of(k - 1) {
            let mut e = seq[at - k..].to_vec();
            e.sort_unstable();
            if c.color_of(&e) != color {
                return false;
            }
        }
        if at == len {
            return true;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                seq.push(v as Vertex);
                let ok = extend(c, k, len, n, color, seq, used);
                seq.pop();
                used[v] = false;
                if ok {
                    return true;
                }
            }
        }
        false
    }
    let len = (k - 1) * ell + 1;
    extend(coloring, k, len, n, color, &mut Vec::new(), &mut vec![false; n])
}

fn agree<C: Coloring + ?Sized>(coloring: &C, params: &Params) {
    for color in 1..=params.r as u16 {
        let (found, _) = search_color(coloring, params, color).unwrap();
        let expected = brute_force(coloring, params.k, params.ell, params.n, color);
        assert_eq!(found.is_some(), expected, "{params} color {color}");
        if let Some(path) = found {
            verify_witness(coloring, &path, color, params).unwrap();
        }
    }
}

#[test]
fn oracle_matches_brute_force_on_all_small_colorings() {
    // every 2-coloring of K_5^(3) with paths of length 2
    let params = Params::new(3, 2, 2, 5).unwrap();
    for code in 0u32..1 << 10 {
        let colors = (0..10).map(|b| (code >> b & 1) as u8 + 1).collect();
        let table = TableColoring::new(3, 5, 2, colors).unwrap();
        agree(&table, &params);
    }
}

#[test]
fn oracle_matches_brute_force_on_random_colorings() {
    for n in 5..=7 {
        for ell in 1..=3 {
            if 2 * ell + 1 > n {
                continue;
            }
            let params = Params::new(3, ell, 2, n).unwrap();
            for seed in 0..40 {
                let percent = [10, 30, 50, 70, 90][seed as usize % 5];
                agree(&SparseColoring { r: 2, seed, percent }, &params);
            }
        }
    }
}

#[test]
fn small_cases_from_definitions() {
    let one = StandardColoring::Constant { r: 2, color: 1 };
    let seven = Params::new(3, 3, 2, 7).unwrap();
    match exhaustive_mono_path_search(&one, &seven).unwrap() {
        OracleVerdict::Found { color, path, .. } => {
            assert_eq!(color, 1);
            assert_eq!(path.sequence().len(), 7);
        }
        other => panic!("{other}"),
    }
    let four = Params::new(3, 2, 2, 4).unwrap();
    for seed in 0..4 {
        let c = StandardColoring::SeededRandom { r: 2, seed };
        assert!(!exhaustive_mono_path_search(&c, &four).unwrap().is_found());
    }
}

#[test]
fn star_coloring_has_no_color_one_path() {
    let star = StandardColoring::Star { r: 2, center: 0, inner: 1, outer: 2 };
    let params = Params::new(3, 3, 2, 9).unwrap();
    assert!(search_color(&star, &params, 1).unwrap().0.is_none());
    assert!(!brute_force(&star, 3, 3, 9, 1));
}

#[test]
fn witness_checks_reject_bad_claims() {
    let c = StandardColoring::Constant { r: 2, color: 1 };
    let params = Params::new(3, 3, 2, 9).unwrap();
    let good = LoosePath::from_sequence(3, vec![0, 1, 2, 3, 4, 5, 6]);
    assert!(verify_witness(&c, &good, 1, &params).is_ok());
    assert!(verify_witness(&c, &good, 2, &params).is_err());
    let short = LoosePath::from_sequence(3, vec![0, 1, 2, 3, 4]);
    assert!(verify_witness(&c, &short, 1, &params).is_err());
    assert_eq!(binomial(9, 3), 84);
}
