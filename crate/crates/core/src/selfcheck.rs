//! Invariant suite run by `loose-ramsey selfcheck`.
//!
//! Each check is self-contained and deterministic. `quick` shrinks the
//! parameter ranges so the suite finishes in a few seconds.

use std::collections::HashSet;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bounds;
use crate::coloring::{seeded_color, Coloring, StandardColoring, TableColoring};
use crate::error::Result;
use crate::finder::{self, Mode};
use crate::hypergraph::{
    all_edges, binomial, build_partite_path, colex_rank, colex_unrank, enumerate_partite_edges,
    validate_loose_path, Params, PartiteFamily, Vertex,
};
use crate::oracle;
use crate::reduction;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

type Check = fn(bool) -> Result<(bool, String)>;

const CHECKS: &[(&str, Check)] = &[
    ("colex round-trip", colex_round_trip),
    ("loose path validation", path_validation),
    ("partite enumeration", partite_enumeration),
    ("partite path construction", partite_paths),
    ("coloring determinism", coloring_determinism),
    ("tau identities", tau_identities),
    ("tau estimate sweep", tau_claim),
    ("log estimate sweep", cor_claim),
    ("dfs finder and oracle", finder_runs),
    ("selfish reduction", reduction_runs),
    ("small ramsey values", small_ramsey),
];

/// Runs every check; errors count as failures.
pub fn run_all(quick: bool) -> Vec<CheckOutcome> {
    CHECKS
        .iter()
        .map(|&(name, check)| {
            let start = Instant::now();
            let (passed, detail) = match check(quick) {
                Ok(v) => v,
                Err(e) => (false, format!("error: {e}")),
            };
            CheckOutcome {
                name,
                passed,
                detail,
                millis: start.elapsed().as_millis(),
            }
        })
        .collect()
}

fn colex_round_trip(quick: bool) -> Result<(bool, String)> {
    let max_n = if quick { 10 } else { 14 };
    let mut checked = 0u64;
    for k in 1..=4 {
        for n in k..=max_n {
            for (expected, edge) in all_edges(n, k).enumerate() {
                let rank = colex_rank(&edge, k)?;
                if rank != expected as u64 || colex_unrank(rank, k, n)?.vertices() != edge.as_slice() {
                    return Ok((false, format!("k={k} n={n} edge {edge:?}")));
                }
                checked += 1;
            }
        }
    }
    Ok((true, format!("{checked} edges")))
}

/// Direct reading of the definition: consecutive edges meet in one vertex,
/// all other pairs are disjoint.
fn pairwise_loose(seq: &[Vertex], k: usize, n: usize) -> bool {
    if seq.len() < k || !(seq.len() - 1).is_multiple_of(k - 1) || seq.iter().any(|&v| v as usize >= n) {
        return false;
    }
    let edges: Vec<HashSet<Vertex>> = (0..(seq.len() - 1) / (k - 1))
        .map(|i| seq[i * (k - 1)..i * (k - 1) + k].iter().copied().collect())
        .collect();
    if edges.iter().any(|e| e.len() != k) {
        return false;
    }
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            let common = edges[i].intersection(&edges[j]).count();
            if common != usize::from(j == i + 1) {
                return false;
            }
        }
    }
    true
}

fn path_validation(quick: bool) -> Result<(bool, String)> {
    let cases: &[(usize, usize, usize)] = if quick {
        &[(2, 5, 5), (3, 5, 6), (4, 4, 7)]
    } else {
        &[(2, 6, 6), (3, 7, 7), (4, 5, 8)]
    };
    let mut checked = 0u64;
    for &(k, n, len) in cases {
        for l in 1..=len {
            let total = (n as u64).pow(l as u32);
            for code in 0..total {
                let mut c = code;
                let seq: Vec<Vertex> = (0..l)
                    .map(|_| {
                        let v = (c % n as u64) as Vertex;
                        c /= n as u64;
                        v
                    })
                    .collect();
                let fast = validate_loose_path(&seq, k, n).is_ok() && seq.len() >= k;
                if fast != pairwise_loose(&seq, k, n) {
                    return Ok((false, format!("k={k} n={n} disagreement on {seq:?}")));
                }
                checked += 1;
            }
        }
    }
    Ok((true, format!("{checked} sequences")))
}

fn random_family(rng: &mut ChaCha8Rng, k: usize, n: usize) -> Result<PartiteFamily> {
    let m = rng.gen_range(2..=k);
    let mut verts: Vec<Vertex> = (0..n as Vertex).collect();
    verts.shuffle(rng);
    let mut parts = Vec::new();
    let mut at = 0;
    for _ in 0..m - 1 {
        let size = rng.gen_range(1..=3);
        parts.push(verts[at..at + size].to_vec());
        at += size;
    }
    let rest = rng.gen_range(k - m + 1..=n - at);
    let residual = verts[at..at + rest].to_vec();
    PartiteFamily::new(parts, residual, k)
}

fn partite_enumeration(quick: bool) -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let trials = if quick { 40 } else { 300 };
    for _ in 0..trials {
        let k = rng.gen_range(2..=4);
        let n = 14;
        let fam = random_family(&mut rng, k, n)?;
        let listed: Vec<Vec<Vertex>> = enumerate_partite_edges(&fam, k)?.map(|e| e.into_vec()).collect();
        let brute: Vec<Vec<Vertex>> = all_edges(n, k).filter(|e| fam.contains_edge(e, k)).collect();
        if listed != brute || listed.len() as u64 != fam.edge_total(k) {
            return Ok((false, format!("mismatch on {fam:?}")));
        }
    }
    Ok((true, format!("{trials} families")))
}

fn partite_paths(quick: bool) -> Result<(bool, String)> {
    let mut checked = 0;
    for k in 2..=if quick { 4 } else { 6 } {
        for m in 2..=k {
            for ell in 1..=6 {
                let mut next = 0 as Vertex;
                let mut take = |count: usize| -> Vec<Vertex> {
                    let out = (next..next + count as Vertex).collect();
                    next += count as Vertex;
                    out
                };
                let parts: Vec<Vec<Vertex>> = (0..m - 1).map(|_| take(ell)).collect();
                let residual = take((k - m + 1) * ell + 1);
                let n = next as usize;
                let fam = PartiteFamily::new(parts, residual, k)?;
                let path = build_partite_path(&fam, k, ell)?;
                let edges = validate_loose_path(path.sequence(), k, n);
                let inside = path.edge_keys().iter().all(|e| fam.contains_edge(e.vertices(), k));
                if edges != Ok(ell) || !inside {
                    return Ok((false, format!("k={k} m={m} ell={ell}: {:?}", path.sequence())));
                }
                checked += 1;
            }
        }
    }
    Ok((true, format!("{checked} families")))
}

fn coloring_determinism(_quick: bool) -> Result<(bool, String)> {
    let golden = seeded_color(12345, 0, 2) == 2
        && (0..10).map(|rank| seeded_color(12345, rank, 3)).eq([1, 2, 1, 2, 1, 2, 2, 2, 2, 3])
        && (0..10).map(|rank| seeded_color(7, rank, 2)).eq([1, 2, 2, 2, 1, 2, 2, 2, 1, 1]);
    let source = StandardColoring::SeededRandom { r: 3, seed: 99 };
    let a = TableColoring::materialize(&source, 3, 12)?;
    let b = TableColoring::materialize(&source, 3, 12)?;
    let agree = all_edges(12, 3).all(|e| a.color_of(&e) == source.color_of(&e));
    let passed = golden && a == b && agree;
    Ok((passed, format!("{} table entries", a.as_slice().len())))
}

fn tau_identities(quick: bool) -> Result<(bool, String)> {
    let report = if quick {
        bounds::sweep_identities(30, 1..=10)
    } else {
        bounds::sweep_identities(60, 1..=20)
    };
    Ok((report.passed(), format!("{} identities, {} failures", report.checked, report.failures.len())))
}

fn tau_claim(quick: bool) -> Result<(bool, String)> {
    let report = if quick {
        bounds::sweep_claim_tau(40, 1..=20)
    } else {
        bounds::sweep_claim_tau(100, 1..=50)
    };
    Ok((report.passed(), format!("{} cases, {} failures", report.checked, report.failures.len())))
}

fn cor_claim(quick: bool) -> Result<(bool, String)> {
    let report = bounds::sweep_claim_cor(if quick { 60 } else { 200 });
    Ok((report.passed(), format!("{} cases, {} failures", report.checked, report.failures.len())))
}

fn finder_runs(quick: bool) -> Result<(bool, String)> {
    let seeds = if quick { 10 } else { 50 };
    let params = Params::new(3, 3, 2, 15)?;
    for seed in 0..seeds {
        let coloring = StandardColoring::SeededRandom { r: 2, seed };
        let found = finder::find_monochromatic_path(&coloring, params, Mode::Strict)?;
        if let Err(defect) = oracle::verify_witness(&coloring, &found.path, found.color, &params) {
            return Ok((false, format!("seed {seed}: {defect}")));
        }
        if found.stats.queries > finder::query_budget(&params) {
            return Ok((false, format!("seed {seed}: {} queries", found.stats.queries)));
        }
        let (confirmed, _) = oracle::search_color(&coloring, &params, found.color)?;
        if confirmed.is_none() {
            return Ok((false, format!("seed {seed}: oracle finds no color-{} path", found.color)));
        }
    }
    Ok((true, format!("{seeds} seeds")))
}

fn reduction_runs(quick: bool) -> Result<(bool, String)> {
    let seeds = if quick { 10 } else { 50 };
    let params = Params::new(3, 3, 2, 30)?;
    for seed in 0..seeds {
        let coloring = StandardColoring::SeededRandom { r: 2, seed };
        let found = reduction::find_via_reduction(&coloring, params)?;
        if let Err(defect) = oracle::verify_witness(&coloring, &found.path, found.color, &params) {
            return Ok((false, format!("seed {seed}: {defect}")));
        }
    }
    Ok((true, format!("{seeds} seeds")))
}

fn small_ramsey(_quick: bool) -> Result<(bool, String)> {
    let five = oracle::verify_small_ramsey(3, 2, 2, 5)?;
    let four = oracle::verify_small_ramsey(3, 2, 2, 4)?;
    let triangle = oracle::verify_small_ramsey(2, 2, 2, 3)?;
    Ok((
        five && !four && triangle,
        format!("{} colorings of K_5^(3)", 1u64 << binomial(5, 3)),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_suite_passes() {
        for outcome in run_all(true) {
            assert!(outcome.passed, "{}: {}", outcome.name, outcome.detail);
        }
    }

    #[test]
    fn pairwise_reference_rejects_repeats() {
        assert!(pairwise_loose(&[0, 1, 2, 3, 4], 3, 5));
        assert!(!pairwise_loose(&[0, 1, 2, 1, 4], 3, 5));
        assert!(!pairwise_loose(&[0, 1, 2, 3], 3, 5));
    }
}
