//! Audited finder runs shared by the integration targets.
#![allow(dead_code)]

use loose_ramsey::bounds::{round_target, t_bin, Rational};
use loose_ramsey::finder::{query_budget, DfsFinder, FinderResult, Mode, RoundOutcome};
use loose_ramsey::hypergraph::{enumerate_partite_edges, PartiteFamily, Vertex};
use loose_ramsey::oracle::verify_witness;
use loose_ramsey::{Coloring, Params};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// How a completed round's freeness is checked.
#[derive(Clone, Copy, Debug)]
pub enum Freeness {
    Skip,
    Exhaustive,
    Sampled(usize),
}

#[derive(Clone, Debug, Default)]
pub struct Audit {
    pub completed_rounds: usize,
    pub freeness_edges: u64,
    pub retreats: usize,
}

fn size(x: usize) -> Rational {
    Rational::from_integer(x.into())
}

pub fn sample_partite_edge(rng: &mut ChaCha8Rng, family: &PartiteFamily, k: usize) -> Vec<Vertex> {
    let mut edge: Vec<Vertex> = family.parts().iter().map(|p| p[rng.gen_range(0..p.len())]).collect();
    let res = family.residual();
    edge.extend(sample(rng, res.len(), k + 1 - family.m()).into_iter().map(|j| res[j]));
    edge.sort_unstable();
    edge
}

/// Checks the end-of-round counting bounds from scratch.
fn check_sizes(finder: &DfsFinder<'_, impl Coloring + ?Sized>, i: usize) -> Result<(), String> {
    let params = *finder.params();
    let shape = params.shape();
    let Params { k, ell, r, .. } = params;
    let state = finder.state();
    let t = state.t(i).len();
    let t_i = t_bin(i, &shape).map_err(|e| e.to_string())?;
    if size(t) > t_i {
        return Err(format!("round {i}: |T| = {t} > t_i = {t_i}"));
    }
    let target = round_target(i, &shape).map_err(|e| e.to_string())?;
    for j in 1..=i {
        let w = state.w(j).len();
        if size(w) < target {
            return Err(format!("round {i}: |W_{j}| = {w} < {target}"));
        }
    }
    let w_ii = state.w(i).len();
    let upper = if i == 1 && r == 2 {
        size(ell + 2 * (k - 1) - 1)
    } else {
        &target + size(2 * (k - i))
    };
    if size(w_ii) > upper {
        return Err(format!("round {i}: |W_ii| = {w_ii} > {upper}"));
    }
    let s = state.s(i).len();
    if s > (ell - 1) * (k - 1) + 1 {
        return Err(format!("round {i}: |S| = {s}"));
    }
    Ok(())
}

fn check_freeness<C: Coloring + ?Sized>(
    coloring: &C,
    finder: &DfsFinder<'_, C>,
    i: usize,
    how: Freeness,
    rng: &mut ChaCha8Rng,
) -> Result<u64, String> {
    let k = finder.params().k;
    let family = finder.state().family(k).map_err(|e| e.to_string())?;
    let bad = |edge: &[Vertex]| coloring.color_of(edge) as usize <= i;
    match how {
        Freeness::Skip => Ok(0),
        Freeness::Exhaustive => {
            let mut count = 0;
            for e in enumerate_partite_edges(&family, k).map_err(|e| e.to_string())? {
                if bad(e.vertices()) {
                    return Err(format!("round {i}: edge {e} has color {}", coloring.color_of(e.vertices())));
                }
                count += 1;
            }
            Ok(count)
        }
        Freeness::Sampled(samples) => {
            if family.edge_total(k) == 0 {
                return Ok(0);
            }
            for _ in 0..samples {
                let e = sample_partite_edge(rng, &family, k);
                if bad(&e) {
                    return Err(format!("round {i}: sampled edge {e:?} has color {}", coloring.color_of(&e)));
                }
            }
            Ok(samples as u64)
        }
    }
}

/// Strict run with every round audited, the witness re-verified and the
/// query budget enforced.
pub fn audited_run<C: Coloring + ?Sized>(
    coloring: &C,
    params: Params,
    how: Freeness,
    seed: u64,
) -> Result<(FinderResult, Audit), String> {
    let Params { k, ell, r, .. } = params;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut finder = DfsFinder::new(coloring, params, Mode::Strict).map_err(|e| e.to_string())?;
    let mut audit = Audit::default();
    while !finder.is_done() {
        let outcome = finder.run_round().map_err(|e| e.to_string())?;
        if let RoundOutcome::Completed = outcome {
            let i = finder.state().round();
            finder.state().check_consistency(k).map_err(|e| e.to_string())?;
            check_sizes(&finder, i)?;
            audit.freeness_edges += check_freeness(coloring, &finder, i, how, &mut rng)?;
            audit.completed_rounds += 1;
        }
    }
    if audit.completed_rounds == r - 1 {
        let state = finder.state();
        for j in 1..r {
            if state.w(j).len() < ell {
                return Err(format!("|W_{j}| = {} < {ell}", state.w(j).len()));
            }
        }
        if state.avail().len() < ell * (k - r + 1) {
            return Err(format!("|V_r| = {} < {}", state.avail().len(), ell * (k - r + 1)));
        }
    }
    let result = finder.finalize().map_err(|e| e.to_string())?;
    for ev in &result.stats.retreats {
        let i = ev.round;
        // a stuck single vertex (left over from a two-edge path) goes to W alone
        let (trash, to_w) = match (i, ev.edges) {
            (_, 0) => (0, 1),
            (1, 1) => (0, k),
            (1, _) => (0, 2 * (k - 1)),
            (_, 1) => (i - 1, k - i + 1),
            _ => (2 * (i - 1), 2 * (k - i)),
        };
        if (ev.to_trash, ev.to_w) != (trash, to_w) {
            return Err(format!("retreat {ev:?}: expected {trash} to trash and {to_w} to W"));
        }
    }
    audit.retreats = result.stats.retreats.len();
    verify_witness(coloring, &result.path, result.color, &params).map_err(|d| d.to_string())?;
    if result.stats.queries > query_budget(&params) {
        return Err(format!("{} queries exceed {}", result.stats.queries, query_budget(&params)));
    }
    Ok((result, audit))
}
