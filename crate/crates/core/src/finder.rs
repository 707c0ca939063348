//! Multi-round DFS finder.
//!
//! Round `i` grows a color-`i` loose path through the partite family
//! `K(W_1, ..., W_{i-1}, V_i)`, keeping every `W` vertex of the path at degree
//! one. When the path cannot be extended, its pendant vertices are retired:
//! those from a `W` class go to the trash bin `T_i`, the rest to the new class
//! `W_i`. A round ends once `W_i` reaches its target; whatever path is left
//! is frozen into `S_i`. After `r - 1` rounds the family
//! `K(W_1, ..., W_{r-1}, V_r)` has only color-`r` edges, and the path is read
//! off it directly.

use std::fmt;

use num_bigint::BigInt;

use crate::bounds::{self, Rational};
use crate::coloring::{Coloring, Counted};
use crate::error::{Error, Result};
use crate::hypergraph::{
    build_partite_path, validate_loose_path, Binomials, Color, Combinations, LoosePath, Params,
    PartiteFamily, Vertex,
};
use crate::memo::RejectMemo;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Mode {
    /// Requires `n >= n_min_con` and treats any shortfall as a bug.
    #[default]
    Strict,
    /// Accepts any `n`; running out of vertices is reported as
    /// [`Error::NoGuarantee`].
    Permissive,
}

/// Where a vertex currently sits. Class indices are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    Avail,
    W(u16),
    T(u16),
    S(u16),
    /// On the working path, drawn from `V_i`.
    PathV,
    /// On the working path, drawn from `W_j`.
    PathW(u16),
}

/// Snapshot of class sizes at the end of a round.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundSizes {
    pub round: usize,
    /// `|W_{1,i}|, ..., |W_{i,i}|`
    pub w: Vec<usize>,
    pub t: usize,
    pub s: usize,
    pub avail: usize,
    pub padded: bool,
}

/// One retreat: the path had `edges` edges and lost its pendant vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RetreatEvent {
    pub round: usize,
    pub edges: usize,
    pub to_trash: usize,
    pub to_w: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FinderStats {
    pub queries: u64,
    pub rounds_run: usize,
    /// Indexed by round - 1.
    pub stuck_events: Vec<u64>,
    pub pad_events: Vec<u64>,
    pub retreats: Vec<RetreatEvent>,
    pub round_sizes: Vec<RoundSizes>,
    /// Whether the rejection bitmap was paged (edge space above 2^33).
    pub paged_memo: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinderResult {
    pub color: Color,
    pub path: LoosePath,
    pub stats: FinderStats,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RoundOutcome {
    PathFound(LoosePath),
    Completed,
}

/// Full state of the machine between transitions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundState {
    round: usize,
    slots: Vec<Slot>,
    path: Vec<Vertex>,
}

impl RoundState {
    fn new(n: usize) -> Self {
        RoundState {
            round: 0,
            slots: vec![Slot::Avail; n],
            path: Vec::new(),
        }
    }

    /// Current round (0 before the first round starts).
    pub fn round(&self) -> usize {
        self.round
    }

    pub fn slot(&self, v: Vertex) -> Slot {
        self.slots[v as usize]
    }

    /// Working path sequence.
    pub fn path(&self) -> &[Vertex] {
        &self.path
    }

    fn collect(&self, want: Slot) -> Vec<Vertex> {
        (0..self.slots.len() as Vertex)
            .filter(|&v| self.slots[v as usize] == want)
            .collect()
    }

    fn count(&self, want: Slot) -> usize {
        self.slots.iter().filter(|&&s| s == want).count()
    }

    pub fn w(&self, j: usize) -> Vec<Vertex> {
        self.collect(Slot::W(j as u16))
    }

    pub fn t(&self, j: usize) -> Vec<Vertex> {
        self.collect(Slot::T(j as u16))
    }

    pub fn s(&self, j: usize) -> Vec<Vertex> {
        self.collect(Slot::S(j as u16))
    }

    pub fn avail(&self) -> Vec<Vertex> {
        self.collect(Slot::Avail)
    }

    pub fn w_len(&self, j: usize) -> usize {
        self.count(Slot::W(j as u16))
    }

    /// `K(W_{1,i}, ..., W_{i,i}, V_i)` for the current round `i`.
    pub fn family(&self, k: usize) -> Result<PartiteFamily> {
        let parts = (1..=self.round).map(|j| self.w(j)).collect();
        PartiteFamily::new(parts, self.avail(), k)
    }

    /// Checks that slots and path agree: path vertices carry a path slot and
    /// nothing else does, the sequence is a loose path, every edge has the
    /// round's partite shape, and no `W` vertex has degree two.
    pub fn check_consistency(&self, k: usize) -> Result<()> {
        let fail = |msg: String| Err(Error::InvariantViolation(msg));
        let on_path = self
            .slots
            .iter()
            .filter(|s| matches!(s, Slot::PathV | Slot::PathW(_)))
            .count();
        if on_path != self.path.len() {
            return fail(format!("{on_path} vertices tagged on path, path has {}", self.path.len()));
        }
        for &v in &self.path {
            if !matches!(self.slots[v as usize], Slot::PathV | Slot::PathW(_)) {
                return fail(format!("path vertex {v} tagged {:?}", self.slots[v as usize]));
            }
        }
        for slot in &self.slots {
            if let Slot::W(j) | Slot::T(j) | Slot::S(j) | Slot::PathW(j) = *slot {
                if j == 0 || j as usize > self.round {
                    return fail(format!("class index {j} in round {}", self.round));
                }
            }
        }
        if self.path.is_empty() {
            return Ok(());
        }
        let edges = validate_loose_path(&self.path, k, self.slots.len())
            .map_err(|d| Error::InvariantViolation(format!("working path: {d}")))?;
        let i = self.round;
        for e in 0..edges {
            let edge = &self.path[e * (k - 1)..e * (k - 1) + k];
            let mut per_class = vec![0usize; i];
            for &v in edge {
                if let Slot::PathW(j) = self.slots[v as usize] {
                    per_class[j as usize - 1] += 1;
                }
            }
            if per_class[..i - 1].iter().any(|&c| c != 1) {
                return fail(format!("path edge {e} has W counts {per_class:?}"));
            }
        }
        // joints are degree-two vertices
        for e in 1..edges {
            let v = self.path[e * (k - 1)];
            if self.slots[v as usize] != Slot::PathV {
                return fail(format!("degree-two vertex {v} is not from V_{i}"));
            }
        }
        Ok(())
    }
}

/// Exact per-round thresholds.
#[derive(Clone, Debug)]
struct Thresholds {
    target: Rational,
    pad: usize,
    t_bin: Rational,
    /// Upper bound on `|W_{i,i}|` at the end of the round.
    w_upper: Rational,
}

impl Thresholds {
    fn new(i: usize, params: &Params) -> Result<Self> {
        let shape = params.shape();
        let target = bounds::round_target(i, &shape)?;
        let k = params.k;
        let w_upper = if i == 1 && params.r == 2 {
            Rational::from_integer(BigInt::from(params.ell + 2 * (k - 1) - 1))
        } else {
            &target + Rational::from_integer(BigInt::from(2 * (k - i)))
        };
        Ok(Thresholds {
            pad: bounds::pad_target(i, &shape)?,
            t_bin: bounds::t_bin(i, &shape)?,
            target,
            w_upper,
        })
    }
}

fn size(x: usize) -> Rational {
    Rational::from_integer(BigInt::from(x))
}

/// Stepwise driver of the DFS rounds.
pub struct DfsFinder<'a, C: Coloring + ?Sized> {
    params: Params,
    mode: Mode,
    coloring: Counted<'a, C>,
    binom: Binomials,
    state: RoundState,
    thresholds: Vec<Thresholds>,
    memo: Option<RejectMemo>,
    stats: FinderStats,
    found: Option<(Color, LoosePath)>,
}

impl<'a, C: Coloring + ?Sized> DfsFinder<'a, C> {
    pub fn new(coloring: &'a C, params: Params, mode: Mode) -> Result<Self> {
        let Params { k, ell, r, n } = params;
        if r > k {
            return Err(Error::OutOfRange {
                what: "r",
                value: r,
                expected: format!("2 <= r <= k = {k}; use the reduction finder"),
            });
        }
        if ell < 3 {
            return Err(Error::OutOfRange {
                what: "ell",
                value: ell,
                expected: "ell >= 3".into(),
            });
        }
        if coloring.colors() != r {
            return Err(Error::InvalidParams(format!(
                "coloring has {} colors, parameters say r = {r}",
                coloring.colors()
            )));
        }
        if mode == Mode::Strict {
            let required = bounds::n_min_con(&params.shape())?;
            if (n as u64) < required {
                return Err(Error::BelowThreshold { n, required });
            }
        }
        let thresholds = (1..r).map(|i| Thresholds::new(i, &params)).collect::<Result<_>>()?;
        Ok(DfsFinder {
            params,
            mode,
            coloring: Counted::new(coloring),
            binom: Binomials::new(n, k),
            state: RoundState::new(n),
            thresholds,
            memo: None,
            stats: FinderStats {
                paged_memo: false,
                ..FinderStats::default()
            },
            found: None,
        })
    }

    pub fn state(&self) -> &RoundState {
        &self.state
    }

    pub fn stats(&self) -> &FinderStats {
        &self.stats
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn queries(&self) -> u64 {
        self.coloring.queries()
    }

    /// Whether all rounds are done or a path has been found.
    pub fn is_done(&self) -> bool {
        self.found.is_some() || self.state.round == self.params.r - 1
    }

    /// Runs the next round.
    pub fn run_round(&mut self) -> Result<RoundOutcome> {
        if let Some((_, path)) = &self.found {
            return Ok(RoundOutcome::PathFound(path.clone()));
        }
        if self.state.round >= self.params.r - 1 {
            return Err(Error::InvariantViolation("all rounds already ran".into()));
        }
        let i = self.state.round + 1;
        self.state.round = i;
        self.state.path.clear();
        let memo = RejectMemo::new(self.params.edge_count());
        self.stats.paged_memo |= matches!(memo, RejectMemo::Paged(_));
        self.memo = Some(memo);
        self.stats.rounds_run = i;
        self.stats.stuck_events.push(0);
        self.stats.pad_events.push(0);
        let outcome = self.round_loop(i);
        self.memo = None;
        self.stats.queries = self.coloring.queries();
        let outcome = outcome?;
        if let RoundOutcome::PathFound(path) = &outcome {
            self.found = Some((i as Color, path.clone()));
        }
        Ok(outcome)
    }

    fn round_loop(&mut self, i: usize) -> Result<RoundOutcome> {
        let ell = self.params.ell;
        let k = self.params.k;
        loop {
            self.debug_check()?;
            let w_ii = self.state.w_len(i);
            if size(w_ii) >= self.thresholds[i - 1].target {
                return self.end_round(i, false).map(|_| RoundOutcome::Completed);
            }
            if self.state.path.is_empty() {
                match self.search_edge(i, None) {
                    Some((ws, vs)) => {
                        // V vertices at both ends keep the future connectors in V_i
                        let mut seq = vec![vs[0]];
                        seq.extend_from_slice(&ws);
                        seq.extend_from_slice(&vs[1..]);
                        self.claim(&seq);
                        self.state.path = seq;
                    }
                    None => {
                        self.pad(i)?;
                        return self.end_round(i, true).map(|_| RoundOutcome::Completed);
                    }
                }
            }
            if (self.state.path.len() - 1) / (k - 1) == ell {
                let path = LoosePath::from_sequence(k, self.state.path.clone());
                self.verify_found(&path, i as Color)?;
                return Ok(RoundOutcome::PathFound(path));
            }
            if !self.try_extend(i) {
                self.retreat(i);
            }
        }
    }

    /// Searches a color-`i` edge of the round-`i` partite shape whose only
    /// non-fresh vertex is `connector`. Returns its fresh `W` vertices (one per
    /// class) and fresh `V` vertices.
    fn search_edge(&mut self, i: usize, connector: Option<Vertex>) -> Option<(Vec<Vertex>, Vec<Vertex>)> {
        let k = self.params.k;
        let w_lists: Vec<Vec<Vertex>> = (1..i).map(|j| self.state.w(j)).collect();
        if w_lists.iter().any(Vec::is_empty) {
            return None;
        }
        let avail = self.state.avail();
        let need_v = k - i + 1 - usize::from(connector.is_some());
        let mut combos = Combinations::new(&avail, need_v);
        let mut vs = Vec::with_capacity(need_v);
        let mut ws = vec![0 as Vertex; i - 1];
        let mut radix = vec![0usize; i - 1];
        let mut edge = Vec::with_capacity(k);
        let memo = self.memo.as_mut().expect("memo exists during a round");
        while combos.next_into(&mut vs) {
            radix.fill(0);
            loop {
                for (j, w) in ws.iter_mut().enumerate() {
                    *w = w_lists[j][radix[j]];
                }
                edge.clear();
                edge.extend(connector);
                edge.extend_from_slice(&vs);
                edge.extend_from_slice(&ws);
                edge.sort_unstable();
                let rank = self.binom.rank(&edge);
                if !memo.contains(rank) {
                    if self.coloring.query_ranked(&edge, rank) as usize == i {
                        return Some((ws, vs));
                    }
                    memo.insert(rank);
                }
                // mixed-radix increment over the W choices
                let mut j = 0;
                while j < radix.len() {
                    radix[j] += 1;
                    if radix[j] < w_lists[j].len() {
                        break;
                    }
                    radix[j] = 0;
                    j += 1;
                }
                if j == radix.len() {
                    break;
                }
            }
        }
        None
    }

    fn claim(&mut self, vertices: &[Vertex]) {
        for &v in vertices {
            let slot = &mut self.state.slots[v as usize];
            *slot = match *slot {
                Slot::Avail => Slot::PathV,
                Slot::W(j) => Slot::PathW(j),
                other => unreachable!("claiming vertex {v} in slot {other:?}"),
            };
        }
    }

    /// Pendant position ranges `(tail, head)`; `head` is `None` when both
    /// ends coincide (paths with at most one edge).
    fn pendant_ranges(&self) -> (std::ops::Range<usize>, Option<std::ops::Range<usize>>) {
        let len = self.state.path.len();
        let k = self.params.k;
        match len {
            1 => (0..1, None),
            _ if len == k => (0..k, None),
            _ => (len - (k - 1)..len, Some(0..k - 1)),
        }
    }

    fn try_extend(&mut self, i: usize) -> bool {
        let (tail, head) = self.pendant_ranges();
        // tail connectors, extremity first
        for pos in tail.clone().rev() {
            let v = self.state.path[pos];
            if self.state.slots[v as usize] != Slot::PathV {
                continue;
            }
            if let Some((ws, vs)) = self.search_edge(i, Some(v)) {
                let last = self.state.path.len() - 1;
                self.state.path.swap(pos, last);
                self.claim(&ws);
                self.claim(&vs);
                self.state.path.extend_from_slice(&ws);
                self.state.path.extend_from_slice(&vs);
                return true;
            }
        }
        for pos in head.into_iter().flatten() {
            let v = self.state.path[pos];
            if self.state.slots[v as usize] != Slot::PathV {
                continue;
            }
            if let Some((ws, vs)) = self.search_edge(i, Some(v)) {
                self.state.path.swap(pos, 0);
                self.claim(&ws);
                self.claim(&vs);
                let mut seq: Vec<Vertex> = vs.iter().rev().copied().collect();
                seq.extend_from_slice(&ws);
                seq.append(&mut self.state.path);
                self.state.path = seq;
                return true;
            }
        }
        false
    }

    /// Retires the pendant vertices of a path that cannot be extended.
    fn retreat(&mut self, i: usize) {
        let k = self.params.k;
        let len = self.state.path.len();
        let edges = (len - 1) / (k - 1);
        let removed: Vec<Vertex> = if edges >= 2 {
            let mut r = self.state.path[..k - 1].to_vec();
            r.extend_from_slice(&self.state.path[len - (k - 1)..]);
            self.state.path = self.state.path[k - 1..len - (k - 1)].to_vec();
            r
        } else {
            std::mem::take(&mut self.state.path)
        };
        let (mut to_trash, mut to_w) = (0, 0);
        for v in removed {
            let slot = &mut self.state.slots[v as usize];
            match *slot {
                Slot::PathW(_) => {
                    *slot = Slot::T(i as u16);
                    to_trash += 1;
                }
                Slot::PathV => {
                    *slot = Slot::W(i as u16);
                    to_w += 1;
                }
                other => unreachable!("path vertex {v} in slot {other:?}"),
            }
        }
        self.stats.stuck_events[i - 1] += 1;
        self.stats.retreats.push(RetreatEvent {
            round: i,
            edges,
            to_trash,
            to_w,
        });
    }

    /// Moves the lowest available vertices into `W_{i,i}` up to the ceiling
    /// of the round target.
    fn pad(&mut self, i: usize) -> Result<()> {
        let have = self.state.w_len(i);
        let want = self.thresholds[i - 1].pad;
        let missing = want.saturating_sub(have);
        let avail = self.state.avail();
        if avail.len() < missing {
            let msg = format!(
                "round {i} needs {missing} padding vertices, only {} available",
                avail.len()
            );
            return Err(match self.mode {
                Mode::Strict => Error::InvariantViolation(msg),
                Mode::Permissive => Error::NoGuarantee(msg),
            });
        }
        for &v in &avail[..missing] {
            self.state.slots[v as usize] = Slot::W(i as u16);
        }
        self.stats.pad_events[i - 1] += 1;
        Ok(())
    }

    fn end_round(&mut self, i: usize, padded: bool) -> Result<()> {
        for v in std::mem::take(&mut self.state.path) {
            self.state.slots[v as usize] = Slot::S(i as u16);
        }
        let sizes = RoundSizes {
            round: i,
            w: (1..=i).map(|j| self.state.w_len(j)).collect(),
            t: self.state.count(Slot::T(i as u16)),
            s: self.state.count(Slot::S(i as u16)),
            avail: self.state.count(Slot::Avail),
            padded,
        };
        self.stats.round_sizes.push(sizes.clone());
        self.debug_check()?;
        self.check_round_bounds(&sizes)
    }

    /// Counting bounds that hold at the end of every round.
    fn check_round_bounds(&self, sizes: &RoundSizes) -> Result<()> {
        let i = sizes.round;
        let th = &self.thresholds[i - 1];
        let Params { k, ell, .. } = self.params;
        let fail = |what: String| Err(Error::InvariantViolation(format!("round {i}: {what}")));
        if size(sizes.t) > th.t_bin {
            return fail(format!("|T_{i}| = {} exceeds t_{i} = {}", sizes.t, th.t_bin));
        }
        let w_ii = sizes.w[i - 1];
        if size(w_ii) > th.w_upper {
            return fail(format!("|W_{i},{i}| = {w_ii} exceeds {}", th.w_upper));
        }
        for (j, &w) in sizes.w.iter().enumerate() {
            if size(w) < th.target {
                return fail(format!("|W_{},{i}| = {w} below {}", j + 1, th.target));
            }
        }
        if sizes.s > (ell - 1) * (k - 1) + 1 {
            return fail(format!("|S_{i}| = {}", sizes.s));
        }
        Ok(())
    }

    fn debug_check(&self) -> Result<()> {
        if cfg!(debug_assertions) {
            self.state.check_consistency(self.params.k)?;
        }
        Ok(())
    }

    fn verify_found(&mut self, path: &LoosePath, color: Color) -> Result<()> {
        let Params { k, ell, n, .. } = self.params;
        let edges = validate_loose_path(path.sequence(), k, n).map_err(Error::InvalidPath)?;
        if edges != ell {
            return Err(Error::InvariantViolation(format!("path has {edges} edges, expected {ell}")));
        }
        for key in path.edge_keys() {
            let rank = self.binom.rank(key.vertices());
            let found = self.coloring.query_ranked(key.vertices(), rank);
            if found != color {
                return Err(Error::WrongColor {
                    edge: key,
                    expected: color,
                    found,
                });
            }
        }
        self.stats.queries = self.coloring.queries();
        Ok(())
    }

    /// After the last round, reads a color-`r` path off
    /// `K(W_1, ..., W_{r-1}, V_r)` and confirms every edge's color.
    pub fn finalize(mut self) -> Result<FinderResult> {
        if let Some((color, path)) = self.found.take() {
            return Ok(FinderResult {
                color,
                path,
                stats: self.stats,
            });
        }
        let Params { k, ell, r, .. } = self.params;
        if self.state.round != r - 1 {
            return Err(Error::InvariantViolation(format!(
                "finalize after round {}, expected {}",
                self.state.round,
                r - 1
            )));
        }
        let parts: Vec<Vec<Vertex>> = (1..r).map(|j| self.state.w(j)).collect();
        let residual = self.state.avail();
        let shortfall = parts
            .iter()
            .enumerate()
            .find(|(_, p)| p.len() < ell)
            .map(|(j, p)| format!("|W_{}| = {} < {ell}", j + 1, p.len()))
            .or_else(|| {
                (residual.len() < ell * (k - r + 1))
                    .then(|| format!("|V_{r}| = {} < {}", residual.len(), ell * (k - r + 1)))
            });
        if let Some(msg) = shortfall {
            return Err(match self.mode {
                Mode::Strict => Error::InvariantViolation(msg),
                Mode::Permissive => Error::NoGuarantee(msg),
            });
        }
        let family = PartiteFamily::new(parts, residual, k)?;
        let path = build_partite_path(&family, k, ell)?;
        self.verify_found(&path, r as Color)?;
        Ok(FinderResult {
            color: r as Color,
            path,
            stats: self.stats,
        })
    }

    /// Runs every remaining round and finalizes.
    pub fn run(mut self) -> Result<FinderResult> {
        while !self.is_done() {
            self.run_round()?;
        }
        self.finalize()
    }
}

impl<C: Coloring + ?Sized> fmt::Debug for DfsFinder<'_, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DfsFinder")
            .field("params", &self.params)
            .field("mode", &self.mode)
            .field("state", &self.state)
            .field("queries", &self.coloring.queries())
            .finish()
    }
}

/// Finds a monochromatic `P_ell^(k)` with the multi-round DFS finder.
pub fn find_monochromatic_path<C: Coloring + ?Sized>(
    coloring: &C,
    params: Params,
    mode: Mode,
) -> Result<FinderResult> {
    DfsFinder::new(coloring, params, mode)?.run()
}

/// `r * C(n, k) + ell`, the query budget of a run.
pub fn query_budget(params: &Params) -> u64 {
    params.r as u64 * params.edge_count() + params.ell as u64
}
