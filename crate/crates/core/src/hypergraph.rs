//! Complete k-uniform hypergraphs: edge ranking, loose-path validation and
//! complete partite families.
//!
//! Vertices are 0-based (`0..n`). Edges are stored as strictly increasing
//! vertex lists; a loose path is stored as its vertex sequence, so that edge
//! `e_i` (1-based) is the window `seq[(i-1)(k-1) .. (i-1)(k-1)+k]`.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};

pub type Vertex = u32;
pub type Color = u16;

/// Instance parameters: uniformity `k`, path length `ell`, number of colors
/// `r` and number of vertices `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Params {
    pub k: usize,
    pub ell: usize,
    pub r: usize,
    pub n: usize,
}

impl Params {
    pub fn new(k: usize, ell: usize, r: usize, n: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidParams(format!("k = {k}, need k >= 2")));
        }
        if r < 2 {
            return Err(Error::InvalidParams(format!("r = {r}, need r >= 2")));
        }
        if r > Color::MAX as usize {
            return Err(Error::InvalidParams(format!("r = {r} is too large")));
        }
        if n < k {
            return Err(Error::InvalidParams(format!("n = {n} < k = {k}")));
        }
        if n > Vertex::MAX as usize {
            return Err(Error::InvalidParams(format!("n = {n} is too large")));
        }
        Ok(Params { k, ell, r, n })
    }

    pub fn shape(&self) -> Shape {
        Shape {
            k: self.k,
            ell: self.ell,
            r: self.r,
        }
    }

    /// Number of vertices of `P_ell^(k)`.
    pub fn path_vertices(&self) -> usize {
        (self.k - 1) * self.ell + 1
    }

    pub fn edge_count(&self) -> u64 {
        binomial(self.n as u64, self.k as u64)
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k={} l={} r={} n={}", self.k, self.ell, self.r, self.n)
    }
}

/// The `(k, ell, r)` part of [`Params`]; every threshold formula depends only
/// on these three numbers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Shape {
    pub k: usize,
    pub ell: usize,
    pub r: usize,
}

impl Shape {
    pub fn new(k: usize, ell: usize, r: usize) -> Self {
        Shape { k, ell, r }
    }
}

/// `C(n, k)`.
///
/// Panics if the result does not fit in a `u64`; all ranks used in this
/// crate are far below that.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).expect("binomial coefficient overflows u64")
}

/// Pascal table `C(a, j)` for `a <= max_n`, `j <= max_k`, used on hot paths.
#[derive(Clone, Debug)]
pub struct Binomials {
    max_k: usize,
    table: Vec<u64>,
}

impl Binomials {
    pub fn new(max_n: usize, max_k: usize) -> Self {
        let width = max_k + 1;
        let mut table = vec![0u64; (max_n + 1) * width];
        for a in 0..=max_n {
            table[a * width] = 1;
            for j in 1..=max_k.min(a) {
                let up = table[(a - 1) * width + j - 1];
                let left = if j < a { table[(a - 1) * width + j] } else { 0 };
                table[a * width + j] = up.saturating_add(left);
            }
        }
        Binomials { max_k, table }
    }

    #[inline]
    pub fn get(&self, a: usize, j: usize) -> u64 {
        self.table[a * (self.max_k + 1) + j]
    }

    /// Colex rank of a strictly increasing vertex list (not validated).
    #[inline]
    pub fn rank(&self, sorted: &[Vertex]) -> u64 {
        sorted
            .iter()
            .enumerate()
            .map(|(i, &a)| self.get(a as usize, i + 1))
            .sum()
    }
}

/// Colex rank of a strictly increasing vertex list, without validation.
pub fn colex_rank_sorted(sorted: &[Vertex]) -> u64 {
    sorted
        .iter()
        .enumerate()
        .map(|(i, &a)| binomial(a as u64, i as u64 + 1))
        .sum()
}

/// A k-subset of vertices, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeKey(Vec<Vertex>);

impl EdgeKey {
    /// Builds an edge from vertices in any order; duplicates are rejected.
    pub fn new(mut vertices: Vec<Vertex>) -> Result<Self> {
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::MalformedEdge(format!(
                "duplicate vertex in {vertices:?}"
            )));
        }
        Ok(EdgeKey(vertices))
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_vec(self) -> Vec<Vertex> {
        self.0
    }
}

impl fmt::Display for EdgeKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// `sum C(a_i, i)` over the sorted vertices `a_1 < ... < a_k`.
pub fn colex_rank(vertices: &[Vertex], k: usize) -> Result<u64> {
    if vertices.len() != k {
        return Err(Error::MalformedEdge(format!(
            "expected {k} vertices, got {}",
            vertices.len()
        )));
    }
    if vertices.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::MalformedEdge(format!(
            "vertices {vertices:?} are not strictly increasing"
        )));
    }
    Ok(colex_rank_sorted(vertices))
}

pub fn colex_unrank(rank: u64, k: usize, n: usize) -> Result<EdgeKey> {
    let total = binomial(n as u64, k as u64);
    if rank >= total {
        return Err(Error::RankOutOfRange { rank, total });
    }
    let mut rest = rank;
    let mut out = vec![0 as Vertex; k];
    let mut hi = n as u64;
    for i in (1..=k as u64).rev() {
        // largest a < hi with C(a, i) <= rest
        let mut a = hi - 1;
        while binomial(a, i) > rest {
            a -= 1;
        }
        rest -= binomial(a, i);
        out[(i - 1) as usize] = a as Vertex;
        hi = a;
    }
    Ok(EdgeKey(out))
}

/// Lazily walks all k-subsets of `0..n` in colex order.
pub fn all_edges(n: usize, k: usize) -> Combinations<'static> {
    Combinations::over_range(n, k)
}

/// k-subsets of a sorted pool, yielded in colex order. Borrowed pools avoid a
/// copy on the search hot path.
pub struct Combinations<'a> {
    pool: std::borrow::Cow<'a, [Vertex]>,
    idx: Vec<usize>,
    first: bool,
    done: bool,
}

impl<'a> Combinations<'a> {
    pub fn new(pool: &'a [Vertex], k: usize) -> Self {
        Combinations {
            done: k > pool.len(),
            pool: std::borrow::Cow::Borrowed(pool),
            idx: (0..k).collect(),
            first: true,
        }
    }

    fn over_range(n: usize, k: usize) -> Combinations<'static> {
        Combinations {
            done: k > n,
            pool: std::borrow::Cow::Owned((0..n as Vertex).collect()),
            idx: (0..k).collect(),
            first: true,
        }
    }

    /// Advances to the next index tuple; returns `false` when exhausted.
    fn advance(&mut self) -> bool {
        let k = self.idx.len();
        let len = self.pool.len();
        for j in 0..k {
            let limit = if j + 1 < k { self.idx[j + 1] } else { len };
            if self.idx[j] + 1 < limit {
                self.idx[j] += 1;
                for (t, slot) in self.idx[..j].iter_mut().enumerate() {
                    *slot = t;
                }
                return true;
            }
        }
        false
    }

    /// Writes the current combination into `out` and advances. Allocation-free
    /// alternative to the `Iterator` impl.
    pub fn next_into(&mut self, out: &mut Vec<Vertex>) -> bool {
        if self.done {
            return false;
        }
        if self.first {
            self.first = false;
        } else if !self.advance() {
            self.done = true;
            return false;
        }
        out.clear();
        out.extend(self.idx.iter().map(|&i| self.pool[i]));
        true
    }
}

impl Iterator for Combinations<'_> {
    type Item = Vec<Vertex>;

    fn next(&mut self) -> Option<Vec<Vertex>> {
        let mut out = Vec::with_capacity(self.idx.len());
        self.next_into(&mut out).then_some(out)
    }
}

/// Why a vertex sequence is not a loose path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PathDefect {
    /// Length is not of the form `(k-1)t + 1`.
    BadLength { len: usize },
    VertexOutOfRange { vertex: Vertex },
    /// Edge `i` (1-based) does not have `k` distinct vertices.
    DegenerateEdge { i: usize },
    /// Edges `i < j` (1-based) violate the intersection pattern.
    PairViolation { i: usize, j: usize, common: usize },
}

impl fmt::Display for PathDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PathDefect::BadLength { len } => write!(f, "sequence length {len} is not (k-1)t+1"),
            PathDefect::VertexOutOfRange { vertex } => write!(f, "vertex {vertex} out of range"),
            PathDefect::DegenerateEdge { i } => write!(f, "edge {i} repeats a vertex"),
            PathDefect::PairViolation { i, j, common } => {
                write!(f, "edges {i} and {j} share {common} vertices")
            }
        }
    }
}

/// A loose path given by its vertex sequence. An empty sequence is the empty
/// path; a single vertex is `P_0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LoosePath {
    k: usize,
    seq: Vec<Vertex>,
}

impl LoosePath {
    /// Wraps a sequence without checking it; see [`validate_loose_path`].
    pub fn from_sequence(k: usize, seq: Vec<Vertex>) -> Self {
        LoosePath { k, seq }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn sequence(&self) -> &[Vertex] {
        &self.seq
    }

    pub fn into_sequence(self) -> Vec<Vertex> {
        self.seq
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    /// Number of edges, or `None` if the length is malformed.
    pub fn edge_count(&self) -> Option<usize> {
        edges_for_len(self.seq.len(), self.k)
    }

    /// Edge windows in path order (unsorted; sort before ranking).
    pub fn edges(&self) -> impl Iterator<Item = &[Vertex]> {
        let t = self.edge_count().unwrap_or(0);
        let step = self.k - 1;
        (0..t).map(move |i| &self.seq[i * step..i * step + self.k])
    }

    /// Sorted edges in path order.
    pub fn edge_keys(&self) -> Vec<EdgeKey> {
        self.edges()
            .map(|e| {
                let mut v = e.to_vec();
                v.sort_unstable();
                EdgeKey(v)
            })
            .collect()
    }
}

fn edges_for_len(len: usize, k: usize) -> Option<usize> {
    if len == 0 {
        return Some(0);
    }
    let step = k - 1;
    (len - 1).is_multiple_of(step).then(|| (len - 1) / step)
}

/// Checks that `seq` encodes a loose path `P_t^(k)` on vertices `0..n` and
/// returns `t`. On failure the defect names the first offending edge pair.
pub fn validate_loose_path(seq: &[Vertex], k: usize, n: usize) -> std::result::Result<usize, PathDefect> {
    let t = edges_for_len(seq.len(), k).ok_or(PathDefect::BadLength { len: seq.len() })?;
    if let Some(&vertex) = seq.iter().find(|&&v| v as usize >= n) {
        return Err(PathDefect::VertexOutOfRange { vertex });
    }
    // A sequence lists every vertex of the path exactly once, so the pattern
    // holds iff all entries are distinct.
    let mut seen = HashSet::with_capacity(seq.len());
    if seq.iter().all(|v| seen.insert(*v)) {
        return Ok(t);
    }
    Err(first_defect(seq, k, t))
}

fn first_defect(seq: &[Vertex], k: usize, t: usize) -> PathDefect {
    let step = k - 1;
    let edge = |i: usize| -> Vec<Vertex> {
        let mut e = seq[i * step..i * step + k].to_vec();
        e.sort_unstable();
        e
    };
    for i in 0..t {
        let e = edge(i);
        if e.windows(2).any(|w| w[0] == w[1]) {
            return PathDefect::DegenerateEdge { i: i + 1 };
        }
    }
    for i in 0..t {
        let ei = edge(i);
        for j in i + 1..t {
            let common = edge(j).iter().filter(|v| ei.binary_search(v).is_ok()).count();
            let expected = usize::from(j == i + 1);
            if common != expected {
                return PathDefect::PairViolation {
                    i: i + 1,
                    j: j + 1,
                    common,
                };
            }
        }
    }
    // Only reachable for t = 0 with a repeated vertex, which cannot happen
    // since a length-1 sequence has no repeats.
    PathDefect::BadLength { len: seq.len() }
}

/// Disjoint parts `W_1, ..., W_{m-1}` plus a residual set `V_m`; the
/// associated complete partite k-graph has every k-set with exactly one
/// vertex in each part and `k - m + 1` in the residual.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartiteFamily {
    parts: Vec<Vec<Vertex>>,
    residual: Vec<Vertex>,
}

impl PartiteFamily {
    pub fn new(parts: Vec<Vec<Vertex>>, residual: Vec<Vertex>, k: usize) -> Result<Self> {
        let m = parts.len() + 1;
        if m < 2 || m > k {
            return Err(Error::InvalidFamily(format!(
                "{m} classes, need 2 <= m <= k = {k}"
            )));
        }
        let mut parts: Vec<Vec<Vertex>> = parts;
        let mut residual = residual;
        for p in parts.iter_mut() {
            p.sort_unstable();
        }
        residual.sort_unstable();
        let mut seen = HashSet::new();
        for v in parts.iter().flatten().chain(residual.iter()) {
            if !seen.insert(*v) {
                return Err(Error::InvalidFamily(format!(
                    "vertex {v} belongs to more than one class"
                )));
            }
        }
        Ok(PartiteFamily { parts, residual })
    }

    /// Number of classes `m`.
    pub fn m(&self) -> usize {
        self.parts.len() + 1
    }

    pub fn parts(&self) -> &[Vec<Vertex>] {
        &self.parts
    }

    pub fn residual(&self) -> &[Vertex] {
        &self.residual
    }

    /// Number of edges of the complete partite k-graph.
    pub fn edge_total(&self, k: usize) -> u64 {
        let per_part: u64 = self.parts.iter().map(|p| p.len() as u64).product();
        per_part * binomial(self.residual.len() as u64, (k + 1 - self.m()) as u64)
    }

    /// Whether a sorted k-set is an edge of the partite k-graph.
    pub fn contains_edge(&self, edge: &[Vertex], k: usize) -> bool {
        if edge.len() != k {
            return false;
        }
        let in_residual = edge
            .iter()
            .filter(|v| self.residual.binary_search(v).is_ok())
            .count();
        in_residual == k + 1 - self.m()
            && self.parts.iter().all(|p| {
                edge.iter().filter(|v| p.binary_search(v).is_ok()).count() == 1
            })
    }
}

/// Lazily enumerates the edges of the complete partite k-graph of `family`
/// in colex order.
pub fn enumerate_partite_edges(family: &PartiteFamily, k: usize) -> Result<PartiteEdges> {
    let m = family.m();
    if m > k {
        return Err(Error::InvalidFamily(format!("m = {m} exceeds k = {k}")));
    }
    let mut tagged: Vec<(Vertex, usize)> = family
        .parts
        .iter()
        .enumerate()
        .flat_map(|(j, p)| p.iter().map(move |&v| (v, j)))
        .chain(family.residual.iter().map(|&v| (v, m - 1)))
        .collect();
    tagged.sort_unstable();
    let mut need = vec![1usize; m];
    need[m - 1] = k + 1 - m;
    Ok(PartiteEdges {
        universe: tagged.iter().map(|t| t.0).collect(),
        label: tagged.iter().map(|t| t.1).collect(),
        k,
        need,
        chosen: Vec::with_capacity(k),
        cursor: {
            let mut c = vec![0; k];
            if k > 0 {
                c[0] = k - 1;
            }
            c
        },
        done: k == 0,
    })
}

/// Iterator returned by [`enumerate_partite_edges`].
///
/// Builds the edge from its largest vertex down; each slot scans ascending
/// candidates, which is exactly colex order.
pub struct PartiteEdges {
    universe: Vec<Vertex>,
    label: Vec<usize>,
    k: usize,
    need: Vec<usize>,
    chosen: Vec<usize>,
    cursor: Vec<usize>,
    done: bool,
}

impl Iterator for PartiteEdges {
    type Item = EdgeKey;

    fn next(&mut self) -> Option<EdgeKey> {
        let k = self.k;
        if self.done {
            return None;
        }
        loop {
            let d = self.chosen.len();
            if d == k {
                let edge: Vec<Vertex> = self.chosen.iter().rev().map(|&i| self.universe[i]).collect();
                let last = self.chosen.pop().unwrap();
                self.need[self.label[last]] += 1;
                return Some(EdgeKey(edge));
            }
            let hi = if d == 0 { self.universe.len() } else { self.chosen[d - 1] };
            let mut c = self.cursor[d];
            while c < hi && self.need[self.label[c]] == 0 {
                c += 1;
            }
            if c < hi {
                self.chosen.push(c);
                self.need[self.label[c]] -= 1;
                self.cursor[d] = c + 1;
                if d + 1 < k {
                    self.cursor[d + 1] = k - 2 - d;
                }
            } else {
                if d == 0 {
                    self.done = true;
                    return None;
                }
                let last = self.chosen.pop().unwrap();
                self.need[self.label[last]] += 1;
            }
        }
    }
}

/// Builds `P_ell^(k)` inside the complete partite k-graph of `family`, using
/// the lowest unused vertex of each class at every step.
///
/// For `m <= k - 1` consecutive edges meet in the residual class. For `m = k`
/// the meeting vertices alternate between the residual class and `W_1`,
/// starting in the residual class.
pub fn build_partite_path(family: &PartiteFamily, k: usize, ell: usize) -> Result<LoosePath> {
    let m = family.m();
    if m > k {
        return Err(Error::InvalidFamily(format!("m = {m} exceeds k = {k}")));
    }
    for (j, part) in family.parts.iter().enumerate() {
        if part.len() < ell {
            return Err(Error::InsufficientPart {
                part: format!("W_{}", j + 1),
                needed: ell,
                available: part.len(),
            });
        }
    }
    let residual_needed = if ell == 0 {
        1
    } else if m < k {
        ell * (k - m) + 1
    } else {
        ell
    };
    if family.residual.len() < residual_needed {
        return Err(Error::InsufficientPart {
            part: format!("V_{m}"),
            needed: residual_needed,
            available: family.residual.len(),
        });
    }
    let mut next = vec![0usize; m];
    let mut take = |class: usize| -> Vertex {
        let v = if class + 1 == m {
            family.residual[next[class]]
        } else {
            family.parts[class][next[class]]
        };
        next[class] += 1;
        v
    };
    let residual = m - 1;
    let mut seq = Vec::with_capacity((k - 1) * ell + 1);
    if ell == 0 {
        seq.push(take(residual));
        return Ok(LoosePath { k, seq });
    }
    if m < k {
        seq.push(take(residual));
        for _ in 0..ell {
            for j in 0..m - 1 {
                seq.push(take(j));
            }
            for _ in 0..k - m - 1 {
                seq.push(take(residual));
            }
            seq.push(take(residual));
        }
    } else {
        seq.push(take(0));
        for i in 0..ell {
            for j in 1..m - 1 {
                seq.push(take(j));
            }
            seq.push(if i % 2 == 0 { take(residual) } else { take(0) });
        }
    }
    Ok(LoosePath { k, seq })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        assert_eq!(colex_rank(&[0, 1, 2], 3).unwrap(), 0);
        assert_eq!(colex_rank(&[0, 1, 3], 3).unwrap(), 1);
        assert_eq!(colex_rank(&[2, 3, 4], 3).unwrap(), 9);
    }

    #[test]
    fn unrank_examples() {
        assert_eq!(colex_unrank(0, 3, 5).unwrap().vertices(), &[0, 1, 2]);
        assert_eq!(colex_unrank(1, 3, 5).unwrap().vertices(), &[0, 1, 3]);
        assert_eq!(colex_unrank(9, 3, 5).unwrap().vertices(), &[2, 3, 4]);
        assert!(matches!(
            colex_unrank(10, 3, 5),
            Err(Error::RankOutOfRange { rank: 10, total: 10 })
        ));
    }

    #[test]
    fn malformed_edges_rejected() {
        assert!(colex_rank(&[0, 1], 3).is_err());
        assert!(colex_rank(&[0, 1, 1], 3).is_err());
        assert!(colex_rank(&[2, 1, 0], 3).is_err());
        assert!(EdgeKey::new(vec![3, 1, 3]).is_err());
        assert_eq!(EdgeKey::new(vec![3, 1, 2]).unwrap().vertices(), &[1, 2, 3]);
    }

    #[test]
    fn combinations_follow_colex_rank() {
        for (rank, c) in all_edges(7, 3).enumerate() {
            assert_eq!(colex_rank_sorted(&c), rank as u64);
        }
        assert_eq!(all_edges(7, 3).count(), 35);
        assert_eq!(all_edges(2, 3).count(), 0);
        assert_eq!(all_edges(4, 0).count(), 1);
    }

    #[test]
    fn pascal_table_matches_binomial() {
        let b = Binomials::new(40, 6);
        for a in 0..=40 {
            for j in 0..=6 {
                assert_eq!(b.get(a, j), binomial(a as u64, j as u64));
            }
        }
    }

    #[test]
    fn loose_path_examples() {
        // P_3^(4) on vertices 1..10
        let seq: Vec<Vertex> = (1..=10).collect();
        assert_eq!(validate_loose_path(&seq, 4, 11), Ok(3));
        assert_eq!(validate_loose_path(&[0, 1, 2], 3, 3), Ok(1));
        assert_eq!(
            validate_loose_path(&[0, 1, 2, 3, 4, 5], 3, 6),
            Err(PathDefect::BadLength { len: 6 })
        );
        assert_eq!(validate_loose_path(&[], 3, 3), Ok(0));
        assert_eq!(validate_loose_path(&[4], 3, 5), Ok(0));
    }

    #[test]
    fn loose_path_diagnostics() {
        // e1 = {0,1,2}, e2 = {2,3,4}, e3 = {4,5,0}: e1 and e3 meet
        assert_eq!(
            validate_loose_path(&[0, 1, 2, 3, 4, 5, 0], 3, 6),
            Err(PathDefect::PairViolation { i: 1, j: 3, common: 1 })
        );
        assert_eq!(
            validate_loose_path(&[0, 0, 1], 3, 3),
            Err(PathDefect::DegenerateEdge { i: 1 })
        );
        // e1 = {0,1,2}, e2 = {2,1,3} share two vertices
        assert_eq!(
            validate_loose_path(&[0, 1, 2, 1, 3], 3, 4),
            Err(PathDefect::PairViolation { i: 1, j: 2, common: 2 })
        );
        assert_eq!(
            validate_loose_path(&[0, 1, 9], 3, 5),
            Err(PathDefect::VertexOutOfRange { vertex: 9 })
        );
    }

    #[test]
    fn partite_enumeration_examples() {
        let fam = PartiteFamily::new(vec![vec![0]], vec![1, 2], 3).unwrap();
        let edges: Vec<_> = enumerate_partite_edges(&fam, 3).unwrap().collect();
        assert_eq!(edges, vec![EdgeKey(vec![0, 1, 2])]);

        let fam = PartiteFamily::new(vec![vec![0, 1]], vec![2, 3, 4], 3).unwrap();
        let edges: Vec<_> = enumerate_partite_edges(&fam, 3).unwrap().collect();
        assert_eq!(edges.len(), 6);
        assert_eq!(fam.edge_total(3), 6);
        let ranks: Vec<u64> = edges.iter().map(|e| colex_rank_sorted(e.vertices())).collect();
        assert!(ranks.windows(2).all(|w| w[0] < w[1]));

        let fam = PartiteFamily::new(vec![vec![5], vec![1], vec![7]], vec![3], 4).unwrap();
        let edges: Vec<_> = enumerate_partite_edges(&fam, 4).unwrap().collect();
        assert_eq!(edges, vec![EdgeKey(vec![1, 3, 5, 7])]);
    }

    #[test]
    fn overlapping_family_rejected() {
        assert!(PartiteFamily::new(vec![vec![0, 1]], vec![1, 2], 3).is_err());
        assert!(PartiteFamily::new(vec![], vec![1, 2], 3).is_err());
        assert!(PartiteFamily::new(vec![vec![0], vec![1], vec![2]], vec![3], 3).is_err());
    }

    #[test]
    fn partite_path_examples() {
        let fam = PartiteFamily::new(vec![vec![0, 1, 2]], (3..=9).collect(), 3).unwrap();
        let p = build_partite_path(&fam, 3, 3).unwrap();
        assert_eq!(p.sequence(), &[3, 0, 4, 1, 5, 2, 6]);

        let p = build_partite_path(&fam, 3, 0).unwrap();
        assert_eq!(p.sequence(), &[3]);

        let fam = PartiteFamily::new(vec![vec![0, 1], vec![2, 3]], vec![4, 5], 3).unwrap();
        let p = build_partite_path(&fam, 3, 2).unwrap();
        assert_eq!(validate_loose_path(p.sequence(), 3, 6), Ok(2));
        for e in p.edge_keys() {
            assert!(fam.contains_edge(e.vertices(), 3));
        }
        let shared = p.sequence()[2];
        assert!(shared == 4 || shared == 5 || shared == 0 || shared == 1);
    }

    #[test]
    fn partite_path_reports_deficient_part() {
        let fam = PartiteFamily::new(vec![vec![0, 1]], (3..=9).collect(), 3).unwrap();
        match build_partite_path(&fam, 3, 3) {
            Err(Error::InsufficientPart { part, needed: 3, available: 2 }) => assert_eq!(part, "W_1"),
            other => panic!("unexpected {other:?}"),
        }
        let fam = PartiteFamily::new(vec![vec![0, 1, 2]], vec![3, 4, 5], 3).unwrap();
        match build_partite_path(&fam, 3, 3) {
            Err(Error::InsufficientPart { part, needed: 4, .. }) => assert_eq!(part, "V_2"),
            other => panic!("unexpected {other:?}"),
        }
    }
}
