//! Brute-force ground truth: exhaustive search for monochromatic loose paths,
//! witness checking, and exact small Ramsey checks over every coloring.

use std::fmt;

use crate::coloring::{Coloring, TableColoring};
use crate::error::{Error, Result};
use crate::hypergraph::{all_edges, validate_loose_path, Color, EdgeKey, LoosePath, Params, PathDefect, Vertex};

/// Default cap on `C(n, k) * r`, and on search nodes.
pub const DEFAULT_NODE_GUARD: u64 = 100_000_000;
/// Default cap on the number of colorings `r^C(n, k)`.
pub const DEFAULT_COLORING_GUARD: u64 = 1 << 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleVerdict {
    Found { color: Color, path: LoosePath, nodes: u64 },
    /// Every color was searched to exhaustion.
    Absent { nodes: u64 },
}

impl OracleVerdict {
    pub fn is_found(&self) -> bool {
        matches!(self, OracleVerdict::Found { .. })
    }

    pub fn nodes(&self) -> u64 {
        match self {
            OracleVerdict::Found { nodes, .. } | OracleVerdict::Absent { nodes } => *nodes,
        }
    }
}

impl fmt::Display for OracleVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleVerdict::Found { color, path, nodes } => {
                let seq: Vec<String> = path.sequence().iter().map(|v| v.to_string()).collect();
                write!(f, "found color={color} path={} nodes={nodes}", seq.join(" "))
            }
            OracleVerdict::Absent { nodes } => write!(f, "absent nodes={nodes} (exhaustive)"),
        }
    }
}

/// All k-sets of `0..n` with per-vertex incidence lists, shared across
/// colors and colorings.
struct EdgeIndex {
    k: usize,
    n: usize,
    edges: Vec<Vec<Vertex>>,
    incidence: Vec<Vec<u32>>,
}

impl EdgeIndex {
    fn new(n: usize, k: usize) -> Self {
        let edges: Vec<Vec<Vertex>> = all_edges(n, k).collect();
        let mut incidence = vec![Vec::new(); n];
        for (idx, e) in edges.iter().enumerate() {
            for &v in e {
                incidence[v as usize].push(idx as u32);
            }
        }
        EdgeIndex {
            k,
            n,
            edges,
            incidence,
        }
    }
}

/// Backtracking over one color. Edges are tried in colex order, the path
/// grows left to right, and the last vertex of each placed edge is the
/// connector to the next one.
struct ColorSearch<'a> {
    index: &'a EdgeIndex,
    colors: &'a [u8],
    color: u8,
    ell: usize,
    used: Vec<bool>,
    seq: Vec<Vertex>,
    nodes: u64,
    node_guard: u64,
}

impl ColorSearch<'_> {
    fn run(&mut self) -> Result<Option<Vec<Vertex>>> {
        if self.ell == 0 {
            return Ok((self.index.n > 0).then(|| vec![0]));
        }
        for idx in 0..self.index.edges.len() {
            if self.colors[idx] != self.color {
                continue;
            }
            let edge = self.index.edges[idx].clone();
            for &v in &edge {
                self.used[v as usize] = true;
            }
            // which vertex of the first edge continues the path
            let ends: &[Vertex] = if self.ell == 1 { &edge[..1] } else { &edge };
            for &c in ends {
                self.nodes += 1;
                self.seq.clear();
                self.seq.extend(edge.iter().copied().filter(|&v| v != c));
                self.seq.push(c);
                if self.extend(c, 1)? {
                    return Ok(Some(self.seq.clone()));
                }
            }
            for &v in &edge {
                self.used[v as usize] = false;
            }
        }
        Ok(None)
    }

    fn extend(&mut self, connector: Vertex, placed: usize) -> Result<bool> {
        if placed == self.ell {
            return Ok(true);
        }
        if self.nodes > self.node_guard {
            return Err(Error::TooLarge(format!("search exceeded {} nodes", self.node_guard)));
        }
        let index = self.index;
        for &idx in &index.incidence[connector as usize] {
            let idx = idx as usize;
            if self.colors[idx] != self.color {
                continue;
            }
            let edge = &index.edges[idx];
            if edge.iter().any(|&v| v != connector && self.used[v as usize]) {
                continue;
            }
            for &v in edge {
                self.used[v as usize] = true;
            }
            let base = self.seq.len();
            let last = placed + 1 == self.ell;
            // the last edge needs no connector, so one ordering suffices
            let mut choices = edge.iter().copied().filter(|&v| v != connector);
            let choices: Vec<Vertex> = if last { choices.next().into_iter().collect() } else { choices.collect() };
            for c in choices {
                self.nodes += 1;
                self.seq.truncate(base);
                self.seq.extend(edge.iter().copied().filter(|&v| v != connector && v != c));
                self.seq.push(c);
                if self.extend(c, placed + 1)? {
                    return Ok(true);
                }
            }
            self.seq.truncate(base);
            for &v in edge {
                if v != connector {
                    self.used[v as usize] = false;
                }
            }
        }
        Ok(false)
    }
}

fn check_guard(params: &Params, node_guard: u64) -> Result<()> {
    let size = params.edge_count().saturating_mul(params.r as u64);
    if size > node_guard {
        return Err(Error::TooLarge(format!(
            "C({}, {}) * {} = {size} exceeds the guard {node_guard}",
            params.n, params.k, params.r
        )));
    }
    Ok(())
}

fn table_of<C: Coloring + ?Sized>(coloring: &C, params: &Params) -> Vec<u8> {
    all_edges(params.n, params.k)
        .enumerate()
        .map(|(rank, e)| coloring.color_of_ranked(&e, rank as u64) as u8)
        .collect()
}

fn search_table(index: &EdgeIndex, colors: &[u8], color: Color, ell: usize, node_guard: u64) -> Result<(Option<LoosePath>, u64)> {
    let mut search = ColorSearch {
        index,
        colors,
        color: color as u8,
        ell,
        used: vec![false; index.n],
        seq: Vec::new(),
        nodes: 0,
        node_guard,
    };
    let found = search.run()?;
    Ok((found.map(|s| LoosePath::from_sequence(index.k, s)), search.nodes))
}

/// Searches one color exhaustively. Returns the first witness in search
/// order and the number of search nodes visited.
pub fn search_color<C: Coloring + ?Sized>(
    coloring: &C,
    params: &Params,
    color: Color,
) -> Result<(Option<LoosePath>, u64)> {
    check_guard(params, DEFAULT_NODE_GUARD)?;
    let index = EdgeIndex::new(params.n, params.k);
    let colors = table_of(coloring, params);
    search_table(&index, &colors, color, params.ell, DEFAULT_NODE_GUARD)
}

pub fn exhaustive_mono_path_search<C: Coloring + ?Sized>(coloring: &C, params: &Params) -> Result<OracleVerdict> {
    exhaustive_mono_path_search_with(coloring, params, DEFAULT_NODE_GUARD)
}

pub fn exhaustive_mono_path_search_with<C: Coloring + ?Sized>(
    coloring: &C,
    params: &Params,
    node_guard: u64,
) -> Result<OracleVerdict> {
    check_guard(params, node_guard)?;
    let index = EdgeIndex::new(params.n, params.k);
    let colors = table_of(coloring, params);
    search_all_colors(&index, &colors, params.r, params.ell, node_guard)
}

fn search_all_colors(index: &EdgeIndex, colors: &[u8], r: usize, ell: usize, node_guard: u64) -> Result<OracleVerdict> {
    let mut nodes = 0;
    for color in 1..=r as Color {
        let (found, used) = search_table(index, colors, color, ell, node_guard)?;
        nodes += used;
        if let Some(path) = found {
            return Ok(OracleVerdict::Found { color, path, nodes });
        }
    }
    Ok(OracleVerdict::Absent { nodes })
}

/// Why a claimed witness was rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessDefect {
    UniformityMismatch { path: usize, params: usize },
    Path(PathDefect),
    Length { expected: usize, found: usize },
    ColorOutOfRange { color: Color, r: usize },
    Color { index: usize, edge: EdgeKey, claimed: Color, found: Color },
}

impl fmt::Display for WitnessDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessDefect::UniformityMismatch { path, params } => {
                write!(f, "path is {path}-uniform, parameters say k = {params}")
            }
            WitnessDefect::Path(d) => write!(f, "not a loose path: {d}"),
            WitnessDefect::Length { expected, found } => {
                write!(f, "path has {found} edges, expected {expected}")
            }
            WitnessDefect::ColorOutOfRange { color, r } => write!(f, "color {color} outside 1..={r}"),
            WitnessDefect::Color {
                index,
                edge,
                claimed,
                found,
            } => write!(f, "edge {} {edge} has color {found}, claimed {claimed}", index + 1),
        }
    }
}

/// Checks that `path` is a loose `P_ell^(k)` whose every edge has `color`.
pub fn verify_witness<C: Coloring + ?Sized>(
    coloring: &C,
    path: &LoosePath,
    color: Color,
    params: &Params,
) -> std::result::Result<(), WitnessDefect> {
    if path.k() != params.k {
        return Err(WitnessDefect::UniformityMismatch {
            path: path.k(),
            params: params.k,
        });
    }
    if color == 0 || color as usize > params.r {
        return Err(WitnessDefect::ColorOutOfRange { color, r: params.r });
    }
    let edges = validate_loose_path(path.sequence(), params.k, params.n).map_err(WitnessDefect::Path)?;
    if edges != params.ell {
        return Err(WitnessDefect::Length {
            expected: params.ell,
            found: edges,
        });
    }
    for (index, edge) in path.edge_keys().into_iter().enumerate() {
        let found = coloring.color_of(edge.vertices());
        if found != color {
            return Err(WitnessDefect::Color {
                index,
                edge,
                claimed: color,
                found,
            });
        }
    }
    Ok(())
}

/// Outcome of enumerating every r-coloring of `K_n^(k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmallRamseyReport {
    pub colorings: u64,
    /// First coloring (colex-indexed table) without a monochromatic path.
    pub counterexample: Option<TableColoring>,
}

impl SmallRamseyReport {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Enumerates all colorings as base-`r` counters over colex ranks (rank 0 is
/// the least significant digit) and searches each one.
pub fn small_ramsey_report(k: usize, ell: usize, r: usize, n: usize, coloring_guard: u64) -> Result<SmallRamseyReport> {
    let params = Params::new(k, ell, r, n)?;
    let m = params.edge_count();
    let total = (r as u64)
        .checked_pow(u32::try_from(m).unwrap_or(u32::MAX))
        .filter(|&t| t <= coloring_guard)
        .ok_or_else(|| Error::TooLarge(format!("{r}^{m} colorings exceed the guard {coloring_guard}")))?;
    let index = EdgeIndex::new(n, k);
    let mut digits = vec![1u8; m as usize];
    for count in 0..total {
        if count > 0 {
            for d in digits.iter_mut() {
                if (*d as usize) < r {
                    *d += 1;
                    break;
                }
                *d = 1;
            }
        }
        if !search_all_colors(&index, &digits, r, ell, DEFAULT_NODE_GUARD)?.is_found() {
            return Ok(SmallRamseyReport {
                colorings: count + 1,
                counterexample: Some(TableColoring::new(k, n, r, digits)?),
            });
        }
    }
    Ok(SmallRamseyReport {
        colorings: total,
        counterexample: None,
    })
}

/// Whether every r-coloring of `K_n^(k)` has a monochromatic `P_ell^(k)`.
pub fn verify_small_ramsey(k: usize, ell: usize, r: usize, n: usize) -> Result<bool> {
    small_ramsey_report(k, ell, r, n, DEFAULT_COLORING_GUARD).map(|rep| rep.holds())
}
