//! Edge colorings of complete k-uniform hypergraphs.
//!
//! A [`Coloring`] is a pure, deterministic map from sorted k-sets to colors
//! `1..=r`. It is `Sync`, so several workers may query one coloring at once;
//! each worker counts its own queries through a [`Counted`] wrapper.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::hypergraph::{colex_rank_sorted, Color, Params, Vertex};

pub trait Coloring: Sync {
    /// Number of colors `r`.
    fn colors(&self) -> usize;

    /// Color of a sorted edge.
    fn color_of(&self, edge: &[Vertex]) -> Color;

    /// Same as [`Coloring::color_of`] when the caller already knows the colex
    /// rank of `edge`.
    fn color_of_ranked(&self, edge: &[Vertex], rank: u64) -> Color {
        let _ = rank;
        self.color_of(edge)
    }
}

impl<C: Coloring + ?Sized> Coloring for &C {
    fn colors(&self) -> usize {
        (**self).colors()
    }
    fn color_of(&self, edge: &[Vertex]) -> Color {
        (**self).color_of(edge)
    }
    fn color_of_ranked(&self, edge: &[Vertex], rank: u64) -> Color {
        (**self).color_of_ranked(edge, rank)
    }
}

/// Number of `color_of` calls made through a [`Counted`] handle.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct QueryCounter(u64);

impl QueryCounter {
    pub fn get(self) -> u64 {
        self.0
    }
}

/// A coloring together with a private query counter.
pub struct Counted<'a, C: ?Sized> {
    source: &'a C,
    counter: QueryCounter,
}

impl<'a, C: Coloring + ?Sized> Counted<'a, C> {
    pub fn new(source: &'a C) -> Self {
        Counted {
            source,
            counter: QueryCounter::default(),
        }
    }

    pub fn query(&mut self, edge: &[Vertex]) -> Color {
        self.counter.0 += 1;
        self.source.color_of(edge)
    }

    pub fn query_ranked(&mut self, edge: &[Vertex], rank: u64) -> Color {
        self.counter.0 += 1;
        self.source.color_of_ranked(edge, rank)
    }

    pub fn queries(&self) -> u64 {
        self.counter.get()
    }

    pub fn counter(&self) -> QueryCounter {
        self.counter
    }

    pub fn source(&self) -> &'a C {
        self.source
    }

    pub fn colors(&self) -> usize {
        self.source.colors()
    }
}

/// Seeded color of the edge with colex rank `rank`.
///
/// Wrapping 64-bit arithmetic; the constants are part of the coloring file
/// format and must not change.
pub fn seeded_color(seed: u64, rank: u64, r: usize) -> Color {
    let mut x = seed ^ rank.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    x ^= x >> 30;
    x = x.wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x ^= x >> 27;
    x = x.wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^= x >> 31;
    (x % r as u64) as Color + 1
}

/// The four coloring kinds that can be named on the command line or stored
/// in a coloring file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StandardColoring {
    Constant { r: usize, color: Color },
    SeededRandom { r: usize, seed: u64 },
    /// Edges through `center` get `inner`, all others `outer`.
    Star {
        r: usize,
        center: Vertex,
        inner: Color,
        outer: Color,
    },
    Table(TableColoring),
}

impl StandardColoring {
    pub fn kind(&self) -> &'static str {
        match self {
            StandardColoring::Constant { .. } => "constant",
            StandardColoring::SeededRandom { .. } => "random",
            StandardColoring::Star { .. } => "star",
            StandardColoring::Table(_) => "table",
        }
    }
}

impl Coloring for StandardColoring {
    fn colors(&self) -> usize {
        match self {
            StandardColoring::Constant { r, .. }
            | StandardColoring::SeededRandom { r, .. }
            | StandardColoring::Star { r, .. } => *r,
            StandardColoring::Table(t) => t.r,
        }
    }

    fn color_of(&self, edge: &[Vertex]) -> Color {
        match self {
            StandardColoring::SeededRandom { r, seed } => {
                seeded_color(*seed, colex_rank_sorted(edge), *r)
            }
            StandardColoring::Table(t) => t.color_of(edge),
            _ => self.color_of_ranked(edge, 0),
        }
    }

    fn color_of_ranked(&self, edge: &[Vertex], rank: u64) -> Color {
        match self {
            StandardColoring::Constant { color, .. } => *color,
            StandardColoring::SeededRandom { r, seed } => seeded_color(*seed, rank, *r),
            StandardColoring::Star {
                center,
                inner,
                outer,
                ..
            } => {
                if edge.binary_search(center).is_ok() {
                    *inner
                } else {
                    *outer
                }
            }
            StandardColoring::Table(t) => t.colors[rank as usize] as Color,
        }
    }
}

/// Dense coloring indexed by colex rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableColoring {
    pub k: usize,
    pub n: usize,
    pub r: usize,
    colors: Vec<u8>,
}

impl TableColoring {
    pub fn new(k: usize, n: usize, r: usize, colors: Vec<u8>) -> Result<Self> {
        let expected = crate::hypergraph::binomial(n as u64, k as u64);
        if colors.len() as u64 != expected {
            return Err(Error::Parse(format!(
                "table has {} entries, expected C({n},{k}) = {expected}",
                colors.len()
            )));
        }
        if r > u8::MAX as usize {
            return Err(Error::InvalidParams(format!("table colorings support r <= 255, got {r}")));
        }
        if let Some(bad) = colors.iter().find(|&&c| c == 0 || c as usize > r) {
            return Err(Error::Parse(format!("color {bad} outside 1..={r}")));
        }
        Ok(TableColoring { k, n, r, colors })
    }

    /// Materializes any coloring over all k-subsets of `0..n`.
    pub fn materialize<C: Coloring + ?Sized>(source: &C, k: usize, n: usize) -> Result<Self> {
        let r = source.colors();
        let colors = crate::hypergraph::all_edges(n, k)
            .map(|e| source.color_of(&e) as u8)
            .collect();
        TableColoring::new(k, n, r, colors)
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.colors
    }
}

impl Coloring for TableColoring {
    fn colors(&self) -> usize {
        self.r
    }

    fn color_of(&self, edge: &[Vertex]) -> Color {
        self.colors[colex_rank_sorted(edge) as usize] as Color
    }

    fn color_of_ranked(&self, _edge: &[Vertex], rank: u64) -> Color {
        self.colors[rank as usize] as Color
    }
}

/// A textual coloring description: `constant:<c>`, `seed:<u64>`,
/// `star:<center>,<inner>,<outer>` or `file:<path>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ColoringSpec {
    Constant(Color),
    Seed(u64),
    Star { center: Vertex, inner: Color, outer: Color },
    File(String),
}

impl FromStr for ColoringSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, arg) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("coloring spec {s:?} lacks ':'")))?;
        let num = |t: &str| -> Result<u64> {
            t.trim()
                .parse::<u64>()
                .map_err(|e| Error::Parse(format!("{t:?} in coloring spec: {e}")))
        };
        match kind {
            "constant" => Ok(ColoringSpec::Constant(num(arg)? as Color)),
            "seed" | "random" => Ok(ColoringSpec::Seed(num(arg)?)),
            "star" => {
                let parts: Vec<&str> = arg.split(',').collect();
                if parts.len() != 3 {
                    return Err(Error::Parse(format!("star spec needs center,inner,outer: {arg:?}")));
                }
                Ok(ColoringSpec::Star {
                    center: num(parts[0])? as Vertex,
                    inner: num(parts[1])? as Color,
                    outer: num(parts[2])? as Color,
                })
            }
            "file" => Ok(ColoringSpec::File(arg.to_string())),
            other => Err(Error::Parse(format!("unknown coloring kind {other:?}"))),
        }
    }
}

impl fmt::Display for ColoringSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ColoringSpec::Constant(c) => write!(f, "constant:{c}"),
            ColoringSpec::Seed(s) => write!(f, "seed:{s}"),
            ColoringSpec::Star { center, inner, outer } => write!(f, "star:{center},{inner},{outer}"),
            ColoringSpec::File(p) => write!(f, "file:{p}"),
        }
    }
}

fn check_color(c: Color, r: usize) -> Result<Color> {
    if c == 0 || c as usize > r {
        return Err(Error::Parse(format!("color {c} outside 1..={r}")));
    }
    Ok(c)
}

/// Builds the coloring named by `spec` for the instance `params`. Coloring
/// files must agree with `params` on `k`, `n` and `r`.
pub fn generate_coloring(spec: &ColoringSpec, params: &Params) -> Result<StandardColoring> {
    let r = params.r;
    match spec {
        ColoringSpec::Constant(c) => Ok(StandardColoring::Constant {
            r,
            color: check_color(*c, r)?,
        }),
        ColoringSpec::Seed(seed) => Ok(StandardColoring::SeededRandom { r, seed: *seed }),
        ColoringSpec::Star { center, inner, outer } => {
            if *center as usize >= params.n {
                return Err(Error::Parse(format!("star center {center} >= n = {}", params.n)));
            }
            Ok(StandardColoring::Star {
                r,
                center: *center,
                inner: check_color(*inner, r)?,
                outer: check_color(*outer, r)?,
            })
        }
        ColoringSpec::File(path) => {
            let text = std::fs::read_to_string(path)?;
            let file = crate::io::parse_coloring_file(&text)?;
            if (file.k, file.n, file.r) != (params.k, params.n, params.r) {
                return Err(Error::Parse(format!(
                    "coloring file is for k={} n={} r={}, instance is {params}",
                    file.k, file.n, file.r
                )));
            }
            Ok(file.coloring)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::all_edges;

    #[test]
    fn seeded_golden_values() {
        // Frozen from an independent evaluation of the mixing rule.
        assert_eq!(seeded_color(12345, 0, 2), 2);
        let got: Vec<Color> = (0..10).map(|i| seeded_color(12345, i, 3)).collect();
        assert_eq!(got, vec![1, 2, 1, 2, 1, 2, 2, 2, 2, 3]);
        let got: Vec<Color> = (0..10).map(|i| seeded_color(7, i, 2)).collect();
        assert_eq!(got, vec![1, 2, 2, 2, 1, 2, 2, 2, 1, 1]);
    }

    #[test]
    fn spec_examples() {
        let p = Params::new(3, 3, 2, 6).unwrap();
        let c = generate_coloring(&"constant:2".parse().unwrap(), &p).unwrap();
        assert!(all_edges(6, 3).all(|e| c.color_of(&e) == 2));

        let star = generate_coloring(&"star:0,1,2".parse().unwrap(), &p).unwrap();
        for e in all_edges(6, 3) {
            let expect = if e.contains(&0) { 1 } else { 2 };
            assert_eq!(star.color_of(&e), expect);
        }
    }

    #[test]
    fn malformed_specs() {
        assert!("constant".parse::<ColoringSpec>().is_err());
        assert!("blue:1".parse::<ColoringSpec>().is_err());
        assert!("star:1,2".parse::<ColoringSpec>().is_err());
        assert!("seed:x".parse::<ColoringSpec>().is_err());
        let p = Params::new(3, 3, 2, 6).unwrap();
        assert!(generate_coloring(&ColoringSpec::Constant(3), &p).is_err());
        assert!(generate_coloring(&ColoringSpec::Constant(0), &p).is_err());
        assert!(generate_coloring(
            &ColoringSpec::Star { center: 9, inner: 1, outer: 2 },
            &p
        )
        .is_err());
    }

    #[test]
    fn spec_round_trips_through_display() {
        for s in ["constant:3", "seed:99", "star:4,1,2", "file:/tmp/x.lprc"] {
            assert_eq!(s.parse::<ColoringSpec>().unwrap().to_string(), s);
        }
    }

    #[test]
    fn counter_counts_every_query() {
        let c = StandardColoring::SeededRandom { r: 3, seed: 1 };
        let mut q = Counted::new(&c);
        for e in all_edges(6, 3) {
            q.query(&e);
        }
        assert_eq!(q.queries(), 20);
    }

    #[test]
    fn materialized_table_agrees_with_source() {
        let c = StandardColoring::SeededRandom { r: 4, seed: 42 };
        let t = TableColoring::materialize(&c, 3, 9).unwrap();
        for (rank, e) in all_edges(9, 3).enumerate() {
            assert_eq!(t.color_of(&e), c.color_of(&e));
            assert_eq!(t.color_of_ranked(&e, rank as u64), c.color_of(&e));
        }
    }
}
