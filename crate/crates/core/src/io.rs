//! Witness (`lprw 1`) and coloring (`lprc 1`) file formats.
//!
//! ```text
//! lprw 1
//! k=<k> l=<ell> r=<r> n=<n> color=<c>
//! <space-separated path sequence>
//! ```
//!
//! ```text
//! lprc 1
//! k=<k> n=<n> r=<r> kind=<table|random|constant|star>
//! <kind payload>
//! ```
//! The payload is `seed=<u64>`, `color=<c>`, `center=<v> inner=<c1>
//! outer=<c2>`, or for tables one color per colex rank, whitespace-separated.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::coloring::{StandardColoring, TableColoring};
use crate::error::{Error, Result};
use crate::hypergraph::{Color, LoosePath, Params, Vertex};

const WITNESS_MAGIC: &str = "lprw 1";
const COLORING_MAGIC: &str = "lprc 1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessFile {
    pub params: Params,
    pub color: Color,
    pub path: LoosePath,
}

pub fn write_witness(params: &Params, color: Color, path: &LoosePath) -> String {
    let mut out = String::new();
    out.push_str(WITNESS_MAGIC);
    out.push('\n');
    let _ = writeln!(
        out,
        "k={} l={} r={} n={} color={}",
        params.k, params.ell, params.r, params.n, color
    );
    let seq: Vec<String> = path.sequence().iter().map(|v| v.to_string()).collect();
    out.push_str(&seq.join(" "));
    out.push('\n');
    out
}

fn key_values(line: &str) -> Result<HashMap<&str, &str>> {
    line.split_whitespace()
        .map(|tok| {
            tok.split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got {tok:?}")))
        })
        .collect()
}

fn field<T: std::str::FromStr>(map: &HashMap<&str, &str>, key: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    let raw = map
        .get(key)
        .ok_or_else(|| Error::Parse(format!("missing field {key}")))?;
    raw.parse::<T>()
        .map_err(|e| Error::Parse(format!("field {key}={raw}: {e}")))
}

pub fn parse_witness(text: &str) -> Result<WitnessFile> {
    let mut lines = text.lines();
    if lines.next().map(str::trim) != Some(WITNESS_MAGIC) {
        return Err(Error::Parse(format!("witness file must start with {WITNESS_MAGIC:?}")));
    }
    let header = key_values(lines.next().ok_or_else(|| Error::Parse("missing header line".into()))?)?;
    let params = Params::new(
        field(&header, "k")?,
        field(&header, "l")?,
        field(&header, "r")?,
        field(&header, "n")?,
    )?;
    let color: Color = field(&header, "color")?;
    let seq = lines
        .next()
        .unwrap_or("")
        .split_whitespace()
        .map(|t| t.parse::<Vertex>().map_err(|e| Error::Parse(format!("vertex {t:?}: {e}"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(WitnessFile {
        params,
        color,
        path: LoosePath::from_sequence(params.k, seq),
    })
}

/// A parsed coloring file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoringFile {
    pub k: usize,
    pub n: usize,
    pub r: usize,
    pub coloring: StandardColoring,
}

pub fn write_coloring(k: usize, n: usize, coloring: &StandardColoring) -> String {
    use crate::coloring::Coloring;
    let mut out = String::new();
    out.push_str(COLORING_MAGIC);
    out.push('\n');
    let _ = writeln!(
        out,
        "k={k} n={n} r={} kind={}",
        coloring.colors(),
        coloring.kind()
    );
    match coloring {
        StandardColoring::Constant { color, .. } => {
            let _ = writeln!(out, "color={color}");
        }
        StandardColoring::SeededRandom { seed, .. } => {
            let _ = writeln!(out, "seed={seed}");
        }
        StandardColoring::Star {
            center,
            inner,
            outer,
            ..
        } => {
            let _ = writeln!(out, "center={center} inner={inner} outer={outer}");
        }
        StandardColoring::Table(t) => {
            let cells: Vec<String> = t.as_slice().iter().map(|c| c.to_string()).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
    }
    out
}

pub fn parse_coloring_file(text: &str) -> Result<ColoringFile> {
    let mut lines = text.lines();
    if lines.next().map(str::trim) != Some(COLORING_MAGIC) {
        return Err(Error::Parse(format!("coloring file must start with {COLORING_MAGIC:?}")));
    }
    let header = key_values(lines.next().ok_or_else(|| Error::Parse("missing header line".into()))?)?;
    let k: usize = field(&header, "k")?;
    let n: usize = field(&header, "n")?;
    let r: usize = field(&header, "r")?;
    Params::new(k, 0, r, n)?;
    let kind: String = field(&header, "kind")?;
    let check = |c: Color| -> Result<Color> {
        if c == 0 || c as usize > r {
            return Err(Error::Parse(format!("color {c} outside 1..={r}")));
        }
        Ok(c)
    };
    let coloring = match kind.as_str() {
        "table" => {
            let colors = lines
                .flat_map(str::split_whitespace)
                .map(|t| t.parse::<u8>().map_err(|e| Error::Parse(format!("color {t:?}: {e}"))))
                .collect::<Result<Vec<_>>>()?;
            StandardColoring::Table(TableColoring::new(k, n, r, colors)?)
        }
        other => {
            let payload = key_values(lines.next().unwrap_or(""))?;
            match other {
                "random" => StandardColoring::SeededRandom {
                    r,
                    seed: field(&payload, "seed")?,
                },
                "constant" => StandardColoring::Constant {
                    r,
                    color: check(field(&payload, "color")?)?,
                },
                "star" => {
                    let center: Vertex = field(&payload, "center")?;
                    if center as usize >= n {
                        return Err(Error::Parse(format!("star center {center} >= n = {n}")));
                    }
                    StandardColoring::Star {
                        r,
                        center,
                        inner: check(field(&payload, "inner")?)?,
                        outer: check(field(&payload, "outer")?)?,
                    }
                }
                _ => return Err(Error::Parse(format!("unknown coloring kind {other:?}"))),
            }
        }
    };
    Ok(ColoringFile { k, n, r, coloring })
}
