//! Constructive search for monochromatic loose paths `P_ell^(k)` in r-edge-colored
//! complete k-uniform hypergraphs.
//!
//! Two finders are provided:
//!
//! * [`finder`]: a sequence of `r - 1` depth-first rounds, one color each,
//!   that either finds a path or leaves a large complete partite family of
//!   the last color.
//! * [`reduction`]: majority-vote projection down to graphs, a DFS-split
//!   graph finder, and a lift back up through one spare vertex per edge.
//!
//! [`bounds`] evaluates every threshold exactly (or with certified
//! enclosures where logarithms appear) and [`oracle`] provides independent
//! brute-force ground truth.

pub mod bounds;
pub mod coloring;
pub mod error;
pub mod finder;
pub mod hypergraph;
pub mod io;
mod memo;
pub mod oracle;
pub mod precise;
pub mod reduction;
pub mod selfcheck;
pub mod testbed;

pub use coloring::{Coloring, ColoringSpec, Counted, QueryCounter, StandardColoring, TableColoring};
pub use error::{Error, Result};
pub use hypergraph::{Color, EdgeKey, LoosePath, Params, PartiteFamily, Shape, Vertex};
