//! Structured colorings that push the DFS finder past its first rounds.
//!
//! Uniformly random colorings almost always contain a color-1 path, so the
//! finder stops in round 1. The families here starve the low colors instead.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::coloring::{seeded_color, Coloring};
use crate::hypergraph::{colex_rank_sorted, Color, Vertex};

/// Color `c < r` appears only on edges inside one level-`c` cluster, where
/// clusters are random blocks of `(k-1) ell` vertices. A loose path with
/// `ell` edges spans `(k-1) ell + 1` vertices and is connected, so no color
/// below `r` contains one. Inside a cluster an edge takes color `c` with
/// probability `density / 100`, otherwise it falls through to later levels.
#[derive(Clone, Debug)]
pub struct ClusteredColoring {
    r: usize,
    seed: u64,
    density: u64,
    cluster: Vec<Vec<u32>>,
}

impl ClusteredColoring {
    pub fn new(n: usize, k: usize, ell: usize, r: usize, seed: u64) -> Self {
        Self::with_density(n, k, ell, r, seed, 70)
    }

    pub fn with_density(n: usize, k: usize, ell: usize, r: usize, seed: u64, density: u64) -> Self {
        let block = ((k - 1) * ell).max(1);
        let cluster = (1..r)
            .map(|level| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(level as u64));
                let mut order: Vec<usize> = (0..n).collect();
                order.shuffle(&mut rng);
                let mut ids = vec![0u32; n];
                for (pos, v) in order.into_iter().enumerate() {
                    ids[v] = (pos / block) as u32;
                }
                ids
            })
            .collect();
        ClusteredColoring {
            r,
            seed,
            density,
            cluster,
        }
    }
}

impl Coloring for ClusteredColoring {
    fn colors(&self) -> usize {
        self.r
    }

    fn color_of(&self, edge: &[Vertex]) -> Color {
        self.color_of_ranked(edge, colex_rank_sorted(edge))
    }

    fn color_of_ranked(&self, edge: &[Vertex], rank: u64) -> Color {
        for (level, ids) in self.cluster.iter().enumerate() {
            let id = ids[edge[0] as usize];
            if edge.iter().all(|&v| ids[v as usize] == id) {
                let salt = self.seed ^ (level as u64 + 1).wrapping_mul(0xA076_1D64_78BD_642F);
                if (seeded_color(salt, rank, 100) as u64) <= self.density {
                    return level as Color + 1;
                }
            }
        }
        self.r as Color
    }
}

/// Color 1 with probability `percent / 100`, otherwise uniform over `2..=r`.
#[derive(Clone, Copy, Debug)]
pub struct SparseColoring {
    pub r: usize,
    pub seed: u64,
    pub percent: u64,
}

impl Coloring for SparseColoring {
    fn colors(&self) -> usize {
        self.r
    }

    fn color_of(&self, edge: &[Vertex]) -> Color {
        self.color_of_ranked(edge, colex_rank_sorted(edge))
    }

    fn color_of_ranked(&self, _edge: &[Vertex], rank: u64) -> Color {
        if seeded_color(self.seed, rank, 100) as u64 <= self.percent {
            1
        } else {
            seeded_color(self.seed.rotate_left(17), rank, self.r - 1) + 1
        }
    }
}
