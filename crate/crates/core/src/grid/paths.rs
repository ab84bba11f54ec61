use std::collections::BTreeMap;

use super::{Arrow, Grid, PersistenceModule, Vertex};
use crate::linalg::Matrix;

/// The map `M(src → dst)` for every comparable pair of vertices.
///
/// Entries are built outward from each source: the map to `(i, j)` is the
/// arrow into `(i, j)` composed with an already known shorter map, so each
/// pair of distance at least two costs one multiplication. Because every
/// square commutes the result does not depend on which arrow was used.
#[derive(Clone, Debug)]
pub struct PathMapTable {
    grid: Grid,
    entries: Vec<Option<Matrix>>,
    multiplications: usize,
}

impl PathMapTable {
    pub fn new(module: &PersistenceModule) -> Self {
        let grid = module.grid();
        let vc = grid.vertex_count();
        let mut entries: Vec<Option<Matrix>> = vec![None; vc * vc];
        let mut multiplications = 0;
        for src in grid.vertices() {
            let base = grid.index(src) * vc;
            for row in src.row..=grid.m() {
                for col in src.col..=grid.n() {
                    let dst = Vertex::new(row, col);
                    let value = if dst == src {
                        Matrix::identity(module.field(), module.dim(src))
                    } else {
                        let (arrow, prev) = if col > src.col {
                            (Arrow::Horizontal(Vertex::new(row, col - 1)), Vertex::new(row, col - 1))
                        } else {
                            (Arrow::Vertical(Vertex::new(row - 1, col)), Vertex::new(row - 1, col))
                        };
                        if prev == src {
                            module.map(arrow).clone()
                        } else {
                            multiplications += 1;
                            let shorter = entries[base + grid.index(prev)]
                                .as_ref()
                                .expect("shorter path computed first");
                            module.map(arrow).mul(shorter).expect("shapes are consistent")
                        }
                    };
                    entries[base + grid.index(dst)] = Some(value);
                }
            }
        }
        Self {
            grid,
            entries,
            multiplications,
        }
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    /// `M(src → dst)`, or `None` when `src ≰ dst` or either lies outside the
    /// grid.
    pub fn get(&self, src: Vertex, dst: Vertex) -> Option<&Matrix> {
        if !self.grid.contains(src) || !self.grid.contains(dst) {
            return None;
        }
        let vc = self.grid.vertex_count();
        self.entries[self.grid.index(src) * vc + self.grid.index(dst)].as_ref()
    }

    /// Number of matrix products performed while building the table.
    pub fn multiplications(&self) -> usize {
        self.multiplications
    }

    pub fn rank_invariant(&self) -> RankInvariant {
        let ranks = self
            .grid
            .comparable_pairs()
            .map(|(s, t)| ((s, t), self.get(s, t).expect("comparable pair").rank()))
            .collect();
        RankInvariant { ranks }
    }
}

/// `rank M(src → dst)` over all comparable pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankInvariant {
    ranks: BTreeMap<(Vertex, Vertex), usize>,
}

impl RankInvariant {
    pub fn get(&self, src: Vertex, dst: Vertex) -> Option<usize> {
        self.ranks.get(&(src, dst)).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((Vertex, Vertex), usize)> + '_ {
        self.ranks.iter().map(|(&k, &v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }
}
