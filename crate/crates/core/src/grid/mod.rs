//! Persistence modules over the equioriented commutative grid.
//!
//! Vertices are `(row, col)` with `1 ≤ row ≤ m` counted from the bottom and
//! `1 ≤ col ≤ n` counted from the left. Horizontal arrows point right,
//! vertical arrows point up, and every elementary square commutes.

mod module;
mod paths;

use std::fmt;
use std::ops::{Index, IndexMut};

use thiserror::Error;

use crate::linalg::LinalgError;

pub use module::{Arrow, PersistenceModule, SquareViolation};
pub use paths::{PathMapTable, RankInvariant};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    pub row: usize,
    pub col: usize,
}

impl Vertex {
    pub const fn new(row: usize, col: usize) -> Self {
        Self { row, col }
    }

    /// Componentwise order: `self ≤ other` iff there is a path `self → other`.
    #[inline]
    pub fn leq(self, other: Vertex) -> bool {
        self.row <= other.row && self.col <= other.col
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

/// The `m × n` grid shape.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Grid {
    m: usize,
    n: usize,
}

impl Grid {
    pub fn new(m: usize, n: usize) -> Result<Self, ModuleError> {
        if m == 0 || n == 0 {
            return Err(ModuleError::EmptyGrid);
        }
        Ok(Self { m, n })
    }

    /// Number of rows.
    #[inline]
    pub fn m(self) -> usize {
        self.m
    }

    /// Number of columns.
    #[inline]
    pub fn n(self) -> usize {
        self.n
    }

    #[inline]
    pub fn vertex_count(self) -> usize {
        self.m * self.n
    }

    #[inline]
    pub fn contains(self, v: Vertex) -> bool {
        (1..=self.m).contains(&v.row) && (1..=self.n).contains(&v.col)
    }

    /// Row-major position of `v`, bottom row first.
    #[inline]
    pub fn index(self, v: Vertex) -> usize {
        debug_assert!(self.contains(v), "{v} outside {self}");
        (v.row - 1) * self.n + (v.col - 1)
    }

    #[inline]
    pub fn vertex(self, index: usize) -> Vertex {
        Vertex::new(index / self.n + 1, index % self.n + 1)
    }

    /// All vertices, bottom row first, left to right.
    pub fn vertices(self) -> impl Iterator<Item = Vertex> {
        (0..self.vertex_count()).map(move |i| self.vertex(i))
    }

    /// All pairs `(src, dst)` with `src ≤ dst`, including `src = dst`.
    pub fn comparable_pairs(self) -> impl Iterator<Item = (Vertex, Vertex)> {
        self.vertices()
            .flat_map(move |s| self.vertices().filter(move |&t| s.leq(t)).map(move |t| (s, t)))
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{} grid", self.m, self.n)
    }
}

/// A value for every vertex of a grid.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexMap<T> {
    grid: Grid,
    values: Vec<T>,
}

impl<T> VertexMap<T> {
    pub fn from_fn(grid: Grid, mut f: impl FnMut(Vertex) -> T) -> Self {
        Self {
            grid,
            values: grid.vertices().map(&mut f).collect(),
        }
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vertex, &T)> {
        let grid = self.grid;
        self.values.iter().enumerate().map(move |(i, x)| (grid.vertex(i), x))
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn map<U>(&self, mut f: impl FnMut(&T) -> U) -> VertexMap<U> {
        VertexMap {
            grid: self.grid,
            values: self.values.iter().map(&mut f).collect(),
        }
    }
}

impl<T: Clone> VertexMap<T> {
    pub fn filled(grid: Grid, value: T) -> Self {
        Self {
            grid,
            values: vec![value; grid.vertex_count()],
        }
    }
}

impl<T> Index<Vertex> for VertexMap<T> {
    type Output = T;

    fn index(&self, v: Vertex) -> &T {
        assert!(self.grid.contains(v), "{v} outside {}", self.grid);
        &self.values[self.grid.index(v)]
    }
}

impl<T> IndexMut<Vertex> for VertexMap<T> {
    fn index_mut(&mut self, v: Vertex) -> &mut T {
        assert!(self.grid.contains(v), "{v} outside {}", self.grid);
        let i = self.grid.index(v);
        &mut self.values[i]
    }
}

/// Dimension-vector layout: top row first, rows separated by ` / `,
/// e.g. `(1 2 1 / 0 1 1)`.
impl<T: fmt::Display> fmt::Display for VertexMap<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for row in (1..=self.grid.m).rev() {
            if row != self.grid.m {
                write!(f, " / ")?;
            }
            for col in 1..=self.grid.n {
                if col > 1 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self[Vertex::new(row, col)])?;
            }
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("grids must have at least one row and one column")]
    EmptyGrid,
    #[error("{0} has no such arrow")]
    NoSuchArrow(Arrow),
    #[error("map on {arrow} must be {expected:?}, got {actual:?}")]
    MapShape {
        arrow: Arrow,
        expected: (usize, usize),
        actual: (usize, usize),
    },
    #[error("modules live on different grids or fields")]
    Incompatible,
    #[error("basis at {0} is not an invertible matrix of the right size")]
    BadBasis(Vertex),
    #[error("interval {0} does not fit in the grid")]
    IntervalOutOfBounds(String),
}
