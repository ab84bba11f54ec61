use std::fmt;

use super::{Grid, ModuleError, PathMapTable, RankInvariant, Vertex, VertexMap};
use crate::linalg::{Matrix, PrimeField};
use crate::poset::Interval;

/// An arrow of the grid, named by its source vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Arrow {
    /// `(i, j) → (i, j + 1)`
    Horizontal(Vertex),
    /// `(i, j) → (i + 1, j)`
    Vertical(Vertex),
}

impl Arrow {
    pub fn source(self) -> Vertex {
        match self {
            Arrow::Horizontal(v) | Arrow::Vertical(v) => v,
        }
    }

    pub fn target(self) -> Vertex {
        match self {
            Arrow::Horizontal(v) => Vertex::new(v.row, v.col + 1),
            Arrow::Vertical(v) => Vertex::new(v.row + 1, v.col),
        }
    }

    fn fits(self, grid: Grid) -> bool {
        grid.contains(self.source()) && grid.contains(self.target())
    }
}

impl fmt::Display for Arrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", self.source(), self.target())
    }
}

/// First elementary square found not to commute, named by its lower-left
/// vertex `(i, j)`: the square on `(i,j), (i,j+1), (i+1,j), (i+1,j+1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SquareViolation {
    pub square: Vertex,
}

impl fmt::Display for SquareViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "square at {} does not commute", self.square)
    }
}

impl std::error::Error for SquareViolation {}

/// A representation of the commutative grid over GF(p).
///
/// Map shapes always agree with the vertex dimensions; commutativity is
/// checked separately by [`PersistenceModule::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PersistenceModule {
    grid: Grid,
    field: PrimeField,
    dims: VertexMap<usize>,
    // indexed by grid.index(source); entries for the last column / top row
    // are unused 0×0 placeholders
    hmaps: Vec<Matrix>,
    vmaps: Vec<Matrix>,
}

impl PersistenceModule {
    /// The module with the given dimensions and all maps zero.
    pub fn zero_maps(field: PrimeField, dims: VertexMap<usize>) -> Self {
        let grid = dims.grid();
        let placeholder = Matrix::zeros(field, 0, 0);
        let mut hmaps = vec![placeholder.clone(); grid.vertex_count()];
        let mut vmaps = vec![placeholder; grid.vertex_count()];
        for v in grid.vertices() {
            let h = Arrow::Horizontal(v);
            if h.fits(grid) {
                hmaps[grid.index(v)] = Matrix::zeros(field, dims[h.target()], dims[v]);
            }
            let u = Arrow::Vertical(v);
            if u.fits(grid) {
                vmaps[grid.index(v)] = Matrix::zeros(field, dims[u.target()], dims[v]);
            }
        }
        Self {
            grid,
            field,
            dims,
            hmaps,
            vmaps,
        }
    }

    /// The zero module.
    pub fn zero(grid: Grid, field: PrimeField) -> Self {
        Self::zero_maps(field, VertexMap::filled(grid, 0))
    }

    /// The interval representation `V_I`: `K` on `I`, identities inside `I`,
    /// zero elsewhere.
    pub fn interval(grid: Grid, interval: &Interval, field: PrimeField) -> Result<Self, ModuleError> {
        if !interval.fits(grid) {
            return Err(ModuleError::IntervalOutOfBounds(interval.to_string()));
        }
        let dims = VertexMap::from_fn(grid, |v| usize::from(interval.contains(v)));
        let mut module = Self::zero_maps(field, dims);
        let one = Matrix::identity(field, 1);
        for arrow in module.arrows().collect::<Vec<_>>() {
            if interval.contains(arrow.source()) && interval.contains(arrow.target()) {
                module.set_map(arrow, one.clone())?;
            }
        }
        Ok(module)
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn dim(&self, v: Vertex) -> usize {
        self.dims[v]
    }

    pub fn dims(&self) -> &VertexMap<usize> {
        &self.dims
    }

    /// Largest vertex dimension.
    pub fn max_dim(&self) -> usize {
        self.dims.values().iter().copied().max().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().iter().sum()
    }

    /// All arrows: horizontal arrows bottom row first, then vertical arrows.
    pub fn arrows(&self) -> impl Iterator<Item = Arrow> {
        let grid = self.grid;
        let h = grid.vertices().map(Arrow::Horizontal);
        let v = grid.vertices().map(Arrow::Vertical);
        h.chain(v).filter(move |a| a.fits(grid))
    }

    pub fn map(&self, arrow: Arrow) -> &Matrix {
        assert!(arrow.fits(self.grid), "{arrow} is not an arrow of {}", self.grid);
        match arrow {
            Arrow::Horizontal(v) => &self.hmaps[self.grid.index(v)],
            Arrow::Vertical(v) => &self.vmaps[self.grid.index(v)],
        }
    }

    pub fn set_map(&mut self, arrow: Arrow, matrix: Matrix) -> Result<(), ModuleError> {
        if !arrow.fits(self.grid) {
            return Err(ModuleError::NoSuchArrow(arrow));
        }
        if matrix.field() != self.field {
            return Err(ModuleError::Incompatible);
        }
        let expected = (self.dims[arrow.target()], self.dims[arrow.source()]);
        if matrix.shape() != expected {
            return Err(ModuleError::MapShape {
                arrow,
                expected,
                actual: matrix.shape(),
            });
        }
        let slot = self.grid.index(arrow.source());
        match arrow {
            Arrow::Horizontal(_) => self.hmaps[slot] = matrix,
            Arrow::Vertical(_) => self.vmaps[slot] = matrix,
        }
        Ok(())
    }

    /// Checks every elementary square, bottom row first, left to right.
    pub fn validate(&self) -> Result<(), SquareViolation> {
        for i in 1..self.grid.m() {
            for j in 1..self.grid.n() {
                let v = Vertex::new(i, j);
                let right_then_up = self
                    .map(Arrow::Vertical(Vertex::new(i, j + 1)))
                    .mul(self.map(Arrow::Horizontal(v)))
                    .expect("shapes are consistent");
                let up_then_right = self
                    .map(Arrow::Horizontal(Vertex::new(i + 1, j)))
                    .mul(self.map(Arrow::Vertical(v)))
                    .expect("shapes are consistent");
                if right_then_up != up_then_right {
                    return Err(SquareViolation { square: v });
                }
            }
        }
        Ok(())
    }

    pub fn path_map_table(&self) -> PathMapTable {
        PathMapTable::new(self)
    }

    pub fn rank_invariant(&self) -> RankInvariant {
        self.path_map_table().rank_invariant()
    }

    pub fn dimension_vector(&self) -> VertexMap<usize> {
        self.dims.clone()
    }

    /// Blockwise direct sum; the basis of `self` comes first at every vertex.
    pub fn direct_sum(&self, other: &PersistenceModule) -> Result<PersistenceModule, ModuleError> {
        if self.grid != other.grid || self.field != other.field {
            return Err(ModuleError::Incompatible);
        }
        let dims = VertexMap::from_fn(self.grid, |v| self.dims[v] + other.dims[v]);
        let mut out = Self::zero_maps(self.field, dims);
        for arrow in self.arrows().collect::<Vec<_>>() {
            let sum = Matrix::block2x2(Some(self.map(arrow)), None, None, Some(other.map(arrow)))?;
            out.set_map(arrow, sum)?;
        }
        Ok(out)
    }

    /// Change of basis: the map on `u → v` becomes `B_v · M(u→v) · B_u⁻¹`.
    pub fn conjugate(&self, bases: &VertexMap<Matrix>) -> Result<PersistenceModule, ModuleError> {
        if bases.grid() != self.grid {
            return Err(ModuleError::Incompatible);
        }
        let mut inverses = Vec::with_capacity(self.grid.vertex_count());
        for v in self.grid.vertices() {
            let b = &bases[v];
            if b.shape() != (self.dims[v], self.dims[v]) || b.field() != self.field {
                return Err(ModuleError::BadBasis(v));
            }
            inverses.push(b.inverse().map_err(|_| ModuleError::BadBasis(v))?);
        }
        let mut out = self.clone();
        for arrow in self.arrows().collect::<Vec<_>>() {
            let src_inv = &inverses[self.grid.index(arrow.source())];
            let m = bases[arrow.target()].mul(self.map(arrow))?.mul(src_inv)?;
            out.set_map(arrow, m)?;
        }
        Ok(out)
    }
}
