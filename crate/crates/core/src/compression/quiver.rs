use super::{classify_ss, CompressionError, SsShape};
use crate::grid::{PathMapTable, PersistenceModule, Vertex};
use crate::linalg::{Matrix, PrimeField};
use crate::poset::Interval;

/// A representation of a small quiver: one space per vertex and one matrix
/// per arrow, `matrices[k]` mapping `dims[arrows[k].0]` to `dims[arrows[k].1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverRep {
    field: PrimeField,
    dims: Vec<usize>,
    arrows: Vec<(usize, usize)>,
    matrices: Vec<Matrix>,
}

impl QuiverRep {
    pub fn new(
        field: PrimeField,
        dims: Vec<usize>,
        arrows: Vec<(usize, usize)>,
        matrices: Vec<Matrix>,
    ) -> Result<Self, CompressionError> {
        if arrows.len() != matrices.len() {
            return Err(CompressionError::QuiverMismatch);
        }
        for (&(u, w), m) in arrows.iter().zip(&matrices) {
            if u >= dims.len() || w >= dims.len() || m.field() != field || m.shape() != (dims[w], dims[u]) {
                return Err(CompressionError::QuiverMismatch);
            }
        }
        Ok(Self {
            field,
            dims,
            arrows,
            matrices,
        })
    }

    /// The thin representation with `K` on `support` and identities on arrows
    /// with both ends in the support.
    pub fn thin(field: PrimeField, support: &[bool], arrows: &[(usize, usize)]) -> Self {
        let dims: Vec<usize> = support.iter().map(|&b| usize::from(b)).collect();
        let matrices = arrows
            .iter()
            .map(|&(u, w)| {
                if support[u] && support[w] {
                    Matrix::identity(field, 1)
                } else {
                    Matrix::zeros(field, dims[w], dims[u])
                }
            })
            .collect();
        Self {
            field,
            dims,
            arrows: arrows.to_vec(),
            matrices,
        }
    }

    /// The simple representation at vertex `v`.
    pub fn simple(field: PrimeField, vertex_count: usize, v: usize, arrows: &[(usize, usize)]) -> Self {
        let support: Vec<bool> = (0..vertex_count).map(|k| k == v).collect();
        Self::thin(field, &support, arrows)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.matrices
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }
}

/// `dim Hom(a, b)`: families `f_v : a(v) → b(v)` with
/// `f_w · a(α) = b(α) · f_u` for every arrow `α : u → w`.
///
/// The entries of all `f_v` are the unknowns of one linear system with one
/// equation per entry of each arrow's commutativity condition; the answer is
/// its nullity.
pub fn hom_dim(a: &QuiverRep, b: &QuiverRep) -> Result<usize, CompressionError> {
    if a.field != b.field || a.arrows != b.arrows || a.dims.len() != b.dims.len() {
        return Err(CompressionError::QuiverMismatch);
    }
    let field = a.field;
    // offset of f_v's entries; f_v is b.dims[v] × a.dims[v], row-major
    let mut offsets = Vec::with_capacity(a.dims.len());
    let mut unknowns = 0;
    for v in 0..a.dims.len() {
        offsets.push(unknowns);
        unknowns += a.dims[v] * b.dims[v];
    }
    let equations: usize = a.arrows.iter().map(|&(u, w)| b.dims[w] * a.dims[u]).sum();
    let mut system = Matrix::zeros(field, equations, unknowns);
    let mut eq = 0;
    for (k, &(u, w)) in a.arrows.iter().enumerate() {
        let (am, bm) = (&a.matrices[k], &b.matrices[k]);
        for r in 0..b.dims[w] {
            for c in 0..a.dims[u] {
                // (f_w · a(α))[r, c] = Σ_j f_w[r, j] · a(α)[j, c]
                for j in 0..a.dims[w] {
                    let col = offsets[w] + r * a.dims[w] + j;
                    let val = field.add(system.get(eq, col), am.get(j, c));
                    system.set(eq, col, val);
                }
                // − (b(α) · f_u)[r, c] = − Σ_j b(α)[r, j] · f_u[j, c]
                for j in 0..b.dims[u] {
                    let col = offsets[u] + j * a.dims[u] + c;
                    let val = field.sub(system.get(eq, col), bm.get(r, j));
                    system.set(eq, col, val);
                }
                eq += 1;
            }
        }
    }
    Ok(unknowns - system.rank())
}

/// Restriction of `module` to `vertices`, with `table`'s path map as the
/// matrix on each listed arrow.
pub fn restrict(
    module: &PersistenceModule,
    table: &PathMapTable,
    vertices: &[Vertex],
    arrows: &[(Vertex, Vertex)],
) -> Result<QuiverRep, CompressionError> {
    let position = |v: Vertex| vertices.iter().position(|&x| x == v);
    let mut index_arrows = Vec::with_capacity(arrows.len());
    let mut matrices = Vec::with_capacity(arrows.len());
    for &(s, t) in arrows {
        let (Some(u), Some(w)) = (position(s), position(t)) else {
            return Err(CompressionError::BadArrow(s, t));
        };
        let m = table.get(s, t).ok_or(CompressionError::BadArrow(s, t))?;
        index_arrows.push((u, w));
        matrices.push(m.clone());
    }
    let dims = vertices
        .iter()
        .map(|&v| {
            if module.grid().contains(v) {
                Ok(module.dim(v))
            } else {
                Err(CompressionError::BadArrow(v, v))
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    QuiverRep::new(module.field(), dims, index_arrows, matrices)
}

/// The middle and end terms `(B, C)` of the almost split sequence starting at
/// the compressed interval, for the two-sources-two-sinks shape.
///
/// Vertex order is `(s2, t2, s1, t1)`. `B` has dimensions `(1, 1, 2, 1)` with
/// maps `[1]`, `[1 0]` and `[0 1]`; `C` is simple at `s1`.
pub fn almost_split_fixtures(shape: &SsShape, field: PrimeField) -> Result<(QuiverRep, QuiverRep), CompressionError> {
    if !matches!(shape, SsShape::TwoSourcesTwoSinks { .. }) {
        return Err(CompressionError::NoFixture);
    }
    let arrows = shape.arrows();
    let b = QuiverRep::new(
        field,
        vec![1, 1, 2, 1],
        arrows.clone(),
        vec![
            Matrix::identity(field, 1),
            Matrix::from_rows(field, &[[1, 0]])?,
            Matrix::from_rows(field, &[[0, 1]])?,
        ],
    )?;
    let c = QuiverRep::simple(field, 4, 2, &arrows);
    Ok((b, c))
}

/// `δ̄^ss_M(I)` computed from Hom dimensions instead of rank formulas.
///
/// Rectangles and the one-sided shapes use `dim Hom(I', M') − dim Hom(I'/soc I', M')`
/// or its dual `dim Hom(M', I') − dim Hom(M', rad I')`; the two-sources-two-sinks
/// shape uses `dim Hom(I', M') − dim Hom(B, M') + dim Hom(C, M')` with the
/// almost split fixtures.
pub fn ss_multiplicity_via_hom(
    module: &PersistenceModule,
    table: &PathMapTable,
    interval: &Interval,
) -> Result<usize, CompressionError> {
    let shape = classify_ss(interval)?;
    if !interval.fits(module.grid()) {
        return Err(CompressionError::IntervalOutOfBounds(interval.to_string()));
    }
    let field = module.field();
    let vertices = shape.vertices();
    let arrows = shape.arrows();
    let grid_arrows: Vec<(Vertex, Vertex)> = arrows.iter().map(|&(u, w)| (vertices[u], vertices[w])).collect();
    let compressed = restrict(module, table, &vertices, &grid_arrows)?;
    let full = QuiverRep::thin(field, &vec![true; vertices.len()], &arrows);
    let thin_on = |members: &[usize]| {
        let support: Vec<bool> = (0..vertices.len()).map(|k| members.contains(&k)).collect();
        QuiverRep::thin(field, &support, &arrows)
    };
    let value: isize = match shape {
        SsShape::Point(_) => hom_dim(&full, &compressed)? as isize,
        SsShape::Arrow { .. } => hom_dim(&full, &compressed)? as isize - hom_dim(&thin_on(&[0]), &compressed)? as isize,
        // sources at positions 0 and 1, socle at 2
        SsShape::TwoSourcesOneSink { .. } => {
            hom_dim(&full, &compressed)? as isize - hom_dim(&thin_on(&[0, 1]), &compressed)? as isize
        }
        // radical at the sinks, positions 1 and 2
        SsShape::OneSourceTwoSinks { .. } => {
            hom_dim(&compressed, &full)? as isize - hom_dim(&compressed, &thin_on(&[1, 2]))? as isize
        }
        SsShape::TwoSourcesTwoSinks { .. } => {
            let (b, c) = almost_split_fixtures(&shape, field)?;
            hom_dim(&full, &compressed)? as isize - hom_dim(&b, &compressed)? as isize
                + hom_dim(&c, &compressed)? as isize
        }
    };
    Ok(usize::try_from(value).expect("multiplicities are nonnegative"))
}
