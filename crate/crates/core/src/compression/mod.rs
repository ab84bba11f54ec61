//! ss-compressed multiplicities for modules over `2 × n` (and `1 × n`) grids.
//!
//! The ss-compression of `M` at an interval `I` restricts `M` to the sources
//! and sinks of `I`, with composed path maps as arrows. Its multiplicity at
//! the compressed interval has a closed form in ranks of path maps, one per
//! source/sink configuration.

mod quiver;

use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::grid::{PathMapTable, PersistenceModule, Vertex};
use crate::linalg::{LinalgError, Matrix};
use crate::mobius::IntervalFunction;
use crate::poset::{Interval, IntervalPoset};

pub use quiver::{almost_split_fixtures, hom_dim, restrict, ss_multiplicity_via_hom, QuiverRep};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompressionError {
    #[error("ss-compression is implemented for grids with at most 2 rows, got {0}")]
    TooTall(usize),
    #[error("interval {0} does not fit in the module's grid")]
    IntervalOutOfBounds(String),
    #[error("interval poset and module live on different grids")]
    GridMismatch,
    #[error("representations are over different quivers or fields")]
    QuiverMismatch,
    #[error("arrow {0} -> {1} is not usable: endpoints outside the vertex set or incomparable")]
    BadArrow(Vertex, Vertex),
    #[error("almost split fixtures exist only for the two-sources-two-sinks shape")]
    NoFixture,
    #[error("{0}-compressed multiplicity is only available for rectangles, not {1}")]
    RectangleOnly(Essential, String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Which essential vertices a compression keeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Essential {
    /// Sources and sinks.
    Ss,
    /// Corner completion of the sources and sinks.
    Cc,
    /// Every vertex.
    Tot,
}

impl std::fmt::Display for Essential {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Essential::Ss => "ss",
            Essential::Cc => "cc",
            Essential::Tot => "tot",
        })
    }
}

/// Source/sink configuration of an interval in a grid with at most two rows.
///
/// `s1`, `t1` lie on row 1 (bottom) and `s2`, `t2` on row 2 (top).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SsShape {
    Point(Vertex),
    /// A rectangle with distinct source and sink.
    Arrow {
        source: Vertex,
        sink: Vertex,
    },
    /// `b2 < b1 ≤ d2 = d1`.
    TwoSourcesOneSink {
        s1: Vertex,
        s2: Vertex,
        t2: Vertex,
    },
    /// `b2 = b1 ≤ d2 < d1`.
    OneSourceTwoSinks {
        s1: Vertex,
        t1: Vertex,
        t2: Vertex,
    },
    /// `b2 < b1 ≤ d2 < d1`.
    TwoSourcesTwoSinks {
        s1: Vertex,
        s2: Vertex,
        t1: Vertex,
        t2: Vertex,
    },
}

impl SsShape {
    /// Vertices of the compressed quiver, in the fixed order used by
    /// [`SsShape::arrows`] and every [`QuiverRep`] built for this shape.
    pub fn vertices(&self) -> Vec<Vertex> {
        match *self {
            SsShape::Point(v) => vec![v],
            SsShape::Arrow { source, sink } => vec![source, sink],
            SsShape::TwoSourcesOneSink { s1, s2, t2 } => vec![s1, s2, t2],
            SsShape::OneSourceTwoSinks { s1, t1, t2 } => vec![s1, t1, t2],
            SsShape::TwoSourcesTwoSinks { s1, s2, t1, t2 } => vec![s2, t2, s1, t1],
        }
    }

    /// Arrows of the compressed quiver as index pairs into [`SsShape::vertices`].
    pub fn arrows(&self) -> Vec<(usize, usize)> {
        match self {
            SsShape::Point(_) => vec![],
            SsShape::Arrow { .. } => vec![(0, 1)],
            SsShape::TwoSourcesOneSink { .. } => vec![(0, 2), (1, 2)],
            SsShape::OneSourceTwoSinks { .. } => vec![(0, 1), (0, 2)],
            SsShape::TwoSourcesTwoSinks { .. } => vec![(0, 1), (2, 1), (2, 3)],
        }
    }
}

/// Which source/sink configuration `interval` has.
pub fn classify_ss(interval: &Interval) -> Result<SsShape, CompressionError> {
    if interval.t() > 2 {
        return Err(CompressionError::TooTall(interval.t()));
    }
    if let Some((source, sink)) = interval.as_rectangle() {
        return Ok(if source == sink {
            SsShape::Point(source)
        } else {
            SsShape::Arrow { source, sink }
        });
    }
    let (b1, d1) = interval.row(1).expect("non-rectangles span both rows");
    let (b2, d2) = interval.row(2).expect("non-rectangles span both rows");
    let s1 = Vertex::new(1, b1);
    let s2 = Vertex::new(2, b2);
    let t1 = Vertex::new(1, d1);
    let t2 = Vertex::new(2, d2);
    Ok(match (b2 < b1, d2 < d1) {
        (true, false) => SsShape::TwoSourcesOneSink { s1, s2, t2 },
        (false, true) => SsShape::OneSourceTwoSinks { s1, t1, t2 },
        (true, true) => SsShape::TwoSourcesTwoSinks { s1, s2, t1, t2 },
        (false, false) => unreachable!("equal rows form a rectangle"),
    })
}

/// Ranks of path maps, either precomputed for every comparable pair or
/// computed on demand.
struct RankCache<'a> {
    table: &'a PathMapTable,
    vc: usize,
    ranks: Option<Vec<usize>>,
}

impl<'a> RankCache<'a> {
    fn new(table: &'a PathMapTable) -> Self {
        let grid = table.grid();
        let vc = grid.vertex_count();
        let pairs: Vec<(Vertex, Vertex)> = grid.comparable_pairs().collect();
        let computed: Vec<usize> = pairs
            .par_iter()
            .map(|&(s, t)| table.get(s, t).expect("comparable").rank())
            .collect();
        let mut ranks = vec![0; vc * vc];
        for (&(s, t), r) in pairs.iter().zip(computed) {
            ranks[grid.index(s) * vc + grid.index(t)] = r;
        }
        Self {
            table,
            vc,
            ranks: Some(ranks),
        }
    }

    fn on_demand(table: &'a PathMapTable) -> Self {
        Self {
            table,
            vc: table.grid().vertex_count(),
            ranks: None,
        }
    }

    fn rank(&self, s: Vertex, t: Vertex) -> usize {
        let grid = self.table.grid();
        match &self.ranks {
            Some(r) => r[grid.index(s) * self.vc + grid.index(t)],
            None => self.map(s, t).rank(),
        }
    }

    fn map(&self, s: Vertex, t: Vertex) -> &Matrix {
        self.table.get(s, t).expect("comparable pair inside the grid")
    }
}

fn multiplicity_for_shape(
    module: &PersistenceModule,
    cache: &RankCache<'_>,
    shape: SsShape,
) -> Result<usize, LinalgError> {
    Ok(match shape {
        SsShape::Point(v) => module.dim(v),
        SsShape::Arrow { source, sink } => cache.rank(source, sink),
        SsShape::TwoSourcesOneSink { s1, s2, t2 } => {
            let joint = cache.map(s2, t2).hstack(cache.map(s1, t2))?.rank();
            cache.rank(s2, t2) + cache.rank(s1, t2) - joint
        }
        SsShape::OneSourceTwoSinks { s1, t1, t2 } => {
            let joint = cache.map(s1, t2).vstack(cache.map(s1, t1))?.rank();
            cache.rank(s1, t2) + cache.rank(s1, t1) - joint
        }
        SsShape::TwoSourcesTwoSinks { s1, s2, t1, t2 } => {
            let block = Matrix::block2x2(
                Some(cache.map(s2, t2)),
                Some(cache.map(s1, t2)),
                None,
                Some(cache.map(s1, t1)),
            )?
            .rank();
            let vert = cache.map(s1, t2).vstack(cache.map(s1, t1))?.rank();
            let horiz = cache.map(s2, t2).hstack(cache.map(s1, t2))?.rank();
            block + cache.rank(s1, t2) - vert - horiz
        }
    })
}

fn check_fits(module: &PersistenceModule, interval: &Interval) -> Result<(), CompressionError> {
    let grid = module.grid();
    if grid.m() > 2 {
        return Err(CompressionError::TooTall(grid.m()));
    }
    if !interval.fits(grid) {
        return Err(CompressionError::IntervalOutOfBounds(interval.to_string()));
    }
    Ok(())
}

/// `δ̄^ss_M(I)` by the closed-form rank formulas.
pub fn ss_compressed_multiplicity(
    module: &PersistenceModule,
    table: &PathMapTable,
    interval: &Interval,
) -> Result<usize, CompressionError> {
    check_fits(module, interval)?;
    if table.grid() != module.grid() {
        return Err(CompressionError::GridMismatch);
    }
    let shape = classify_ss(interval)?;
    let cache = RankCache::on_demand(table);
    Ok(multiplicity_for_shape(module, &cache, shape)?)
}

/// `δ̄^e_M(I)` for any choice of essential vertices.
///
/// On a rectangle all three compressions give `rank M(src → sink)`, on any
/// grid. Otherwise only `Ss` is computed, on grids with at most two rows.
pub fn compressed_multiplicity(
    module: &PersistenceModule,
    table: &PathMapTable,
    interval: &Interval,
    essential: Essential,
) -> Result<usize, CompressionError> {
    if table.grid() != module.grid() {
        return Err(CompressionError::GridMismatch);
    }
    if !interval.fits(module.grid()) {
        return Err(CompressionError::IntervalOutOfBounds(interval.to_string()));
    }
    match (interval.as_rectangle(), essential) {
        (Some((src, sink)), _) => Ok(table.get(src, sink).expect("rectangle corners are comparable").rank()),
        (None, Essential::Ss) => ss_compressed_multiplicity(module, table, interval),
        (None, e) => Err(CompressionError::RectangleOnly(e, interval.to_string())),
    }
}

/// `δ̄^ss_M` on every interval of `poset`, using a prebuilt path table.
///
/// Intervals are evaluated in parallel on the current rayon pool; results are
/// stored by canonical position.
pub fn compressed_multiplicity_with_table(
    module: &PersistenceModule,
    table: &PathMapTable,
    poset: &Arc<IntervalPoset>,
) -> Result<IntervalFunction, CompressionError> {
    let grid = module.grid();
    if grid.m() > 2 {
        return Err(CompressionError::TooTall(grid.m()));
    }
    if poset.grid() != grid || table.grid() != grid {
        return Err(CompressionError::GridMismatch);
    }
    let cache = RankCache::new(table);
    let values = poset
        .intervals()
        .par_iter()
        .map(|interval| {
            let shape = classify_ss(interval)?;
            let value = multiplicity_for_shape(module, &cache, shape)?;
            Ok(i64::try_from(value).expect("multiplicity fits in i64"))
        })
        .collect::<Result<Vec<i64>, CompressionError>>()?;
    Ok(IntervalFunction::new(Arc::clone(poset), values).expect("one value per interval"))
}

/// `δ̄^ss_M` on every interval of the module's grid.
pub fn compressed_multiplicity_function(
    module: &PersistenceModule,
    poset: &Arc<IntervalPoset>,
) -> Result<IntervalFunction, CompressionError> {
    let table = module.path_map_table();
    compressed_multiplicity_with_table(module, &table, poset)
}

/// Number of block or stacked matrices whose rank the closed form needs on
/// top of the ranks of single path maps.
pub fn stacked_rank_count(shape: &SsShape) -> usize {
    match shape {
        SsShape::Point(_) | SsShape::Arrow { .. } => 0,
        SsShape::TwoSourcesOneSink { .. } | SsShape::OneSourceTwoSinks { .. } => 1,
        SsShape::TwoSourcesTwoSinks { .. } => 3,
    }
}
