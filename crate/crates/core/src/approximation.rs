//! The signed interval-decomposable approximation `δ̃M`: Möbius inversion of
//! the ss-compressed multiplicities, read as a formal integer combination of
//! interval modules.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::compression::{compressed_multiplicity_function, CompressionError};
use crate::grid::{Grid, PersistenceModule, Vertex, VertexMap};
use crate::mobius::{mobius_invert, IntervalFunction, MobiusError};
use crate::poset::{interval_contains_rectangle, Interval, IntervalPoset, PosetError};

/// Header line of the serialized form.
pub const APPROX_HEADER: &str = "APPROX ss";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ApproxError {
    #[error(transparent)]
    Compression(#[from] CompressionError),
    #[error(transparent)]
    Mobius(#[from] MobiusError),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error("interval {0} does not fit in the grid")]
    OutOfGrid(String),
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

/// `Σ c_I ⟨V_I⟩` with every stored coefficient nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedIntervalSum {
    grid: Grid,
    terms: BTreeMap<Interval, i64>,
}

impl SignedIntervalSum {
    pub fn new(grid: Grid) -> Self {
        Self {
            grid,
            terms: BTreeMap::new(),
        }
    }

    /// Adds `coefficient · ⟨V_I⟩`, dropping the term if it cancels.
    pub fn add_term(&mut self, interval: Interval, coefficient: i64) -> Result<(), ApproxError> {
        if !interval.fits(self.grid) {
            return Err(ApproxError::OutOfGrid(interval.to_string()));
        }
        match self.terms.entry(interval) {
            Entry::Vacant(e) => {
                if coefficient != 0 {
                    e.insert(coefficient);
                }
            }
            Entry::Occupied(mut e) => {
                let total = e.get().checked_add(coefficient).ok_or(MobiusError::Overflow)?;
                if total == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = total;
                }
            }
        }
        Ok(())
    }

    pub fn from_function(f: &IntervalFunction) -> Self {
        Self {
            grid: f.grid(),
            terms: f.nonzero().map(|(i, v)| (i.clone(), v)).collect(),
        }
    }

    /// Rebuilds a sum from its positive and negative parts.
    pub fn from_parts(
        grid: Grid,
        positive: &BTreeMap<Interval, u64>,
        negative: &BTreeMap<Interval, u64>,
    ) -> Result<Self, ApproxError> {
        let mut sum = Self::new(grid);
        for (i, &c) in positive {
            sum.add_term(i.clone(), i64::try_from(c).map_err(|_| MobiusError::Overflow)?)?;
        }
        for (i, &c) in negative {
            sum.add_term(i.clone(), -i64::try_from(c).map_err(|_| MobiusError::Overflow)?)?;
        }
        Ok(sum)
    }

    /// Dense form over the whole poset.
    pub fn to_function(&self, poset: Arc<IntervalPoset>) -> Result<IntervalFunction, ApproxError> {
        let mut f = IntervalFunction::zeros(poset);
        for (i, &c) in &self.terms {
            f.set(i, c)?;
        }
        Ok(f)
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    /// Nonzero terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Interval, i64)> + '_ {
        self.terms.iter().map(|(i, &c)| (i, c))
    }

    pub fn coefficient(&self, interval: &Interval) -> i64 {
        self.terms.get(interval).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Intervals with positive coefficient, with multiplicity.
    pub fn positive_part(&self) -> BTreeMap<Interval, u64> {
        self.terms
            .iter()
            .filter(|(_, &c)| c > 0)
            .map(|(i, &c)| (i.clone(), c.unsigned_abs()))
            .collect()
    }

    /// Intervals with negative coefficient, with multiplicity `|c|`.
    pub fn negative_part(&self) -> BTreeMap<Interval, u64> {
        self.terms
            .iter()
            .filter(|(_, &c)| c < 0)
            .map(|(i, &c)| (i.clone(), c.unsigned_abs()))
            .collect()
    }

    /// `Σ c_I · dim V_I`, vertexwise.
    pub fn dimvec(&self) -> VertexMap<i64> {
        let mut out = VertexMap::filled(self.grid, 0i64);
        for (i, &c) in &self.terms {
            for v in i.vertices() {
                out[v] += c;
            }
        }
        out
    }

    /// `Σ c_I · rank V_I(src → dst)`: the signed count of intervals containing
    /// the rectangle `[src, dst]`.
    pub fn rank(&self, src: Vertex, dst: Vertex) -> Result<i64, ApproxError> {
        let mut total = 0i64;
        for (i, &c) in &self.terms {
            if interval_contains_rectangle(i, src, dst)? {
                total += c;
            }
        }
        Ok(total)
    }

    /// Reads the serialized form: header line, then `<coeff> <interval>`
    /// lines. Blank lines and `#` comments are skipped.
    pub fn parse(grid: Grid, text: &str) -> Result<Self, ApproxError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        match lines.next() {
            Some((_, l)) if l == APPROX_HEADER => {}
            Some((line, _)) => {
                return Err(ApproxError::Parse {
                    line,
                    reason: format!("expected `{APPROX_HEADER}`"),
                })
            }
            None => {
                return Err(ApproxError::Parse {
                    line: 1,
                    reason: "empty input".into(),
                })
            }
        }
        let mut sum = Self::new(grid);
        for (line, l) in lines {
            let err = |reason: String| ApproxError::Parse { line, reason };
            let (c, i) = l
                .split_once(' ')
                .ok_or_else(|| err("expected `<coeff> <interval>`".into()))?;
            let c: i64 = c.parse().map_err(|_| err(format!("bad coefficient {c:?}")))?;
            let i: Interval = i.trim().parse().map_err(|e| err(format!("{e}")))?;
            sum.add_term(i, c).map_err(|e| err(e.to_string()))?;
        }
        Ok(sum)
    }
}

/// Header line, then one `<coeff> <interval>` line per term in canonical order.
impl fmt::Display for SignedIntervalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{APPROX_HEADER}")?;
        for (i, c) in self.terms() {
            writeln!(f, "{c} {i}")?;
        }
        Ok(())
    }
}

/// `δ̃^ss_M` as a function on the whole poset.
pub fn approximation_function(
    module: &PersistenceModule,
    poset: &Arc<IntervalPoset>,
) -> Result<IntervalFunction, ApproxError> {
    let dbar = compressed_multiplicity_function(module, poset)?;
    Ok(mobius_invert(&dbar)?)
}

/// `δ̃^ss M` with zero coefficients dropped.
pub fn interval_approximation(
    module: &PersistenceModule,
    poset: &Arc<IntervalPoset>,
) -> Result<SignedIntervalSum, ApproxError> {
    Ok(SignedIntervalSum::from_function(&approximation_function(
        module, poset,
    )?))
}

/// The multiplicities of interval summands of an interval-decomposable module,
/// given its compressed multiplicity function. Same computation as
/// [`mobius_invert`].
pub fn recover_multiplicities(f: &IntervalFunction) -> Result<IntervalFunction, MobiusError> {
    mobius_invert(f)
}

/// `Σ_I |f(I)|`.
pub fn l1_norm(f: &IntervalFunction) -> Result<u64, MobiusError> {
    f.l1_norm()
}
