//! Integer functions on the interval poset, Möbius inversion by cover-subset
//! joins, the zeta action, and a brute-force Möbius function for checking.

mod function;

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::grid::Grid;
use crate::poset::{covers, join_covers_unchecked, CornerCovers, Interval, IntervalPoset};

pub use function::IntervalFunction;

/// Largest poset [`brute_force_mobius`] accepts.
pub const BRUTE_FORCE_LIMIT: usize = 5000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MobiusError {
    #[error("integer overflow while combining interval function values")]
    Overflow,
    #[error("functions are defined on different interval posets")]
    PosetMismatch,
    #[error("expected {expected} values, got {actual}")]
    Length { expected: usize, actual: usize },
    #[error("{0} is not an interval of this grid")]
    UnknownInterval(String),
    #[error("{below} is not contained in {above}")]
    NotBelow { below: String, above: String },
    #[error("poset has {0} elements, more than the brute-force limit")]
    TooLarge(usize),
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

/// Every `⋁S` over `base` for nonempty `S ⊆ Cov(base)`, with the sign
/// `(−1)^{#S}`.
fn signed_cover_joins(base: &Interval, grid: Grid) -> Vec<(i64, Interval)> {
    let cov = covers(base, grid);
    let corners = CornerCovers::of(base, grid);
    let mut out = Vec::with_capacity((1usize << cov.len()).saturating_sub(1));
    let mut members = Vec::with_capacity(cov.len());
    for mask in 1u32..(1u32 << cov.len()) {
        members.clear();
        members.extend(
            cov.iter()
                .enumerate()
                .filter(|(k, _)| mask & (1 << k) != 0)
                .map(|(_, c)| c.clone()),
        );
        let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
        out.push((sign, join_covers_unchecked(base, &members, &corners)));
    }
    out
}

/// `μ′([I, J])`: 1 when `I = J`, otherwise the signed count of nonempty cover
/// subsets of `I` whose join is `J`.
pub fn mu_prime(i: &Interval, j: &Interval, grid: Grid) -> Result<i64, MobiusError> {
    if !i.leq(j) {
        return Err(MobiusError::NotBelow {
            below: i.to_string(),
            above: j.to_string(),
        });
    }
    if !j.fits(grid) {
        return Err(MobiusError::UnknownInterval(j.to_string()));
    }
    if i == j {
        return Ok(1);
    }
    Ok(signed_cover_joins(i, grid)
        .into_iter()
        .filter(|(_, join)| join == j)
        .map(|(sign, _)| sign)
        .sum())
}

/// `g(I) = f(I) + Σ_{∅≠S⊆Cov(I)} (−1)^{#S} f(⋁S)`.
pub fn mobius_invert(f: &IntervalFunction) -> Result<IntervalFunction, MobiusError> {
    let poset = f.poset();
    let grid = poset.grid();
    let values = poset
        .intervals()
        .par_iter()
        .enumerate()
        .map(|(k, base)| {
            signed_cover_joins(base, grid)
                .into_iter()
                .try_fold(f.value_at(k), |acc, (sign, join)| {
                    let pos = poset.position(&join).expect("joins stay inside the grid");
                    sign.checked_mul(f.value_at(pos))
                        .and_then(|term| acc.checked_add(term))
                        .ok_or(MobiusError::Overflow)
                })
        })
        .collect::<Result<Vec<i64>, MobiusError>>()?;
    IntervalFunction::new(Arc::clone(poset), values)
}

/// `f(I) = Σ_{J ≥ I} g(J)`.
pub fn zeta_act(g: &IntervalFunction) -> Result<IntervalFunction, MobiusError> {
    let poset = g.poset();
    let values = poset
        .intervals()
        .par_iter()
        .map(|i| {
            poset
                .intervals()
                .iter()
                .enumerate()
                .filter(|(_, j)| i.leq(j))
                .try_fold(0i64, |acc, (k, _)| {
                    acc.checked_add(g.value_at(k)).ok_or(MobiusError::Overflow)
                })
        })
        .collect::<Result<Vec<i64>, MobiusError>>()?;
    IntervalFunction::new(Arc::clone(poset), values)
}

/// The Möbius function on every segment `[I, J]` of a poset.
#[derive(Clone, Debug)]
pub struct SegmentFunction {
    poset: Arc<IntervalPoset>,
    values: HashMap<(usize, usize), i64>,
}

impl SegmentFunction {
    pub fn poset(&self) -> &Arc<IntervalPoset> {
        &self.poset
    }

    /// The value on `[i, j]`, or `None` when `i ≰ j` or either is unknown.
    pub fn get(&self, i: &Interval, j: &Interval) -> Option<i64> {
        let a = self.poset.position(i)?;
        let b = self.poset.position(j)?;
        self.values.get(&(a, b)).copied()
    }

    /// `((I, J), μ([I, J]))` for every segment, by canonical positions.
    pub fn iter(&self) -> impl Iterator<Item = ((&Interval, &Interval), i64)> + '_ {
        self.values
            .iter()
            .map(|(&(a, b), &v)| ((self.poset.get(a), self.poset.get(b)), v))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// `μ` by the defining recursion `μ([I,I]) = 1`,
/// `μ([I,J]) = −Σ_{I ≤ K < J} μ([I,K])`.
pub fn brute_force_mobius(poset: &Arc<IntervalPoset>) -> Result<SegmentFunction, MobiusError> {
    if poset.len() > BRUTE_FORCE_LIMIT {
        return Err(MobiusError::TooLarge(poset.len()));
    }
    let intervals = poset.intervals();
    let rows: Vec<Vec<((usize, usize), i64)>> = (0..intervals.len())
        .into_par_iter()
        .map(|a| {
            let base = &intervals[a];
            // the upper set, ordered so that K < J implies K comes first
            let mut upper: Vec<usize> = (0..intervals.len()).filter(|&b| base.leq(&intervals[b])).collect();
            upper.sort_by_key(|&b| intervals[b].size());
            let mut mu: Vec<i64> = Vec::with_capacity(upper.len());
            for (idx, &b) in upper.iter().enumerate() {
                let value = if b == a {
                    1
                } else {
                    let target = &intervals[b];
                    -upper[..idx]
                        .iter()
                        .zip(&mu)
                        .filter(|(&k, _)| k != b && intervals[k].leq(target))
                        .map(|(_, &m)| m)
                        .sum::<i64>()
                };
                mu.push(value);
            }
            upper.into_iter().zip(mu).map(|(b, m)| ((a, b), m)).collect()
        })
        .collect();
    Ok(SegmentFunction {
        poset: Arc::clone(poset),
        values: rows.into_iter().flatten().collect(),
    })
}
