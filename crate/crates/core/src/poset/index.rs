use std::collections::HashMap;

use super::{enumerate_intervals, Interval};
use crate::grid::Grid;

/// `I_{m,n}` materialized in canonical order with a reverse index.
#[derive(Clone, Debug)]
pub struct IntervalPoset {
    grid: Grid,
    intervals: Vec<Interval>,
    positions: HashMap<Interval, usize>,
}

impl IntervalPoset {
    pub fn new(grid: Grid) -> Self {
        let intervals = enumerate_intervals(grid);
        let positions = intervals.iter().enumerate().map(|(k, i)| (i.clone(), k)).collect();
        Self {
            grid,
            intervals,
            positions,
        }
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn get(&self, k: usize) -> &Interval {
        &self.intervals[k]
    }

    /// Canonical position of `interval`, if it belongs to this poset.
    pub fn position(&self, interval: &Interval) -> Option<usize> {
        self.positions.get(interval).copied()
    }

    /// `U(I)`: every interval containing `interval`, in canonical order.
    pub fn upper_set<'a>(&'a self, interval: &'a Interval) -> impl Iterator<Item = &'a Interval> + 'a {
        self.intervals.iter().filter(move |j| interval.leq(j))
    }
}
