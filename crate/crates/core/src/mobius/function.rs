use std::fmt;
use std::sync::Arc;

use super::MobiusError;
use crate::grid::Grid;
use crate::poset::{Interval, IntervalPoset};

/// An integer for every interval of a grid, stored in canonical order.
#[derive(Clone, Debug)]
pub struct IntervalFunction {
    poset: Arc<IntervalPoset>,
    values: Vec<i64>,
}

impl PartialEq for IntervalFunction {
    fn eq(&self, other: &Self) -> bool {
        self.poset.grid() == other.poset.grid() && self.values == other.values
    }
}

impl Eq for IntervalFunction {}

impl IntervalFunction {
    pub fn new(poset: Arc<IntervalPoset>, values: Vec<i64>) -> Result<Self, MobiusError> {
        if values.len() != poset.len() {
            return Err(MobiusError::Length {
                expected: poset.len(),
                actual: values.len(),
            });
        }
        Ok(Self { poset, values })
    }

    pub fn zeros(poset: Arc<IntervalPoset>) -> Self {
        let values = vec![0; poset.len()];
        Self { poset, values }
    }

    pub fn from_fn(poset: Arc<IntervalPoset>, f: impl FnMut(&Interval) -> i64) -> Self {
        let values = poset.intervals().iter().map(f).collect();
        Self { poset, values }
    }

    pub fn poset(&self) -> &Arc<IntervalPoset> {
        &self.poset
    }

    pub fn grid(&self) -> Grid {
        self.poset.grid()
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// Value at canonical position `k`.
    #[inline]
    pub fn value_at(&self, k: usize) -> i64 {
        self.values[k]
    }

    pub fn get(&self, interval: &Interval) -> Option<i64> {
        self.poset.position(interval).map(|k| self.values[k])
    }

    pub fn set(&mut self, interval: &Interval, value: i64) -> Result<(), MobiusError> {
        let k = self
            .poset
            .position(interval)
            .ok_or_else(|| MobiusError::UnknownInterval(interval.to_string()))?;
        self.values[k] = value;
        Ok(())
    }

    /// `(interval, value)` pairs in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (&Interval, i64)> + '_ {
        self.poset.intervals().iter().zip(self.values.iter().copied())
    }

    /// Nonzero entries in canonical order.
    pub fn nonzero(&self) -> impl Iterator<Item = (&Interval, i64)> + '_ {
        self.iter().filter(|&(_, v)| v != 0)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// Pointwise sum.
    pub fn checked_add(&self, other: &IntervalFunction) -> Result<IntervalFunction, MobiusError> {
        if self.grid() != other.grid() {
            return Err(MobiusError::PosetMismatch);
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.checked_add(*b).ok_or(MobiusError::Overflow))
            .collect::<Result<_, _>>()?;
        Ok(Self {
            poset: Arc::clone(&self.poset),
            values,
        })
    }

    /// `Σ |f(I)|`.
    pub fn l1_norm(&self) -> Result<u64, MobiusError> {
        self.values.iter().try_fold(0u64, |acc, v| {
            acc.checked_add(v.unsigned_abs()).ok_or(MobiusError::Overflow)
        })
    }

    /// Reads the `<value> <interval>` line format. Blank lines and lines
    /// starting with `#` are skipped; intervals not listed are zero.
    pub fn parse(poset: Arc<IntervalPoset>, text: &str) -> Result<Self, MobiusError> {
        let mut f = Self::zeros(poset);
        for (k, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |reason: String| MobiusError::Parse { line: k + 1, reason };
            let (value, interval) = line
                .split_once(' ')
                .ok_or_else(|| err("expected `<value> <interval>`".into()))?;
            let value: i64 = value.parse().map_err(|_| err(format!("bad value {value:?}")))?;
            let interval: Interval = interval.trim().parse().map_err(|e| err(format!("{e}")))?;
            f.set(&interval, value).map_err(|e| err(e.to_string()))?;
        }
        Ok(f)
    }
}

/// One `<value> <interval>` line per nonzero value, canonical order.
impl fmt::Display for IntervalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (interval, value) in self.nonzero() {
            writeln!(f, "{value} {interval}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip_skips_zeros() {
        let p = Arc::new(IntervalPoset::new(Grid::new(2, 2).unwrap()));
        let mut f = IntervalFunction::zeros(Arc::clone(&p));
        f.set(&"1..2:[2,2];[1,2]".parse().unwrap(), -3).unwrap();
        f.set(&"1..1:[1,1]".parse().unwrap(), 2).unwrap();
        let text = f.to_string();
        assert_eq!(text, "2 1..1:[1,1]\n-3 1..2:[2,2];[1,2]\n");
        assert_eq!(IntervalFunction::parse(p.clone(), &text).unwrap(), f);
        assert!(IntervalFunction::parse(p, "1 1..1:[1,5]").is_err());
    }
}
