use std::fmt;
use std::str::FromStr;

use super::{PosetError, VertexSet};
use crate::grid::{Grid, Vertex};

/// A nonempty interval subquiver `[b_s, d_s]_s ⊔ … ⊔ [b_t, d_t]_t`.
///
/// Row `i` occupies columns `b_i..=d_i` and consecutive rows satisfy the
/// staircase condition `b_{i+1} ≤ b_i ≤ d_{i+1} ≤ d_i`: moving up, the rows
/// shift weakly to the left while still overlapping.
///
/// The derived order compares `(s, t, rows)` lexicographically; it is the
/// canonical total order used for every listing and output file.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Interval {
    s: usize,
    t: usize,
    rows: Vec<(usize, usize)>,
}

impl Interval {
    /// `rows[k]` is the column range of row `s + k`.
    pub fn new(s: usize, rows: Vec<(usize, usize)>) -> Result<Self, PosetError> {
        if rows.is_empty() {
            return Err(PosetError::NotAnInterval("no rows".into()));
        }
        if s == 0 {
            return Err(PosetError::NotAnInterval("rows are numbered from 1".into()));
        }
        for &(b, d) in &rows {
            if b == 0 || b > d {
                return Err(PosetError::NotAnInterval(format!("bad row range [{b},{d}]")));
            }
        }
        for (k, w) in rows.windows(2).enumerate() {
            let ((b_lo, d_lo), (b_hi, d_hi)) = (w[0], w[1]);
            if !(b_hi <= b_lo && b_lo <= d_hi && d_hi <= d_lo) {
                return Err(PosetError::NotAnInterval(format!(
                    "rows {} and {} break the staircase condition",
                    s + k,
                    s + k + 1
                )));
            }
        }
        let t = s + rows.len() - 1;
        Ok(Self { s, t, rows })
    }

    pub fn single(v: Vertex) -> Self {
        Self {
            s: v.row,
            t: v.row,
            rows: vec![(v.col, v.col)],
        }
    }

    /// Parses the indicator ("dimension vector") notation: one string of
    /// `0`/`1` per row, top row first, rows separated by `/`; whitespace is
    /// ignored. `"110/011"` is the interval on `(2,1), (2,2), (1,2), (1,3)`.
    pub fn from_indicator(text: &str) -> Result<Self, PosetError> {
        let err = |reason: &str| PosetError::Parse {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let lines: Vec<Vec<bool>> = text
            .split('/')
            .map(|row| {
                row.chars()
                    .filter(|c| !c.is_whitespace())
                    .map(|c| match c {
                        '0' => Ok(false),
                        '1' => Ok(true),
                        _ => Err(err("expected 0 or 1")),
                    })
                    .collect()
            })
            .collect::<Result<_, _>>()?;
        let m = lines.len();
        let mut set = VertexSet::new();
        for (k, line) in lines.iter().enumerate() {
            let row = m - k;
            for (c, &on) in line.iter().enumerate() {
                if on {
                    set.insert(Vertex::new(row, c + 1));
                }
            }
        }
        Self::from_vertex_set(&set).ok_or_else(|| err("not an interval"))
    }

    /// The staircase with exactly these vertices, if the set is one.
    pub fn from_vertex_set(set: &VertexSet) -> Option<Self> {
        let first = set.first()?;
        let s = first.row;
        let mut rows: Vec<(usize, usize)> = Vec::new();
        let mut expected_row = s;
        let mut iter = set.iter().peekable();
        while let Some(&v) = iter.next() {
            if v.row != expected_row {
                return None;
            }
            let (b, mut d) = (v.col, v.col);
            while let Some(&&w) = iter.peek() {
                if w.row != v.row {
                    break;
                }
                if w.col != d + 1 {
                    return None;
                }
                d = w.col;
                iter.next();
            }
            rows.push((b, d));
            expected_row += 1;
        }
        Self::new(s, rows).ok()
    }

    /// Lowest occupied row.
    #[inline]
    pub fn s(&self) -> usize {
        self.s
    }

    /// Highest occupied row.
    #[inline]
    pub fn t(&self) -> usize {
        self.t
    }

    /// Column range of `row`, if occupied.
    #[inline]
    pub fn row(&self, row: usize) -> Option<(usize, usize)> {
        if row < self.s || row > self.t {
            None
        } else {
            Some(self.rows[row - self.s])
        }
    }

    /// `(row, b, d)` for every occupied row, bottom first.
    pub fn rows(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.rows.iter().enumerate().map(move |(k, &(b, d))| (self.s + k, b, d))
    }

    pub(crate) fn row_ranges(&self) -> &[(usize, usize)] {
        &self.rows
    }

    #[inline]
    pub fn contains(&self, v: Vertex) -> bool {
        self.row(v.row).is_some_and(|(b, d)| b <= v.col && v.col <= d)
    }

    /// Number of vertices.
    pub fn size(&self) -> usize {
        self.rows.iter().map(|&(b, d)| d - b + 1).sum()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.rows()
            .flat_map(|(r, b, d)| (b..=d).map(move |c| Vertex::new(r, c)))
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices().collect()
    }

    pub fn fits(&self, grid: Grid) -> bool {
        self.t <= grid.m() && self.rows.iter().all(|&(_, d)| d <= grid.n())
    }

    /// Inclusion order.
    pub fn leq(&self, other: &Interval) -> bool {
        other.s <= self.s
            && self.t <= other.t
            && self.rows().all(|(r, b, d)| {
                let (ob, od) = other.row(r).expect("row range checked");
                ob <= b && d <= od
            })
    }

    /// The unique source (lower-left) and sink (upper-right) when the interval
    /// is a rectangle.
    pub fn as_rectangle(&self) -> Option<(Vertex, Vertex)> {
        let (b, d) = self.rows[0];
        if self.rows.iter().all(|&r| r == (b, d)) {
            Some((Vertex::new(self.s, b), Vertex::new(self.t, d)))
        } else {
            None
        }
    }
}

/// `s..t:[b_s,d_s];...;[b_t,d_t]`, rows bottom to top.
impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}:", self.s, self.t)?;
        for (k, (b, d)) in self.rows.iter().enumerate() {
            if k > 0 {
                write!(f, ";")?;
            }
            write!(f, "[{b},{d}]")?;
        }
        Ok(())
    }
}

impl FromStr for Interval {
    type Err = PosetError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| PosetError::Parse {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let (span, rows) = text.split_once(':').ok_or_else(|| err("missing ':'"))?;
        let (s, t) = span.split_once("..").ok_or_else(|| err("missing '..'"))?;
        let s: usize = s.parse().map_err(|_| err("bad lowest row"))?;
        let t: usize = t.parse().map_err(|_| err("bad highest row"))?;
        let rows = rows
            .split(';')
            .map(|r| {
                let inner = r
                    .strip_prefix('[')
                    .and_then(|r| r.strip_suffix(']'))
                    .ok_or_else(|| err("row must look like [b,d]"))?;
                let (b, d) = inner.split_once(',').ok_or_else(|| err("row must look like [b,d]"))?;
                let b = b.parse().map_err(|_| err("bad column"))?;
                let d = d.parse().map_err(|_| err("bad column"))?;
                Ok((b, d))
            })
            .collect::<Result<Vec<_>, PosetError>>()?;
        if t < s || rows.len() != t - s + 1 {
            return Err(err("row count does not match s..t"));
        }
        Interval::new(s, rows)
    }
}
