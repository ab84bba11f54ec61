use std::collections::VecDeque;

use super::{Interval, PosetError, VertexSet};
use crate::grid::{Grid, Vertex};

/// Every interval of `grid`, in canonical order.
pub fn enumerate_intervals(grid: Grid) -> Vec<Interval> {
    fn extend(s: usize, t: usize, rows: &mut Vec<(usize, usize)>, out: &mut Vec<Interval>) {
        let current = s + rows.len() - 1;
        if current == t {
            out.push(Interval::new(s, rows.clone()).expect("generated staircase is valid"));
            return;
        }
        let (b, d) = *rows.last().expect("at least one row");
        for nb in 1..=b {
            for nd in b..=d {
                rows.push((nb, nd));
                extend(s, t, rows, out);
                rows.pop();
            }
        }
    }

    let mut out = Vec::new();
    for s in 1..=grid.m() {
        for t in s..=grid.m() {
            for b in 1..=grid.n() {
                for d in b..=grid.n() {
                    let mut rows = vec![(b, d)];
                    extend(s, t, &mut rows, &mut out);
                }
            }
        }
    }
    out.sort();
    out
}

/// `n(n+1)(n²+5n+30)/24`, the number of intervals in a `2 × n` grid.
pub fn count_intervals_two_rows(n: u64) -> u64 {
    n * (n + 1) * (n * n + 5 * n + 30) / 24
}

/// The four covers that need special care when taking joins. Each is `None`
/// when the corresponding candidate is not a valid interval of the grid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CornerCovers {
    /// Top row extended one step left.
    pub top_left: Option<Interval>,
    /// One vertex added above the upper-left vertex.
    pub top: Option<Interval>,
    /// Bottom row extended one step right.
    pub bottom_right: Option<Interval>,
    /// One vertex added below the lower-right vertex.
    pub bottom: Option<Interval>,
}

impl CornerCovers {
    pub fn of(interval: &Interval, grid: Grid) -> Self {
        let (s, t) = (interval.s(), interval.t());
        let rows = interval.row_ranges();
        let valid = |start: usize, rows: Vec<(usize, usize)>| Interval::new(start, rows).ok().filter(|c| c.fits(grid));
        let (bt, _) = rows[rows.len() - 1];
        let (_, ds) = rows[0];
        let top_left = (bt > 1).then(|| {
            let mut r = rows.to_vec();
            r.last_mut().unwrap().0 -= 1;
            valid(s, r)
        });
        let top = (t < grid.m()).then(|| {
            let mut r = rows.to_vec();
            r.push((bt, bt));
            valid(s, r)
        });
        let bottom_right = (ds < grid.n()).then(|| {
            let mut r = rows.to_vec();
            r[0].1 += 1;
            valid(s, r)
        });
        let bottom = (s > 1).then(|| {
            let mut r = vec![(ds, ds)];
            r.extend_from_slice(rows);
            valid(s - 1, r)
        });
        Self {
            top_left: top_left.flatten(),
            top: top.flatten(),
            bottom_right: bottom_right.flatten(),
            bottom: bottom.flatten(),
        }
    }
}

/// All intervals covering `interval`, in canonical order.
pub fn covers(interval: &Interval, grid: Grid) -> Vec<Interval> {
    let s = interval.s();
    let rows = interval.row_ranges();
    let mut out = Vec::with_capacity(4);
    let mut push = |start: usize, r: Vec<(usize, usize)>| {
        if let Ok(c) = Interval::new(start, r) {
            if c.fits(grid) {
                out.push(c);
            }
        }
    };
    for k in 0..rows.len() {
        let (b, d) = rows[k];
        if b > 1 {
            let mut r = rows.to_vec();
            r[k].0 -= 1;
            push(s, r);
        }
        if d < grid.n() {
            let mut r = rows.to_vec();
            r[k].1 += 1;
            push(s, r);
        }
    }
    let corners = CornerCovers::of(interval, grid);
    out.extend(corners.top);
    out.extend(corners.bottom);
    out.sort();
    out.dedup();
    out
}

fn neighbours(v: Vertex) -> impl Iterator<Item = Vertex> {
    let mut out = Vec::with_capacity(4);
    out.push(Vertex::new(v.row + 1, v.col));
    out.push(Vertex::new(v.row, v.col + 1));
    if v.row > 1 {
        out.push(Vertex::new(v.row - 1, v.col));
    }
    if v.col > 1 {
        out.push(Vertex::new(v.row, v.col - 1));
    }
    out.into_iter()
}

/// Connected components of `set` in the undirected grid graph.
fn components(set: &VertexSet) -> Vec<VertexSet> {
    let mut seen = VertexSet::new();
    let mut out = Vec::new();
    for &start in set {
        if seen.contains(&start) {
            continue;
        }
        let mut comp = VertexSet::new();
        let mut queue = VecDeque::from([start]);
        seen.insert(start);
        while let Some(v) = queue.pop_front() {
            comp.insert(v);
            for w in neighbours(v) {
                if set.contains(&w) && seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        out.push(comp);
    }
    out
}

/// The smallest interval containing `set`.
///
/// Adds every vertex lying on a path between two present vertices until
/// nothing changes. Fails on empty, out-of-grid or disconnected input: a
/// disconnected set can have several minimal intervals above it.
pub fn convex_closure(set: &VertexSet, grid: Grid) -> Result<Interval, PosetError> {
    if set.is_empty() {
        return Err(PosetError::EmptySet);
    }
    if let Some(&v) = set.iter().find(|&&v| !grid.contains(v)) {
        return Err(PosetError::OutOfGrid(v));
    }
    if components(set).len() > 1 {
        return Err(PosetError::Disconnected);
    }
    let mut current = set.clone();
    loop {
        let mut next = current.clone();
        for &x in &current {
            for &y in &current {
                if x.leq(y) {
                    for row in x.row..=y.row {
                        for col in x.col..=y.col {
                            next.insert(Vertex::new(row, col));
                        }
                    }
                }
            }
        }
        if next.len() == current.len() {
            break;
        }
        current = next;
    }
    Ok(Interval::from_vertex_set(&current).expect("closed connected set is an interval"))
}

/// `⋁ members` over `base`, where every member covers `base`.
///
/// This is the union of the members plus at most two forced corner vertices:
/// the one above-left of the top row when both the top-left extension and the
/// vertex above are present, and the one below-right of the bottom row when
/// both the bottom-right extension and the vertex below are present.
pub fn join_covers(base: &Interval, members: &[Interval], grid: Grid) -> Result<Interval, PosetError> {
    if members.is_empty() {
        return Err(PosetError::EmptyCoverSet);
    }
    let all = covers(base, grid);
    if let Some(bad) = members.iter().find(|c| !all.contains(c)) {
        return Err(PosetError::NotACover(bad.to_string()));
    }
    let corners = CornerCovers::of(base, grid);
    Ok(join_covers_unchecked(base, members, &corners))
}

/// [`join_covers`] without verifying that the members are covers.
pub(crate) fn join_covers_unchecked(base: &Interval, members: &[Interval], corners: &CornerCovers) -> Interval {
    let s = members.iter().map(Interval::s).min().expect("nonempty");
    let t = members.iter().map(Interval::t).max().expect("nonempty");
    let mut rows: Vec<(usize, usize)> = (s..=t)
        .map(|r| {
            members
                .iter()
                .filter_map(|c| c.row(r))
                .fold((usize::MAX, 0), |(b, d), (cb, cd)| (b.min(cb), d.max(cd)))
        })
        .collect();
    let has = |c: &Option<Interval>| c.as_ref().is_some_and(|c| members.contains(c));
    if has(&corners.top_left) && has(&corners.top) {
        // the new top row must start one column further left
        let top = rows.last_mut().expect("nonempty");
        top.0 = base.row(base.t()).expect("top row").0 - 1;
    }
    if has(&corners.bottom_right) && has(&corners.bottom) {
        rows[0].1 = base.row(base.s()).expect("bottom row").1 + 1;
    }
    Interval::new(s, rows).expect("join of covers is an interval")
}

/// Connected components of `I₀ ∩ J₀`, each an interval, in canonical order.
pub fn intersection_components(a: &Interval, b: &Interval) -> Vec<Interval> {
    let common: VertexSet = a.vertices().filter(|&v| b.contains(v)).collect();
    let mut out: Vec<Interval> = components(&common)
        .iter()
        .map(|c| Interval::from_vertex_set(c).expect("component of an intersection is an interval"))
        .collect();
    out.sort();
    out
}

/// The component of `J1 ∩ J2` that contains `base`.
pub fn meet_over(base: &Interval, j1: &Interval, j2: &Interval) -> Result<Interval, PosetError> {
    for j in [j1, j2] {
        if !base.leq(j) {
            return Err(PosetError::NotAbove(j.to_string()));
        }
    }
    let probe = base.vertices().next().expect("intervals are nonempty");
    Ok(intersection_components(j1, j2)
        .into_iter()
        .find(|c| c.contains(probe))
        .expect("base lies in one component"))
}

/// Sources and sinks of the interval.
///
/// In staircase form the sources are the left ends `(i, b_i)` of rows whose
/// left end has nothing directly below it, and the sinks are the right ends
/// `(i, d_i)` with nothing directly above.
pub fn ss_essential(interval: &Interval) -> VertexSet {
    let mut out = VertexSet::new();
    for (row, b, d) in interval.rows() {
        let left = Vertex::new(row, b);
        let right = Vertex::new(row, d);
        let below = row > 1 && interval.contains(Vertex::new(row - 1, b));
        let above = interval.contains(Vertex::new(row + 1, d));
        if !below {
            out.insert(left);
        }
        if !above {
            out.insert(right);
        }
    }
    out
}

/// `(rows of I^ss × columns of I^ss) ∩ I₀`.
pub fn cc_essential(interval: &Interval) -> VertexSet {
    let ss = ss_essential(interval);
    let mut out = VertexSet::new();
    for a in &ss {
        for b in &ss {
            let v = Vertex::new(a.row, b.col);
            if interval.contains(v) {
                out.insert(v);
            }
        }
    }
    out
}

/// The rectangle with source `src` and sink `dst`.
pub fn rectangle_from(src: Vertex, dst: Vertex) -> Result<Interval, PosetError> {
    if !src.leq(dst) {
        return Err(PosetError::Incomparable(src, dst));
    }
    Interval::new(src.row, vec![(src.col, dst.col); dst.row - src.row + 1])
}

/// Whether `interval` contains the whole rectangle `[src, dst]`; for an
/// interval this is the same as containing both corners.
pub fn interval_contains_rectangle(interval: &Interval, src: Vertex, dst: Vertex) -> Result<bool, PosetError> {
    if !src.leq(dst) {
        return Err(PosetError::Incomparable(src, dst));
    }
    Ok(interval.contains(src) && interval.contains(dst))
}
