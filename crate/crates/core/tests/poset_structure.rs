//! The interval poset, checked exhaustively against brute-force definitions.

mod common;

use std::collections::BTreeSet;

use common::{grid, ind, v};
use ladder_approx::grid::{Grid, Vertex};
use ladder_approx::poset::{
    cc_essential, convex_closure, count_intervals_two_rows, covers, enumerate_intervals, intersection_components,
    join_covers, meet_over, rectangle_from, ss_essential, Interval, VertexSet,
};
use proptest::prelude::*;

fn connected(set: &VertexSet) -> bool {
    let Some(&start) = set.first() else { return false };
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(x) = stack.pop() {
        for y in set {
            let adjacent =
                (x.row == y.row && x.col.abs_diff(y.col) == 1) || (x.col == y.col && x.row.abs_diff(y.row) == 1);
            if adjacent && seen.insert(*y) {
                stack.push(*y);
            }
        }
    }
    seen.len() == set.len()
}

fn convex(set: &VertexSet, g: Grid) -> bool {
    g.vertices()
        .all(|z| set.contains(&z) || !set.iter().any(|x| x.leq(z) && set.iter().any(|y| z.leq(*y))))
}

/// Every connected convex vertex subset, by checking all subsets.
fn brute_intervals(g: Grid) -> BTreeSet<VertexSet> {
    let verts: Vec<Vertex> = g.vertices().collect();
    (1u32..(1 << verts.len()))
        .map(|mask| {
            verts
                .iter()
                .enumerate()
                .filter(|(k, _)| mask & (1 << k) != 0)
                .map(|(_, &x)| x)
                .collect::<VertexSet>()
        })
        .filter(|s| connected(s) && convex(s, g))
        .collect()
}

#[test]
fn two_row_counts_follow_the_formula() {
    let want = [3, 11, 27, 55, 100, 168, 266, 402];
    for n in 1..=8 {
        let got = enumerate_intervals(grid(2, n)).len() as u64;
        assert_eq!(got, count_intervals_two_rows(n as u64));
        assert_eq!(got, want[n - 1]);
    }
    assert_eq!(enumerate_intervals(grid(1, 3)).len(), 6);
}

#[test]
fn enumeration_matches_brute_force_subsets() {
    for (m, n) in [(1, 4), (2, 2), (2, 4), (2, 5), (2, 6), (3, 3), (3, 4), (4, 3)] {
        let g = grid(m, n);
        let listed = enumerate_intervals(g);
        assert!(listed.windows(2).all(|w| w[0] < w[1]), "canonical and unique");
        let as_sets: BTreeSet<VertexSet> = listed.iter().map(Interval::vertex_set).collect();
        assert_eq!(as_sets, brute_intervals(g), "{m}x{n}");
        for i in &listed {
            assert_eq!(i.to_string().parse::<Interval>().unwrap(), *i);
            assert_eq!(Interval::from_vertex_set(&i.vertex_set()).as_ref(), Some(i));
        }
    }
}

#[test]
fn graded_with_at_most_four_covers_in_two_rows() {
    for n in 1..=6 {
        let g = grid(2, n);
        for i in enumerate_intervals(g) {
            let cov = covers(&i, g);
            assert!(cov.len() <= 4, "{i}");
            for c in cov {
                assert_eq!(c.size(), i.size() + 1);
                assert!(i.leq(&c));
            }
        }
    }
    let g = grid(3, 3);
    for i in enumerate_intervals(g) {
        assert!(covers(&i, g).iter().all(|c| c.size() == i.size() + 1));
    }
}

#[test]
fn covers_match_the_order_relation() {
    for (m, n) in [(2, 3), (2, 4), (3, 3), (3, 4)] {
        let g = grid(m, n);
        let all = enumerate_intervals(g);
        for i in &all {
            let brute: Vec<Interval> = all
                .iter()
                .filter(|j| i.leq(j) && *j != i)
                .filter(|j| !all.iter().any(|k| k != i && k != *j && i.leq(k) && k.leq(j)))
                .cloned()
                .collect();
            assert_eq!(covers(i, g), brute, "{i} in {m}x{n}");
        }
    }
}

#[test]
fn cover_joins_equal_convex_closures() {
    for (m, n) in [(2, 5), (3, 3), (3, 4)] {
        let g = grid(m, n);
        for i in enumerate_intervals(g) {
            let cov = covers(&i, g);
            for mask in 1u32..(1 << cov.len()) {
                let members: Vec<Interval> = cov
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| mask & (1 << k) != 0)
                    .map(|(_, c)| c.clone())
                    .collect();
                let union: VertexSet = members.iter().flat_map(|c| c.vertices()).collect();
                assert_eq!(
                    join_covers(&i, &members, g).unwrap(),
                    convex_closure(&union, g).unwrap(),
                    "{i}"
                );
            }
        }
    }
}

#[test]
fn join_of_a_single_cover_is_itself() {
    let g = grid(3, 4);
    for i in enumerate_intervals(g) {
        for c in covers(&i, g) {
            assert_eq!(join_covers(&i, std::slice::from_ref(&c), g).unwrap(), c);
        }
    }
}

#[test]
fn closure_is_idempotent_on_intervals() {
    let g = grid(3, 3);
    for i in enumerate_intervals(g) {
        assert_eq!(convex_closure(&i.vertex_set(), g).unwrap(), i);
    }
}

#[test]
fn sources_and_sinks_determine_the_order() {
    let g = grid(2, 4);
    let all = enumerate_intervals(g);
    for i in &all {
        let ss = ss_essential(i);
        let cc = cc_essential(i);
        assert!(ss.is_subset(&cc) && cc.is_subset(&i.vertex_set()), "{i}");
        for j in &all {
            if ss.iter().all(|&x| j.contains(x)) {
                assert!(i.leq(j), "{i} {j}");
            }
        }
    }
    let single = Interval::single(v(1, 2));
    assert_eq!(ss_essential(&single), single.vertex_set());
    assert_eq!(cc_essential(&single), single.vertex_set());
}

#[test]
fn rectangle_essential_vertices() {
    let r = rectangle_from(v(1, 1), v(3, 2)).unwrap();
    assert_eq!(ss_essential(&r), VertexSet::from([v(1, 1), v(3, 2)]));
    assert_eq!(cc_essential(&r), VertexSet::from([v(1, 1), v(1, 2), v(3, 1), v(3, 2)]));
    assert_eq!(rectangle_from(v(2, 2), v(2, 2)).unwrap(), Interval::single(v(2, 2)));
}

#[test]
fn intersections_split_into_interval_components() {
    let g = grid(3, 4);
    let all = enumerate_intervals(g);
    let mut split = 0;
    for a in &all {
        for b in &all {
            let comps = intersection_components(a, b);
            let common: VertexSet = a.vertex_set().intersection(&b.vertex_set()).copied().collect();
            let covered: VertexSet = comps.iter().flat_map(|c| c.vertices()).collect();
            assert_eq!(covered, common);
            for (x, y) in comps.iter().zip(comps.iter().skip(1)) {
                let joined: VertexSet = x.vertex_set().union(&y.vertex_set()).copied().collect();
                assert!(!connected(&joined), "components {x} and {y} touch");
            }
            split += usize::from(comps.len() > 1);
        }
    }
    assert!(split > 0, "some pair should intersect in several pieces");
    let i = ind("011/011");
    assert_eq!(intersection_components(&i, &i), vec![i.clone()]);
    assert!(intersection_components(&ind("100/000"), &ind("000/001")).is_empty());
}

#[test]
fn meets_over_a_lower_bound() {
    let g = grid(3, 3);
    let all = enumerate_intervals(g);
    for base in all.iter().step_by(5) {
        for j in all.iter().filter(|j| base.leq(j)) {
            assert_eq!(meet_over(base, j, j).unwrap(), *j);
        }
    }
    let a = rectangle_from(v(1, 1), v(2, 2)).unwrap();
    let b = rectangle_from(v(2, 2), v(3, 3)).unwrap();
    let corner = Interval::single(v(2, 2));
    assert_eq!(meet_over(&corner, &a, &b).unwrap(), corner);
    assert!(meet_over(&Interval::single(v(1, 1)), &a, &b).is_err());
}

fn interval_in(m: usize, n: usize) -> impl Strategy<Value = Interval> {
    let all = enumerate_intervals(grid(m, n));
    prop::sample::select(all)
}

proptest! {
    #[test]
    fn text_and_indicator_forms_agree(i in interval_in(3, 5)) {
        let text = i.to_string();
        prop_assert_eq!(text.parse::<Interval>().unwrap(), i.clone());
        let indicator: Vec<String> = (1..=3).rev()
            .map(|r| (1..=5).map(|c| if i.contains(v(r, c)) { '1' } else { '0' }).collect())
            .collect();
        prop_assert_eq!(Interval::from_indicator(&indicator.join("/")).unwrap(), i);
    }

    #[test]
    fn order_is_vertex_containment(a in interval_in(2, 5), b in interval_in(2, 5)) {
        prop_assert_eq!(a.leq(&b), a.vertex_set().is_subset(&b.vertex_set()));
    }
}
