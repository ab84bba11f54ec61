//! Persistence-module data model: validation, path maps, invariants.

mod common;

use common::{gf, grid, ind, naive_rank, rng, v};
use ladder_approx::generators::{disguise, random_interval_decomposable, random_module};
use ladder_approx::grid::{Arrow, PersistenceModule, SquareViolation, Vertex, VertexMap};
use ladder_approx::linalg::{Matrix, PrimeField};
use ladder_approx::poset::{enumerate_intervals, interval_contains_rectangle, Interval};
use rand::Rng;

/// A random valid module on an `m × n` grid: a random direct sum of interval
/// modules, disguised.
fn random_valid(m: usize, n: usize, seed: u64) -> PersistenceModule {
    let poset = common::poset(m, n);
    let mut r = rng(seed);
    let k = r.random_range(0..6);
    random_interval_decomposable(&poset, k, gf(3), &mut r, true).unwrap().0
}

/// Composes the arrows along the path that goes all the way up, then right.
fn up_then_right(m: &PersistenceModule, src: Vertex, dst: Vertex) -> Matrix {
    let mut acc = Matrix::identity(m.field(), m.dim(src));
    let mut at = src;
    while at.row < dst.row {
        acc = m.map(Arrow::Vertical(at)).mul(&acc).unwrap();
        at = Vertex::new(at.row + 1, at.col);
    }
    while at.col < dst.col {
        acc = m.map(Arrow::Horizontal(at)).mul(&acc).unwrap();
        at = Vertex::new(at.row, at.col + 1);
    }
    acc
}

#[test]
fn path_maps_agree_with_every_split() {
    for (m, n) in [(2, 2), (2, 4), (3, 3), (4, 4)] {
        for seed in 0..4 {
            let module = random_valid(m, n, seed);
            let table = module.path_map_table();
            let g = module.grid();
            for (s, t) in g.comparable_pairs() {
                let direct = table.get(s, t).unwrap();
                assert_eq!(direct, &up_then_right(&module, s, t));
                for mid in g.vertices().filter(|&x| s.leq(x) && x.leq(t)) {
                    let split = table.get(mid, t).unwrap().mul(table.get(s, mid).unwrap()).unwrap();
                    assert_eq!(direct, &split, "{s} -> {mid} -> {t}");
                }
            }
        }
    }
}

#[test]
fn corner_of_a_square_matches_both_composites() {
    let module = random_module(2, 4, PrimeField::GF2, &mut rng(4)).unwrap();
    let table = module.path_map_table();
    let right_up = module
        .map(Arrow::Vertical(v(1, 2)))
        .mul(module.map(Arrow::Horizontal(v(1, 1))))
        .unwrap();
    let up_right = module
        .map(Arrow::Horizontal(v(2, 1)))
        .mul(module.map(Arrow::Vertical(v(1, 1))))
        .unwrap();
    assert_eq!(table.get(v(1, 1), v(2, 2)), Some(&right_up));
    assert_eq!(table.get(v(1, 1), v(2, 2)), Some(&up_right));
}

#[test]
fn fixture_path_map_matches_composites() {
    let m = ladder_approx::generators::example_negative_approximation(PrimeField::GF2);
    let t = m.path_map_table();
    let a = m
        .map(Arrow::Horizontal(v(2, 2)))
        .mul(m.map(Arrow::Vertical(v(1, 2))))
        .unwrap();
    let b = m
        .map(Arrow::Vertical(v(1, 3)))
        .mul(m.map(Arrow::Horizontal(v(1, 2))))
        .unwrap();
    assert_eq!(t.get(v(1, 2), v(2, 3)), Some(&a));
    assert_eq!(a, b);
}

#[test]
fn rank_invariant_matches_direct_recomputation() {
    for seed in 0..10 {
        let m = random_module(4, 3, gf(3), &mut rng(seed)).unwrap();
        let t = m.path_map_table();
        for ((s, d), r) in m.rank_invariant().iter() {
            assert_eq!(r, naive_rank(t.get(s, d).unwrap()));
        }
    }
    let zero = PersistenceModule::zero(grid(2, 3), PrimeField::GF2);
    assert!(zero.rank_invariant().iter().all(|(_, r)| r == 0));
    assert!(zero.dimension_vector().values().iter().all(|&d| d == 0));
}

#[test]
fn interval_modules() {
    let g = grid(4, 6);
    for i in enumerate_intervals(g).iter().step_by(7) {
        let m = PersistenceModule::interval(g, i, gf(5)).unwrap();
        assert!(m.validate().is_ok(), "{i}");
        assert_eq!(
            m.dimension_vector(),
            VertexMap::from_fn(g, |x| usize::from(i.contains(x)))
        );
    }
    let staircase = ind("110000/111100/011110/000110");
    assert!(PersistenceModule::interval(g, &staircase, PrimeField::GF2)
        .unwrap()
        .validate()
        .is_ok());
    let full = Interval::new(1, vec![(1, 6); 4]).unwrap();
    let m = PersistenceModule::interval(g, &full, PrimeField::GF2).unwrap();
    assert!(m.arrows().all(|a| m.map(a) == &Matrix::identity(PrimeField::GF2, 1)));
    let single = Interval::single(v(2, 3));
    assert_eq!(
        PersistenceModule::interval(g, &single, PrimeField::GF2)
            .unwrap()
            .total_dim(),
        1
    );
    assert!(PersistenceModule::interval(grid(2, 2), &full, PrimeField::GF2).is_err());
}

#[test]
fn rectangle_interval_rank_invariant_is_containment() {
    let g = grid(2, 3);
    for i in enumerate_intervals(g) {
        let m = PersistenceModule::interval(g, &i, PrimeField::GF2).unwrap();
        for ((s, t), r) in m.rank_invariant().iter() {
            assert_eq!(r == 1, interval_contains_rectangle(&i, s, t).unwrap(), "{i} {s} {t}");
        }
    }
}

#[test]
fn mutation_is_reported_at_the_square() {
    let flip = |m: &mut PersistenceModule, arrow: Arrow| {
        let mut map = m.map(arrow).clone();
        let x = map.get(0, 0);
        map.set(0, 0, 1 - x);
        m.set_map(arrow, map).unwrap();
    };
    // every map of the full interval module is the identity, so any flip shows
    let g = grid(2, 4);
    let mut full =
        PersistenceModule::interval(g, &Interval::new(1, vec![(1, 4); 2]).unwrap(), PrimeField::GF2).unwrap();
    flip(&mut full, Arrow::Horizontal(v(1, 2)));
    assert_eq!(full.validate(), Err(SquareViolation { square: v(1, 2) }));

    let mut detected = 0;
    for seed in 0..40 {
        let mut m = random_module(4, 3, PrimeField::GF2, &mut rng(seed)).unwrap();
        let arrow = Arrow::Horizontal(v(1, 2));
        flip(&mut m, arrow);
        let lhs = m.map(Arrow::Vertical(v(1, 3))).mul(m.map(arrow)).unwrap();
        let rhs = m
            .map(Arrow::Horizontal(v(2, 2)))
            .mul(m.map(Arrow::Vertical(v(1, 2))))
            .unwrap();
        if lhs == rhs {
            assert_eq!(m.validate(), Ok(()), "seed {seed}");
        } else {
            detected += 1;
            assert_eq!(m.validate(), Err(SquareViolation { square: v(1, 2) }), "seed {seed}");
        }
    }
    assert!(detected > 20, "only {detected} mutations changed the square");
}

#[test]
fn direct_sum_adds_invariants() {
    for seed in 0..10 {
        let mut r = rng(seed);
        let a = random_module(3, 2, gf(3), &mut r).unwrap();
        let b = random_module(3, 3, gf(3), &mut r).unwrap();
        let s = a.direct_sum(&b).unwrap();
        assert!(s.validate().is_ok());
        let (ra, rb, rs) = (a.rank_invariant(), b.rank_invariant(), s.rank_invariant());
        for ((x, y), r) in rs.iter() {
            assert_eq!(r, ra.get(x, y).unwrap() + rb.get(x, y).unwrap());
        }
        for x in s.grid().vertices() {
            assert_eq!(s.dim(x), a.dim(x) + b.dim(x));
        }
        let zero = PersistenceModule::zero(a.grid(), gf(3));
        assert_eq!(a.direct_sum(&zero).unwrap(), a);
    }
    let other = PersistenceModule::zero(grid(2, 2), PrimeField::GF2);
    let a = PersistenceModule::zero(grid(2, 3), PrimeField::GF2);
    assert!(a.direct_sum(&other).is_err());
}

#[test]
fn conjugation_preserves_invariants() {
    for seed in 0..10 {
        let mut r = rng(seed);
        let m = random_module(4, 3, gf(5), &mut r).unwrap();
        let c = disguise(&m, &mut r).unwrap();
        assert!(c.validate().is_ok());
        assert_eq!(c.rank_invariant(), m.rank_invariant());
        assert_eq!(c.dimension_vector(), m.dimension_vector());
        let ids = VertexMap::from_fn(m.grid(), |x| Matrix::identity(gf(5), m.dim(x)));
        assert_eq!(m.conjugate(&ids).unwrap(), m);
    }
    let m = random_module(2, 2, PrimeField::GF2, &mut rng(1)).unwrap();
    let bad = VertexMap::from_fn(m.grid(), |x| Matrix::zeros(PrimeField::GF2, m.dim(x), m.dim(x)));
    assert!(m.conjugate(&bad).is_err());
}
