//! Shared helpers and slow reference implementations used as oracles.

#![allow(dead_code)]

use std::sync::Arc;

use ladder_approx::grid::{Arrow, Grid, PersistenceModule, Vertex};
use ladder_approx::linalg::{Matrix, PrimeField};
use ladder_approx::poset::{Interval, IntervalPoset};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn ind(s: &str) -> Interval {
    Interval::from_indicator(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn grid(m: usize, n: usize) -> Grid {
    Grid::new(m, n).unwrap()
}

pub fn poset(m: usize, n: usize) -> Arc<IntervalPoset> {
    Arc::new(IntervalPoset::new(grid(m, n)))
}

pub fn gf(p: u32) -> PrimeField {
    PrimeField::new(p).unwrap()
}

pub fn v(row: usize, col: usize) -> Vertex {
    Vertex::new(row, col)
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Textbook Gaussian elimination on a `Vec<Vec<u64>>` copy, one pivot per
/// column, inverse by Fermat.
pub fn naive_rank(m: &Matrix) -> usize {
    let p = u64::from(m.field().modulus());
    let mut a: Vec<Vec<u64>> = (0..m.rows())
        .map(|i| m.row(i).iter().map(|&x| u64::from(x)).collect())
        .collect();
    let mut rank = 0;
    for c in 0..m.cols() {
        let Some(pivot) = (rank..a.len()).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(rank, pivot);
        let inv = pow_mod(a[rank][c], p - 2, p);
        let pivot_row = a[rank].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let factor = row[c] * inv % p;
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + p * p - factor * y % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Entry-by-entry triple loop.
pub fn schoolbook_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let p = u64::from(a.field().modulus());
    let mut out = Matrix::zeros(a.field(), a.rows(), b.cols());
    for i in 0..a.rows() {
        for j in 0..b.cols() {
            let mut s = 0u64;
            for k in 0..a.cols() {
                s = (s + u64::from(a.get(i, k)) * u64::from(b.get(k, j))) % p;
            }
            out.set(i, j, s as u32);
        }
    }
    out
}

/// A quiver representation with plain `u64` matrices, rows indexed by the
/// target space.
#[derive(Clone, Debug)]
pub struct Rep {
    pub p: u64,
    pub dims: Vec<usize>,
    pub arrows: Vec<(usize, usize, Vec<Vec<u64>>)>,
}

fn naive_mul(p: u64, a: &[Vec<u64>], b: &[Vec<u64>], inner: usize, cols: usize) -> Vec<Vec<u64>> {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| row[k] * b[k][j] % p).sum::<u64>() % p)
                .collect()
        })
        .collect()
}

fn to_rows(m: &Matrix) -> Vec<Vec<u64>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|&x| u64::from(x)).collect())
        .collect()
}

fn identity_rows(d: usize) -> Vec<Vec<u64>> {
    (0..d).map(|i| (0..d).map(|j| u64::from(i == j)).collect()).collect()
}

/// `M(s → t)` by multiplying arrow matrices along the row of `s`, then up the
/// column of `t`.
pub fn naive_path(module: &PersistenceModule, s: Vertex, t: Vertex) -> Vec<Vec<u64>> {
    let p = u64::from(module.field().modulus());
    let mut acc = identity_rows(module.dim(s));
    let mut at = s;
    while at != t {
        let arrow = if at.col < t.col {
            Arrow::Horizontal(at)
        } else {
            Arrow::Vertical(at)
        };
        acc = naive_mul(p, &to_rows(module.map(arrow)), &acc, module.dim(at), module.dim(s));
        at = arrow.target();
    }
    acc
}

/// Nullspace basis of `a` (each row an equation over `n` unknowns) by
/// reduced row echelon form.
pub fn naive_kernel(p: u64, mut a: Vec<Vec<u64>>, n: usize) -> Vec<Vec<u64>> {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..n {
        let Some(r) = (rank..a.len()).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(rank, r);
        let inv = pow_mod(a[rank][c], p - 2, p);
        for x in a[rank].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot_row = a[rank].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let f = row[c];
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + p * p - f * y) % p;
                }
            }
        }
        pivots.push(c);
        rank += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![0; n];
            x[f] = 1;
            for (r, &c) in pivots.iter().enumerate() {
                x[c] = (p - a[r][f]) % p;
            }
            x
        })
        .collect()
}

/// Basis of `Hom(a, b)`: each element is one `dim b_v × dim a_v` matrix per vertex.
pub fn hom_basis(a: &Rep, b: &Rep) -> Vec<Vec<Vec<Vec<u64>>>> {
    let p = a.p;
    let mut offsets = Vec::new();
    let mut n = 0;
    for v in 0..a.dims.len() {
        offsets.push(n);
        n += a.dims[v] * b.dims[v];
    }
    let var = |v: usize, i: usize, j: usize| offsets[v] + i * a.dims[v] + j;
    let mut eqs = Vec::new();
    for ((u, w, ma), (_, _, mb)) in a.arrows.iter().zip(&b.arrows) {
        // b(u→w)·f_u − f_w·a(u→w) = 0, entry (i, j) of a dim b_w × dim a_u matrix
        for i in 0..b.dims[*w] {
            for j in 0..a.dims[*u] {
                let mut eq = vec![0u64; n];
                for k in 0..b.dims[*u] {
                    eq[var(*u, k, j)] = (eq[var(*u, k, j)] + mb[i][k]) % p;
                }
                for k in 0..a.dims[*w] {
                    eq[var(*w, i, k)] = (eq[var(*w, i, k)] + p - ma[k][j]) % p;
                }
                eqs.push(eq);
            }
        }
    }
    naive_kernel(p, eqs, n)
        .into_iter()
        .map(|x| {
            (0..a.dims.len())
                .map(|v| {
                    (0..b.dims[v])
                        .map(|i| (0..a.dims[v]).map(|j| x[var(v, i, j)]).collect())
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// Multiplicity of a brick `x` (endomorphisms are scalars) as a summand of
/// `m`: the rank of the pairing `(f, g) ↦ g ∘ f` read at vertex `at`.
pub fn brick_multiplicity(x: &Rep, m: &Rep, at: usize) -> usize {
    let p = x.p;
    let into = hom_basis(x, m);
    let out = hom_basis(m, x);
    let pairing: Vec<u32> = into
        .iter()
        .flat_map(|f| {
            out.iter().map(move |g| {
                let gf = naive_mul(p, &g[at], &f[at], m.dims[at], x.dims[at]);
                gf[0][0] as u32
            })
        })
        .collect();
    let field = PrimeField::new(p as u32).unwrap();
    naive_rank(&Matrix::from_vec(field, into.len(), out.len(), pairing).unwrap())
}

/// Minimal and maximal vertices of an interval, from its vertex set alone.
pub fn sources_and_sinks(i: &Interval) -> (Vec<Vertex>, Vec<Vertex>) {
    let set = i.vertex_set();
    let sources = set
        .iter()
        .filter(|x| !set.iter().any(|y| y != *x && y.leq(**x)))
        .copied()
        .collect();
    let sinks = set
        .iter()
        .filter(|x| !set.iter().any(|y| y != *x && x.leq(*y)))
        .copied()
        .collect();
    (sources, sinks)
}

/// `δ̄^ss_M(I)` from first principles: restrict to sources and sinks along
/// composed paths, then count summands isomorphic to the thin sincere module.
pub fn ss_multiplicity_oracle(module: &PersistenceModule, i: &Interval) -> usize {
    let (sources, sinks) = sources_and_sinks(i);
    let mut verts: Vec<Vertex> = sources.clone();
    for t in &sinks {
        if !verts.contains(t) {
            verts.push(*t);
        }
    }
    let pos = |x: &Vertex| verts.iter().position(|y| y == x).unwrap();
    let mut m_arrows = Vec::new();
    let mut x_arrows = Vec::new();
    for s in &sources {
        for t in &sinks {
            if s != t && s.leq(*t) {
                m_arrows.push((pos(s), pos(t), naive_path(module, *s, *t)));
                x_arrows.push((pos(s), pos(t), vec![vec![1]]));
            }
        }
    }
    let p = u64::from(module.field().modulus());
    let m = Rep {
        p,
        dims: verts.iter().map(|&x| module.dim(x)).collect(),
        arrows: m_arrows,
    };
    let x = Rep {
        p,
        dims: vec![1; verts.len()],
        arrows: x_arrows,
    };
    brick_multiplicity(&x, &m, 0)
}

/// `rank M(s → t)` from [`naive_path`] and [`naive_rank`].
pub fn naive_path_rank(module: &PersistenceModule, s: Vertex, t: Vertex) -> usize {
    let data = naive_path(module, s, t)
        .into_iter()
        .flatten()
        .map(|x| x as u32)
        .collect();
    naive_rank(&Matrix::from_vec(module.field(), module.dim(t), module.dim(s), data).unwrap())
}

/// The module as a representation of the grid quiver, vertices in grid order.
pub fn module_rep(module: &PersistenceModule) -> Rep {
    let g = module.grid();
    Rep {
        p: u64::from(module.field().modulus()),
        dims: g.vertices().map(|x| module.dim(x)).collect(),
        arrows: module
            .arrows()
            .map(|a| (g.index(a.source()), g.index(a.target()), to_rows(module.map(a))))
            .collect(),
    }
}
