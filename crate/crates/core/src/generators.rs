//! Seeded random modules and fixed fixtures.
//!
//! All randomness comes from a caller-supplied [`Rng`]; the CLI and the tests
//! use `ChaCha8Rng::seed_from_u64`, so a seed determines the output.

use std::sync::Arc;

use rand::Rng;

use crate::grid::{Arrow, Grid, ModuleError, PersistenceModule, Vertex, VertexMap};
use crate::linalg::{pullback_basis, Matrix, PrimeField};
use crate::mobius::IntervalFunction;
use crate::poset::IntervalPoset;

/// A random module over the `2 × n` grid with every space of dimension `d`.
///
/// The top row and the rightmost vertical map are uniform random `d × d`
/// matrices. Then, column by column from the right, the square at column `j`
/// is completed through the pullback `(φ₁, φ₂)` of the top map out of `(2, j)`
/// and the vertical map into `(2, j + 1)`: with a random `φ₃ : K^d → pullback`,
/// the new vertical map is `φ₁φ₃` and the new bottom map `φ₂φ₃`.
pub fn random_module<R: Rng + ?Sized>(
    n: usize,
    d: usize,
    field: PrimeField,
    rng: &mut R,
) -> Result<PersistenceModule, ModuleError> {
    let grid = Grid::new(2, n)?;
    let mut module = PersistenceModule::zero_maps(field, VertexMap::filled(grid, d));
    for col in 1..n {
        module.set_map(Arrow::Horizontal(Vertex::new(2, col)), Matrix::random(field, d, d, rng))?;
    }
    module.set_map(Arrow::Vertical(Vertex::new(1, n)), Matrix::random(field, d, d, rng))?;
    for col in (1..n).rev() {
        let f = module.map(Arrow::Horizontal(Vertex::new(2, col)));
        let g = module.map(Arrow::Vertical(Vertex::new(1, col + 1)));
        let (phi1, phi2) = pullback_basis(f, g)?;
        let phi3 = Matrix::random(field, phi1.cols(), d, rng);
        let vertical = phi1.mul(&phi3)?;
        let bottom = phi2.mul(&phi3)?;
        module.set_map(Arrow::Vertical(Vertex::new(1, col)), vertical)?;
        module.set_map(Arrow::Horizontal(Vertex::new(1, col)), bottom)?;
    }
    Ok(module)
}

/// Conjugates every space by a random invertible matrix.
pub fn disguise<R: Rng + ?Sized>(module: &PersistenceModule, rng: &mut R) -> Result<PersistenceModule, ModuleError> {
    let field = module.field();
    let bases = VertexMap::from_fn(module.grid(), |v| Matrix::random_invertible(field, module.dim(v), rng));
    module.conjugate(&bases)
}

/// A direct sum of `k` intervals drawn uniformly from `poset`, optionally
/// disguised, together with its multiplicity function.
pub fn random_interval_decomposable<R: Rng + ?Sized>(
    poset: &Arc<IntervalPoset>,
    k: usize,
    field: PrimeField,
    rng: &mut R,
    disguised: bool,
) -> Result<(PersistenceModule, IntervalFunction), ModuleError> {
    let grid = poset.grid();
    let mut multiplicities = vec![0i64; poset.len()];
    let picks: Vec<usize> = (0..k).map(|_| rng.random_range(0..poset.len())).collect();
    let mut module = PersistenceModule::zero(grid, field);
    for &p in &picks {
        multiplicities[p] += 1;
        module = module.direct_sum(&PersistenceModule::interval(grid, poset.get(p), field)?)?;
    }
    if disguised {
        module = disguise(&module, rng)?;
    }
    let f = IntervalFunction::new(Arc::clone(poset), multiplicities).expect("one value per interval");
    Ok((module, f))
}

/// An indecomposable, non-interval module over the `2 × 5` grid with spaces
/// of dimension up to `2l`, built from identity blocks `E` and the `l × l`
/// Jordan block `J` with eigenvalue 1.
///
/// Top row: `K^l → K^{2l} → K^{2l} → K^l → 0` with maps `[E;0]`, identity,
/// `[E 0]`, zero. Bottom row: `0 → K^l → K^{2l} → K^{2l} → K^l` with maps zero,
/// `[E;0]`, identity, `[E 0]`. Vertical maps at columns 2, 3, 4: `[E;E]`,
/// `[E E; E J]`, `[E E]`.
pub fn jordan_block_module(l: usize, field: PrimeField) -> Result<PersistenceModule, ModuleError> {
    let grid = Grid::new(2, 5)?;
    let top = [l, 2 * l, 2 * l, l, 0];
    let bottom = [0, l, 2 * l, 2 * l, l];
    let dims = VertexMap::from_fn(grid, |v| if v.row == 2 { top[v.col - 1] } else { bottom[v.col - 1] });
    let mut module = PersistenceModule::zero_maps(field, dims);
    let e = Matrix::identity(field, l);
    let mut jordan = Matrix::identity(field, l);
    for i in 0..l.saturating_sub(1) {
        jordan.set(i, i + 1, 1);
    }
    let e_over_0 = e.vstack(&Matrix::zeros(field, l, l))?;
    let e_beside_0 = e.hstack(&Matrix::zeros(field, l, l))?;
    let id2 = Matrix::identity(field, 2 * l);
    let h = |row, col| Arrow::Horizontal(Vertex::new(row, col));
    let v = |col| Arrow::Vertical(Vertex::new(1, col));
    module.set_map(h(2, 1), e_over_0.clone())?;
    module.set_map(h(2, 2), id2.clone())?;
    module.set_map(h(2, 3), e_beside_0.clone())?;
    module.set_map(h(1, 2), e_over_0)?;
    module.set_map(h(1, 3), id2)?;
    module.set_map(h(1, 4), e_beside_0)?;
    module.set_map(v(2), e.vstack(&e)?)?;
    module.set_map(v(3), Matrix::block2x2(Some(&e), Some(&e), Some(&e), Some(&jordan))?)?;
    module.set_map(v(4), e.hstack(&e)?)?;
    Ok(module)
}

/// A `2 × 3` module whose approximation has a negative coefficient.
///
/// Top row `K → K² → K` with maps `[1;1]` and `[0 1]`; bottom row `0 → K → K`
/// with map `1`; vertical maps `[0;1]` at column 2 and `1` at column 3.
pub fn example_negative_approximation(field: PrimeField) -> PersistenceModule {
    let grid = Grid::new(2, 3).expect("nonempty grid");
    let top = [1, 2, 1];
    let bottom = [0, 1, 1];
    let dims = VertexMap::from_fn(grid, |v| if v.row == 2 { top[v.col - 1] } else { bottom[v.col - 1] });
    let mut module = PersistenceModule::zero_maps(field, dims);
    let m = |rows: &[&[u32]]| Matrix::from_rows(field, rows).expect("fixture matrix");
    let maps = [
        (Arrow::Horizontal(Vertex::new(2, 1)), m(&[&[1], &[1]])),
        (Arrow::Horizontal(Vertex::new(2, 2)), m(&[&[0, 1]])),
        (Arrow::Horizontal(Vertex::new(1, 2)), m(&[&[1]])),
        (Arrow::Vertical(Vertex::new(1, 2)), m(&[&[0], &[1]])),
        (Arrow::Vertical(Vertex::new(1, 3)), m(&[&[1]])),
    ];
    for (arrow, matrix) in maps {
        module.set_map(arrow, matrix).expect("fixture shapes");
    }
    module
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_module_commutes_and_is_reproducible() {
        for p in [2, 3, 5] {
            let field = PrimeField::new(p).unwrap();
            let a = random_module(5, 4, field, &mut ChaCha8Rng::seed_from_u64(7)).unwrap();
            let b = random_module(5, 4, field, &mut ChaCha8Rng::seed_from_u64(7)).unwrap();
            assert_eq!(a, b);
            assert!(a.validate().is_ok());
            assert!(a.dims().values().iter().all(|&d| d == 4));
        }
        let zero = random_module(3, 0, PrimeField::GF2, &mut ChaCha8Rng::seed_from_u64(1)).unwrap();
        assert_eq!(zero.total_dim(), 0);
        assert!(random_module(1, 3, PrimeField::GF2, &mut ChaCha8Rng::seed_from_u64(1))
            .unwrap()
            .validate()
            .is_ok());
    }

    #[test]
    fn jordan_block_module_commutes() {
        for l in 1..=4 {
            let m = jordan_block_module(l, PrimeField::GF2).unwrap();
            assert!(m.validate().is_ok(), "l = {l}");
            let top: Vec<usize> = (1..=5).map(|c| m.dim(Vertex::new(2, c))).collect();
            assert_eq!(top, vec![l, 2 * l, 2 * l, l, 0]);
        }
    }

    #[test]
    fn negative_example_fixture() {
        let m = example_negative_approximation(PrimeField::GF2);
        assert!(m.validate().is_ok());
        assert_eq!(m.dimension_vector().to_string(), "(1 2 1 / 0 1 1)");
    }

    #[test]
    fn single_undisguised_summand_is_the_interval_module() {
        let poset = Arc::new(IntervalPoset::new(Grid::new(2, 3).unwrap()));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let (m, f) = random_interval_decomposable(&poset, 1, PrimeField::GF2, &mut rng, false).unwrap();
        let (i, _) = f.nonzero().next().unwrap();
        assert_eq!(
            m,
            PersistenceModule::interval(poset.grid(), i, PrimeField::GF2).unwrap()
        );
    }
}
