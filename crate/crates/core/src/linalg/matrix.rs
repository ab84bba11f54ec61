use std::fmt;

use rand::Rng;

use super::gf2::BitMatrix;
use super::{LinalgError, PrimeField};

/// Dense matrix over GF(p), stored row-major.
///
/// Matrices act on column vectors from the left, so a linear map
/// `K^a -> K^b` is a `b × a` matrix. Matrices with zero rows or zero columns
/// are legal and stand for maps into or out of the zero space.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, dim: usize) -> Self {
        let mut m = Self::zeros(field, dim, dim);
        for i in 0..dim {
            m.data[i * dim + i] = 1;
        }
        m
    }

    /// Builds a matrix from row-major residues; every entry must already lie
    /// in `[0, p)`.
    pub fn from_vec(field: PrimeField, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::DataLength {
                expected: rows * cols,
                actual: data.len(),
            });
        }
        if let Some(&bad) = data.iter().find(|&&x| x >= field.modulus()) {
            return Err(LinalgError::EntryOutOfRange {
                value: bad,
                modulus: field.modulus(),
            });
        }
        Ok(Self {
            field,
            rows,
            cols,
            data,
        })
    }

    /// Builds a matrix from a slice of rows. An empty slice gives a `0 × 0`
    /// matrix; use [`Matrix::zeros`] for other empty shapes.
    pub fn from_rows<R: AsRef<[u32]>>(field: PrimeField, rows: &[R]) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(LinalgError::RaggedRows);
            }
            data.extend_from_slice(r);
        }
        Self::from_vec(field, rows.len(), cols, data)
    }

    /// Uniformly random entries.
    pub fn random<R: Rng + ?Sized>(field: PrimeField, rows: usize, cols: usize, rng: &mut R) -> Self {
        let p = field.modulus();
        let data = (0..rows * cols).map(|_| rng.random_range(0..p)).collect();
        Self {
            field,
            rows,
            cols,
            data,
        }
    }

    /// A uniformly random invertible `dim × dim` matrix, drawn by rejection.
    pub fn random_invertible<R: Rng + ?Sized>(field: PrimeField, dim: usize, rng: &mut R) -> Self {
        loop {
            let m = Self::random(field, dim, dim, rng);
            if m.rank() == dim {
                return m;
            }
        }
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        self.data[i * self.cols + j]
    }

    /// Sets entry `(i, j)` to `value mod p`.
    pub fn set(&mut self, i: usize, j: usize, value: u32) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        self.data[i * self.cols + j] = value % self.field.modulus();
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[u32] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        out
    }

    fn check_field(&self, other: &Matrix) -> Result<(), LinalgError> {
        if self.field != other.field {
            return Err(LinalgError::FieldMismatch {
                left: self.field.modulus(),
                right: other.field.modulus(),
            });
        }
        Ok(())
    }

    fn shape_error(op: &'static str, a: &Matrix, b: &Matrix) -> LinalgError {
        LinalgError::ShapeMismatch {
            op,
            left: a.shape(),
            right: b.shape(),
        }
    }

    /// Matrix product `self · rhs`.
    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix, LinalgError> {
        self.check_field(rhs)?;
        if self.cols != rhs.rows {
            return Err(Self::shape_error("mul", self, rhs));
        }
        if self.field.is_gf2() {
            let prod = BitMatrix::from_matrix(self).mul(&BitMatrix::from_matrix(rhs));
            return Ok(Matrix {
                field: self.field,
                rows: self.rows,
                cols: rhs.cols,
                data: prod.to_entries(),
            });
        }
        let p = self.field.modulus() as u64;
        let mut acc = vec![0u64; rhs.cols];
        let mut data = Vec::with_capacity(self.rows * rhs.cols);
        for i in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for (k, &a) in self.row(i).iter().enumerate() {
                if a == 0 {
                    continue;
                }
                for (dst, &b) in acc.iter_mut().zip(rhs.row(k)) {
                    // a, b < 2^16 so each term is < 2^32
                    *dst += a as u64 * b as u64;
                }
            }
            data.extend(acc.iter().map(|&x| (x % p) as u32));
        }
        Ok(Matrix {
            field: self.field,
            rows: self.rows,
            cols: rhs.cols,
            data,
        })
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix, LinalgError> {
        self.check_field(rhs)?;
        if self.shape() != rhs.shape() {
            return Err(Self::shape_error("add", self, rhs));
        }
        let k = self.field;
        let data = self.data.iter().zip(&rhs.data).map(|(&a, &b)| k.add(a, b)).collect();
        Ok(Matrix { data, ..self.clone() })
    }

    pub fn sub(&self, rhs: &Matrix) -> Result<Matrix, LinalgError> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Matrix {
        let k = self.field;
        Matrix {
            data: self.data.iter().map(|&a| k.neg(a)).collect(),
            ..self.clone()
        }
    }

    /// `[self | rhs]`.
    pub fn hstack(&self, rhs: &Matrix) -> Result<Matrix, LinalgError> {
        self.check_field(rhs)?;
        if self.rows != rhs.rows {
            return Err(Self::shape_error("hstack", self, rhs));
        }
        let cols = self.cols + rhs.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(rhs.row(i));
        }
        Ok(Matrix {
            field: self.field,
            rows: self.rows,
            cols,
            data,
        })
    }

    /// `[self ; rhs]` (rhs below self).
    pub fn vstack(&self, rhs: &Matrix) -> Result<Matrix, LinalgError> {
        self.check_field(rhs)?;
        if self.cols != rhs.cols {
            return Err(Self::shape_error("vstack", self, rhs));
        }
        let mut data = Vec::with_capacity(self.data.len() + rhs.data.len());
        data.extend_from_slice(&self.data);
        data.extend_from_slice(&rhs.data);
        Ok(Matrix {
            field: self.field,
            rows: self.rows + rhs.rows,
            cols: self.cols,
            data,
        })
    }

    /// Assembles `[[a, b], [c, d]]`. A `None` block is a zero block whose
    /// size is taken from its row and column partners; at least one block in
    /// every block-row and block-column must be given.
    pub fn block2x2(
        a: Option<&Matrix>,
        b: Option<&Matrix>,
        c: Option<&Matrix>,
        d: Option<&Matrix>,
    ) -> Result<Matrix, LinalgError> {
        let given = [a, b, c, d];
        let field = given
            .iter()
            .flatten()
            .map(|m| m.field)
            .next()
            .ok_or(LinalgError::UndeterminedBlock)?;
        if given.iter().flatten().any(|m| m.field != field) {
            return Err(LinalgError::FieldMismatch {
                left: field.modulus(),
                right: given
                    .iter()
                    .flatten()
                    .find(|m| m.field != field)
                    .unwrap()
                    .field
                    .modulus(),
            });
        }
        let pick = |x: Option<&Matrix>, y: Option<&Matrix>, f: fn(&Matrix) -> usize| -> Result<usize, LinalgError> {
            match (x, y) {
                (Some(x), Some(y)) if f(x) != f(y) => Err(Self::shape_error("block2x2", x, y)),
                (Some(x), _) | (None, Some(x)) => Ok(f(x)),
                (None, None) => Err(LinalgError::UndeterminedBlock),
            }
        };
        let top = pick(a, b, Matrix::rows)?;
        let bottom = pick(c, d, Matrix::rows)?;
        let left = pick(a, c, Matrix::cols)?;
        let right = pick(b, d, Matrix::cols)?;
        let fill = |m: Option<&Matrix>, r, c| m.cloned().unwrap_or_else(|| Matrix::zeros(field, r, c));
        let upper = fill(a, top, left).hstack(&fill(b, top, right))?;
        let lower = fill(c, bottom, left).hstack(&fill(d, bottom, right))?;
        upper.vstack(&lower)
    }

    /// Rank over GF(p). Uses the bit-packed eliminator when `p = 2`.
    pub fn rank(&self) -> usize {
        if self.is_empty() {
            return 0;
        }
        if self.field.is_gf2() {
            // eliminate along the shorter side
            if self.cols > self.rows * 2 {
                return BitMatrix::from_matrix(&self.transpose()).rank();
            }
            return BitMatrix::from_matrix(self).rank();
        }
        self.rank_generic()
    }

    /// Rank by row reduction with ordinary residue arithmetic, for any `p`.
    pub fn rank_generic(&self) -> usize {
        let mut work = self.clone();
        work.forward_eliminate().len()
    }

    /// Row-reduces in place to echelon form and returns the pivot columns.
    fn forward_eliminate(&mut self) -> Vec<usize> {
        let k = self.field;
        let cols = self.cols;
        let mut pivots = Vec::new();
        for col in 0..cols {
            let r = pivots.len();
            if r == self.rows {
                break;
            }
            let Some(pivot) = (r..self.rows).find(|&i| self.data[i * cols + col] != 0) else {
                continue;
            };
            self.swap_rows(pivot, r);
            let inv = k.inv(self.data[r * cols + col]).expect("pivot is nonzero");
            for i in r + 1..self.rows {
                let factor = self.data[i * cols + col];
                if factor == 0 {
                    continue;
                }
                let scale = k.mul(factor, inv);
                self.axpy_row(i, r, col, scale);
            }
            pivots.push(col);
        }
        pivots
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    fn reduce_rref(&mut self) -> Vec<usize> {
        let pivots = self.forward_eliminate();
        let k = self.field;
        let cols = self.cols;
        for (r, &col) in pivots.iter().enumerate().rev() {
            let inv = k.inv(self.data[r * cols + col]).expect("pivot is nonzero");
            for x in &mut self.data[r * cols + col..(r + 1) * cols] {
                *x = k.mul(*x, inv);
            }
            for i in 0..r {
                let factor = self.data[i * cols + col];
                if factor != 0 {
                    self.axpy_row(i, r, col, factor);
                }
            }
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let cols = self.cols;
        for j in 0..cols {
            self.data.swap(a * cols + j, b * cols + j);
        }
    }

    /// row[dst] -= scale · row[src], touching only columns `from..`.
    fn axpy_row(&mut self, dst: usize, src: usize, from: usize, scale: u32) {
        let k = self.field;
        let cols = self.cols;
        for j in from..cols {
            let s = self.data[src * cols + j];
            if s != 0 {
                let d = &mut self.data[dst * cols + j];
                *d = k.sub(*d, k.mul(scale, s));
            }
        }
    }

    /// Columns form a basis of `{x : self · x = 0}`.
    pub fn kernel_basis(&self) -> Matrix {
        let mut work = self.clone();
        let pivots = work.reduce_rref();
        let k = self.field;
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut basis = Matrix::zeros(k, self.cols, free.len());
        for (b, &f) in free.iter().enumerate() {
            basis.data[f * free.len() + b] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                basis.data[pc * free.len() + b] = k.neg(work.data[r * work.cols + f]);
            }
        }
        basis
    }

    pub fn inverse(&self) -> Result<Matrix, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::NotSquare(self.shape()));
        }
        let n = self.rows;
        let mut aug = self.hstack(&Matrix::identity(self.field, n))?;
        let pivots = aug.reduce_rref();
        if pivots.len() < n || (n > 0 && pivots[n - 1] >= n) {
            return Err(LinalgError::Singular);
        }
        let mut out = Matrix::zeros(self.field, n, n);
        for i in 0..n {
            out.data[i * n..(i + 1) * n].copy_from_slice(&aug.row(i)[n..]);
        }
        Ok(out)
    }
}

/// Basis of the pullback `{(a, b) : f·a = g·b}` of two maps with a common
/// codomain. Returns the projections `(φ₁, φ₂)` onto the domains of `f` and
/// `g`; their column count is the pullback dimension and `f·φ₁ = g·φ₂`.
pub fn pullback_basis(f: &Matrix, g: &Matrix) -> Result<(Matrix, Matrix), LinalgError> {
    f.check_field(g)?;
    if f.rows != g.rows {
        return Err(Matrix::shape_error("pullback", f, g));
    }
    let kernel = f.hstack(&g.neg())?.kernel_basis();
    let k = kernel.cols;
    let phi1 = Matrix {
        field: f.field,
        rows: f.cols,
        cols: k,
        data: kernel.data[..f.cols * k].to_vec(),
    };
    let phi2 = Matrix {
        field: f.field,
        rows: g.cols,
        cols: k,
        data: kernel.data[f.cols * k..].to_vec(),
    };
    Ok((phi1, phi2))
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix<{}>{}x{}[", self.field, self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(u32::to_string).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}
